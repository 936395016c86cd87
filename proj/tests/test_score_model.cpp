#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "picardo/core_linalg.hpp"
#include "picardo/model.hpp"
#include "picardo/synth.hpp"

using namespace picardo;
using oracles::random_skew;

namespace {

Matrix family_rows(Index n_uniform, Index n_laplace, Index n_gaussian, Index t,
                   std::uint64_t seed) {
  DatasetSpec spec;
  spec.n_channels = n_uniform + n_laplace + n_gaussian;
  spec.n_samples = t;
  spec.n_uniform = n_uniform;
  spec.n_laplace = n_laplace;
  spec.n_gaussian = n_gaussian;
  spec.mixing = MixingKind::Identity;
  spec.seed = seed;
  return gen_synthetic(spec).sources;
}

Matrix whitened_mixture(Index t, std::uint64_t seed) {
  DatasetSpec spec;
  spec.n_channels = 4;
  spec.n_samples = t;
  spec.n_uniform = 2;
  spec.n_laplace = 2;
  spec.n_gaussian = 0;
  spec.seed = seed;
  return whiten(gen_synthetic(spec).x).y;
}

}  // namespace

TEST_CASE("score functions are odd with consistent derivatives and primitives") {
  const double h = 1e-5;
  for (ScoreKind kind : {ScoreKind::Tanh, ScoreKind::Cube, ScoreKind::ExpQuad}) {
    const Score score(kind);
    for (double u = -3.0; u <= 3.0; u += 0.25) {
      CHECK(score.psi(-u) == doctest::Approx(-score.psi(u)).epsilon(1e-15));
      const double fd_psi = (score.psi(u + h) - score.psi(u - h)) / (2 * h);
      CHECK(std::abs(fd_psi - score.psi_prime(u)) <= h * h * 10);
      const double fd_rho = (score.rho(u + h) - score.rho(u - h)) / (2 * h);
      CHECK(std::abs(fd_rho - score.psi(u)) <= h * h * 10);
    }
  }
}

TEST_CASE("matrix score evaluation matches the scalar one") {
  Matrix y(2, 3);
  y << -1.5, 0.0, 0.7, 2.0, -0.3, 350.0;
  for (ScoreKind kind : {ScoreKind::Tanh, ScoreKind::Cube, ScoreKind::ExpQuad}) {
    const Score score(kind);
    const Matrix p = score.psi(y), pp = score.psi_prime(y), r = score.rho(y);
    for (Index i = 0; i < 2; ++i)
      for (Index j = 0; j < 3; ++j) {
        CHECK(p(i, j) == doctest::Approx(score.psi(y(i, j))));
        CHECK(pp(i, j) == doctest::Approx(score.psi_prime(y(i, j))));
        CHECK(r(i, j) == doctest::Approx(score.rho(y(i, j))));
      }
  }
}

TEST_CASE("log cosh stays finite far beyond the overflow point of cosh") {
  const Score score(ScoreKind::Tanh);
  CHECK(std::isfinite(score.rho(400.0)));
  CHECK(score.rho(400.0) == doctest::Approx(400.0 - M_LN2));
  CHECK(score.rho(-400.0) == doctest::Approx(400.0 - M_LN2));
}

TEST_CASE("gaussian sources have vanishing moments (Stein identity)") {
  const Index t = 100000;
  const Matrix y = family_rows(0, 0, 4, t, 31);
  const MomentSet m = compute_moments(y, Score(ScoreKind::Tanh));
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(m.k[i]) <= 5.0 / std::sqrt(double(t)));
}

TEST_CASE("laplace sources have positive k under tanh (quadrature oracle)") {
  const Score score(ScoreKind::Tanh);
  const double k_exact = oracles::k_quadrature_laplace(score);
  CHECK(k_exact > 0.1);  // frozen oracle value ~ +0.1478
  CHECK(k_exact == doctest::Approx(0.1478).epsilon(0.01));

  const Index t = 200000;
  const Matrix y = family_rows(0, 2, 0, t, 32);
  const MomentSet m = compute_moments(y, score);
  for (Index i = 0; i < 2; ++i) {
    CHECK(m.k[i] > 0);
    CHECK(m.k[i] == doctest::Approx(k_exact).epsilon(0.1));
  }
}

TEST_CASE("uniform sources have negative k under tanh (quadrature oracle)") {
  const Score score(ScoreKind::Tanh);
  const double k_exact = oracles::k_quadrature_uniform(score);
  CHECK(k_exact < -0.1);  // frozen oracle value ~ -0.1261
  CHECK(k_exact == doctest::Approx(-0.1261).epsilon(0.01));

  const Index t = 200000;
  const Matrix y = family_rows(2, 0, 0, t, 33);
  const MomentSet m = compute_moments(y, score);
  for (Index i = 0; i < 2; ++i) {
    CHECK(m.k[i] < 0);
    CHECK(m.k[i] == doctest::Approx(k_exact).epsilon(0.1));
  }
}

TEST_CASE("moment set invariants") {
  const Matrix y = family_rows(2, 2, 1, 5000, 34);
  const MomentSet m = compute_moments(y, Score(ScoreKind::Tanh));
  for (Index i = 0; i < m.k.size(); ++i) {
    CHECK(m.kappa[i] == std::abs(m.k[i]));
    CHECK(m.kappa[i] == m.signs[i] * m.k[i]);
    CHECK((m.signs[i] == 1.0 || m.signs[i] == -1.0));
  }

  // sign(0) := +1
  ScoreStats stats;
  stats.scaled_cross = Matrix::Zero(2, 2);
  stats.psi_prime_mean = Vector::Zero(2);
  const MomentSet zero = moments_from_stats(stats);
  CHECK(zero.signs[0] == 1.0);
  CHECK(zero.signs[1] == 1.0);
}

TEST_CASE("relative gradient: single-channel formula") {
  const Matrix y = family_rows(0, 2, 0, 4000, 35);
  const Score score(ScoreKind::Tanh);
  Vector signs = Vector::Ones(2);
  const RelativeGradient g = relative_gradient(y, score, signs);
  const double c0 = (y.row(0).array().tanh() * y.row(0).array()).mean();
  CHECK(g.g(0, 0) == doctest::Approx(c0 - 1.0).epsilon(1e-12));
}

TEST_CASE("relative gradient vanishes off-diagonal for independent rows") {
  const Index t = 100000;
  const Matrix y = family_rows(2, 2, 0, t, 36);
  const MomentSet m = compute_moments(y, Score(ScoreKind::Tanh));
  const RelativeGradient g = relative_gradient(y, Score(ScoreKind::Tanh), m.signs);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(g.g(i, j)) <= 5.0 / std::sqrt(double(t)));
}

TEST_CASE("relative gradient structure") {
  const Matrix y = whitened_mixture(3000, 37);
  const MomentSet m = compute_moments(y, Score(ScoreKind::Tanh));
  const RelativeGradient g = relative_gradient(y, Score(ScoreKind::Tanh), m.signs);

  // skew part exactly skew
  CHECK((g.g_minus + g.g_minus.transpose()).cwiseAbs().maxCoeff() == 0.0);
  // diagonal identity
  for (Index i = 0; i < 4; ++i) {
    const double raw = (y.row(i).array().tanh() * y.row(i).array()).mean();
    CHECK(g.g(i, i) == doctest::Approx(m.signs[i] * raw - 1.0).epsilon(1e-12));
  }
  // global sign flip of the signals leaves G unchanged (psi odd)
  const RelativeGradient g2 =
      relative_gradient(Matrix(-y), Score(ScoreKind::Tanh), m.signs);
  CHECK((g.g - g2.g).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("surrogate loss at zero and under sign flips") {
  const Score score(ScoreKind::Tanh);
  const Matrix zeros = Matrix::Zero(3, 10);
  CHECK(std::abs(surrogate_loss(zeros, score, Vector::Ones(3))) < 1e-15);

  const Matrix y = whitened_mixture(2000, 38);
  Vector signs = Vector::Ones(4);
  const double base = surrogate_loss(y, score, signs);
  Vector flipped = signs;
  flipped[2] = -1;
  const double contribution = score.rho(y).row(2).mean();
  CHECK(surrogate_loss(y, score, flipped) ==
        doctest::Approx(base - 2 * contribution).epsilon(1e-13));
}

TEST_CASE("loss difference matches the first-order term <G_minus | E>") {
  const Matrix y = whitened_mixture(10000, 39);
  const Score score(ScoreKind::Tanh);
  const MomentSet m = compute_moments(y, score);
  const RelativeGradient g = relative_gradient(y, score, m.signs);

  Rng rng(40);
  for (int rep = 0; rep < 3; ++rep) {
    Matrix e = random_skew(rng, 4);
    e /= e.norm();
    const double first_order = frobenius_inner(g.g_minus, e);
    for (double h : {1e-3, 1e-4, 1e-5}) {
      const Matrix y_trial = expm_skew(Matrix(h * e)) * y;
      const double delta = surrogate_loss_delta(y_trial, y, score, m.signs);
      CHECK(std::abs(delta - h * first_order) <= 2.0 * h * h);
    }
  }
}

TEST_CASE("hessian quadratic form") {
  const Matrix y = whitened_mixture(5000, 41);
  const Score score(ScoreKind::Tanh);
  const MomentSet m = compute_moments(y, score);
  const RelativeGradient g = relative_gradient(y, score, m.signs);

  CHECK(hessian_quadratic_form(g, m, Matrix::Zero(4, 4)) == 0.0);

  Rng rng(42);
  const Matrix e = random_skew(rng, 4);

  // symmetric G leaves only the quadratic term
  RelativeGradient sym = g;
  sym.g = sym_part(g.g);
  double quad = 0;
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 4; ++j)
      quad += 0.5 * (m.kappa[i] + m.kappa[j]) * e(i, j) * e(i, j);
  CHECK(hessian_quadratic_form(sym, m, e) == doctest::Approx(quad).epsilon(1e-13));

  // the minimizer is the quasi-Newton step, with the known optimal value
  Matrix e_star = Matrix::Zero(4, 4);
  double expected_min = 0;
  for (Index i = 0; i < 4; ++i)
    for (Index j = i + 1; j < 4; ++j) {
      const double num = g.g(i, j) - g.g(j, i);
      e_star(i, j) = -num / (m.kappa[i] + m.kappa[j]);
      e_star(j, i) = -e_star(i, j);
      expected_min -= num * num / (2 * (m.kappa[i] + m.kappa[j]));
    }
  CHECK(hessian_quadratic_form(g, m, e_star) ==
        doctest::Approx(expected_min).epsilon(1e-12));
  CHECK(hessian_quadratic_form(g, m, e_star) <=
        hessian_quadratic_form(g, m, Matrix(0.9 * e_star)));
  CHECK(hessian_quadratic_form(g, m, e_star) <=
        hessian_quadratic_form(g, m, Matrix(1.1 * e_star)));
}

TEST_CASE("exact hessian apply: zero direction and finite differences") {
  const Matrix y = whitened_mixture(10000, 43);
  const Score score(ScoreKind::Tanh);
  const MomentSet m = compute_moments(y, score);

  CHECK(exact_hessian_apply(y, score, m.signs, Matrix::Zero(4, 4)).norm() == 0.0);

  Rng rng(44);
  for (int rep = 0; rep < 3; ++rep) {
    Matrix e = random_skew(rng, 4);
    e /= e.norm();
    const double quad_exact =
        frobenius_inner(e, exact_hessian_apply(y, score, m.signs, e));
    const double h = 1e-3;
    const Matrix plus = expm_skew(Matrix(h * e)) * y;
    const Matrix minus = expm_skew(Matrix(-h * e)) * y;
    const double fd2 = (surrogate_loss_delta(plus, y, score, m.signs) +
                        surrogate_loss_delta(minus, y, score, m.signs)) /
                       (h * h);
    CHECK(std::abs(quad_exact - fd2) <= 0.05 * h);
  }
}

TEST_CASE("exact hessian matches the independence approximation at large T") {
  const Index t = 100000;
  const Matrix y = family_rows(6, 0, 0, t, 45);  // bounded moments, cube score
  const Score score(ScoreKind::Cube);
  const MomentSet m = compute_moments(y, score);
  const RelativeGradient g = relative_gradient(y, score, m.signs);

  RelativeGradient quadratic_only = g;
  quadratic_only.g = sym_part(g.g);

  Rng rng(46);
  for (int rep = 0; rep < 5; ++rep) {
    Matrix e = random_skew(rng, 6);
    e /= e.norm();
    const double exact =
        frobenius_inner(e, exact_hessian_apply(y, score, m.signs, e));
    const double approx = 2.0 * hessian_quadratic_form(quadratic_only, m, e);
    CHECK(std::abs(exact - approx) <= 10.0 / std::sqrt(double(t)) *
                                          std::abs(approx));
  }
}
