#include <doctest.h>

#include <cmath>

#include <Eigen/SVD>

#include "oracles.hpp"
#include "picardo/metrics.hpp"
#include "picardo/synth.hpp"

using namespace picardo;

TEST_CASE("identity mixing returns the sources unchanged") {
  DatasetSpec spec;
  spec.n_channels = 2;
  spec.n_samples = 10000;
  spec.n_uniform = 1;
  spec.n_laplace = 1;
  spec.mixing = MixingKind::Identity;
  spec.seed = 60;
  const SyntheticData data = gen_synthetic(spec);
  CHECK(data.x == data.sources);
  CHECK(data.mixing == Matrix::Identity(2, 2));

  const double tol = 3.0 / std::sqrt(double(spec.n_samples));
  for (Index i = 0; i < 2; ++i) {
    const double var = data.sources.row(i).array().square().mean();
    CHECK(std::abs(var - 1.0) <= tol);
    CHECK(std::abs(data.sources.row(i).mean()) <= tol);
  }
}

TEST_CASE("family kurtosis matches the textbook values") {
  DatasetSpec spec;
  spec.n_channels = 4;
  spec.n_samples = 100000;
  spec.n_uniform = 2;
  spec.n_laplace = 2;
  spec.mixing = MixingKind::Identity;
  spec.seed = 80;
  const SyntheticData data = gen_synthetic(spec);
  CHECK(oracles::excess_kurtosis(data.sources.row(0)) ==
        doctest::Approx(-1.2).epsilon(0.25));
  CHECK(oracles::excess_kurtosis(data.sources.row(1)) ==
        doctest::Approx(-1.2).epsilon(0.25));
  CHECK(std::abs(oracles::excess_kurtosis(data.sources.row(2)) - 3.0) <= 0.3);
  CHECK(std::abs(oracles::excess_kurtosis(data.sources.row(3)) - 3.0) <= 0.3);
}

TEST_CASE("same seed gives bit-identical datasets") {
  DatasetSpec spec;
  spec.seed = 81;
  const SyntheticData a = gen_synthetic(spec);
  const SyntheticData b = gen_synthetic(spec);
  CHECK(a.x == b.x);
  CHECK(a.mixing == b.mixing);
  CHECK(a.sources == b.sources);

  spec.seed = 82;
  CHECK(gen_synthetic(spec).x != a.x);
}

TEST_CASE("mixing matrices respect the conditioning guard") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DatasetSpec spec;
    spec.seed = seed;
    const SyntheticData data = gen_synthetic(spec);
    Eigen::JacobiSVD<Matrix> svd(data.mixing);
    CHECK(svd.singularValues().maxCoeff() /
              svd.singularValues().minCoeff() <=
          1e4);
    CHECK(data.mixing_redraws >= 0);
  }
}

TEST_CASE("AR(1) corpus keeps unit variance and the requested correlation") {
  DatasetSpec spec;
  spec.n_samples = 20000;
  spec.ar1_coeff = 0.9;
  spec.mixing = MixingKind::Identity;
  spec.seed = 83;
  const SyntheticData data = gen_synthetic(spec);
  for (Index i = 0; i < spec.n_channels; ++i) {
    const auto row = data.sources.row(i);
    const double var = row.array().square().mean();
    CHECK(std::abs(var - 1.0) <= 0.1);
    const Index t = spec.n_samples;
    const double lag1 =
        (row.head(t - 1).array() * row.tail(t - 1).array()).mean() / var;
    CHECK(lag1 == doctest::Approx(0.9).epsilon(0.05));
  }
}

TEST_CASE("dataset spec validation") {
  DatasetSpec spec;
  spec.n_uniform = 4;  // counts no longer sum to n_channels
  CHECK_THROWS_AS(spec.validate(), UsageError);
  spec = DatasetSpec{};
  spec.n_samples = 5;
  CHECK_THROWS_AS(spec.validate(), UsageError);
}

TEST_CASE("amari index is zero exactly on signed scaled permutations") {
  Rng rng(84);
  for (int rep = 0; rep < 100; ++rep) {
    const Index n = 3;
    // random permutation by sorting three draws
    std::array<Index, 3> perm{0, 1, 2};
    for (Index i = 2; i > 0; --i)
      std::swap(perm[size_t(i)], perm[rng.next_u64() % std::uint64_t(i + 1)]);
    Matrix p = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
      const double scale = (rng.uniform01() + 0.1) * (rng.uniform01() < 0.5 ? -1 : 1);
      p(i, perm[size_t(i)]) = scale;
    }
    CHECK(amari_index(p) == 0.0);

    // perturbed away from a permutation the index is strictly positive
    Matrix q = p;
    q(0, (perm[0] + 1) % n) += 0.05;
    CHECK(amari_index(q) > 1e-4);
  }
}

TEST_CASE("amari index named examples") {
  Matrix ones = Matrix::Ones(2, 2);
  CHECK(amari_index(ones) == doctest::Approx(1.0));

  // all-ones stays 1 at any size under this normalization
  CHECK(amari_index(Matrix(Matrix::Ones(5, 5))) == doctest::Approx(1.0));

  Matrix scaled_perm(2, 2);
  scaled_perm << 0, 3, -5, 0;
  CHECK(amari_index(scaled_perm) == 0.0);
}

TEST_CASE("amari index is invariant under permutations on either side") {
  Rng rng(85);
  Matrix p = oracles::random_matrix(rng, 3, 3);
  p += 3 * Matrix::Identity(3, 3);
  const double base = amari_index(p);

  std::vector<Eigen::PermutationMatrix<Eigen::Dynamic>> perms;
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end());
  do {
    Eigen::PermutationMatrix<Eigen::Dynamic> pm(3);
    for (int i = 0; i < 3; ++i) pm.indices()[i] = idx[size_t(i)];
    perms.push_back(pm);
  } while (std::next_permutation(idx.begin(), idx.end()));

  for (const auto& left : perms)
    for (const auto& right : perms)
      CHECK(amari_index(Matrix(left * p * right)) ==
            doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("amari index rejects degenerate input") {
  Matrix p = Matrix::Ones(3, 3);
  p.row(1).setZero();
  CHECK_THROWS_AS(amari_index(p), NumericalError);
  CHECK_THROWS_AS(amari_index(Matrix(Matrix::Ones(2, 3))), DimensionError);
}
