#include "picardo/lbfgs.hpp"

#include <vector>

#include "picardo/core_linalg.hpp"

namespace picardo {

void LbfgsMemory::push(const Matrix& step, const Matrix& grad_diff) {
  const double inner = frobenius_inner(step, grad_diff);
  if (!(inner > 1e-12 * step.norm() * grad_diff.norm())) return;
  Entry entry{step, grad_diff, mode_ == RhoMode::Reciprocal ? 1.0 / inner : inner};
  entries_.push_back(std::move(entry));
  while (int(entries_.size()) > capacity_) entries_.pop_front();
}

Matrix two_loop_direction(const RelativeGradient& g, const Preconditioner& precond,
                          const LbfgsMemory& memory) {
  Matrix q = -g.g_minus;
  const auto& entries = memory.entries();

  std::vector<double> a(entries.size());
  for (int l = int(entries.size()) - 1; l >= 0; --l) {
    a[l] = entries[l].rho * frobenius_inner(entries[l].step, q);
    q -= a[l] * entries[l].grad_diff;
  }

  Matrix d = q;
  const Index n = q.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) d(i, j) /= precond.curvature(i, j);

  for (size_t l = 0; l < entries.size(); ++l) {
    const double beta = entries[l].rho * frobenius_inner(entries[l].grad_diff, d);
    d += entries[l].step * (a[l] - beta);
  }
  return d;
}

}  // namespace picardo
