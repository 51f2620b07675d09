#include "wfock/dilation.hpp"

#include <cmath>

#include "wfock/linalg.hpp"
#include "wfock/words.hpp"

namespace wfock {

int default_degree_cap(int d) {
  if (d <= 1) return 24;
  if (d == 2) return 10;
  return 7;
}

namespace {

// (A ⊗ B) vec(M) = vec(B M A^T) without forming the Kronecker factor.
CMat apply_kron(const CMat& a, const CMat& b, const CMat& columns, Index inner_rows) {
  // columns: (inner_rows * a.cols()) x n, each column = vec of an
  // inner_rows x a.cols() matrix.
  CMat out(b.rows() * a.rows(), columns.cols());
  for (Index c = 0; c < columns.cols(); ++c) {
    const CMat m = unvec(columns.col(c), inner_rows, a.cols());
    const CMat image = b * m * a.transpose();
    out.col(c) = Eigen::Map<const CVec>(image.data(), image.size());
  }
  return out;
}

}  // namespace

PoissonOperator poisson(const OperatorTuple& t, RadialData& rd,
                        const PoissonOptions& opts) {
  if (t.d != rd.weights.d) throw InputError("poisson: alphabet size mismatch");
  PoissonOperator po;
  po.membership = classify(t, rd.weights, opts.purity_iters, opts.purity_tol,
                           opts.boundary_tol, opts.commuting_tol);
  if (!po.membership.commuting)
    throw InputError("poisson: tuple not commuting (max commutator " +
                     std::to_string(po.membership.commutator_max) + ")");
  if (po.membership.domain == DomainClass::Outside)
    throw InputError("poisson: ||Phi_T(I)|| = " + std::to_string(po.membership.phi_norm) +
                     " > 1, tuple outside the closed domain");
  if (!po.membership.pure_certified)
    throw PurityError("poisson: purity not certified after " +
                      std::to_string(po.membership.purity_steps) + " iterations, " +
                      "||Phi^n(I)|| = " + std::to_string(po.membership.purity.back()));

  po.defect = defect(t, rd.weights, opts.boundary_tol);
  const Index m = t.m;
  const Index rank = po.defect.rank;
  const CMat compressed_delta = po.defect.basis.adjoint() * po.defect.delta;  // rank x m

  // Degree blocks Pi_k = ((V_k^* R_k) ⊗ (U_delta^* Delta)) T^(k)*; the
  // Gram sum_k Pi_k^* Pi_k climbs to I for pure tuples, and the degree
  // stops as soon as ||Gram - I|| <= tol.
  const int cap = opts.degree_cap > 0 ? opts.degree_cap : default_degree_cap(t.d);
  FockFrame frame;
  frame.d = t.d;
  frame.degree = -1;

  std::vector<CMat> blocks;
  int n = 0;
  CMat gram = CMat::Zero(m, m);
  double residual = 1.0;
  for (int k = 0; k <= cap; ++k) {
    extend_radial(rd, k);
    extend_frame(frame, rd, k);
    const CMat tk_star = tuple_power(t, k).adjoint();  // (d^k m) x m
    const CMat reduced_r = frame.frame(k).adjoint() * rd.r(k);  // D_k x d^k
    blocks.push_back(apply_kron(reduced_r, compressed_delta, tk_star, m));
    gram += blocks.back().adjoint() * blocks.back();
    residual = op_norm(gram - CMat::Identity(m, m));
    n = k;
    if (residual <= opts.tol) break;
  }
  po.degree = n;
  po.frame = std::move(frame);

  po.pi = CMat::Zero(po.frame.total * rank, m);
  for (int k = 0; k <= n; ++k)
    po.pi.middleRows(po.frame.offset(k) * rank, po.frame.dim(k) * rank) =
        blocks[static_cast<std::size_t>(k)];
  po.isometry_residual = residual;
  return po;
}

double intertwine_residual(const PoissonOperator& po, const OperatorTuple& t,
                           const ShiftTuple& shift) {
  if (shift.degree != po.degree)
    throw InputError("intertwine_residual: shift truncation differs from Pi");
  const Index rank = po.defect.rank;
  const Index rows = po.frame.offset(po.degree) * rank;  // degrees <= N-1
  double worst = 0.0;
  for (int i = 0; i < t.d; ++i) {
    const CMat lhs = po.pi * t.op(i).adjoint();
    const CMat rhs = kron(shift.op(i), CMat::Identity(rank, rank)).adjoint() * po.pi;
    worst = std::max(worst, op_norm(CMat(lhs.topRows(rows) - rhs.topRows(rows))));
  }
  return worst;
}

OperatorTuple shift_times_identity(const ShiftTuple& shift, int g) {
  OperatorTuple t;
  t.d = shift.d;
  t.m = static_cast<int>(shift.W[0].rows()) * g;
  const CMat eye = CMat::Identity(g, g);
  for (int i = 0; i < shift.d; ++i) t.T.push_back(kron(shift.op(i), eye));
  return t;
}

}  // namespace wfock
