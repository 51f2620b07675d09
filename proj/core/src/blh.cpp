#include "wfock/blh.hpp"

#include <cmath>

#include "wfock/linalg.hpp"

namespace wfock {

BlhFactorization invariant_subspace_factor(const OperatorTuple& t, RadialData& rd,
                                           const CMat& subspace,
                                           const BlhOptions& opts) {
  if (subspace.rows() != t.m)
    throw InputError("invariant_subspace_factor: subspace row count != dim H");
  BlhFactorization out;
  out.subspace = orthonormal_range(subspace, 1e-12);
  if (out.subspace.cols() == 0)
    throw InputError("invariant_subspace_factor: subspace is trivial");
  const CMat& s = out.subspace;
  const Index m = t.m;
  const CMat p_s = s * s.adjoint();
  const CMat complement = CMat::Identity(m, m) - p_s;

  double witness = 0.0;
  for (int i = 0; i < t.d; ++i)
    witness = std::max(witness, op_norm(CMat(complement * t.op(i) * p_s)));
  out.invariance_witness = witness;
  if (witness > opts.invariance_tol)
    throw InvarianceError("subspace not jointly invariant: max ||(I-P_S) T_i P_S|| = " +
                          std::to_string(witness));

  out.restricted = restrict_tuple(t, s);
  // A pure T forces T|S pure on an invariant S; a certification failure
  // here signals a tolerance or truncation breach and surfaces as
  // PurityError from poisson() with the purity trace.
  PoissonOperator po = poisson(out.restricted, rd, opts.poisson);
  out.restriction_purity = po.membership.purity;
  out.defect = po.defect;
  out.defect_dim = po.defect.rank;
  out.degree = po.degree;

  out.pi = s * po.pi.adjoint();  // iota_S ∘ Pi_S^*
  const CMat pi_pi_star = out.pi * out.pi.adjoint();
  out.partial_isometry_residual = op_norm(CMat(pi_pi_star * out.pi - out.pi));
  out.range_residual = op_norm(CMat(pi_pi_star - p_s));

  const ShiftTuple shift = build_shift(po.frame, rd);
  const CMat eye_d = CMat::Identity(out.defect_dim, out.defect_dim);
  for (int i = 0; i < t.d; ++i) {
    const CMat lhs = t.op(i) * out.pi;
    const CMat rhs = out.pi * kron(shift.op(i), eye_d);
    out.intertwine_residuals.push_back(op_norm(CMat(lhs - rhs)));
  }
  out.frame = std::move(po.frame);
  return out;
}

namespace {

CVec kron_vec(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

MultiplierSymbol multiplier_symbol(const BlhFactorization& blh,
                                   const FockFrame& ambient, const RadialData& rd,
                                   const CVec& w, int g, double tail_tol) {
  if (ambient.total * g != blh.pi.rows())
    throw InputError("multiplier_symbol: ambient frame does not match Pi");
  if (scalar_phi(rd.weights, w) >= 1.0)
    throw InputError("multiplier_symbol: point not in D(X,C)");
  const Index rank = blh.defect_dim;
  const CVec u_ambient = kernel_vector(ambient, rd, w, ambient.degree);
  // The truncated kernel vector must have converged: a heavy top-degree
  // component means w sits too close to the boundary for this truncation.
  const double top_mass =
      u_ambient.tail(ambient.dim(ambient.degree)).norm() / u_ambient.norm();
  if (top_mass > tail_tol)
    throw InputError("multiplier_symbol: kernel vector tail " + std::to_string(top_mass) +
                     " at degree " + std::to_string(ambient.degree) +
                     ", point too close to the boundary for this truncation");
  const CVec u_domain = kernel_vector(blh.frame, rd, w, blh.frame.degree);
  const double u2 = u_domain.squaredNorm();

  MultiplierSymbol symbol;
  symbol.theta = CMat(g, rank);
  for (int j = 0; j < g; ++j) {
    CVec e = CVec::Zero(g);
    e(j) = 1.0;
    const CVec y = blh.pi.adjoint() * kron_vec(u_ambient, e);
    // y should be u_domain ⊗ theta_j; project out theta_j.
    const CMat ymat = Eigen::Map<const CMat>(y.data(), rank, blh.frame.total);
    const CVec theta_j = (ymat * u_domain.conjugate()) / u2;
    symbol.theta.row(j) = theta_j.adjoint();
    const double defect = (y - kron_vec(u_domain, theta_j)).norm();
    symbol.extraction_defect =
        std::max(symbol.extraction_defect, defect / u_ambient.norm());
  }
  return symbol;
}

CpReport theta_defect_gram(const BlhFactorization& blh, const FockFrame& ambient,
                           const RadialData& rd, const std::vector<CVec>& points,
                           int g, double tol) {
  const Index n = static_cast<Index>(points.size());
  std::vector<MultiplierSymbol> symbols;
  std::vector<CVec> u_amb, u_dom;
  for (const auto& z : points) {
    symbols.push_back(multiplier_symbol(blh, ambient, rd, z, g));
    u_amb.push_back(kernel_vector(ambient, rd, z, ambient.degree));
    u_dom.push_back(kernel_vector(blh.frame, rd, z, blh.frame.degree));
  }
  CMat gram(n * g, n * g);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      // Kernel values at the same truncations as the kernel vectors.
      const Complex k_ij = u_amb[static_cast<std::size_t>(i)].dot(u_amb[static_cast<std::size_t>(j)]);
      const Complex kr_ij = u_dom[static_cast<std::size_t>(i)].dot(u_dom[static_cast<std::size_t>(j)]);
      const CMat block =
          k_ij * CMat::Identity(g, g) -
          kr_ij * (symbols[static_cast<std::size_t>(i)].theta *
                   symbols[static_cast<std::size_t>(j)].theta.adjoint());
      gram.block(i * g, j * g, g, g) = block;
    }
  CpReport report;
  report.tol = tol;
  report.certificate_dim = n * g;
  report.gram_min_eig = min_eig_hermitian(gram);
  report.pass = report.gram_min_eig >= -tol * std::max(1.0, op_norm(gram));
  return report;
}

}  // namespace wfock
