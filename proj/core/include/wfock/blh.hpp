#pragma once

#include "wfock/dilation.hpp"
#include "wfock/kernels.hpp"

namespace wfock {

struct BlhOptions {
  double invariance_tol = 1e-10;
  PoissonOptions poisson;
};

// Factorization of a joint invariant subspace S of a pure tuple T as the
// range of the partial isometry Pi = S ∘ Pi(T|S)^* : F_N(R) ⊗ D -> H,
// with D the defect space of T|S.
struct BlhFactorization {
  CMat pi;  // m x (total * defect_dim)
  Index defect_dim = 0;
  int degree = 0;
  double partial_isometry_residual = 0.0;  // ||Pi Pi* Pi - Pi||
  double range_residual = 0.0;             // ||Pi Pi* - P_S||
  std::vector<double> intertwine_residuals;  // ||T_i Pi - Pi (W_i ⊗ I)||
  std::vector<double> restriction_purity;    // ||Phi_{T|S}^n(I)||
  double invariance_witness = 0.0;           // max_i ||(I-P_S) T_i P_S||
  FockFrame frame;
  CMat subspace;  // orthonormalized S, m x s
  DefectData defect;
  OperatorTuple restricted;
};

// The subspace may be given as an isometry (m x s) or an orthogonal
// projection (m x m); it is orthonormalized internally either way.
BlhFactorization invariant_subspace_factor(const OperatorTuple& t, RadialData& rd,
                                           const CMat& subspace,
                                           const BlhOptions& opts = {});

// The multiplier symbol Theta(w) ∈ B(D, G) of a factorization living on the
// ambient H = F_N(R) ⊗ C^g with T = W ⊗ I_g: recovered from
// Pi^*(k_w ⊗ e_j) = k^R_w ⊗ Theta(w)^* e_j by projecting onto the truncated
// kernel vector. extraction_defect is the relative distance of Pi^*(k_w⊗e_j)
// from the pure tensor it should be.
struct MultiplierSymbol {
  CMat theta;  // g x defect_dim
  double extraction_defect = 0.0;
};

// Throws when the kernel vector's top-degree mass exceeds tail_tol: the
// truncation has not converged at such a point.
MultiplierSymbol multiplier_symbol(const BlhFactorization& blh,
                                   const FockFrame& ambient, const RadialData& rd,
                                   const CVec& w, int g, double tail_tol = 0.1);

// Gram test of the defect kernel A(z,w) = K(z,w) I_G - Theta(z) K^R(z,w) Theta(w)^*
// over sample points, with the kernels evaluated at the same truncation as
// the kernel vectors.
CpReport theta_defect_gram(const BlhFactorization& blh, const FockFrame& ambient,
                           const RadialData& rd, const std::vector<CVec>& points,
                           int g, double tol = 1e-7);

}  // namespace wfock
