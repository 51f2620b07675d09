#pragma once

#include <limits>
#include <vector>

#include "wfock/tuples.hpp"

namespace wfock {

// Truncation policy for kernel sums sum_k V^(k) (R_k^2 ⊗ a) W^(k)*.
// The sum stops once the last `settle` increments stay below tol/10 AND the
// geometric tail bound (Cauchy-Schwarz against the Neumann series of Phi)
// drops below tol — or at max_degree, or when the dense R_k^2 would outgrow
// max_matrix_dim rows. The achieved bound is always reported.
struct KernelOptions {
  double tol = 1e-10;
  int max_degree = 64;
  Index max_matrix_dim = 2048;
  int settle = 3;
  std::size_t cap = kDefaultTensorCap;
};

struct KernelValue {
  CMat value;
  double tail_bound = 0.0;
  int degrees_used = 0;
};

struct ScalarKernelValue {
  Complex value;
  double tail_bound = 0.0;
  int degrees_used = 0;
};

// K^R_c(V,W)(a), truncated. V, W must be strictly inside D(X,H); on or past
// the boundary no convergent tail bound exists and the call throws.
KernelValue kernel_map(const RadialData& rd, const OperatorTuple& v,
                       const OperatorTuple& w, const CMat& a,
                       const KernelOptions& opts = {});

// Scalar kernel K^R(z,w) = sum_k z^(k) R_k^2 w^(k)*.
ScalarKernelValue kernel_scalar(const RadialData& rd, const CVec& z, const CVec& w,
                                const KernelOptions& opts = {});

// The m^2 x m^2 matrix of the map a -> K^R_c(V,W)(a) on vec(a).
KernelValue kernel_map_matrix(const RadialData& rd, const OperatorTuple& v,
                              const OperatorTuple& w, const KernelOptions& opts = {});

// Matrix of a -> Phi_T,L(a) on vec(a).
CMat phi_pair_matrix(const OperatorTuple& t, const OperatorTuple& l,
                     const WeightSequence& x, std::size_t cap = kDefaultTensorCap);

// ||(id - Phi_{T,L})(K^R_c(T,L)(a)) - a||: the truncated-degree kernel sum
// checked against the map it should invert.
double neumann_identity_residual(const RadialData& rd, const OperatorTuple& t,
                                 const OperatorTuple& l, const CMat& a,
                                 const KernelOptions& opts = {});

// A sampled map-valued kernel: values[i][j] is the m^2 x m^2 matrix of
// a -> K(V_i, V_j)(a).
struct KernelSample {
  int m = 1;
  std::vector<OperatorTuple> points;
  std::vector<CMat> ops;  // optional a_i
  std::vector<std::vector<CMat>> values;
  double max_tail_bound = 0.0;
};

KernelSample sample_kernel(const RadialData& rd, const std::vector<OperatorTuple>& points,
                           const KernelOptions& opts = {});

// max over (i,j) of ||K(V_i,V_j)(a)^* - K(V_j,V_i)(a^*)||.
double hermitian_symmetry_residual(const KernelSample& sample, const CMat& a);

struct CpReport {
  bool pass = false;
  double tol = 1e-9;
  double choi_min_eig = std::numeric_limits<double>::quiet_NaN();
  double gram_min_eig = std::numeric_limits<double>::quiet_NaN();
  Index certificate_dim = 0;
  // Contractivity only: max block difference between the (id - Phi) route
  // and the K^R-inverse route.
  double route_agreement = std::numeric_limits<double>::quiet_NaN();
};

// Complete positivity of the sampled kernel, certified via the Choi matrix
// of the map (a_ij) -> (K(V_i,V_j)(a_ij)) on M_n(B(H)). For m = 1 this is
// the Gram matrix (K(z_i,z_j))_ij. Verdicts are over the sample only.
CpReport choi_cp_check(const KernelSample& sample, double tol = 1e-9,
                       Index sample_cap = 16);

// Choi test of a single map on B(C^m).
CpReport choi_of_map_check(const CMat& map_matrix, Index m, double tol = 1e-9);

// A finitely truncated weight family G_k^2 defining the kernel
// K(V,W)(a) = sum_k V^(k) (G_k^2 ⊗ a) W^(k)*.
struct WeightFamily {
  int d = 1;
  std::vector<CMat> G2;  // degree k = 0 .. G2.size()-1

  int top_degree() const { return static_cast<int>(G2.size()) - 1; }
};

WeightFamily kr_family(const RadialData& rd, int upto);

// Constant family B_k = delta_k0 (the identity kernel).
WeightFamily point_family(int d, int upto);

// Convolution weights C_k^2 = sum_{m=0..k} R_m^2 ⊗ B_{k-m}^2 of the
// factored kernel K^C = K^R_c ∘ K^B.
WeightFamily kc_weights(const RadialData& rd, const WeightFamily& b, int upto);

CMat kernel_from_family(const WeightFamily& family, const OperatorTuple& v,
                        const OperatorTuple& w, const CMat& a,
                        std::size_t cap = kDefaultTensorCap);

// The m^2 x m^2 matrix of a -> K(V,W)(a) for a truncated weight family.
CMat kernel_family_map_matrix(const WeightFamily& family, const OperatorTuple& v,
                              const OperatorTuple& w,
                              std::size_t cap = kDefaultTensorCap);

// Sampled kernel of a truncated family over a point list.
KernelSample sample_family_kernel(const WeightFamily& family,
                                  const std::vector<OperatorTuple>& points,
                                  std::size_t cap = kDefaultTensorCap);

// || K^C(V,W)(a) - K^R_c(V,W)(K^B(V,W)(a)) || with both sides truncated at
// the same total degree.
double kc_factorization_residual(const RadialData& rd, const WeightFamily& b,
                                 const WeightFamily& c, const OperatorTuple& v,
                                 const OperatorTuple& w, const CMat& a,
                                 std::size_t cap = kDefaultTensorCap);

// Subtracts factor * R_{k0}^2 from G_{k0}^2: the hand-built counterexample
// family that must fail the contractivity test.
WeightFamily corrupt_family(WeightFamily family, const RadialData& rd, int k0,
                            double factor);

// Factorization certificate for a sampled kernel: builds the
// matrix ((id - Phi_{T_i,T_j}) ∘ K(T_i,T_j)(a_i a_j^*)) and tests PSD.
// Route 2 applies K^R_c(T_i,T_j)^{-1} (linear solve against the assembled
// kernel map) instead; both eigenvalues and their agreement are reported.
CpReport contractivity_check(const WeightFamily& family, const RadialData& rd,
                             const std::vector<OperatorTuple>& points,
                             const std::vector<CMat>& ops, double tol = 1e-9,
                             const KernelOptions& opts = {});

// Gram test of K''(z,w) = (C - <z,w>) K^R(z,w) with C = zbound^2; pass
// certifies the coordinate functions as multipliers on the sample.
CpReport multiplier_defect_check(const RadialData& rd, const std::vector<CVec>& points,
                                 double tol = 1e-9, KernelOptions opts = {});

// Matrix of a -> Phi_T(a) on vec(a).
CMat phi_map_matrix(const OperatorTuple& t, const WeightSequence& x,
                    std::size_t cap = kDefaultTensorCap);

}  // namespace wfock
