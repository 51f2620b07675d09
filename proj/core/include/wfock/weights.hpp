#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wfock/rng.hpp"
#include "wfock/types.hpp"

namespace wfock {

// Finitely supported admissible weight sequence: X_k is a d^k x d^k PSD
// matrix for 1 <= k <= kmax, X_1 invertible, X_k = 0 for k > kmax.
struct WeightSequence {
  int d = 1;
  int kmax = 1;
  std::vector<CMat> X;  // X[k] for k in [1, kmax]; X[0] is an empty placeholder

  const CMat& weight(int k) const;
  bool has_weight(int k) const { return k >= 1 && k <= kmax; }

  static WeightSequence from_scalars(const std::vector<double>& x);
  static WeightSequence drury_arveson(int d);  // X_1 = I_d, nothing else
};

struct AdmissibilityCondition {
  std::string name;
  bool pass = false;
  double witness = 0.0;
  std::string detail;
};

struct AdmissibilityReport {
  bool admissible = false;
  double x1_min_singular_value = 0.0;
  double min_eigenvalue = 0.0;        // over all X_k
  double max_hermitian_residual = 0.0;
  double growth = 0.0;                // max_k ||X_k||^(1/k)
  std::vector<AdmissibilityCondition> conditions;
};

AdmissibilityReport validate_admissible(const WeightSequence& x,
                                        double eps_inv = 1e-10,
                                        double eps_psd = 1e-10);

// Radial data R_k = (sum over compositions of tensor products of X)^1/2,
// Z_k = R_k^{-1}(I_d ⊗ R_{k-1}), computed to a truncation degree.
struct RadialData {
  WeightSequence weights;
  int degree = 0;          // N
  std::vector<CMat> R2;    // k = 0..N, R2[0] = [1]
  std::vector<CMat> R;     // PSD square roots
  std::vector<CMat> Z;     // k = 0..N, Z[0] = [1]
  double zbound = 0.0;     // max_k ||Z_k||

  const CMat& r2(int k) const { return R2.at(static_cast<std::size_t>(k)); }
  const CMat& r(int k) const { return R.at(static_cast<std::size_t>(k)); }
  const CMat& z(int k) const { return Z.at(static_cast<std::size_t>(k)); }
};

// R_k^2 by the convolution recursion R_k^2 = sum_l X_l ⊗ R_{k-l}^2.
RadialData radial_from_recursion(const WeightSequence& x, int n,
                                 double psd_tol = 1e-10);

// R_k^2 by direct enumeration of compositions F(k,l); the independent
// oracle for radial_from_recursion.
RadialData radial_from_compositions(const WeightSequence& x, int n,
                                    double psd_tol = 1e-10);

// Appends degrees degree+1 .. n in place (recursion route).
void extend_radial(RadialData& rd, int n, double psd_tol = 1e-10);

double radial_max_difference(const RadialData& a, const RadialData& b);

// d = 1: verifies (1 - sum x_k z^k)(sum r_k^2 z^k) = 1 coefficient-wise up
// to degree n against an independently inverted power series; returns the
// maximum coefficient mismatch and the r_k^2 themselves.
struct ScalarSeriesCheck {
  std::vector<double> r2;
  double max_mismatch = 0.0;
};

ScalarSeriesCheck scalar_series_check(const std::vector<double>& x, int n);

// Test/CLI fixture generator: X_k = A_k A_k^* scaled so sum_k ||X_k|| = mass.
WeightSequence random_admissible(Rng& rng, int d, int kmax, double mass = 0.5);

}  // namespace wfock
