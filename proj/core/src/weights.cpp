#include "wfock/weights.hpp"

#include <cmath>
#include <limits>

#include "wfock/linalg.hpp"
#include "wfock/words.hpp"

namespace wfock {

// Dense d^k x d^k radial matrices stop here; a degree past this cap is a
// few hundred MB and an hour of eigensolver time.
constexpr std::size_t kDenseRadialCap = 4096;

const CMat& WeightSequence::weight(int k) const {
  if (!has_weight(k)) throw InputError("WeightSequence::weight: k out of support");
  return X.at(static_cast<std::size_t>(k));
}

WeightSequence WeightSequence::from_scalars(const std::vector<double>& x) {
  if (x.empty()) throw InputError("from_scalars: need at least x_1");
  WeightSequence w;
  w.d = 1;
  w.kmax = static_cast<int>(x.size());
  w.X.resize(x.size() + 1);
  for (std::size_t k = 1; k <= x.size(); ++k) {
    w.X[k] = CMat::Constant(1, 1, x[k - 1]);
  }
  return w;
}

WeightSequence WeightSequence::drury_arveson(int d) {
  WeightSequence w;
  w.d = d;
  w.kmax = 1;
  w.X.resize(2);
  w.X[1] = CMat::Identity(d, d);
  return w;
}

AdmissibilityReport validate_admissible(const WeightSequence& x, double eps_inv,
                                        double eps_psd) {
  AdmissibilityReport report;
  report.min_eigenvalue = 0.0;
  bool shapes_ok = x.d >= 1 && x.kmax >= 1 &&
                   x.X.size() == static_cast<std::size_t>(x.kmax) + 1;
  std::string shape_detail;
  if (shapes_ok) {
    for (int k = 1; k <= x.kmax; ++k) {
      const Index dim = static_cast<Index>(tensor_dim(x.d, k));
      const CMat& xk = x.X[static_cast<std::size_t>(k)];
      if (xk.rows() != dim || xk.cols() != dim) {
        shapes_ok = false;
        shape_detail = "X_" + std::to_string(k) + " is " + std::to_string(xk.rows()) +
                       "x" + std::to_string(xk.cols()) + ", expected " +
                       std::to_string(dim) + "x" + std::to_string(dim);
        break;
      }
    }
  } else {
    shape_detail = "weight list inconsistent with kmax";
  }
  report.conditions.push_back({"shapes d^k x d^k", shapes_ok, 0.0, shape_detail});
  if (!shapes_ok) throw InputError("validate_admissible: " + shape_detail);

  Eigen::JacobiSVD<CMat> svd(x.weight(1));
  report.x1_min_singular_value = svd.singularValues().minCoeff();
  report.conditions.push_back({"X_1 invertible (min singular value >= eps_inv)",
                               report.x1_min_singular_value >= eps_inv,
                               report.x1_min_singular_value, ""});

  double min_eig = std::numeric_limits<double>::infinity();
  double max_herm = 0.0;
  double growth = 0.0;
  for (int k = 1; k <= x.kmax; ++k) {
    const CMat& xk = x.weight(k);
    max_herm = std::max(max_herm, hermitian_residual(xk));
    min_eig = std::min(min_eig, min_eig_hermitian(xk));
    growth = std::max(growth, std::pow(op_norm(xk), 1.0 / k));
  }
  report.min_eigenvalue = min_eig;
  report.max_hermitian_residual = max_herm;
  report.growth = growth;
  report.conditions.push_back(
      {"X_k hermitian (residual <= 1e-12)", max_herm <= 1e-12, max_herm, ""});
  report.conditions.push_back(
      {"X_k PSD (min eigenvalue >= -eps_psd)", min_eig >= -eps_psd, min_eig, ""});
  // limsup ||X_k||^(1/k) < inf is automatic for finite support; record it.
  report.conditions.push_back({"growth max_k ||X_k||^(1/k) finite", true, growth, ""});

  report.admissible = true;
  for (const auto& c : report.conditions) report.admissible = report.admissible && c.pass;
  return report;
}

namespace {

// Shared tail of the two radial constructions: square roots, Z_k, zbound.
void finish_radial(RadialData& rd, int from_degree, double psd_tol) {
  rd.R.resize(rd.R2.size());
  rd.Z.resize(rd.R2.size());
  if (from_degree == 0) {
    rd.R[0] = CMat::Identity(1, 1);
    rd.Z[0] = CMat::Identity(1, 1);
    from_degree = 1;
  }
  const int d = rd.weights.d;
  for (int k = from_degree; k <= rd.degree; ++k) {
    const auto ks = static_cast<std::size_t>(k);
    const double min_eig = min_eig_hermitian(rd.R2[ks]);
    const double scale = std::max(1.0, op_norm(rd.R2[ks]));
    if (min_eig < -psd_tol * scale)
      throw InputError("radial data: R_" + std::to_string(k) +
                       "^2 not PSD (min eigenvalue " + std::to_string(min_eig) + ")");
    rd.R[ks] = psd_sqrt(rd.R2[ks], psd_tol);
    // Z_k solves R_k Z_k = I_d ⊗ R_{k-1}; LDLT rather than explicit inverse.
    const CMat rhs = kron(CMat::Identity(d, d), rd.R[ks - 1]);
    rd.Z[ks] = rd.R[ks].ldlt().solve(rhs);
    rd.zbound = std::max(rd.zbound, op_norm(rd.Z[ks]));
  }
}

}  // namespace

RadialData radial_from_recursion(const WeightSequence& x, int n, double psd_tol) {
  RadialData rd;
  rd.weights = x;
  rd.degree = -1;
  rd.R2.push_back(CMat::Identity(1, 1));
  rd.degree = 0;
  finish_radial(rd, 0, psd_tol);
  extend_radial(rd, n, psd_tol);
  return rd;
}

void extend_radial(RadialData& rd, int n, double psd_tol) {
  if (n <= rd.degree) return;
  const WeightSequence& x = rd.weights;
  for (int k = rd.degree + 1; k <= n; ++k) {
    const Index dim = static_cast<Index>(tensor_dim(x.d, k, kDenseRadialCap));
    CMat r2 = CMat::Zero(dim, dim);
    for (int l = 1; l <= std::min(k, x.kmax); ++l)
      r2 += kron(x.weight(l), rd.r2(k - l));
    rd.R2.push_back(std::move(r2));
  }
  const int from = rd.degree + 1;
  rd.degree = n;
  finish_radial(rd, from, psd_tol);
}

RadialData radial_from_compositions(const WeightSequence& x, int n, double psd_tol) {
  RadialData rd;
  rd.weights = x;
  rd.degree = n;
  rd.R2.resize(static_cast<std::size_t>(n) + 1);
  rd.R2[0] = CMat::Identity(1, 1);
  for (int k = 1; k <= n; ++k) {
    const Index dim = static_cast<Index>(tensor_dim(x.d, k, kDenseRadialCap));
    CMat r2 = CMat::Zero(dim, dim);
    const CompositionSet comps = compositions(k);
    for (int l = 1; l <= k; ++l) {
      for (const auto& alpha : comps.of_length(l)) {
        bool supported = true;
        for (int part : alpha)
          if (part > x.kmax) { supported = false; break; }
        if (!supported) continue;  // X_part = 0 beyond the support
        CMat term = x.weight(alpha[0]);
        for (std::size_t i = 1; i < alpha.size(); ++i)
          term = kron(term, x.weight(alpha[i]));
        r2 += term;
      }
    }
    rd.R2[static_cast<std::size_t>(k)] = std::move(r2);
  }
  finish_radial(rd, 0, psd_tol);
  return rd;
}

double radial_max_difference(const RadialData& a, const RadialData& b) {
  // The two routes construct R_k^2; R_k and Z_k come out of the same
  // deterministic post-processing, and the square root would amplify an
  // R^2 difference eps to sqrt(eps) on ill-conditioned weights.
  const int n = std::min(a.degree, b.degree);
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) worst = std::max(worst, op_norm(a.r2(k) - b.r2(k)));
  return worst;
}

ScalarSeriesCheck scalar_series_check(const std::vector<double>& x, int n) {
  if (x.empty()) throw InputError("scalar_series_check: empty sequence");
  const int kmax = static_cast<int>(x.size());
  ScalarSeriesCheck out;
  out.r2.assign(static_cast<std::size_t>(n) + 1, 0.0);
  out.r2[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= std::min(k, kmax); ++l)
      out.r2[static_cast<std::size_t>(k)] += x[static_cast<std::size_t>(l - 1)] *
                                             out.r2[static_cast<std::size_t>(k - l)];

  // Independent route: standard power-series reciprocal of f = 1 - sum x_k z^k.
  std::vector<double> f(static_cast<std::size_t>(n) + 1, 0.0);
  f[0] = 1.0;
  for (int k = 1; k <= std::min(n, kmax); ++k) f[static_cast<std::size_t>(k)] = -x[static_cast<std::size_t>(k - 1)];
  std::vector<double> inv(static_cast<std::size_t>(n) + 1, 0.0);
  inv[0] = 1.0 / f[0];
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += f[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(k - j)];
    inv[static_cast<std::size_t>(k)] = -s / f[0];
  }

  // Coefficients of (1 - sum x_k z^k)(sum r_k^2 z^k) minus 1.
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    double coeff = out.r2[static_cast<std::size_t>(k)];
    for (int l = 1; l <= std::min(k, kmax); ++l)
      coeff -= x[static_cast<std::size_t>(l - 1)] * out.r2[static_cast<std::size_t>(k - l)];
    worst = std::max(worst, std::abs(coeff - (k == 0 ? 1.0 : 0.0)));
    worst = std::max(worst, std::abs(out.r2[static_cast<std::size_t>(k)] - inv[static_cast<std::size_t>(k)]));
  }
  out.max_mismatch = worst;
  return out;
}

WeightSequence random_admissible(Rng& rng, int d, int kmax, double mass) {
  WeightSequence w;
  w.d = d;
  w.kmax = kmax;
  w.X.resize(static_cast<std::size_t>(kmax) + 1);
  double total = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const Index dim = static_cast<Index>(tensor_dim(d, k));
    const CMat a = rng.cgaussian_matrix(dim, dim);
    w.X[static_cast<std::size_t>(k)] = a * a.adjoint();
    total += op_norm(w.X[static_cast<std::size_t>(k)]);
  }
  for (int k = 1; k <= kmax; ++k) w.X[static_cast<std::size_t>(k)] *= mass / total;
  return w;
}

}  // namespace wfock
