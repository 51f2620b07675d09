#include "wfock/kernels.hpp"

#include <cmath>
#include <deque>

#include "wfock/linalg.hpp"
#include "wfock/words.hpp"

namespace wfock {

namespace {

// Sequential source of R_k^2: precomputed degrees come from the radial
// data, later ones from the convolution recursion over a window of the
// last kmax matrices (nothing older is ever needed).
class R2Stream {
 public:
  explicit R2Stream(const RadialData& rd) : rd_(rd) {}

  const CMat& next() {
    ++k_;
    if (k_ <= rd_.degree) {
      recent_.push_front(rd_.r2(k_));
    } else {
      const WeightSequence& x = rd_.weights;
      const Index dim = static_cast<Index>(tensor_dim(x.d, k_, std::size_t(1) << 24));
      CMat r2 = CMat::Zero(dim, dim);
      for (int l = 1; l <= std::min(k_, x.kmax); ++l)
        r2 += kron(x.weight(l), recent_.at(static_cast<std::size_t>(l - 1)));
      recent_.push_front(std::move(r2));
    }
    while (recent_.size() > static_cast<std::size_t>(rd_.weights.kmax) + 1)
      recent_.pop_back();
    return recent_.front();
  }

  int degree() const { return k_; }

 private:
  const RadialData& rd_;
  int k_ = -1;
  std::deque<CMat> recent_;
};

// Columns of the row (T_alpha)_alpha stacked as vec(T_alpha).
CMat stack_blocks_vec(const CMat& row, Index m) {
  const Index words = row.cols() / m;
  CMat out(m * m, words);
  for (Index a = 0; a < words; ++a) {
    const CMat block = row.middleCols(a * m, m);
    out.col(a) = Eigen::Map<const CVec>(block.data(), m * m);
  }
  return out;
}

// sum_{alpha,beta} (G)_{alpha,beta} V_alpha a W_beta^* via one gemm over
// alpha and a short loop over beta.
CMat kernel_term(const CMat& g, const CMat& vf, const CMat& wrow, const CMat& a) {
  const Index m = a.rows();
  const CMat pf = vf * g;  // col beta = vec(sum_alpha G_{alpha,beta} V_alpha)
  CMat out = CMat::Zero(m, m);
  for (Index beta = 0; beta < g.cols(); ++beta)
    out += unvec(pf.col(beta), m, m) * a * wrow.middleCols(beta * m, m).adjoint();
  return out;
}

// Same contraction but as a map matrix on vec(a).
CMat kernel_term_matrix(const CMat& g, const CMat& vf, const CMat& wrow, Index m) {
  const CMat pf = vf * g;
  CMat out = CMat::Zero(m * m, m * m);
  for (Index beta = 0; beta < g.cols(); ++beta) {
    const CMat pb = unvec(pf.col(beta), m, m);
    const CMat wb = wrow.middleCols(beta * m, m);
    out += sandwich_matrix(pb, wb);
  }
  return out;
}

double strict_phi_norm(const OperatorTuple& t, const WeightSequence& x) {
  const double value = op_norm(phi(t, x, CMat::Identity(t.m, t.m)));
  if (value >= 1.0)
    throw InputError("kernel evaluation: tuple on or outside the domain boundary "
                     "(||Phi(I)|| = " + std::to_string(value) + "), no convergent tail bound");
  return value;
}

// Tail of the degree sum past L, via ||Psi_k|| <= phi^ceil(k/kmax)/(1-phi)
// and Cauchy-Schwarz across the two tuples.
double geometric_tail(double phi_v, double phi_w, int kmax, int last_degree,
                      double a_norm) {
  const double g = std::sqrt(phi_v * phi_w);
  if (g <= 0.0) return 0.0;
  const int l_min = (last_degree + kmax) / kmax;  // ceil((L+1)/kmax)
  return a_norm * kmax * std::pow(g, l_min) /
         ((1.0 - g) * std::sqrt((1.0 - phi_v) * (1.0 - phi_w)));
}

struct KernelLoop {
  const RadialData& rd;
  const OperatorTuple& v;
  const OperatorTuple& w;
  const KernelOptions& opts;
  double phi_v = 0.0, phi_w = 0.0;

  KernelLoop(const RadialData& rd_in, const OperatorTuple& v_in,
             const OperatorTuple& w_in, const KernelOptions& opts_in)
      : rd(rd_in), v(v_in), w(w_in), opts(opts_in) {
    if (v.d != rd.weights.d || w.d != rd.weights.d || v.m != w.m)
      throw InputError("kernel evaluation: dimension mismatch");
    phi_v = strict_phi_norm(v, rd.weights);
    phi_w = strict_phi_norm(w, rd.weights);
  }

  // Runs the truncation loop; `term` maps (R_k^2, vf, wrow) to the degree
  // contribution that gets accumulated into `value`.
  template <typename TermFn>
  void run(CMat& value, double& tail, int& degrees, double a_norm, TermFn&& term) {
    R2Stream stream(rd);
    stream.next();  // degree 0 handled by the caller's initial value
    degrees = 0;
    int small_streak = 0;
    tail = geometric_tail(phi_v, phi_w, rd.weights.kmax, 0, a_norm);
    for (int k = 1; k <= opts.max_degree; ++k) {
      try {
        tensor_dim(rd.weights.d, k, static_cast<std::size_t>(opts.max_matrix_dim));
      } catch (const CapExceededError&) {
        break;
      }
      const CMat& r2k = stream.next();
      const CMat vrow = tuple_power(v, k, opts.cap);
      const CMat wrow = tuple_power(w, k, opts.cap);
      const CMat vf = stack_blocks_vec(vrow, v.m);
      const CMat increment = term(r2k, vf, wrow);
      value += increment;
      degrees = k;
      small_streak = (increment.norm() <= opts.tol / 10.0) ? small_streak + 1 : 0;
      tail = geometric_tail(phi_v, phi_w, rd.weights.kmax, k, a_norm);
      if (small_streak >= opts.settle && tail <= opts.tol) break;
    }
  }
};

double scale_of(const CMat& a) { return std::max(1.0, op_norm(a)); }

}  // namespace

KernelValue kernel_map(const RadialData& rd, const OperatorTuple& v,
                       const OperatorTuple& w, const CMat& a,
                       const KernelOptions& opts) {
  if (a.rows() != v.m || a.cols() != v.m)
    throw InputError("kernel_map: argument dimension mismatch");
  KernelLoop loop(rd, v, w, opts);
  KernelValue out;
  out.value = a;
  loop.run(out.value, out.tail_bound, out.degrees_used, std::max(a.norm(), 1e-300),
           [&](const CMat& r2k, const CMat& vf, const CMat& wrow) {
             return kernel_term(r2k, vf, wrow, a);
           });
  return out;
}

ScalarKernelValue kernel_scalar(const RadialData& rd, const CVec& z, const CVec& w,
                                const KernelOptions& opts) {
  const KernelValue kv = kernel_map(rd, OperatorTuple::scalar_point(z),
                                    OperatorTuple::scalar_point(w),
                                    CMat::Identity(1, 1), opts);
  return {kv.value(0, 0), kv.tail_bound, kv.degrees_used};
}

KernelValue kernel_map_matrix(const RadialData& rd, const OperatorTuple& v,
                              const OperatorTuple& w, const KernelOptions& opts) {
  KernelLoop loop(rd, v, w, opts);
  KernelValue out;
  const Index m = v.m;
  out.value = CMat::Identity(m * m, m * m);
  loop.run(out.value, out.tail_bound, out.degrees_used, 1.0,
           [&](const CMat& r2k, const CMat& vf, const CMat& wrow) {
             return kernel_term_matrix(r2k, vf, wrow, m);
           });
  return out;
}

CMat phi_pair_matrix(const OperatorTuple& t, const OperatorTuple& l,
                     const WeightSequence& x, std::size_t cap) {
  const Index m = t.m;
  CMat out = CMat::Zero(m * m, m * m);
  for (int k = 1; k <= x.kmax; ++k) {
    const CMat trow = tuple_power(t, k, cap);
    const CMat lrow = tuple_power(l, k, cap);
    const CMat tf = stack_blocks_vec(trow, m);
    out += kernel_term_matrix(x.weight(k), tf, lrow, m);
  }
  return out;
}

CMat phi_map_matrix(const OperatorTuple& t, const WeightSequence& x, std::size_t cap) {
  return phi_pair_matrix(t, t, x, cap);
}

double neumann_identity_residual(const RadialData& rd, const OperatorTuple& t,
                                 const OperatorTuple& l, const CMat& a,
                                 const KernelOptions& opts) {
  const KernelValue kv = kernel_map(rd, t, l, a, opts);
  const CMat lhs = kv.value - phi_pair(t, l, rd.weights, kv.value, opts.cap);
  return op_norm(lhs - a);
}

KernelSample sample_kernel(const RadialData& rd, const std::vector<OperatorTuple>& points,
                           const KernelOptions& opts) {
  if (points.empty()) throw InputError("sample_kernel: empty sample");
  KernelSample sample;
  sample.m = points.front().m;
  sample.points = points;
  const Index m = sample.m;
  const std::size_t n = points.size();
  const int kmax = rd.weights.kmax;

  std::vector<double> phis;
  for (const auto& p : points) {
    if (p.d != rd.weights.d || p.m != m)
      throw InputError("sample_kernel: dimension mismatch");
    phis.push_back(strict_phi_norm(p, rd.weights));
  }

  sample.values.assign(n, std::vector<CMat>(n, CMat::Identity(m * m, m * m)));

  // One shared pass over degrees: the radial stream and the tuple rows are
  // reused by every pair.
  auto worst_tail = [&](int degree) {
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        tail = std::max(tail, geometric_tail(phis[i], phis[j], kmax, degree, 1.0));
    return tail;
  };

  R2Stream stream(rd);
  stream.next();
  double tail = worst_tail(0);
  int streak = 0;
  for (int k = 1; k <= opts.max_degree; ++k) {
    try {
      tensor_dim(rd.weights.d, k, static_cast<std::size_t>(opts.max_matrix_dim));
    } catch (const CapExceededError&) {
      break;
    }
    const CMat& r2k = stream.next();
    std::vector<CMat> rows, vfs;
    for (const auto& p : points) {
      rows.push_back(tuple_power(p, k, opts.cap));
      vfs.push_back(stack_blocks_vec(rows.back(), m));
    }
    double max_increment = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const CMat increment = kernel_term_matrix(r2k, vfs[i], rows[j], m);
        sample.values[i][j] += increment;
        max_increment = std::max(max_increment, increment.norm());
      }
    streak = (max_increment <= opts.tol / 10.0) ? streak + 1 : 0;
    tail = worst_tail(k);
    if (streak >= opts.settle && tail <= opts.tol) break;
  }
  sample.max_tail_bound = tail;
  return sample;
}

double hermitian_symmetry_residual(const KernelSample& sample, const CMat& a) {
  const Index m = sample.m;
  double worst = 0.0;
  for (std::size_t i = 0; i < sample.points.size(); ++i)
    for (std::size_t j = 0; j < sample.points.size(); ++j) {
      const CMat lhs = unvec(sample.values[i][j] * vec(a), m, m).adjoint();
      const CMat rhs = unvec(sample.values[j][i] * vec(a.adjoint()), m, m);
      worst = std::max(worst, op_norm(lhs - rhs));
    }
  return worst;
}

CpReport choi_cp_check(const KernelSample& sample, double tol, Index sample_cap) {
  const Index n = static_cast<Index>(sample.points.size());
  const Index m = sample.m;
  if (n * m > sample_cap)
    throw CapExceededError("choi_cp_check: n*m = " + std::to_string(n * m) +
                           " exceeds cap " + std::to_string(sample_cap));
  CpReport report;
  report.tol = tol;
  if (m == 1) {
    CMat gram(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        gram(i, j) = sample.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](0, 0);
    report.gram_min_eig = min_eig_hermitian(gram);
    report.certificate_dim = n;
    report.pass = report.gram_min_eig >= -tol * scale_of(gram);
    return report;
  }
  const Index nm = n * m;
  CMat choi = CMat::Zero(nm * nm, nm * nm);
  for (Index u = 0; u < nm; ++u)
    for (Index vdx = 0; vdx < nm; ++vdx) {
      const Index i = u / m, p = u % m, j = vdx / m, q = vdx % m;
      CMat epq = CMat::Zero(m, m);
      epq(p, q) = 1.0;
      const CMat image =
          unvec(sample.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * vec(epq), m, m);
      CMat big = CMat::Zero(nm, nm);
      big.block(i * m, j * m, m, m) = image;
      choi.block(u * nm, vdx * nm, nm, nm) = big;
    }
  report.choi_min_eig = min_eig_hermitian(choi);
  report.certificate_dim = nm * nm;
  report.pass = report.choi_min_eig >= -tol * scale_of(choi);
  return report;
}

CpReport choi_of_map_check(const CMat& map_matrix, Index m, double tol) {
  CpReport report;
  report.tol = tol;
  const CMat choi = choi_matrix(map_matrix, m);
  report.choi_min_eig = min_eig_hermitian(choi);
  report.certificate_dim = choi.rows();
  report.pass = report.choi_min_eig >= -tol * scale_of(choi);
  return report;
}

WeightFamily kr_family(const RadialData& rd, int upto) {
  if (upto > rd.degree) throw InputError("kr_family: radial data too short");
  WeightFamily family;
  family.d = rd.weights.d;
  for (int k = 0; k <= upto; ++k) family.G2.push_back(rd.r2(k));
  return family;
}

WeightFamily point_family(int d, int upto) {
  WeightFamily family;
  family.d = d;
  family.G2.push_back(CMat::Identity(1, 1));
  for (int k = 1; k <= upto; ++k) {
    const Index dim = static_cast<Index>(tensor_dim(d, k));
    family.G2.push_back(CMat::Zero(dim, dim));
  }
  return family;
}

WeightFamily kc_weights(const RadialData& rd, const WeightFamily& b, int upto) {
  if (upto > rd.degree) throw InputError("kc_weights: radial data too short");
  if (b.d != rd.weights.d) throw InputError("kc_weights: alphabet mismatch");
  WeightFamily family;
  family.d = b.d;
  for (int k = 0; k <= upto; ++k) {
    const Index dim = static_cast<Index>(tensor_dim(b.d, k));
    CMat c2 = CMat::Zero(dim, dim);
    for (int mm = 0; mm <= k; ++mm) {
      if (k - mm > b.top_degree()) continue;  // B_j = 0 past the support
      c2 += kron(rd.r2(mm), b.G2[static_cast<std::size_t>(k - mm)]);
    }
    family.G2.push_back(std::move(c2));
  }
  return family;
}

CMat kernel_from_family(const WeightFamily& family, const OperatorTuple& v,
                        const OperatorTuple& w, const CMat& a, std::size_t cap) {
  if (v.d != family.d || w.d != family.d || v.m != w.m)
    throw InputError("kernel_from_family: dimension mismatch");
  const Index m = v.m;
  CMat out = family.G2[0](0, 0) * a;
  for (int k = 1; k <= family.top_degree(); ++k) {
    const CMat vrow = tuple_power(v, k, cap);
    const CMat wrow = tuple_power(w, k, cap);
    const CMat vf = stack_blocks_vec(vrow, m);
    out += kernel_term(family.G2[static_cast<std::size_t>(k)], vf, wrow, a);
  }
  return out;
}

CMat kernel_family_map_matrix(const WeightFamily& family, const OperatorTuple& v,
                              const OperatorTuple& w, std::size_t cap) {
  if (v.d != family.d || w.d != family.d || v.m != w.m)
    throw InputError("kernel_family_map_matrix: dimension mismatch");
  const Index m = v.m;
  CMat out = family.G2[0](0, 0) * CMat::Identity(m * m, m * m);
  for (int k = 1; k <= family.top_degree(); ++k) {
    const CMat vrow = tuple_power(v, k, cap);
    const CMat wrow = tuple_power(w, k, cap);
    const CMat vf = stack_blocks_vec(vrow, m);
    out += kernel_term_matrix(family.G2[static_cast<std::size_t>(k)], vf, wrow, m);
  }
  return out;
}

KernelSample sample_family_kernel(const WeightFamily& family,
                                  const std::vector<OperatorTuple>& points,
                                  std::size_t cap) {
  if (points.empty()) throw InputError("sample_family_kernel: empty sample");
  KernelSample sample;
  sample.m = points.front().m;
  sample.points = points;
  const std::size_t n = points.size();
  sample.values.assign(n, std::vector<CMat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      sample.values[i][j] = kernel_family_map_matrix(family, points[i], points[j], cap);
  return sample;
}

double kc_factorization_residual(const RadialData& rd, const WeightFamily& b,
                                 const WeightFamily& c, const OperatorTuple& v,
                                 const OperatorTuple& w, const CMat& a,
                                 std::size_t cap) {
  const int top = c.top_degree();
  const Index m = v.m;
  const CMat lhs = kernel_from_family(c, v, w, a, cap);

  // Inner kernel partial sums P_j = sum_{j' <= j} V^(j')(B^2 ⊗ a)W^(j')*.
  std::vector<CMat> prefix(static_cast<std::size_t>(top) + 1);
  CMat running = b.G2[0](0, 0) * a;
  prefix[0] = running;
  for (int j = 1; j <= top; ++j) {
    if (j <= b.top_degree()) {
      const CMat vrow = tuple_power(v, j, cap);
      const CMat wrow = tuple_power(w, j, cap);
      const CMat vf = stack_blocks_vec(vrow, m);
      running += kernel_term(b.G2[static_cast<std::size_t>(j)], vf, wrow, a);
    }
    prefix[static_cast<std::size_t>(j)] = running;
  }

  // Outer kernel applied degree-matched: total degree <= top.
  CMat rhs = prefix[static_cast<std::size_t>(top)];  // outer degree 0
  for (int mm = 1; mm <= top; ++mm) {
    const CMat vrow = tuple_power(v, mm, cap);
    const CMat wrow = tuple_power(w, mm, cap);
    const CMat vf = stack_blocks_vec(vrow, m);
    rhs += kernel_term(rd.r2(mm), vf, wrow, prefix[static_cast<std::size_t>(top - mm)]);
  }
  return op_norm(lhs - rhs);
}

WeightFamily corrupt_family(WeightFamily family, const RadialData& rd, int k0,
                            double factor) {
  if (k0 < 0 || k0 > family.top_degree() || k0 > rd.degree)
    throw InputError("corrupt_family: degree out of range");
  family.G2[static_cast<std::size_t>(k0)] -= factor * rd.r2(k0);
  return family;
}

CpReport contractivity_check(const WeightFamily& family, const RadialData& rd,
                             const std::vector<OperatorTuple>& points,
                             const std::vector<CMat>& ops, double tol,
                             const KernelOptions& opts) {
  const std::size_t n = points.size();
  if (n == 0 || ops.size() != n)
    throw InputError("contractivity_check: points/ops mismatch");
  const Index m = points.front().m;
  for (const auto& t : points) {
    const double value = op_norm(phi(t, rd.weights, CMat::Identity(t.m, t.m)));
    if (value >= 1.0)
      throw InputError("contractivity_check: Neumann divergence, sample point has "
                       "||Phi(I)|| = " + std::to_string(value));
  }

  CMat route1 = CMat::Zero(static_cast<Index>(n) * m, static_cast<Index>(n) * m);
  CMat route2 = route1;
  double agreement = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const CMat aij = ops[i] * ops[j].adjoint();
      const CMat kij = kernel_from_family(family, points[i], points[j], aij, opts.cap);
      const CMat block1 = kij - phi_pair(points[i], points[j], rd.weights, kij, opts.cap);
      const KernelValue kr = kernel_map_matrix(rd, points[i], points[j], opts);
      const CMat block2 = unvec(kr.value.partialPivLu().solve(vec(kij)), m, m);
      agreement = std::max(agreement, op_norm(block1 - block2));
      route1.block(static_cast<Index>(i) * m, static_cast<Index>(j) * m, m, m) = block1;
      route2.block(static_cast<Index>(i) * m, static_cast<Index>(j) * m, m, m) = block2;
    }

  CpReport report;
  report.tol = tol;
  report.certificate_dim = static_cast<Index>(n) * m;
  report.gram_min_eig = min_eig_hermitian(route1);
  report.choi_min_eig = min_eig_hermitian(route2);  // route-2 cross-check
  report.route_agreement = agreement;
  report.pass = report.gram_min_eig >= -tol * scale_of(route1);
  return report;
}

CpReport multiplier_defect_check(const RadialData& rd, const std::vector<CVec>& points,
                                 double tol, KernelOptions opts) {
  if (points.empty()) throw InputError("multiplier_defect_check: empty sample");
  // Keep every degree inside the range where zbound certifies
  // I ⊗ R_{k-1}^2 <= zbound^2 R_k^2.
  opts.max_degree = std::min(opts.max_degree, rd.degree);
  const double c = rd.zbound * rd.zbound;
  const Index n = static_cast<Index>(points.size());
  CMat gram(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const ScalarKernelValue kv =
          kernel_scalar(rd, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)], opts);
      // <z_j, z_i> in the second-linear convention: sum_n z_i(n) conj(z_j(n)).
      const Complex s = points[static_cast<std::size_t>(j)].dot(points[static_cast<std::size_t>(i)]);
      gram(i, j) = (c - s) * kv.value;
    }
  CpReport report;
  report.tol = tol;
  report.certificate_dim = n;
  report.gram_min_eig = min_eig_hermitian(gram);
  report.pass = report.gram_min_eig >= -tol * scale_of(gram);
  return report;
}

}  // namespace wfock
