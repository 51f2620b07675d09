#include "wfock/tuples.hpp"

#include <cmath>

#include "wfock/linalg.hpp"
#include "wfock/words.hpp"

namespace wfock {

OperatorTuple OperatorTuple::scalar_point(const CVec& z) {
  OperatorTuple t;
  t.d = static_cast<int>(z.size());
  t.m = 1;
  t.T.resize(z.size());
  for (Index i = 0; i < z.size(); ++i) t.T[static_cast<std::size_t>(i)] = CMat::Constant(1, 1, z(i));
  return t;
}

OperatorTuple OperatorTuple::zero(int d, int m) {
  OperatorTuple t;
  t.d = d;
  t.m = m;
  t.T.assign(static_cast<std::size_t>(d), CMat::Zero(m, m));
  return t;
}

CMat tuple_power(const OperatorTuple& t, int k, std::size_t cap) {
  const Index m = t.m;
  if (k == 0) return CMat::Identity(m, m);
  const std::size_t dim = tensor_dim(t.d, k, cap);
  if (dim * static_cast<std::size_t>(m) > cap)
    throw CapExceededError("tuple_power: d^k * m exceeds cap");
  // Level-by-level products: block of alpha = j*d + (i+1) is T_alpha' T_i
  // under the big-endian word order, so each level extends on the right.
  CMat row = CMat(m, static_cast<Index>(t.d) * m);
  for (int i = 0; i < t.d; ++i) row.middleCols(static_cast<Index>(i) * m, m) = t.op(i);
  for (int level = 2; level <= k; ++level) {
    const Index prev_words = static_cast<Index>(tensor_dim(t.d, level - 1, cap));
    CMat next(m, prev_words * t.d * m);
    for (Index j = 0; j < prev_words; ++j) {
      const CMat prefix = row.middleCols(j * m, m);
      for (int i = 0; i < t.d; ++i)
        next.middleCols((j * t.d + i) * m, m) = prefix * t.op(i);
    }
    row = std::move(next);
  }
  return row;
}

CMat phi(const OperatorTuple& t, const WeightSequence& x, const CMat& a,
         std::size_t cap) {
  return phi_pair(t, t, x, a, cap);
}

CMat phi_pair(const OperatorTuple& t, const OperatorTuple& l,
              const WeightSequence& x, const CMat& a, std::size_t cap) {
  if (t.d != x.d || l.d != x.d) throw InputError("phi: alphabet size mismatch");
  if (t.m != l.m || a.rows() != t.m || a.cols() != t.m)
    throw InputError("phi: dimension mismatch");
  const Index m = t.m;
  CMat out = CMat::Zero(m, m);
  for (int k = 1; k <= x.kmax; ++k) {
    const CMat tk = tuple_power(t, k, cap);
    const CMat lk = tuple_power(l, k, cap);
    const CMat& xk = x.weight(k);
    const Index words = xk.rows();
    // sum_{alpha,beta} (X_k)_{alpha,beta} T_alpha a L_beta^*
    for (Index beta = 0; beta < words; ++beta) {
      CMat left = CMat::Zero(m, m);
      for (Index alpha = 0; alpha < words; ++alpha) {
        const Complex w = xk(alpha, beta);
        if (w == Complex(0.0, 0.0)) continue;
        left += w * tk.middleCols(alpha * m, m);
      }
      out += (left * a) * lk.middleCols(beta * m, m).adjoint();
    }
  }
  return out;
}

double scalar_phi(const WeightSequence& x, const CVec& z) {
  const CMat value = phi(OperatorTuple::scalar_point(z), x, CMat::Identity(1, 1));
  return value(0, 0).real();
}

double commutator_max(const OperatorTuple& t) {
  double worst = 0.0;
  for (int i = 0; i < t.d; ++i)
    for (int j = i + 1; j < t.d; ++j)
      worst = std::max(worst, op_norm(t.op(i) * t.op(j) - t.op(j) * t.op(i)));
  return worst;
}

std::string domain_class_name(DomainClass c) {
  switch (c) {
    case DomainClass::Strict: return "D";
    case DomainClass::Boundary: return "closure(D)\\D";
    case DomainClass::Outside: return "outside";
  }
  return "?";
}

MembershipReport classify(const OperatorTuple& t, const WeightSequence& x,
                          int n_max, double tol, double boundary_tol,
                          double commuting_tol) {
  MembershipReport report;
  const CMat identity = CMat::Identity(t.m, t.m);
  const CMat phi1 = phi(t, x, identity);
  report.phi_norm = op_norm(phi1);
  report.commutator_max = commutator_max(t);
  report.commuting = report.commutator_max <= commuting_tol;

  if (report.phi_norm < 1.0 - boundary_tol)
    report.domain = DomainClass::Strict;
  else if (report.phi_norm <= 1.0 + boundary_tol)
    report.domain = DomainClass::Boundary;
  else
    report.domain = DomainClass::Outside;

  CMat power = phi1;
  report.purity.push_back(op_norm(power));
  while (!report.pure_certified && static_cast<int>(report.purity.size()) < n_max) {
    if (report.purity.back() <= tol) break;
    power = phi(t, x, power);
    report.purity.push_back(op_norm(power));
  }
  report.purity_steps = static_cast<int>(report.purity.size());
  report.pure_certified = report.purity.back() <= tol;

  report.classification = domain_class_name(report.domain);
  report.classification += report.commuting ? ", commuting" : ", non-commuting";
  report.classification += report.pure_certified ? ", pure" : ", not-certified-pure";
  return report;
}

CMat x_composition_weight(const WeightSequence& x, int mu, int n, std::size_t cap) {
  if (n < 1 || mu < n) throw InputError("x_composition_weight: need mu >= n >= 1");
  const Index dim = static_cast<Index>(tensor_dim(x.d, mu, cap));
  if (n == 1) {
    if (mu > x.kmax) return CMat::Zero(dim, dim);
    return x.weight(mu);
  }
  CMat out = CMat::Zero(dim, dim);
  for (int k = 1; k <= std::min(x.kmax, mu - n + 1); ++k)
    out += kron(x.weight(k), x_composition_weight(x, mu - k, n - 1, cap));
  return out;
}

RowBlocks b_row_n(const OperatorTuple& t, const WeightSequence& x, int n,
                  int m_max, std::size_t cap) {
  RowBlocks row;
  row.n = n;
  const Index m = t.m;
  CMat gram = CMat::Zero(m, m);
  const int top = std::min(m_max, n * x.kmax);
  for (int mu = n; mu <= top; ++mu) {
    const CMat weight = x_composition_weight(x, mu, n, cap);
    const CMat root = psd_sqrt(weight);
    const CMat block = tuple_power(t, mu, cap) * kron(root, CMat::Identity(m, m));
    gram += block * block.adjoint();
    row.degrees.push_back(mu);
    row.blocks.push_back(block);
  }
  // Independent check of Phi_T^n(I) = b(T)^(n) b(T)^(n)*.
  CMat phin = CMat::Identity(m, m);
  for (int i = 0; i < n; ++i) phin = phi(t, x, phin, cap);
  row.gram_residual = op_norm(phin - gram);
  return row;
}

DefectData defect(const OperatorTuple& t, const WeightSequence& x,
                  double psd_tol, double rank_tol) {
  const CMat identity = CMat::Identity(t.m, t.m);
  const CMat gap_raw = identity - phi(t, x, identity);
  const CMat gap = 0.5 * (gap_raw + gap_raw.adjoint());
  const double scale = std::max(1.0, op_norm(gap));
  if (min_eig_hermitian(gap) < -psd_tol * scale)
    throw InputError("defect: Phi_T(I) exceeds I beyond tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(gap);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  DefectData data;
  data.delta = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  // The rank cut works on the eigenvalues of I - Phi_T(I): the square root
  // amplifies eigensolver noise (1e-12 there is 1e-6 on Delta), so cutting
  // Delta's spectrum directly would count noise directions.
  std::vector<Index> keep;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > rank_tol * scale) keep.push_back(i);
  data.rank = static_cast<Index>(keep.size());
  data.basis = CMat(t.m, data.rank);
  for (Index c = 0; c < data.rank; ++c)
    data.basis.col(c) = es.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
  fix_column_phases(data.basis);
  return data;
}

OperatorTuple restrict_tuple(const OperatorTuple& t, const CMat& s) {
  OperatorTuple out;
  out.d = t.d;
  out.m = static_cast<int>(s.cols());
  out.T.resize(static_cast<std::size_t>(t.d));
  for (int i = 0; i < t.d; ++i) out.T[static_cast<std::size_t>(i)] = s.adjoint() * t.op(i) * s;
  return out;
}

namespace {

// Smallest s with value(s) = target for an increasing value function.
template <typename Fn>
double bisect_scale(Fn&& value, double target) {
  double hi = 1.0;
  int guard = 0;
  while (value(hi) < target && guard++ < 200) hi *= 2.0;
  double lo = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CVec random_domain_point(Rng& rng, const WeightSequence& x, double phi_target) {
  CVec direction = rng.cgaussian_vector(x.d);
  direction.normalize();
  const double s = bisect_scale(
      [&](double t) { return scalar_phi(x, CVec(t * direction)); }, phi_target);
  return s * direction;
}

OperatorTuple random_commuting_tuple(Rng& rng, const WeightSequence& x, int m,
                                     double phi_target, double similarity) {
  CMat q = rng.unitary(m);
  if (similarity > 0.0) {
    CMat shear = CMat::Identity(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = i + 1; j < m; ++j) shear(i, j) = similarity * rng.cgaussian();
    q = q * shear;
  }
  const CMat q_inv = q.inverse();
  OperatorTuple base;
  base.d = x.d;
  base.m = m;
  for (int i = 0; i < x.d; ++i) {
    CVec diag = rng.cgaussian_vector(m);
    base.T.push_back(q * diag.asDiagonal() * q_inv);
  }
  const CMat identity = CMat::Identity(m, m);
  const double s = bisect_scale(
      [&](double t) {
        OperatorTuple scaled = base;
        for (auto& op : scaled.T) op *= t;
        return op_norm(phi(scaled, x, identity));
      },
      phi_target);
  for (auto& op : base.T) op *= s;
  return base;
}

std::vector<DomainRow> domain_grid(const WeightSequence& x, const GridSpec& grid,
                                   double margin) {
  if (x.d != 2) throw InputError("domain_grid: implemented for d = 2");
  if (!(grid.step > 0.0) || grid.max < grid.min)
    throw InputError("domain_grid: bad grid spec");
  std::vector<DomainRow> rows;
  const int steps = static_cast<int>(std::floor((grid.max - grid.min) / grid.step + 0.5));
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j) {
      DomainRow row;
      row.z1 = grid.min + grid.step * i;
      row.z2 = grid.min + grid.step * j;
      CVec z(2);
      z << Complex(row.z1, 0.0), Complex(row.z2, 0.0);
      row.phi = scalar_phi(x, z);
      row.inside = row.phi < 1.0 - margin;
      rows.push_back(row);
    }
  return rows;
}

}  // namespace wfock
