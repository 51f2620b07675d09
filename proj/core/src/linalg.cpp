#include "wfock/linalg.hpp"

#include <cmath>

namespace wfock {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double op_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  // sqrt of the top eigenvalue of A*A; cheaper than an SVD for the
  // matrix sizes we meet and accurate enough for residual reporting.
  const CMat gram = (a.cols() <= a.rows()) ? CMat(a.adjoint() * a) : CMat(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double hermitian_residual(const CMat& a) { return (a - a.adjoint()).norm(); }

double min_eig_hermitian(const CMat& a) {
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

CMat psd_sqrt(const CMat& a, double neg_tol) {
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -neg_tol * scale)
      throw InputError("psd_sqrt: matrix not PSD, min eigenvalue " + std::to_string(ev(i)));
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

void fix_column_phases(CMat& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    Index arg_max = 0;
    a.col(j).cwiseAbs().maxCoeff(&arg_max);
    const Complex pivot = a(arg_max, j);
    if (std::abs(pivot) > 0.0) a.col(j) *= std::abs(pivot) / pivot;
  }
}

CMat orthonormal_columns(const CMat& a) {
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ() * CMat::Identity(a.rows(), a.cols());
  fix_column_phases(q);
  return q;
}

CMat orthonormal_range(const CMat& a, double tol) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  CMat u = svd.matrixU().leftCols(rank);
  fix_column_phases(u);
  return u;
}

Index numerical_rank(const CMat& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv(0));
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return rank;
}

CVec vec(const CMat& a) {
  return Eigen::Map<const CVec>(a.data(), a.size());
}

CMat unvec(const CVec& v, Index rows, Index cols) {
  return Eigen::Map<const CMat>(v.data(), rows, cols);
}

CMat sandwich_matrix(const CMat& l, const CMat& r) {
  // vec(L a R*) = (conj(R) ⊗ L) vec(a)
  return kron(r.conjugate(), l);
}

CMat choi_matrix(const CMat& map_matrix, Index m) {
  CMat choi = CMat::Zero(m * m, m * m);
  for (Index p = 0; p < m; ++p)
    for (Index q = 0; q < m; ++q) {
      CMat e = CMat::Zero(m, m);
      e(p, q) = 1.0;
      const CMat image = unvec(map_matrix * vec(e), m, m);
      choi.block(p * m, q * m, m, m) = image;
    }
  return choi;
}

}  // namespace wfock
