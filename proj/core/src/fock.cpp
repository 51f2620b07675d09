#include "wfock/fock.hpp"

#include <cmath>

#include "wfock/linalg.hpp"

namespace wfock {

CVec FockFrame::coords(int k, const CVec& ambient) const {
  return frame(k).adjoint() * ambient;
}

FockFrame build_frame(const RadialData& rd, int n) {
  FockFrame frame;
  frame.d = rd.weights.d;
  frame.degree = -1;
  extend_frame(frame, rd, n);
  return frame;
}

void extend_frame(FockFrame& frame, const RadialData& rd, int n) {
  if (n > rd.degree) throw InputError("extend_frame: radial data too short");
  if (frame.degree < 0) {
    frame.frames.clear();
    frame.dims.clear();
    frame.offsets.clear();
    frame.total = 0;
  }
  for (int k = frame.degree + 1; k <= n; ++k) {
    const SymmetricFrame sym = symmetric_frame(frame.d, k);
    const CMat spanning = rd.r(k) * sym.isometry;
    CMat v = orthonormal_columns(spanning);
    // R_k invertible makes the rank exact; verify the QR kept it.
    const double id_residual = (v.adjoint() * v - CMat::Identity(sym.dim, sym.dim)).norm();
    if (id_residual > 1e-10)
      throw InputError("extend_frame: frame orthonormality lost at degree " +
                       std::to_string(k));
    frame.frames.push_back(std::move(v));
    frame.dims.push_back(sym.dim);
    frame.offsets.push_back(frame.total);
    frame.total += sym.dim;
  }
  frame.degree = n;
}

ShiftTuple build_shift(const FockFrame& frame, const RadialData& rd) {
  if (frame.degree > rd.degree) throw InputError("build_shift: radial data too short");
  ShiftTuple shift;
  shift.d = frame.d;
  shift.degree = frame.degree;
  shift.W.assign(static_cast<std::size_t>(frame.d),
                 CMat::Zero(frame.total, frame.total));
  for (int k = 0; k + 1 <= frame.degree; ++k) {
    const CMat& vk = frame.frame(k);
    const CMat& vk1 = frame.frame(k + 1);
    const Index dk = static_cast<Index>(vk.rows());  // d^k
    for (int i = 0; i < frame.d; ++i) {
      // (e_i ⊗ V_k): places the V_k block at tensor slot i.
      CMat lifted = CMat::Zero(dk * frame.d, frame.dim(k));
      lifted.middleRows(static_cast<Index>(i) * dk, dk) = vk;
      const CMat block = vk1.adjoint() * (rd.z(k + 1) * lifted);
      shift.W[static_cast<std::size_t>(i)].block(frame.offset(k + 1), frame.offset(k),
                                                 frame.dim(k + 1), frame.dim(k)) = block;
    }
  }
  return shift;
}

CMat word_operator(const ShiftTuple& shift, const Word& alpha) {
  const Index n = shift.W[0].rows();
  CMat out = CMat::Identity(n, n);
  for (int letter : alpha) out = out * shift.op(letter - 1);
  return out;
}

double row_identity_residual(const ShiftTuple& shift, const FockFrame& frame,
                             const WeightSequence& x) {
  const Index n = frame.total;
  CMat sum = CMat::Zero(n, n);
  for (int k = 1; k <= x.kmax; ++k) {
    const WordTable words = enumerate_words(x.d, k);
    const CMat& xk = x.weight(k);
    std::vector<CMat> w_alpha;
    w_alpha.reserve(words.words.size());
    for (const auto& alpha : words.words) w_alpha.push_back(word_operator(shift, alpha));
    for (std::size_t a = 0; a < w_alpha.size(); ++a)
      for (std::size_t b = 0; b < w_alpha.size(); ++b) {
        const Complex coeff = xk(static_cast<Index>(a), static_cast<Index>(b));
        if (coeff == Complex(0.0, 0.0)) continue;
        sum += coeff * (w_alpha[a] * w_alpha[b].adjoint());
      }
  }
  CMat target = CMat::Identity(n, n);
  target(0, 0) = 0.0;  // I - P_0
  return op_norm(sum - target);
}

CVec conj_power(const CVec& w, int k) {
  CVec out = CVec::Ones(1);
  const CVec wbar = w.conjugate();
  for (int i = 0; i < k; ++i) {
    CVec next(out.size() * wbar.size());
    for (Index a = 0; a < wbar.size(); ++a)
      next.segment(a * out.size(), out.size()) = wbar(a) * out;
    out = std::move(next);
  }
  return out;
}

double shift_adjoint_residual(const FockFrame& frame, const RadialData& rd,
                         const CVec& w) {
  const double phi_w = scalar_phi(rd.weights, w);
  if (phi_w >= 1.0) throw InputError("shift_adjoint_residual: point not in D(X,C)");
  const int d = frame.d;
  double worst = 0.0;
  for (int k = 0; k + 1 <= frame.degree; ++k) {
    const CVec xi = conj_power(w, k + 1);
    const CVec lhs_coords = frame.coords(k + 1, rd.r(k + 1) * xi);
    const Index dk = static_cast<Index>(frame.frame(k).rows());
    for (int i = 0; i < d; ++i) {
      CMat lifted = CMat::Zero(dk * d, frame.dim(k));
      lifted.middleRows(static_cast<Index>(i) * dk, dk) = frame.frame(k);
      const CMat block = frame.frame(k + 1).adjoint() * (rd.z(k + 1) * lifted);
      const CVec result = frame.frame(k) * (block.adjoint() * lhs_coords);
      // L_i^* xi = block i of xi under the big-endian layout.
      const CVec contracted = xi.segment(static_cast<Index>(i) * dk, dk);
      const CVec expected = rd.r(k) * contracted;
      worst = std::max(worst, (result - expected).norm());
    }
  }
  return worst;
}

CVec kernel_vector(const FockFrame& frame, const RadialData& rd, const CVec& w,
                   int upto) {
  Index total = 0;
  for (int k = 0; k <= upto; ++k) total += frame.dim(k);
  CVec u = CVec::Zero(total);
  for (int k = 0; k <= upto; ++k)
    u.segment(frame.offset(k), frame.dim(k)) =
        frame.coords(k, rd.r(k) * conj_power(w, k));
  return u;
}

JointKernelResult joint_eigenvector(const ShiftTuple& shift, const FockFrame& frame,
                                    const RadialData& rd, const CVec& w,
                                    double rank_tol) {
  if (frame.degree < 2) throw InputError("joint_eigenvector: need degree >= 2");
  if (scalar_phi(rd.weights, w) >= 1.0)
    throw InputError("joint_eigenvector: point not in D(X,C)");
  const Index m_dom = frame.offset(frame.degree);        // degrees <= N-1
  const Index m_eq = frame.offset(frame.degree - 1);     // degrees <= N-2
  const int d = frame.d;
  CMat stacked(static_cast<Index>(d) * m_eq, m_dom);
  for (int i = 0; i < d; ++i) {
    CMat bi = shift.op(i).adjoint().topLeftCorner(m_eq, m_dom);
    bi.leftCols(m_eq) -= std::conj(w(i)) * CMat::Identity(m_eq, m_eq);
    stacked.middleRows(static_cast<Index>(i) * m_eq, m_eq) = bi;
  }
  Eigen::JacobiSVD<CMat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = rank_tol * std::max(1.0, sv(0));
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;

  JointKernelResult result;
  result.dimension = static_cast<int>(m_dom - rank);
  result.smallest_kept = rank > 0 ? sv(rank - 1) : 0.0;
  result.largest_dropped = rank < sv.size() ? sv(rank) : 0.0;
  result.vector = svd.matrixV().col(m_dom - 1);

  CVec u = kernel_vector(frame, rd, w, frame.degree - 1);
  u.normalize();
  const CVec v = result.vector.normalized();
  const Complex overlap = u.dot(v);
  result.kernel_match_residual = (v - u * overlap).norm();
  return result;
}

OperatorTuple shift_as_tuple(const ShiftTuple& shift) {
  OperatorTuple t;
  t.d = shift.d;
  t.m = static_cast<int>(shift.W[0].rows());
  t.T = shift.W;
  return t;
}

}  // namespace wfock
