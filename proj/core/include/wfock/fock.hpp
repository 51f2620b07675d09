#pragma once

#include "wfock/symmetric.hpp"
#include "wfock/tuples.hpp"
#include "wfock/weights.hpp"

namespace wfock {

// Truncated weighted symmetric Fock space F_N(R) = ⊕_{k<=N} R_k (C^d)^{⊛k},
// held in frame coordinates: V_k is an isometry from C^{D_k} onto the
// degree-k component inside (C^d)^{⊗k}. Total dimension grows polynomially
// while the ambient tensor powers grow as d^k, so nothing outside the frames
// is ever stored.
struct FockFrame {
  int d = 1;
  int degree = 0;  // N
  std::vector<CMat> frames;    // V_k: d^k x D_k, V_0 = [1]
  std::vector<Index> dims;     // D_k = binom(d+k-1, k)
  std::vector<Index> offsets;  // block starts
  Index total = 0;

  Index dim(int k) const { return dims.at(static_cast<std::size_t>(k)); }
  Index offset(int k) const { return offsets.at(static_cast<std::size_t>(k)); }
  const CMat& frame(int k) const { return frames.at(static_cast<std::size_t>(k)); }

  // Frame coordinates of an ambient degree-k vector lying in R_k(C^d)^{⊛k}.
  CVec coords(int k, const CVec& ambient) const;
};

FockFrame build_frame(const RadialData& rd, int n);

// Appends degrees degree+1 .. n (radial data must already cover them).
void extend_frame(FockFrame& frame, const RadialData& rd, int n);

// The compressed weighted shifts W_i = P_{F(R)} W~_i |F(R). Block (k+1, k)
// is V_{k+1}^* Z_{k+1} (e_i ⊗ V_k); degree N is mapped to zero, which keeps
// commutators and the row identity exact on the truncation.
struct ShiftTuple {
  int d = 1;
  int degree = 0;
  std::vector<CMat> W;  // d matrices, total x total

  const CMat& op(int i) const { return W.at(static_cast<std::size_t>(i)); }
};

ShiftTuple build_shift(const FockFrame& frame, const RadialData& rd);

// Product W_alpha = W_alpha(1) ... W_alpha(k).
CMat word_operator(const ShiftTuple& shift, const Word& alpha);

// || sum_k W^(k) (X_k ⊗ I) W^(k)* - (I - P_0) || on F_N(R).
double row_identity_residual(const ShiftTuple& shift, const FockFrame& frame,
                             const WeightSequence& x);

// Max residual of W_i^* R_{k+1} xi = R_k L_i^* xi over i and k <= N-1,
// tested on xi = conj(w)^{⊗(k+1)} for a point w strictly inside D(X,C).
double shift_adjoint_residual(const FockFrame& frame, const RadialData& rd,
                         const CVec& w);

// Joint numerical kernel of {W_i^* - conj(w_i)} on degrees <= N-1 (the top
// degree is excluded: the defining relation breaks at the truncation edge).
// Equations are imposed on output degrees <= N-2; in exact arithmetic the
// null space is spanned by sum_{k<=N-1} R_k conj(w)^{⊗k}.
struct JointKernelResult {
  int dimension = 0;
  CVec vector;                   // frame coordinates on degrees <= N-1
  double kernel_match_residual = 0.0;
  double smallest_kept = 0.0;    // smallest singular value above the cut
  double largest_dropped = 0.0;  // largest singular value below the cut
};

JointKernelResult joint_eigenvector(const ShiftTuple& shift, const FockFrame& frame,
                                    const RadialData& rd, const CVec& w,
                                    double rank_tol = 1e-8);

// Frame coordinates of the truncated kernel vector sum_{k<=upto} R_k w̄^{⊗k}.
CVec kernel_vector(const FockFrame& frame, const RadialData& rd, const CVec& w,
                   int upto);

// conj(w)^{⊗k} as an ambient vector.
CVec conj_power(const CVec& w, int k);

// The shifts as a plain operator tuple on C^total.
OperatorTuple shift_as_tuple(const ShiftTuple& shift);

}  // namespace wfock
