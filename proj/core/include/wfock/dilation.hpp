#pragma once

#include "wfock/fock.hpp"

namespace wfock {

struct PoissonOptions {
  double tol = 1e-10;
  int degree_cap = -1;  // -1: 24 for d=1, 10 for d=2, 7 for d>=3
  int purity_iters = 200;
  double purity_tol = 1e-9;
  double boundary_tol = 1e-10;
  double commuting_tol = 1e-12;
};

int default_degree_cap(int d);

// Poisson operator Pi(T): H -> F_N(R) ⊗ D_*, degree-k block
// (V_k^* ⊗ U_delta^*)(R_k ⊗ Delta_*(T)) T^(k)*, with U_delta an orthonormal
// basis of the defect range. Vectors of F_N(R) ⊗ D_* are stored with the
// defect index fastest, i.e. as kron(frame coordinates, defect coordinates).
struct PoissonOperator {
  CMat pi;  // (total * defect rank) x m
  int degree = 0;
  double isometry_residual = 0.0;
  DefectData defect;
  FockFrame frame;
  MembershipReport membership;
};

// Raises the truncation degree until ||Pi*Pi - I|| <= tol or the cap binds
// (then the achieved residual is reported). Radial data is extended in
// place and reused across calls. Throws InputError for non-commuting or
// out-of-domain tuples and PurityError when purity cannot be certified.
PoissonOperator poisson(const OperatorTuple& t, RadialData& rd,
                        const PoissonOptions& opts = {});

// max_i || Pi T_i^* - (W_i ⊗ I)^* Pi || on output degrees <= N-1 (the top
// degree is the truncation edge and carries no equation).
double intertwine_residual(const PoissonOperator& po, const OperatorTuple& t,
                           const ShiftTuple& shift);

// T = W ⊗ I_g on F_N(R) ⊗ C^g, matching the kron layout above.
OperatorTuple shift_times_identity(const ShiftTuple& shift, int g);

}  // namespace wfock
