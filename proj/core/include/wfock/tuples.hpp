#pragma once

#include <string>
#include <vector>

#include "wfock/weights.hpp"
#include "wfock/words.hpp"

namespace wfock {

// A d-tuple of operators on H = C^m, stored as d complex m x m matrices.
struct OperatorTuple {
  int d = 1;
  int m = 1;
  std::vector<CMat> T;

  const CMat& op(int i) const { return T.at(static_cast<std::size_t>(i)); }

  // Scalar point z in C^d viewed as a tuple on C^1.
  static OperatorTuple scalar_point(const CVec& z);
  static OperatorTuple zero(int d, int m);
};

// The row T^(k) = (T_alpha)_{|alpha|=k} as an m x (d^k m) matrix; block
// alpha sits at column offset index(alpha)*m and equals
// T_alpha(1) ... T_alpha(k).
CMat tuple_power(const OperatorTuple& t, int k,
                 std::size_t cap = kDefaultTensorCap);

// Phi_T(a) = sum_{k=1..kmax} T^(k) (X_k ⊗ a) T^(k)*.
CMat phi(const OperatorTuple& t, const WeightSequence& x, const CMat& a,
         std::size_t cap = kDefaultTensorCap);

// Phi_{T,L}(a) = sum_k T^(k) (X_k ⊗ a) L^(k)*.
CMat phi_pair(const OperatorTuple& t, const OperatorTuple& l,
              const WeightSequence& x, const CMat& a,
              std::size_t cap = kDefaultTensorCap);

double scalar_phi(const WeightSequence& x, const CVec& z);

double commutator_max(const OperatorTuple& t);

enum class DomainClass { Strict, Boundary, Outside };

std::string domain_class_name(DomainClass c);

struct MembershipReport {
  double phi_norm = 0.0;
  double commutator_max = 0.0;
  std::vector<double> purity;  // ||Phi_T^n(I)||, n = 1..steps
  DomainClass domain = DomainClass::Outside;
  bool commuting = false;
  bool pure_certified = false;
  int purity_steps = 0;
  std::string classification;
};

// Purity is certified when ||Phi_T^n(I)|| <= tol within n_max iterations and
// only ever certified, never refuted.
MembershipReport classify(const OperatorTuple& t, const WeightSequence& x,
                          int n_max = 200, double tol = 1e-9,
                          double boundary_tol = 1e-10,
                          double commuting_tol = 1e-12);

// X(mu, n) = sum over k_1+...+k_n = mu of X_{k_1} ⊗ ... ⊗ X_{k_n}.
CMat x_composition_weight(const WeightSequence& x, int mu, int n,
                          std::size_t cap = kDefaultTensorCap);

// Blocks T^(mu) (X(mu,n)^{1/2} ⊗ I) of the row b(T)^(n) for
// mu = n .. min(m_max, n*kmax), with the Gram identity
// Phi_T^n(I) = b(T)^(n) b(T)^(n)* checked and reported.
struct RowBlocks {
  int n = 1;
  std::vector<int> degrees;
  std::vector<CMat> blocks;
  double gram_residual = 0.0;
};

RowBlocks b_row_n(const OperatorTuple& t, const WeightSequence& x, int n,
                  int m_max, std::size_t cap = kDefaultTensorCap);

// Defect operator Delta_*(T) = (I - Phi_T(I))^{1/2}, an orthonormal basis of
// its range, and the rank cut.
struct DefectData {
  CMat delta;
  CMat basis;  // m x rank
  Index rank = 0;
};

DefectData defect(const OperatorTuple& t, const WeightSequence& x,
                  double psd_tol = 1e-10, double rank_tol = 1e-8);

// Compression S^* T_i S to the column space of an isometry S.
OperatorTuple restrict_tuple(const OperatorTuple& t, const CMat& s);

// Real slice of D(X, C) for d = 2: rows (z1, z2, Phi_z(1), inside).
struct DomainRow {
  double z1 = 0.0;
  double z2 = 0.0;
  double phi = 0.0;
  bool inside = false;
};

struct GridSpec {
  double min = -1.0;
  double max = 1.0;
  double step = 0.1;
};

std::vector<DomainRow> domain_grid(const WeightSequence& x, const GridSpec& grid,
                                   double margin = 1e-10);

// Seeded fixtures. A random direction scaled (bisection) until
// Phi_z(1) = phi_target, respectively ||Phi_T(I)|| = phi_target.
CVec random_domain_point(Rng& rng, const WeightSequence& x, double phi_target);

// Simultaneously diagonalizable commuting tuple Q diag Q^{-1}; similarity 0
// gives a unitary Q (normal tuple), larger values shear it.
OperatorTuple random_commuting_tuple(Rng& rng, const WeightSequence& x, int m,
                                     double phi_target, double similarity = 0.0);

}  // namespace wfock
