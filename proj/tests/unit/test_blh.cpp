#include <doctest.h>

#include <cmath>

#include "wfock/blh.hpp"
#include "wfock/linalg.hpp"

using namespace wfock;

namespace {

// T-invariant subspace spanned by monomial orbits of random vectors.
CMat orbit_subspace(Rng& rng, const OperatorTuple& t, int vectors, int max_degree) {
  std::vector<CVec> columns;
  for (int v = 0; v < vectors; ++v) {
    CVec seed = rng.cgaussian_vector(t.m);
    std::vector<CVec> layer{seed};
    columns.push_back(seed);
    for (int deg = 1; deg <= max_degree; ++deg) {
      std::vector<CVec> next;
      for (const auto& vec_in : layer)
        for (int i = 0; i < t.d; ++i) {
          next.push_back(t.op(i) * vec_in);
          columns.push_back(next.back());
        }
      layer = std::move(next);
    }
  }
  CMat basis(t.m, static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) basis.col(static_cast<Index>(c)) = columns[c];
  return orthonormal_range(basis, 1e-10);
}

}  // namespace

TEST_CASE("classical Beurling subspace of the truncated Hardy shift") {
  const WeightSequence x = WeightSequence::from_scalars({1.0});
  RadialData rd = radial_from_recursion(x, 6);
  const FockFrame ambient = build_frame(rd, 6);
  const ShiftTuple shift = build_shift(ambient, rd);
  const OperatorTuple t = shift_as_tuple(shift);

  // S = span of degrees >= 1 = range of the shift.
  CMat s = CMat::Zero(7, 6);
  for (int j = 0; j < 6; ++j) s(j + 1, j) = 1.0;
  const BlhFactorization blh = invariant_subspace_factor(t, rd, s);
  CHECK(blh.range_residual <= 1e-10);
  CHECK(blh.partial_isometry_residual <= 1e-10);
  for (double r : blh.intertwine_residuals) CHECK(r <= 1e-10);
  CHECK(blh.defect_dim == 1);

  // Theta(w) = w: the inner function z.
  for (double wv : {0.5, -0.3, 0.25}) {
    CVec w(1);
    w << Complex(wv, 0.0);
    const MultiplierSymbol symbol = multiplier_symbol(blh, ambient, rd, w, 1);
    CHECK(std::abs(symbol.theta(0, 0) - Complex(wv, 0.0)) <= 1e-8);
    CHECK(std::abs(symbol.theta(0, 0)) <= 1.0 + 1e-10);
    CHECK(symbol.extraction_defect <= 1e-8);
  }
  std::vector<CVec> pts;
  for (double r : {0.4, -0.2, 0.1}) {
    CVec w(1);
    w << Complex(r, 0.0);
    pts.push_back(w);
  }
  const CpReport a_gram = theta_defect_gram(blh, ambient, rd, pts, 1);
  CHECK(a_gram.pass);
}

TEST_CASE("full space factorization is degenerate") {
  Rng rng(3);
  WeightSequence x;
  x.d = 2;
  x.kmax = 1;
  x.X.resize(2);
  CVec diag(2);
  diag << 1.0, 2.0;
  x.X[1] = diag.asDiagonal();
  RadialData rd = radial_from_recursion(x, 2);
  const OperatorTuple t = random_commuting_tuple(rng, x, 3, 0.05);
  BlhOptions opts;
  opts.poisson.tol = 1e-8;
  const BlhFactorization blh =
      invariant_subspace_factor(t, rd, CMat::Identity(3, 3), opts);
  CHECK(blh.range_residual <= 1e-7);  // Pi Pi^* = I on all of H
  CHECK(blh.partial_isometry_residual <= 1e-7);
}

TEST_CASE("random invariant subspaces of W ⊗ I") {
  Rng rng(5);
  const WeightSequence x = random_admissible(rng, 2, 2);
  RadialData rd = radial_from_recursion(x, 6);
  const FockFrame ambient = build_frame(rd, 6);
  const ShiftTuple shift = build_shift(ambient, rd);
  const OperatorTuple t = shift_times_identity(shift, 2);

  for (int trial = 0; trial < 2; ++trial) {
    const CMat s = orbit_subspace(rng, t, 2, 6);
    const BlhFactorization blh = invariant_subspace_factor(t, rd, s);
    CHECK(blh.range_residual <= 1e-7);
    CHECK(blh.partial_isometry_residual <= 1e-9);
    for (double r : blh.intertwine_residuals) CHECK(r <= 1e-7);

    // Factorization sufficiency: the range of Pi is T-invariant.
    const CMat proj = blh.pi * blh.pi.adjoint();
    const CMat complement = CMat::Identity(t.m, t.m) - proj;
    for (int i = 0; i < t.d; ++i)
      CHECK(op_norm(CMat(complement * t.op(i) * proj)) <= 1e-9);
  }
}

TEST_CASE("theta symbol on a proper invariant subspace") {
  Rng rng(7);
  const WeightSequence x = random_admissible(rng, 2, 2);
  RadialData rd = radial_from_recursion(x, 8);
  const FockFrame ambient = build_frame(rd, 8);
  const ShiftTuple shift = build_shift(ambient, rd);
  const OperatorTuple t = shift_times_identity(shift, 2);

  const CMat s = orbit_subspace(rng, t, 1, 8);
  const BlhFactorization blh = invariant_subspace_factor(t, rd, s);
  std::vector<CVec> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(random_domain_point(rng, x, rng.uniform(0.02, 0.1)));
  const CpReport a_gram = theta_defect_gram(blh, ambient, rd, pts, 2);
  CHECK(a_gram.pass);
  CHECK(a_gram.gram_min_eig >= -1e-7);
}

TEST_CASE("subspace given as a projection") {
  const WeightSequence x = WeightSequence::from_scalars({1.0});
  RadialData rd = radial_from_recursion(x, 5);
  const FockFrame ambient = build_frame(rd, 5);
  const OperatorTuple t = shift_as_tuple(build_shift(ambient, rd));
  CMat proj = CMat::Zero(6, 6);
  for (int j = 1; j < 6; ++j) proj(j, j) = 1.0;  // degrees >= 1
  const BlhFactorization blh = invariant_subspace_factor(t, rd, proj);
  CHECK(blh.subspace.cols() == 5);
  CHECK(blh.range_residual <= 1e-10);
}

TEST_CASE("theta gram matches the projection route") {
  // Independent route: A(z_i, z_j) entries as <u_i ⊗ g, (I - Pi Pi^*)(u_j ⊗ h)>,
  // exactly PSD for any partial isometry. The extracted-symbol Gram must
  // agree to second order in the extraction defect.
  Rng rng(13);
  const WeightSequence x = random_admissible(rng, 2, 2);
  RadialData rd = radial_from_recursion(x, 8);
  const FockFrame ambient = build_frame(rd, 8);
  const int g = 2;
  const OperatorTuple t = shift_times_identity(build_shift(ambient, rd), g);
  const CMat s = orbit_subspace(rng, t, 1, 8);
  const BlhFactorization blh = invariant_subspace_factor(t, rd, s);

  std::vector<CVec> pts;
  for (int i = 0; i < 3; ++i) pts.push_back(random_domain_point(rng, x, rng.uniform(0.02, 0.08)));
  const CpReport theta_route = theta_defect_gram(blh, ambient, rd, pts, g);

  const Index n = static_cast<Index>(pts.size());
  const CMat projection = CMat::Identity(t.m, t.m) - blh.pi * blh.pi.adjoint();
  CMat direct(n * g, n * g);
  std::vector<CVec> us;
  for (const auto& z : pts) us.push_back(kernel_vector(ambient, rd, z, ambient.degree));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b) {
          CVec ui = CVec::Zero(t.m), uj = CVec::Zero(t.m);
          for (Index c = 0; c < ambient.total; ++c) {
            ui(c * g + a) = us[static_cast<std::size_t>(i)](c);
            uj(c * g + b) = us[static_cast<std::size_t>(j)](c);
          }
          direct(i * g + a, j * g + b) = ui.dot(projection * uj);
        }
  CHECK(min_eig_hermitian(direct) >= -1e-10);
  const double defect_scale = 1e-6 + op_norm(direct) * 1e-8;
  CHECK(std::abs(theta_route.gram_min_eig - min_eig_hermitian(direct)) <=
        std::max(1e-6, defect_scale));
}

TEST_CASE("multiplier symbol rejects near-boundary points") {
  const WeightSequence x = WeightSequence::from_scalars({1.0});
  RadialData rd = radial_from_recursion(x, 5);
  const FockFrame ambient = build_frame(rd, 5);
  const OperatorTuple t = shift_as_tuple(build_shift(ambient, rd));
  CMat s = CMat::Zero(6, 5);
  for (int j = 0; j < 5; ++j) s(j + 1, j) = 1.0;
  const BlhFactorization blh = invariant_subspace_factor(t, rd, s);
  CVec w(1);
  w << Complex(0.97, 0.0);  // kernel vector tail ~ |w|^N, far from converged
  CHECK_THROWS_AS(multiplier_symbol(blh, ambient, rd, w, 1), InputError);
}

TEST_CASE("non-invariant subspace is rejected with a witness") {
  Rng rng(11);
  const WeightSequence x = random_admissible(rng, 2, 2);
  RadialData rd = radial_from_recursion(x, 4);
  const FockFrame ambient = build_frame(rd, 4);
  const OperatorTuple t = shift_as_tuple(build_shift(ambient, rd));
  const CMat bad = rng.cgaussian_matrix(t.m, 3);
  CHECK_THROWS_AS(invariant_subspace_factor(t, rd, bad), InvarianceError);
}
