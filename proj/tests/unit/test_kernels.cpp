#include <doctest.h>

#include <cmath>

#include "wfock/fock.hpp"
#include "wfock/kernels.hpp"
#include "wfock/linalg.hpp"

using namespace wfock;

namespace {

WeightSequence ellipse_weights() {
  WeightSequence x;
  x.d = 2;
  x.kmax = 1;
  x.X.resize(2);
  CVec diag(2);
  diag << 1.0, 2.0;
  x.X[1] = diag.asDiagonal();
  return x;
}

CVec point2(double a, double b) {
  CVec z(2);
  z << Complex(a, 0.0), Complex(b, 0.0);
  return z;
}

}  // namespace

TEST_CASE("scalar kernel closed forms") {
  const RadialData hardy = radial_from_recursion(WeightSequence::from_scalars({1.0}), 4);
  CVec zero1 = CVec::Zero(1);
  CHECK(std::abs(kernel_scalar(hardy, zero1, zero1).value - 1.0) <= 1e-14);

  CVec half(1);
  half << Complex(0.5, 0.0);
  const ScalarKernelValue szego = kernel_scalar(hardy, half, half, {1e-10, 200});
  CHECK(std::abs(szego.value - 1.0 / 0.75) <= 1e-9);
  CHECK(szego.tail_bound <= 1e-10);

  const RadialData da = radial_from_recursion(WeightSequence::drury_arveson(2), 4);
  const ScalarKernelValue dak = kernel_scalar(da, point2(0.5, 0.0), point2(0.5, 0.0));
  CHECK(std::abs(dak.value - 4.0 / 3.0) <= 1e-6);
  CHECK(std::abs(dak.value - 4.0 / 3.0) <= dak.tail_bound);

  CVec boundary(1);
  boundary << Complex(1.0, 0.0);
  CHECK_THROWS_AS(kernel_scalar(hardy, boundary, half), InputError);
}

TEST_CASE("kernel map basics") {
  Rng rng(5);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  const CMat a = rng.cgaussian_matrix(2, 2);
  const KernelValue at_zero = kernel_map(rd, OperatorTuple::zero(2, 2),
                                         OperatorTuple::zero(2, 2), a);
  CHECK((at_zero.value - a).norm() <= 1e-14);

  // m = 1 agrees with the scalar evaluator.
  const CVec z = random_domain_point(rng, x, 0.2);
  const CVec w = random_domain_point(rng, x, 0.15);
  const KernelValue kv = kernel_map(rd, OperatorTuple::scalar_point(z),
                                    OperatorTuple::scalar_point(w), CMat::Identity(1, 1));
  const ScalarKernelValue sv = kernel_scalar(rd, z, w);
  CHECK(std::abs(kv.value(0, 0) - sv.value) <= 1e-14);
}

TEST_CASE("Poisson unitality and the resolvent route") {
  Rng rng(7);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  const OperatorTuple t = random_commuting_tuple(rng, x, 2, 0.08);
  const CMat eye = CMat::Identity(2, 2);
  const CMat gap = eye - phi(t, x, eye);

  // K^R_c(T,T)(I - Phi_T(I)) = I
  const KernelValue unital = kernel_map(rd, t, t, gap, {1e-9, 64});
  CHECK(op_norm(CMat(unital.value - eye)) <= 1e-8);

  // Degree sum vs. the resolvent (id - Phi_hat)^{-1} on a generic argument.
  const CMat a = rng.cgaussian_matrix(2, 2);
  const CMat phi_hat = phi_map_matrix(t, x);
  const CMat resolvent_value =
      unvec(CMat(CMat::Identity(4, 4) - phi_hat).partialPivLu().solve(vec(a)), 2, 2);
  const KernelValue degree_sum = kernel_map(rd, t, t, a, {1e-9, 64});
  CHECK(op_norm(CMat(degree_sum.value - resolvent_value)) <= 1e-8);
}

TEST_CASE("phi_pair properties") {
  Rng rng(11);
  const WeightSequence x = ellipse_weights();
  const OperatorTuple t = random_commuting_tuple(rng, x, 2, 0.3);
  const OperatorTuple l = random_commuting_tuple(rng, x, 2, 0.25);
  const CMat a = rng.cgaussian_matrix(2, 2);
  CHECK(op_norm(CMat(phi_pair(t, t, x, a) - phi(t, x, a))) <= 1e-13);
  CHECK(phi_pair(t, l, x, CMat::Zero(2, 2)).norm() == 0.0);

  const CMat eye = CMat::Identity(2, 2);
  const double bound = std::sqrt(op_norm(phi(t, x, eye)) * op_norm(phi(l, x, eye)));
  CHECK(op_norm(phi_pair(t, l, x, eye)) <= bound + 1e-10);
  CHECK(bound < 1.0);
}

TEST_CASE("Neumann identity residuals") {
  Rng rng(13);
  const WeightSequence ones = WeightSequence::from_scalars({0.5, 0.25});
  const RadialData d1 = radial_from_recursion(ones, 4);
  const OperatorTuple z0 = OperatorTuple::zero(1, 1);
  CHECK(neumann_identity_residual(d1, z0, z0, CMat::Identity(1, 1)) <= 1e-15);

  // d=1 scalar points: the series identity (rx)/(xr) in kernel form.
  const CVec z = random_domain_point(rng, ones, 0.1);
  const CVec w = random_domain_point(rng, ones, 0.12);
  CHECK(neumann_identity_residual(d1, OperatorTuple::scalar_point(z),
                                  OperatorTuple::scalar_point(w),
                                  CMat::Identity(1, 1), {1e-10, 200}) <= 1e-10);

  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  for (int trial = 0; trial < 3; ++trial) {
    const OperatorTuple t = random_commuting_tuple(rng, x, 2, 0.1);
    const OperatorTuple l = random_commuting_tuple(rng, x, 2, 0.08);
    const CMat a = rng.cgaussian_matrix(2, 2);
    CHECK(neumann_identity_residual(rd, t, l, a, {1e-9, 64}) <= 1e-8);
  }
}

TEST_CASE("Choi certificates") {
  // Identity map: Choi is m * (maximally entangled projector).
  KernelSample identity_sample;
  identity_sample.m = 2;
  identity_sample.points = {OperatorTuple::zero(2, 2)};
  identity_sample.values = {{CMat::Identity(4, 4)}};
  const CpReport id_report = choi_cp_check(identity_sample);
  CHECK(id_report.pass);
  CHECK(id_report.choi_min_eig >= -1e-12);

  // Gram of K^R over random strict scalar points.
  Rng rng(17);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  std::vector<OperatorTuple> points;
  for (int i = 0; i < 5; ++i)
    points.push_back(OperatorTuple::scalar_point(
        random_domain_point(rng, x, rng.uniform(0.05, 0.4))));
  const CpReport gram = choi_cp_check(sample_kernel(rd, points, {1e-8, 64}));
  CHECK(gram.pass);
  CHECK(gram.gram_min_eig >= -1e-10);

  // Constant -1 kernel must fail.
  KernelSample negative;
  negative.m = 1;
  negative.points = {points[0], points[1]};
  negative.values = {{-CMat::Identity(1, 1), -CMat::Identity(1, 1)},
                     {-CMat::Identity(1, 1), -CMat::Identity(1, 1)}};
  CHECK_FALSE(choi_cp_check(negative).pass);

  // Phi_T is completely positive for any tuple.
  for (int trial = 0; trial < 3; ++trial) {
    OperatorTuple t;
    t.d = 2;
    t.m = 2;
    t.T = {0.6 * rng.cgaussian_matrix(2, 2), 0.6 * rng.cgaussian_matrix(2, 2)};
    const CpReport phi_choi = choi_of_map_check(phi_map_matrix(t, x), 2);
    CHECK(phi_choi.pass);
    CHECK(phi_choi.choi_min_eig >= -1e-9);
  }

  // Sample cap.
  std::vector<OperatorTuple> many(20, points[0]);
  KernelSample big;
  big.m = 1;
  big.points = many;
  CHECK_THROWS_AS(choi_cp_check(big), CapExceededError);
}

TEST_CASE("hermitian kernel symmetry") {
  Rng rng(19);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  std::vector<OperatorTuple> points;
  for (int i = 0; i < 3; ++i) points.push_back(random_commuting_tuple(rng, x, 2, 0.15));
  const KernelSample sample = sample_kernel(rd, points, {1e-8, 64});
  const CMat a = rng.cgaussian_matrix(2, 2);
  CHECK(hermitian_symmetry_residual(sample, a) <= 1e-10);
}

TEST_CASE("u-map preserves kernel inner products") {
  Rng rng(23);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 8);
  const FockFrame frame = build_frame(rd, 8);
  const CVec z = random_domain_point(rng, x, 0.15);
  const CVec w = random_domain_point(rng, x, 0.2);
  const CVec uz = kernel_vector(frame, rd, z, 8);
  const CVec uw = kernel_vector(frame, rd, w, 8);
  KernelOptions opts;
  opts.max_degree = 8;  // match the truncation of the vectors
  const ScalarKernelValue kv = kernel_scalar(rd, z, w, opts);
  CHECK(std::abs(uz.dot(uw) - kv.value) <= 1e-12);
}

TEST_CASE("convolution weight families") {
  Rng rng(29);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 5);

  // B = delta_0 reproduces the radial family.
  const WeightFamily kb0 = point_family(2, 5);
  const WeightFamily kc0 = kc_weights(rd, kb0, 5);
  for (int k = 0; k <= 5; ++k) CHECK((kc0.G2[k] - rd.r2(k)).norm() <= 1e-13);

  // R = I, B = I gives C_k^2 = (k+1) I.
  const RadialData da = radial_from_recursion(WeightSequence::drury_arveson(2), 5);
  const WeightFamily kb_da = kr_family(da, 5);
  const WeightFamily kc_da = kc_weights(da, kb_da, 5);
  for (int k = 0; k <= 5; ++k) {
    const Index dim = kc_da.G2[k].rows();
    CHECK((kc_da.G2[k] - double(k + 1) * CMat::Identity(dim, dim)).norm() <= 1e-12);
  }

  // d = 1 Bergman weights c_k^2 = k+1.
  const RadialData hardy = radial_from_recursion(WeightSequence::from_scalars({1.0}), 6);
  const WeightFamily bergman = kc_weights(hardy, kr_family(hardy, 6), 6);
  for (int k = 0; k <= 6; ++k)
    CHECK(std::abs(bergman.G2[k](0, 0) - Complex(k + 1.0, 0.0)) <= 1e-13);

  // Factorization K^C = K^R ∘ K^B at matched truncation.
  const WeightFamily b = kr_family(rd, 5);
  const WeightFamily c = kc_weights(rd, b, 5);
  for (int trial = 0; trial < 2; ++trial) {
    const OperatorTuple v = random_commuting_tuple(rng, x, 2, 0.2);
    const OperatorTuple w = random_commuting_tuple(rng, x, 2, 0.15);
    const CMat a = rng.cgaussian_matrix(2, 2);
    CHECK(kc_factorization_residual(rd, b, c, v, w, a) <= 1e-8);
  }
}

TEST_CASE("contractivity certification") {
  Rng rng(31);
  const WeightSequence x = ellipse_weights();
  // Family truncation deep enough that the (id - Phi) boundary terms
  // (~ phi^(N+1)) sit below the verdict tolerance for these samples.
  const RadialData rd = radial_from_recursion(x, 8);
  std::vector<OperatorTuple> points;
  std::vector<CMat> ops;
  for (int i = 0; i < 3; ++i) {
    points.push_back(random_commuting_tuple(rng, x, 2, 0.03 + 0.02 * i));
    ops.push_back(CMat::Identity(2, 2));
  }
  KernelOptions opts;
  opts.tol = 1e-10;

  // K^R itself: the factor is the constant kernel, trivially cp.
  const WeightFamily kr = kr_family(rd, 8);
  const CpReport kr_report = contractivity_check(kr, rd, points, ops, 1e-9, opts);
  CHECK(kr_report.pass);
  CHECK(kr_report.route_agreement <= 1e-6);

  // K^C with B = R passes.
  const WeightFamily kc = kc_weights(rd, kr_family(rd, 8), 8);
  CHECK(contractivity_check(kc, rd, points, ops, 1e-9, opts).pass);

  // The corrupted family fails with a negative eigenvalue witness.
  const WeightFamily bad = corrupt_family(kc, rd, 1, 25.0);
  const CpReport bad_report = contractivity_check(bad, rd, points, ops, 1e-9, opts);
  CHECK_FALSE(bad_report.pass);
  CHECK(bad_report.gram_min_eig < -1e-6);

  // Points outside the domain: Neumann divergence.
  std::vector<OperatorTuple> outside = points;
  outside.push_back(OperatorTuple::scalar_point(point2(1.2, 0.0)));
  std::vector<CMat> ops1(outside.size(), CMat::Identity(1, 1));
  CHECK_THROWS_AS(contractivity_check(kr, rd, outside, ops1, 1e-9, opts), InputError);
}

TEST_CASE("multiplier defect kernel") {
  // d=1, x=(1): C = 1 and K'' is the constant kernel 1.
  const RadialData hardy = radial_from_recursion(WeightSequence::from_scalars({1.0}), 20);
  std::vector<CVec> pts;
  for (double r : {0.0, 0.2, -0.3, 0.35}) {
    CVec z(1);
    z << Complex(r, 0.0);
    pts.push_back(z);
  }
  const CpReport d1 = multiplier_defect_check(hardy, pts);
  CHECK(d1.pass);

  // Single point at the origin: K''(0,0) = C >= 0.
  const CpReport origin = multiplier_defect_check(hardy, {CVec::Zero(1)});
  CHECK(origin.pass);
  CHECK(origin.gram_min_eig == doctest::Approx(hardy.zbound * hardy.zbound).epsilon(1e-10));

  // Ellipse weights on a strict sample: the truncation dangles one PSD
  // term of size ~ phi^(N+1), so the points sit well inside.
  Rng rng(37);
  const WeightSequence x = ellipse_weights();
  const RadialData rd = radial_from_recursion(x, 6);
  std::vector<CVec> sample;
  for (int i = 0; i < 6; ++i) sample.push_back(random_domain_point(rng, x, rng.uniform(0.005, 0.02)));
  const CpReport ellipse = multiplier_defect_check(rd, sample);
  CHECK(ellipse.pass);
  CHECK(ellipse.gram_min_eig >= -1e-9);
}
