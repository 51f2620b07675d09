// End-to-end checks of the wfock binary: file formats, exit codes,
// reported values and byte-level determinism. argv[1] is the binary path.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "wfock/fock.hpp"
#include "wfock/io.hpp"

using namespace wfock;
namespace fs = std::filesystem;

namespace {

int checks_failed = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++checks_failed;
    std::cerr << "FAILED: " << what << "\n";
  }
}

std::string g_binary;
fs::path g_dir;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const fs::path out_file = g_dir / "stdout.txt";
  const std::string cmd = g_binary + " " + args + " > " + out_file.string() + " 2> " +
                          (g_dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.out = buffer.str();
  return result;
}

std::string path_of(const std::string& name) { return (g_dir / name).string(); }

void write_file(const std::string& name, const std::string& text) {
  std::ofstream out(g_dir / name);
  out << text;
}

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

WeightSequence nonconvex_weights() {
  WeightSequence x;
  x.d = 2;
  x.kmax = 2;
  x.X.resize(3);
  x.X[1] = CMat::Identity(2, 2);
  CVec diag(4);
  diag << 1.0, 120.0, 120.0, 1.0;
  x.X[2] = diag.asDiagonal();
  return x;
}

void test_weights_command() {
  save_weights(ellipse_weights(), path_of("ellipse.json"));
  const RunResult r = run("weights --weights " + path_of("ellipse.json") + " --N 3");
  expect(r.exit_code == 0, "weights exit code");
  const Json j = Json::parse(r.out);
  expect(j.at("admissibility").at("admissible").get<bool>(), "weights admissible");
  expect(j.at("crosscheck_residual").get<double>() <= 1e-12, "weights crosscheck");
  // R_2 = diag(1, sqrt(2), sqrt(2), 2)
  const CMat r2 = matrix_from_json(j.at("radial").at("R").at(2));
  CVec expected(4);
  expected << 1.0, std::sqrt(2.0), std::sqrt(2.0), 2.0;
  expect((r2 - CMat(expected.asDiagonal())).norm() <= 1e-12, "weights R_2 value");

  // d=1, x=(1): all r_k = 1.
  save_weights(WeightSequence::from_scalars({1.0}), path_of("hardy.json"));
  const RunResult r1 = run("weights --weights " + path_of("hardy.json") + " --N 5");
  expect(r1.exit_code == 0, "hardy weights exit");
  const Json j1 = Json::parse(r1.out);
  for (int k = 0; k <= 5; ++k) {
    const CMat rk = matrix_from_json(j1.at("radial").at("R").at(k));
    expect(std::abs(rk(0, 0) - Complex(1.0, 0.0)) <= 1e-13, "hardy r_k = 1");
  }

  // Inadmissible: X_1 singular -> exit 2, failing condition named.
  WeightSequence singular = ellipse_weights();
  singular.X[1](0, 0) = 0.0;
  save_weights(singular, path_of("singular.json"));
  const RunResult r2r = run("weights --weights " + path_of("singular.json"));
  expect(r2r.exit_code == 2, "inadmissible weights exit 2");
  const Json j2 = Json::parse(r2r.out);
  expect(!j2.at("admissibility").at("admissible").get<bool>(), "inadmissible flagged");

  // Malformed JSON -> exit 2.
  write_file("broken.json", "{ not json");
  expect(run("weights --weights " + path_of("broken.json")).exit_code == 2,
         "malformed weights exit 2");
}

void test_domain_command() {
  save_weights(nonconvex_weights(), path_of("nonconvex.json"));
  const RunResult r = run("domain --weights " + path_of("nonconvex.json") +
                          " --grid 0:0.5:0.25");
  expect(r.exit_code == 0, "domain exit code");
  expect(r.out.find("z1,z2,phi,in_domain") != std::string::npos, "domain header");
  expect(r.out.find("0,0.5,0.3125,1") != std::string::npos, "domain inside row");
  expect(r.out.find("0.25,0.25,1.0703125,0") != std::string::npos, "domain outside row");

  // Ellipse slice: |z1|^2 + 2|z2|^2 = 1 separates the grid.
  save_weights(ellipse_weights(), path_of("ellipse.json"));
  const RunResult re = run("domain --weights " + path_of("ellipse.json") +
                           " --grid -1:1:0.1");
  std::istringstream lines(re.out);
  std::string line;
  bool boundary_ok = true;
  int parsed = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'z') continue;
    double z1, z2, phi;
    int inside;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%d", &z1, &z2, &phi, &inside) == 4) {
      ++parsed;
      const bool expected = z1 * z1 + 2 * z2 * z2 < 1.0 - 1e-10;
      boundary_ok = boundary_ok && (expected == (inside == 1));
      if (std::abs(z1 - 0.9) < 1e-12 && std::abs(z2 - 0.3) < 1e-12)
        boundary_ok = boundary_ok && inside == 1 && std::abs(phi - 0.99) <= 1e-12;
    }
  }
  expect(parsed == 21 * 21, "ellipse grid row count");
  expect(boundary_ok, "ellipse in/out classification");
}

void test_dilate_command() {
  save_weights(WeightSequence::from_scalars({1.0}), path_of("hardy.json"));
  OperatorTuple nilpotent;
  nilpotent.d = 1;
  nilpotent.m = 2;
  nilpotent.T = {CMat::Zero(2, 2)};
  nilpotent.T[0](0, 1) = 0.8;
  save_tuple(nilpotent, path_of("nilpotent.json"));
  const RunResult r = run("dilate --weights " + path_of("hardy.json") + " --tuple " +
                          path_of("nilpotent.json"));
  expect(r.exit_code == 0, "dilate exit code");
  const Json j = Json::parse(r.out);
  expect(j.at("dilation").at("isometry_residual").get<double>() <= 1e-12,
         "dilate isometry residual");
  expect(j.at("dilation").at("intertwine_residual").get<double>() <= 1e-12,
         "dilate intertwine residual");
  expect(j.at("membership").at("pure_certified").get<bool>(), "dilate purity");

  // Seeded regression fixture: strict commuting pair on C^4.
  save_weights(ellipse_weights(), path_of("ellipse.json"));
  {
    Rng rng(2024);
    const OperatorTuple pair4 = random_commuting_tuple(rng, ellipse_weights(), 4, 0.03, 0.2);
    save_tuple(pair4, path_of("pair4.json"));
    const RunResult rr = run("dilate --weights " + path_of("ellipse.json") + " --tuple " +
                             path_of("pair4.json") + " --tol 1e-9");
    expect(rr.exit_code == 0, "dilate m=4 exit code");
    const Json jj = Json::parse(rr.out);
    expect(jj.at("dilation").at("isometry_residual").get<double>() <= 1e-8,
           "dilate m=4 isometry residual");
    expect(jj.at("dilation").at("intertwine_residual").get<double>() <= 1e-8,
           "dilate m=4 intertwine residual");
  }

  // Boundary non-pure point: exit 3, report still written.
  OperatorTuple boundary;
  boundary.d = 1;
  boundary.m = 1;
  boundary.T = {CMat::Identity(1, 1)};
  save_tuple(boundary, path_of("boundary.json"));
  const RunResult r3 = run("dilate --weights " + path_of("hardy.json") + " --tuple " +
                           path_of("boundary.json"));
  expect(r3.exit_code == 3, "dilate purity exit 3");
  const Json j3 = Json::parse(r3.out);
  expect(!j3.at("membership").at("pure_certified").get<bool>(), "purity report written");
}

void test_blh_command() {
  save_weights(WeightSequence::from_scalars({1.0}), path_of("hardy.json"));
  // S = degrees >= 1 inside F_5(R) (dimension 6) for d = 1.
  CMat s = CMat::Zero(6, 5);
  for (int j = 0; j < 5; ++j) s(j + 1, j) = 1.0;
  save_subspace(s, path_of("beurling.json"));
  const RunResult r = run("blh --weights " + path_of("hardy.json") +
                          " --shift-times 1 --N 5 --subspace " + path_of("beurling.json") +
                          " --theta-points 2 --seed 7");
  expect(r.exit_code == 0, "blh exit code");
  const Json j = Json::parse(r.out);
  const auto& residuals = j.at("factorization").at("residuals");
  expect(residuals.at("range").get<double>() <= 1e-10, "blh range residual");
  expect(residuals.at("partial_isometry").get<double>() <= 1e-10, "blh partial isometry");
  expect(j.at("theta").at("a_gram").at("pass").get<bool>(), "blh theta gram");
  // Theta(w) = w for the Beurling subspace: check one sample.
  const auto& sample0 = j.at("theta").at("samples").at(0);
  const double w_re = sample0.at("w").at(0).at(0).get<double>();
  const CMat theta = matrix_from_json(sample0.at("theta"));
  expect(std::abs(theta(0, 0).real() - w_re) <= 1e-6, "blh theta value");

  // Non-invariant subspace: exit 4.
  CMat bad = CMat::Zero(6, 2);
  bad(0, 0) = 1.0;
  bad(2, 1) = 1.0;
  save_subspace(bad, path_of("bad_subspace.json"));
  const RunResult r4 = run("blh --weights " + path_of("hardy.json") +
                           " --shift-times 1 --N 5 --subspace " + path_of("bad_subspace.json"));
  expect(r4.exit_code == 4, "blh invariance exit 4");
}

void test_kernel_check_command() {
  save_weights(ellipse_weights(), path_of("ellipse.json"));
  const std::string base = "kernel-check --weights " + path_of("ellipse.json") +
                           " --kernel KC --points 3 --m 2 --degree 8 --seed 11 "
                           "--phi-target 0.04";
  const RunResult good = run(base);
  expect(good.exit_code == 0, "kernel-check KC pass");
  const Json j = Json::parse(good.out);
  expect(j.at("contractivity").at("pass").get<bool>(), "KC contractivity verdict");

  const RunResult bad = run(base + " --corrupt 25.0");
  expect(bad.exit_code == 1, "kernel-check corrupted exit 1");
  const Json jb = Json::parse(bad.out);
  expect(jb.at("contractivity").at("gram_min_eig").get<double>() < -1e-6,
         "corrupted negative witness");

  // Scalar Gram route.
  const RunResult scalar = run("kernel-check --weights " + path_of("ellipse.json") +
                               " --kernel KR --points 5 --m 1 --degree 8 --seed 3 --phi-target 0.02");
  expect(scalar.exit_code == 0, "kernel-check KR scalar pass");
  const Json js = Json::parse(scalar.out);
  expect(js.at("cp_check").at("gram_min_eig").get<double>() >= -1e-10,
         "KR gram PSD");
}

void test_determinism() {
  save_weights(ellipse_weights(), path_of("ellipse.json"));
  const std::string cmd = "kernel-check --weights " + path_of("ellipse.json") +
                          " --kernel KR --points 4 --m 1 --degree 8 --seed 42 --phi-target 0.02";
  const RunResult a = run(cmd);
  const RunResult b = run(cmd);
  expect(a.exit_code == 0 && b.exit_code == 0, "determinism exit codes");
  expect(a.out == b.out, "byte-identical outputs for identical config and seed");
  expect(a.out.find("\"seed\": 42") != std::string::npos, "seed recorded in output");

  save_weights(WeightSequence::from_scalars({1.0}), path_of("hardy.json"));
  CMat s = CMat::Zero(6, 5);
  for (int j = 0; j < 5; ++j) s(j + 1, j) = 1.0;
  save_subspace(s, path_of("beurling.json"));
  const std::string blh_cmd = "blh --weights " + path_of("hardy.json") +
                              " --shift-times 1 --N 5 --subspace " +
                              path_of("beurling.json") + " --theta-points 3 --seed 17";
  const RunResult c = run(blh_cmd);
  const RunResult d = run(blh_cmd);
  expect(c.exit_code == 0 && c.out == d.out, "blh outputs byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: wfock-cli-tests <path-to-binary>\n";
    return 2;
  }
  g_binary = argv[1];
  g_dir = fs::temp_directory_path() / "wfock-cli-tests";
  fs::create_directories(g_dir);

  test_weights_command();
  test_domain_command();
  test_dilate_command();
  test_blh_command();
  test_kernel_check_command();
  test_determinism();

  if (checks_failed == 0) std::cout << "cli: all checks passed\n";
  return checks_failed == 0 ? 0 : 1;
}
