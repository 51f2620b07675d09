// Command-line surface: reproducible experiments with file-based I/O.
// Exit codes: 0 pass, 1 verification verdict failed, 2 input error,
// 3 purity not certified, 4 invariance violated, 5 cap exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "wfock/blh.hpp"
#include "wfock/io.hpp"
#include "wfock/kernels.hpp"

namespace {

using namespace wfock;

Json conditions_json(const AdmissibilityReport& report) {
  Json conditions = Json::array();
  for (const auto& c : report.conditions)
    conditions.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"witness", c.witness},
                          {"detail", c.detail}});
  Json j;
  j["admissible"] = report.admissible;
  j["x1_min_singular_value"] = report.x1_min_singular_value;
  j["min_eigenvalue"] = report.min_eigenvalue;
  j["growth"] = report.growth;
  j["conditions"] = std::move(conditions);
  return j;
}

Json membership_json(const MembershipReport& report) {
  Json j;
  j["phi_norm"] = report.phi_norm;
  j["commutator_max"] = report.commutator_max;
  j["classification"] = report.classification;
  j["pure_certified"] = report.pure_certified;
  j["purity_steps"] = report.purity_steps;
  j["purity_trace"] = report.purity;
  return j;
}

Json cp_report_json(const CpReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["tol"] = report.tol;
  if (!std::isnan(report.choi_min_eig)) j["choi_min_eig"] = report.choi_min_eig;
  if (!std::isnan(report.gram_min_eig)) j["gram_min_eig"] = report.gram_min_eig;
  j["certificate_dim"] = report.certificate_dim;
  if (!std::isnan(report.route_agreement)) j["route_agreement"] = report.route_agreement;
  return j;
}

// Admissibility gate shared by every command reading a weights file.
WeightSequence load_checked_weights(const std::string& path) {
  const WeightSequence x = load_weights(path);
  const AdmissibilityReport report = validate_admissible(x);
  if (!report.admissible) {
    std::string failing;
    for (const auto& c : report.conditions)
      if (!c.pass) failing += (failing.empty() ? "" : "; ") + c.name;
    throw InputError("weights not admissible: " + failing);
  }
  return x;
}

struct WeightsArgs {
  std::string weights, out = "-";
  int n = 4;
  double tol = 1e-10;
};

int run_weights(const WeightsArgs& args) {
  Json j;
  j["command"] = "weights";
  j["config"] = {{"weights", args.weights}, {"N", args.n}, {"tol", args.tol},
                 {"eps_inv", 1e-10}, {"eps_psd", 1e-10}};
  const WeightSequence x = load_weights(args.weights);
  const AdmissibilityReport admissibility = validate_admissible(x);
  j["admissibility"] = conditions_json(admissibility);
  if (!admissibility.admissible) {
    write_text(j.dump(2) + "\n", args.out);
    std::string failing;
    for (const auto& c : admissibility.conditions)
      if (!c.pass) failing += (failing.empty() ? "" : "; ") + c.name;
    std::cerr << "weights not admissible: " << failing << "\n";
    return 2;
  }
  const RadialData by_recursion = radial_from_recursion(x, args.n);
  const RadialData by_compositions = radial_from_compositions(x, args.n);
  const double crosscheck = radial_max_difference(by_recursion, by_compositions);

  Json radial;
  radial["zbound"] = by_recursion.zbound;
  Json r2 = Json::array(), r = Json::array(), z = Json::array();
  for (int k = 0; k <= args.n; ++k) {
    r2.push_back(matrix_to_json(by_recursion.r2(k)));
    r.push_back(matrix_to_json(by_recursion.r(k)));
    z.push_back(matrix_to_json(by_recursion.z(k)));
  }
  radial["R2"] = std::move(r2);
  radial["R"] = std::move(r);
  radial["Z"] = std::move(z);
  j["radial"] = std::move(radial);
  j["crosscheck_residual"] = crosscheck;
  j["crosscheck_pass"] = crosscheck <= args.tol;
  write_text(j.dump(2) + "\n", args.out);
  return crosscheck <= args.tol ? 0 : 1;
}

struct DomainArgs {
  std::string weights, grid = "-1:1:0.1", out = "-";
  double margin = 1e-10;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec spec;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &spec.min, &spec.max, &spec.step) != 3)
    throw InputError("grid: expected MIN:MAX:STEP, got '" + text + "'");
  return spec;
}

int run_domain(const DomainArgs& args) {
  const WeightSequence x = load_checked_weights(args.weights);
  const GridSpec spec = parse_grid(args.grid);
  const auto rows = domain_grid(x, spec, args.margin);
  std::string csv;
  char line[256];
  std::snprintf(line, sizeof line, "# wfock domain weights=%s grid=%s margin=%.3g\n",
                args.weights.c_str(), args.grid.c_str(), args.margin);
  csv += line;
  csv += "z1,z2,phi,in_domain\n";
  for (const auto& row : rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%d\n", row.z1, row.z2,
                  row.phi, row.inside ? 1 : 0);
    csv += line;
  }
  write_text(csv, args.out);
  return 0;
}

struct DilateArgs {
  std::string weights, tuple, out = "-";
  double tol = 1e-8;
  int degree_cap = -1;
};

int run_dilate(const DilateArgs& args) {
  const WeightSequence x = load_checked_weights(args.weights);
  const OperatorTuple t = load_tuple(args.tuple);
  Json j;
  j["command"] = "dilate";
  j["config"] = {{"weights", args.weights}, {"tuple", args.tuple},
                 {"tol", args.tol}, {"degree_cap", args.degree_cap}};
  const MembershipReport membership = classify(t, x);
  j["membership"] = membership_json(membership);
  if (!membership.pure_certified) {
    write_text(j.dump(2) + "\n", args.out);
    std::cerr << "purity not certified; no dilation attempted\n";
    return 3;
  }
  RadialData rd = radial_from_recursion(x, 1);
  PoissonOptions opts;
  opts.tol = args.tol;
  opts.degree_cap = args.degree_cap;
  const PoissonOperator po = poisson(t, rd, opts);
  const FockFrame& frame = po.frame;
  const ShiftTuple shift = build_shift(frame, rd);
  j["dilation"] = {{"degree", po.degree},
                   {"defect_rank", po.defect.rank},
                   {"fock_dim", frame.total},
                   {"isometry_residual", po.isometry_residual},
                   {"intertwine_residual", intertwine_residual(po, t, shift)},
                   {"tol", args.tol}};
  write_text(j.dump(2) + "\n", args.out);
  return 0;
}

struct BlhArgs {
  std::string weights, tuple, subspace, out = "-";
  int shift_times = 0;   // > 0: build T = W ⊗ I_g on F_N(R) ⊗ C^g
  int n = 6;             // ambient truncation for --shift-times
  int theta_points = 0;  // sample size for the multiplier symbol
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

int run_blh(const BlhArgs& args) {
  const WeightSequence x = load_checked_weights(args.weights);
  Json j;
  j["command"] = "blh";
  j["config"] = {{"weights", args.weights}, {"tuple", args.tuple},
                 {"subspace", args.subspace}, {"shift_times", args.shift_times},
                 {"N", args.n}, {"theta_points", args.theta_points},
                 {"seed", args.seed}, {"invariance_tol", args.tol}};

  RadialData rd = radial_from_recursion(x, 1);
  OperatorTuple t;
  FockFrame ambient;
  if (args.shift_times > 0) {
    extend_radial(rd, args.n);
    ambient = build_frame(rd, args.n);
    t = shift_times_identity(build_shift(ambient, rd), args.shift_times);
  } else {
    if (args.tuple.empty()) throw InputError("blh: need --tuple or --shift-times");
    t = load_tuple(args.tuple);
  }
  const CMat s = load_subspace(args.subspace);

  BlhOptions opts;
  opts.invariance_tol = args.tol;
  BlhFactorization blh;
  try {
    blh = invariant_subspace_factor(t, rd, s, opts);
  } catch (const InvarianceError& e) {
    j["error"] = e.what();
    write_text(j.dump(2) + "\n", args.out);
    std::cerr << e.what() << "\n";
    return 4;
  }
  Json residuals;
  residuals["partial_isometry"] = blh.partial_isometry_residual;
  residuals["range"] = blh.range_residual;
  residuals["intertwine"] = blh.intertwine_residuals;
  residuals["invariance_witness"] = blh.invariance_witness;
  j["factorization"] = {{"defect_dim", blh.defect_dim},
                        {"degree", blh.degree},
                        {"subspace_dim", blh.subspace.cols()},
                        {"residuals", residuals},
                        {"restriction_purity", blh.restriction_purity}};

  if (args.theta_points > 0) {
    if (args.shift_times <= 0)
      throw InputError("blh: --theta-points needs the --shift-times ambient model");
    Rng rng(args.seed);
    std::vector<CVec> points;
    Json thetas = Json::array();
    for (int i = 0; i < args.theta_points; ++i) {
      const CVec w = random_domain_point(rng, x, 0.02 + 0.18 * rng.uniform());
      points.push_back(w);
      const MultiplierSymbol symbol = multiplier_symbol(blh, ambient, rd, w, args.shift_times);
      Json entry;
      Json wj = Json::array();
      for (Index c = 0; c < w.size(); ++c) wj.push_back({w(c).real(), w(c).imag()});
      entry["w"] = std::move(wj);
      entry["theta"] = matrix_to_json(symbol.theta);
      entry["extraction_defect"] = symbol.extraction_defect;
      thetas.push_back(std::move(entry));
    }
    const CpReport a_gram = theta_defect_gram(blh, ambient, rd, points, args.shift_times);
    j["theta"] = {{"samples", thetas}, {"a_gram", cp_report_json(a_gram)}};
  }
  write_text(j.dump(2) + "\n", args.out);
  return 0;
}

struct KernelArgs {
  std::string weights, bweights, kernel = "KR", out = "-";
  int points = 4;
  int m = 1;
  int degree = 6;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  double corrupt = 0.0;
  double phi_target = 0.1;
};

int run_kernel_check(const KernelArgs& args) {
  const WeightSequence x = load_checked_weights(args.weights);
  Json j;
  j["command"] = "kernel-check";
  j["config"] = {{"weights", args.weights}, {"kernel", args.kernel},
                 {"bweights", args.bweights}, {"points", args.points},
                 {"m", args.m}, {"degree", args.degree}, {"seed", args.seed},
                 {"tol", args.tol}, {"corrupt", args.corrupt},
                 {"phi_target", args.phi_target}};
  RadialData rd = radial_from_recursion(x, args.degree);

  WeightFamily b = kr_family(rd, args.degree);
  if (!args.bweights.empty()) {
    // B_k^2 supplied in the weights schema; B_0^2 = 1 is implied.
    const WeightSequence bw = load_weights(args.bweights);
    if (bw.d != x.d) throw InputError("bweights: alphabet size mismatch");
    b.G2.assign(1, CMat::Identity(1, 1));
    for (int k = 1; k <= args.degree; ++k) {
      if (bw.has_weight(k))
        b.G2.push_back(bw.weight(k));
      else
        b.G2.push_back(CMat::Zero(rd.r2(k).rows(), rd.r2(k).cols()));
    }
  }

  WeightFamily family;
  if (args.kernel == "KR") family = kr_family(rd, args.degree);
  else if (args.kernel == "KB") family = b;
  else if (args.kernel == "KC") family = kc_weights(rd, b, args.degree);
  else throw InputError("kernel: expected KR, KB or KC");
  if (args.corrupt != 0.0) family = corrupt_family(family, rd, 1, args.corrupt);

  Rng rng(args.seed);
  std::vector<OperatorTuple> points;
  std::vector<CMat> ops;
  for (int i = 0; i < args.points; ++i) {
    if (args.m == 1)
      points.push_back(OperatorTuple::scalar_point(
          random_domain_point(rng, x, args.phi_target * (0.5 + rng.uniform()))));
    else
      points.push_back(random_commuting_tuple(rng, x, args.m,
                                              args.phi_target * (0.5 + rng.uniform())));
    ops.push_back(CMat::Identity(args.m, args.m));
  }

  const KernelSample sample = sample_family_kernel(family, points);
  const CpReport cp = choi_cp_check(sample, args.tol);
  const CpReport contractivity = contractivity_check(family, rd, points, ops, args.tol);
  j["cp_check"] = cp_report_json(cp);
  j["contractivity"] = cp_report_json(contractivity);
  const bool pass = cp.pass && contractivity.pass;
  j["pass"] = pass;
  write_text(j.dump(2) + "\n", args.out);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wfock: weighted Drury-Arveson spaces, dilations and invariant-subspace factorizations"};
  app.require_subcommand(1);

  WeightsArgs weights_args;
  auto* weights_cmd = app.add_subcommand("weights", "Radial data R_k, Z_k with the composition cross-check");
  weights_cmd->add_option("--weights", weights_args.weights, "weights JSON")->required();
  weights_cmd->add_option("--N", weights_args.n, "truncation degree");
  weights_cmd->add_option("--tol", weights_args.tol, "cross-check tolerance");
  weights_cmd->add_option("--out", weights_args.out, "output path ('-': stdout)");

  DomainArgs domain_args;
  auto* domain_cmd = app.add_subcommand("domain", "CSV grid of Phi_z(1) over the real slice (d = 2)");
  domain_cmd->add_option("--weights", domain_args.weights)->required();
  domain_cmd->add_option("--grid", domain_args.grid, "MIN:MAX:STEP");
  domain_cmd->add_option("--margin", domain_args.margin, "strictness margin");
  domain_cmd->add_option("--out", domain_args.out);

  DilateArgs dilate_args;
  auto* dilate_cmd = app.add_subcommand("dilate", "Poisson dilation of a pure commuting tuple");
  dilate_cmd->add_option("--weights", dilate_args.weights)->required();
  dilate_cmd->add_option("--tuple", dilate_args.tuple)->required();
  dilate_cmd->add_option("--tol", dilate_args.tol, "isometry residual target");
  dilate_cmd->add_option("--N-cap", dilate_args.degree_cap, "truncation cap (-1: per-d default)");
  dilate_cmd->add_option("--out", dilate_args.out);

  BlhArgs blh_args;
  auto* blh_cmd = app.add_subcommand("blh", "Invariant-subspace factorization");
  blh_cmd->add_option("--weights", blh_args.weights)->required();
  blh_cmd->add_option("--tuple", blh_args.tuple);
  blh_cmd->add_option("--subspace", blh_args.subspace)->required();
  blh_cmd->add_option("--shift-times", blh_args.shift_times, "use T = W ⊗ I_g on F_N(R) ⊗ C^g");
  blh_cmd->add_option("--N", blh_args.n, "ambient truncation for --shift-times");
  blh_cmd->add_option("--theta-points", blh_args.theta_points, "multiplier symbol sample size");
  blh_cmd->add_option("--seed", blh_args.seed);
  blh_cmd->add_option("--tol", blh_args.tol, "invariance tolerance");
  blh_cmd->add_option("--out", blh_args.out);

  KernelArgs kernel_args;
  auto* kernel_cmd = app.add_subcommand("kernel-check", "cp and contractivity certification of kernel families");
  kernel_cmd->add_option("--weights", kernel_args.weights)->required();
  kernel_cmd->add_option("--kernel", kernel_args.kernel, "KR | KB | KC");
  kernel_cmd->add_option("--bweights", kernel_args.bweights, "B_k^2 family (weights schema)");
  kernel_cmd->add_option("--points", kernel_args.points);
  kernel_cmd->add_option("--m", kernel_args.m, "coefficient space dimension");
  kernel_cmd->add_option("--degree", kernel_args.degree, "family truncation degree");
  kernel_cmd->add_option("--seed", kernel_args.seed);
  kernel_cmd->add_option("--tol", kernel_args.tol);
  kernel_cmd->add_option("--corrupt", kernel_args.corrupt, "subtract corrupt*R_1^2 at degree 1");
  kernel_cmd->add_option("--phi-target", kernel_args.phi_target, "sample strictness");
  kernel_cmd->add_option("--out", kernel_args.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (weights_cmd->parsed()) return run_weights(weights_args);
    if (domain_cmd->parsed()) return run_domain(domain_args);
    if (dilate_cmd->parsed()) return run_dilate(dilate_args);
    if (blh_cmd->parsed()) return run_blh(blh_args);
    if (kernel_cmd->parsed()) return run_kernel_check(kernel_args);
  } catch (const wfock::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const wfock::PurityError& e) {
    std::cerr << "purity: " << e.what() << "\n";
    return 3;
  } catch (const wfock::InvarianceError& e) {
    std::cerr << "invariance: " << e.what() << "\n";
    return 4;
  } catch (const wfock::CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
