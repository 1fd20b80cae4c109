#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ainfty/coalgebra.hpp"
#include "ainfty/io.hpp"

using namespace ainfty;
using nlohmann::json;

namespace {

struct Options {
  int cap = 6;
  bool cap_given = false;
  std::string field;
  std::string report_path;
  std::string fixture;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--cap", opt.cap, "truncation arity (default 6, env AINFTY_CAP)")
      ->check(CLI::PositiveNumber)
      ->each([&opt](const std::string&) { opt.cap_given = true; });
  cmd->add_option("--field", opt.field, "override the ground field (Q or F<p>)");
  cmd->add_option("--report", opt.report_path, "write the report to this file");
  cmd->add_option("--fixture", opt.fixture, "use a built-in fixture as input");
  cmd->add_option("--seed", opt.seed, "seed for randomized property runs")
      ->each([&opt](const std::string&) { opt.seed_given = true; });
}

int effective_cap(const Options& opt, int file_cap) {
  if (opt.cap_given) return opt.cap;
  if (const char* env = std::getenv("AINFTY_CAP")) {
    int v = std::atoi(env);
    if (v < 1) fail(ErrorKind::ParseError, "AINFTY_CAP must be a positive integer");
    return v;
  }
  return file_cap;
}

json load_input_json(const Options& opt, const std::string& path) {
  json j;
  if (!opt.fixture.empty()) {
    j = json::parse(fixture_text(opt.fixture));
  } else {
    if (path.empty())
      fail(ErrorKind::ParseError, "no input: pass a file path or --fixture");
    j = load_json_file(path);
  }
  if (!opt.field.empty()) j["field"] = opt.field;
  j["cap"] = effective_cap(opt, j.value("cap", 6));
  return j;
}

void write_report(const Options& opt, const json& report) {
  std::string text = dump_canonical(report);
  if (opt.report_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.report_path, std::ios::binary);
    if (!out) fail(ErrorKind::ParseError, "cannot write " + opt.report_path);
    out << text;
  }
}

void stamp(json& report, const Options& opt, const std::string& command) {
  report["command"] = command;
  if (opt.seed_given) report["seed"] = std::to_string(opt.seed);
}

TransferResult run_transfer(const AlgebraSpec& spec, const DeformationRetract& retract) {
  if (spec.algebra.is_dga())
    return transfer_dga(spec.algebra.space, spec.algebra.differential(),
                        spec.algebra.op(2), retract, spec.cap);
  return transfer_ainfty(spec.algebra, retract, spec.cap);
}

bool collect_algebra_checks(const AlgebraSpec& spec, json& out) {
  bool pass = true;
  for (int n = 1; n <= spec.cap; ++n) {
    CheckReport rep = check_higher_associativity(spec.algebra, n);
    pass = pass && rep.pass;
    out["higher_associativity"]["n" + std::to_string(n)] =
        emit_check_report(*spec.algebra.space, rep);
  }
  if (spec.is_commutative_expected) {
    CheckReport rep = check_balanced(spec.algebra.op(2), 2);
    pass = pass && rep.pass;
    out["balanced_m2"] = emit_check_report(*spec.algebra.space, rep);
  }
  return pass;
}

int cmd_check(const Options& opt, const std::string& path) {
  json j = load_input_json(opt, path);
  json report;
  stamp(report, opt, "check");
  bool pass = true;
  if (j.contains("components")) {
    MorphismSpec spec = parse_morphism(j);
    report["kind"] = "morphism";
    for (int n = 1; n <= spec.morphism.cap; ++n) {
      CheckReport rep = check_morphism(spec.morphism, n);
      pass = pass && rep.pass;
      report["checks"]["morphism"]["n" + std::to_string(n)] =
          emit_check_report(*spec.target.algebra.space, rep);
    }
  } else {
    AlgebraSpec spec = parse_algebra(j);
    report["kind"] = "algebra";
    pass = collect_algebra_checks(spec, report["checks"]);
  }
  report["pass"] = pass;
  write_report(opt, report);
  return pass ? 0 : 1;
}

int cmd_transfer(const Options& opt, const std::string& path) {
  AlgebraSpec spec = parse_algebra(load_input_json(opt, path));
  DeformationRetract retract =
      build_retract(spec.algebra.space, spec.algebra.differential());
  TransferResult result = run_transfer(spec, retract);
  json report = emit_transfer_report(spec, result);
  stamp(report, opt, "transfer");
  bool pass = true;
  for (const auto& [key, block] : report.at("verification").items())
    for (const auto& [n, rep] : block.items()) pass = pass && rep.at("pass").get<bool>();
  report["pass"] = pass;
  write_report(opt, report);
  return pass ? 0 : 1;
}

json diff_block(const MultilinearOp& got, const MultilinearOp& want) {
  json j;
  bool equal = got == want;
  j["equal"] = equal;
  if (!equal) {
    j["direct"] = emit_multilinear(got);
    j["oracle"] = emit_multilinear(want);
  }
  return j;
}

int cmd_oracle_diff(const Options& opt, const std::string& path) {
  AlgebraSpec spec = parse_algebra(load_input_json(opt, path));
  DeformationRetract retract =
      build_retract(spec.algebra.space, spec.algebra.differential());
  TransferResult direct = run_transfer(spec, retract);
  TransferResult oracle = oracle_transfer(spec.algebra, retract, spec.cap);
  json report;
  stamp(report, opt, "oracle-diff");
  report["convention"] =
      "direct recursion with inclusion components i_n = -(h lambda_n) i^{(x)n} "
      "(extending h lambda_1 = -id, so n = 1 gives i) and projection "
      "p_n = (-1)^n p_{n-1} nu_n h_n; tensor-coalgebra "
      "side with b_n = s m_n (s^{-1})^{(x)n}, component extraction "
      "m_n = alpha_n s^{-1} B_n s^{(x)n}, alpha_n = (-1)^{n(n-1)/2}; "
      "this pairing reproduced exact equality";
  bool pass = true;
  for (int n = 1; n <= spec.cap; ++n) {
    json arity;
    arity["structure"] = diff_block(direct.minimal.op(n), oracle.minimal.op(n));
    arity["inclusion"] = diff_block(direct.inclusion.comp(n), oracle.inclusion.comp(n));
    arity["projection"] = diff_block(direct.projection.comp(n), oracle.projection.comp(n));
    for (const char* k : {"structure", "inclusion", "projection"})
      pass = pass && arity.at(k).at("equal").get<bool>();
    report["diff"]["n" + std::to_string(n)] = arity;
  }
  report["pass"] = pass;
  write_report(opt, report);
  return pass ? 0 : 1;
}

int cmd_compose(const Options& opt, const std::string& fpath, const std::string& gpath) {
  MorphismSpec f = load_morphism_file(fpath);
  MorphismSpec g = load_morphism_file(gpath);
  AInftyMorphism gf = compose(f.morphism, g.morphism);
  MorphismSpec out;
  out.source = f.source;
  out.target = g.target;
  out.morphism = gf;
  json report = emit_morphism(out);
  stamp(report, opt, "compose");
  bool pass = true;
  for (int n = 1; n <= gf.cap; ++n) {
    CheckReport rep = check_morphism(gf, n);
    pass = pass && rep.pass;
    report["checks"]["morphism"]["n" + std::to_string(n)] =
        emit_check_report(*g.target.algebra.space, rep);
  }
  report["pass"] = pass;
  write_report(opt, report);
  return pass ? 0 : 1;
}

int cmd_formality(const Options& opt, const std::string& path) {
  AlgebraSpec spec = parse_algebra(load_input_json(opt, path));
  DeformationRetract retract =
      build_retract(spec.algebra.space, spec.algebra.differential());
  TransferResult result = run_transfer(spec, retract);
  json report;
  stamp(report, opt, "formality");
  bool formal = true;
  for (int n = 3; n <= result.minimal.cap; ++n) {
    const MultilinearOp& mn = result.minimal.op(n);
    json block;
    block["zero"] = mn.is_zero();
    if (!mn.is_zero()) {
      formal = false;
      const auto& [in, outv] = *mn.table().begin();
      json witness;
      witness["in"] = json::array();
      for (int idx : in) witness["in"].push_back(result.minimal.space->name(idx));
      witness["out"] = emit_lincomb(*result.minimal.space, outv);
      block["witness"] = witness;
    }
    report["minimal_products"]["m" + std::to_string(n)] = block;
  }
  report["formal"] = formal;
  write_report(opt, report);
  return formal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact minimal models of dg- and A-infinity algebras"};
  app.require_subcommand(1);

  Options opt;
  std::string path, path2;

  CLI::App* check = app.add_subcommand("check", "verify the structure/morphism identities");
  check->add_option("input", path, "algebra or morphism JSON file");
  add_common(check, opt);

  CLI::App* transfer = app.add_subcommand("transfer", "compute the minimal model");
  transfer->add_option("input", path, "algebra JSON file");
  add_common(transfer, opt);

  CLI::App* oracle = app.add_subcommand("oracle-diff",
                                        "compare the direct recursion against the "
                                        "tensor-coalgebra perturbation path");
  oracle->add_option("input", path, "algebra JSON file");
  add_common(oracle, opt);

  CLI::App* comp = app.add_subcommand("compose", "compose two morphism files");
  comp->add_option("f", path, "first morphism (applied first)")->required();
  comp->add_option("g", path2, "second morphism")->required();
  add_common(comp, opt);

  CLI::App* formality = app.add_subcommand("formality",
                                           "decide whether the minimal model is formal "
                                           "up to the cap");
  formality->add_option("input", path, "algebra JSON file");
  add_common(formality, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(opt, path);
    if (transfer->parsed()) return cmd_transfer(opt, path);
    if (oracle->parsed()) return cmd_oracle_diff(opt, path);
    if (comp->parsed()) return cmd_compose(opt, path, path2);
    if (formality->parsed()) return cmd_formality(opt, path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
