#include "ainfty/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace ainfty {

namespace {

using nlohmann::json;

LinComb parse_lincomb(const GradedVectorSpace& space, const json& arr,
                      const std::string& where) {
  LinComb v;
  for (const auto& term : arr) {
    std::string name = term.at("basis").get<std::string>();
    int idx = space.index_of(name);
    if (idx < 0)
      fail(ErrorKind::SemanticError, where + ": unknown basis element '" + name + "'");
    Scalar c = Scalar::parse(space.field(), term.at("coeff").get<std::string>());
    if (c.is_zero()) continue;
    auto it = v.find(idx);
    if (it == v.end()) {
      v.emplace(idx, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) v.erase(it);
    }
  }
  return v;
}

TensorIndex parse_tuple(const GradedVectorSpace& space, const json& arr,
                        const std::string& where) {
  TensorIndex in;
  for (const auto& nm : arr) {
    std::string name = nm.get<std::string>();
    int idx = space.index_of(name);
    if (idx < 0)
      fail(ErrorKind::SemanticError, where + ": unknown basis element '" + name + "'");
    in.push_back(idx);
  }
  return in;
}

std::string tuple_text(const GradedVectorSpace& space, const TensorIndex& in) {
  std::string s = "(";
  for (size_t k = 0; k < in.size(); ++k) {
    if (k) s += ",";
    s += space.name(in[k]);
  }
  return s + ")";
}

void fill_component(MultilinearOp& op, const GradedVectorSpace& in_space,
                    const GradedVectorSpace& out_space, const json& entries,
                    const std::string& where) {
  for (const auto& e : entries) {
    TensorIndex in = parse_tuple(in_space, e.at("in"), where);
    if (static_cast<int>(in.size()) != op.arity())
      fail(ErrorKind::SemanticError,
           where + ": entry " + tuple_text(in_space, in) + " has arity " +
               std::to_string(in.size()) + ", expected " + std::to_string(op.arity()));
    LinComb out = parse_lincomb(out_space, e.at("out"), where);
    try {
      op.set(in, out);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DegreeMismatch) throw;
      fail(ErrorKind::SemanticError,
           where + ": entry " + tuple_text(in_space, in) +
               " violates the degree rule (" + err.what() + ")");
    }
  }
}

int component_arity(const std::string& key, const std::string& prefix,
                    const std::string& where) {
  if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0)
    fail(ErrorKind::ParseError, where + ": component key '" + key +
                                    "' does not match " + prefix + "<arity>");
  for (size_t k = prefix.size(); k < key.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(key[k])))
      fail(ErrorKind::ParseError, where + ": component key '" + key +
                                      "' does not match " + prefix + "<arity>");
  return std::stoi(key.substr(prefix.size()));
}

json emit_tuple(const GradedVectorSpace& space, const TensorIndex& in) {
  json arr = json::array();
  for (int idx : in) arr.push_back(space.name(idx));
  return arr;
}

json emit_component_table(const MultilinearOp& op) {
  json arr = json::array();
  for (const auto& [in, out] : op.table()) {
    json entry;
    entry["in"] = emit_tuple(*op.source(), in);
    entry["out"] = emit_lincomb(*op.target(), out);
    arr.push_back(entry);
  }
  return arr;
}

}  // namespace

AlgebraSpec parse_algebra(const nlohmann::json& j) {
  try {
    AlgebraSpec spec;
    spec.name = j.value("name", std::string{});
    spec.field = Field::parse(j.at("field").get<std::string>());
    spec.cap = j.value("cap", 6);
    if (spec.cap < 1) fail(ErrorKind::SemanticError, "cap must be at least 1");
    if (j.contains("flags")) {
      const auto& fl = j.at("flags");
      spec.is_dga = fl.value("is_dga", true);
      spec.is_commutative_expected = fl.value("is_commutative_expected", false);
    }
    std::vector<BasisElement> basis;
    for (const auto& b : j.at("basis"))
      basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<int>()});
    SpacePtr space = make_space(spec.field, basis);
    spec.algebra = AInftyAlgebra::empty(space, spec.cap);

    if (j.contains("differential")) {
      std::map<int, LinComb> cols;
      for (const auto& e : j.at("differential")) {
        std::string src = e.at("src").get<std::string>();
        int si = space->index_of(src);
        if (si < 0)
          fail(ErrorKind::SemanticError, "differential: unknown basis element '" + src + "'");
        int di = space->index_of(e.at("dst").get<std::string>());
        if (di < 0)
          fail(ErrorKind::SemanticError,
               "differential: unknown basis element '" + e.at("dst").get<std::string>() + "'");
        Scalar c = Scalar::parse(spec.field, e.at("coeff").get<std::string>());
        if (c.is_zero()) continue;
        auto& col = cols[si];
        auto it = col.find(di);
        if (it == col.end()) col.emplace(di, c);
        else {
          it->second += c;
          if (it->second.is_zero()) col.erase(it);
        }
      }
      MultilinearOp& m1 = spec.algebra.op(1);
      for (const auto& [si, col] : cols) {
        if (col.empty()) continue;
        try {
          m1.set({si}, col);
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::DegreeMismatch) throw;
          fail(ErrorKind::SemanticError,
               "differential: entry for '" + space->name(si) +
                   "' violates the degree rule (" + err.what() + ")");
        }
      }
    }

    if (j.contains("products")) {
      const auto& prods = j.at("products");
      for (auto it = prods.begin(); it != prods.end(); ++it) {
        int n = component_arity(it.key(), "m", "products");
        if (n < 2 || n > spec.cap)
          fail(ErrorKind::SemanticError,
               "products: arity " + std::to_string(n) + " outside [2, cap=" +
                   std::to_string(spec.cap) + "]");
        fill_component(spec.algebra.op(n), *space, *space, it.value(),
                       "products." + it.key());
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("algebra file: ") + e.what());
  }
}

nlohmann::json emit_algebra(const AlgebraSpec& spec) {
  json j;
  if (!spec.name.empty()) j["name"] = spec.name;
  j["field"] = spec.field.to_string();
  j["cap"] = spec.cap;
  j["flags"]["is_dga"] = spec.is_dga;
  j["flags"]["is_commutative_expected"] = spec.is_commutative_expected;
  j["basis"] = json::array();
  const GradedVectorSpace& space = *spec.algebra.space;
  for (int i = 0; i < space.dim(); ++i)
    j["basis"].push_back({{"name", space.name(i)}, {"degree", space.degree(i)}});
  j["differential"] = json::array();
  for (const auto& [in, out] : spec.algebra.op(1).table())
    for (const auto& [di, c] : out)
      j["differential"].push_back({{"src", space.name(in[0])},
                                   {"dst", space.name(di)},
                                   {"coeff", c.to_string()}});
  j["products"] = json::object();
  for (int n = 2; n <= spec.cap; ++n)
    if (!spec.algebra.op(n).is_zero())
      j["products"]["m" + std::to_string(n)] = emit_component_table(spec.algebra.op(n));
  return j;
}

MorphismSpec parse_morphism(const nlohmann::json& j) {
  try {
    MorphismSpec spec;
    spec.source = parse_algebra(j.at("source"));
    spec.target = parse_algebra(j.at("target"));
    spec.morphism = AInftyMorphism::empty(spec.source.algebra, spec.target.algebra);
    if (j.contains("components")) {
      const auto& comps = j.at("components");
      for (auto it = comps.begin(); it != comps.end(); ++it) {
        int n = component_arity(it.key(), "f", "components");
        if (n < 1 || n > spec.morphism.cap)
          fail(ErrorKind::SemanticError,
               "components: arity " + std::to_string(n) + " outside [1, cap=" +
                   std::to_string(spec.morphism.cap) + "]");
        fill_component(spec.morphism.comp(n), *spec.source.algebra.space,
                       *spec.target.algebra.space, it.value(),
                       "components." + it.key());
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("morphism file: ") + e.what());
  }
}

nlohmann::json emit_morphism(const MorphismSpec& spec) {
  json j;
  j["source"] = emit_algebra(spec.source);
  j["target"] = emit_algebra(spec.target);
  j["cap"] = spec.morphism.cap;
  j["components"] = json::object();
  for (int n = 1; n <= spec.morphism.cap; ++n)
    if (!spec.morphism.comp(n).is_zero())
      j["components"]["f" + std::to_string(n)] =
          emit_component_table(spec.morphism.comp(n));
  return j;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

AlgebraSpec load_algebra_file(const std::string& path) {
  try {
    return parse_algebra(load_json_file(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError && e.kind() != ErrorKind::SemanticError) throw;
    fail(e.kind(), path + ": " + e.what());
  }
}

MorphismSpec load_morphism_file(const std::string& path) {
  try {
    return parse_morphism(load_json_file(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError && e.kind() != ErrorKind::SemanticError) throw;
    fail(e.kind(), path + ": " + e.what());
  }
}

std::string dump_canonical(const nlohmann::json& j) {
  return j.dump(2) + "\n";
}

nlohmann::json emit_lincomb(const GradedVectorSpace& space, const LinComb& v) {
  json arr = json::array();
  for (const auto& [idx, c] : v)
    arr.push_back({{"basis", space.name(idx)}, {"coeff", c.to_string()}});
  return arr;
}

nlohmann::json emit_multilinear(const MultilinearOp& op) {
  json j;
  j["arity"] = op.arity();
  j["degree"] = op.degree();
  j["table"] = emit_component_table(op);
  return j;
}

nlohmann::json emit_check_report(const GradedVectorSpace& space,
                                 const CheckReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["total_violations"] = std::to_string(rep.total_violations);
  j["witnesses"] = json::array();
  for (const auto& w : rep.witnesses)
    j["witnesses"].push_back({{"input", emit_tuple(space, w.input)},
                              {"residual", emit_lincomb(space, w.residual)}});
  return j;
}

nlohmann::json emit_transfer_report(const AlgebraSpec& input,
                                    const TransferResult& result) {
  json j;
  j["input"] = emit_algebra(input);
  AlgebraSpec minimal;
  minimal.name = input.name.empty() ? std::string("minimal") : input.name + ".minimal";
  minimal.field = input.field;
  minimal.cap = result.minimal.cap;
  minimal.is_dga = result.minimal.is_dga();
  minimal.is_commutative_expected = input.is_commutative_expected;
  minimal.algebra = result.minimal;
  j["minimal_model"] = emit_algebra(minimal);
  j["inclusion"] = json::object();
  j["projection"] = json::object();
  for (int n = 1; n <= result.inclusion.cap; ++n)
    if (!result.inclusion.comp(n).is_zero())
      j["inclusion"]["f" + std::to_string(n)] =
          emit_component_table(result.inclusion.comp(n));
  for (int n = 1; n <= result.projection.cap; ++n)
    if (!result.projection.comp(n).is_zero())
      j["projection"]["f" + std::to_string(n)] =
          emit_component_table(result.projection.comp(n));
  json checks;
  for (int n = 1; n <= result.minimal.cap; ++n) {
    checks["higher_associativity"]["n" + std::to_string(n)] = emit_check_report(
        *result.minimal.space, check_higher_associativity(result.minimal, n));
    checks["inclusion_morphism"]["n" + std::to_string(n)] = emit_check_report(
        *result.ambient.space, check_morphism(result.inclusion, n));
    checks["projection_morphism"]["n" + std::to_string(n)] = emit_check_report(
        *result.minimal.space, check_morphism(result.projection, n));
  }
  j["verification"] = checks;
  return j;
}

std::vector<std::string> fixture_names() {
  return {"trivial", "kx3_q", "kx3_f7", "lambda_xyz", "upper_triangular_2x2",
          "lambda_ab"};
}

const std::string& fixture_text(const std::string& name) {
  static std::map<std::string, std::string> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  bool known = false;
  for (const auto& n : fixture_names()) known = known || n == name;
  if (!known) fail(ErrorKind::ParseError, "unknown fixture '" + name + "'");
  std::ifstream in(std::string(AINFTY_FIXTURE_DIR) + "/" + name + ".json");
  if (!in) fail(ErrorKind::ParseError, "fixture '" + name + "' not found on disk");
  std::ostringstream ss;
  ss << in.rdbuf();
  return cache.emplace(name, ss.str()).first->second;
}

AlgebraSpec load_fixture(const std::string& name) {
  try {
    return parse_algebra(json::parse(fixture_text(name)));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, "fixture '" + name + "': " + e.what());
  }
}

}  // namespace ainfty
