#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace ainfty;
using namespace ainfty::testing;
using nlohmann::json;

TEST_CASE("algebra files round-trip byte-identically") {
  for (const auto& name : fixture_names()) {
    INFO("fixture ", name);
    AlgebraSpec a = parse_algebra(json::parse(fixture_text(name)));
    std::string once = dump_canonical(emit_algebra(a));
    AlgebraSpec b = parse_algebra(json::parse(once));
    std::string twice = dump_canonical(emit_algebra(b));
    CHECK(once == twice);
    CHECK(a.field == b.field);
    CHECK(a.cap == b.cap);
    for (int n = 1; n <= a.cap; ++n) CHECK(a.algebra.op(n) == b.algebra.op(n));
  }
}

TEST_CASE("morphism files round-trip") {
  AInftyAlgebra base = mixed_base_algebra(Field::rationals(), 4);
  AInftyMorphism f = random_valid_morphism(base, 5);
  MorphismSpec spec;
  spec.source.field = spec.target.field = Field::rationals();
  spec.source.cap = spec.target.cap = 4;
  spec.source.algebra = f.source;
  spec.target.algebra = f.target;
  spec.morphism = f;
  std::string once = dump_canonical(emit_morphism(spec));
  MorphismSpec back = parse_morphism(json::parse(once));
  CHECK(dump_canonical(emit_morphism(back)) == once);
  for (int n = 1; n <= 4; ++n) CHECK(back.morphism.comp(n) == f.comp(n));
  CHECK(morphism_ok(back.morphism, 4));
}

TEST_CASE("unknown basis names are semantic errors") {
  json j = json::parse(fixture_text("kx3_q"));
  j["products"]["m2"].push_back(
      {{"in", {"x", "nope"}}, {"out", json::array()}});
  try {
    parse_algebra(j);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SemanticError);
    CHECK(std::string(e.what()).find("nope") != std::string::npos);
  }
}

TEST_CASE("degree-violating entries are semantic errors naming the entry") {
  json j = json::parse(fixture_text("kx3_q"));
  j["products"]["m2"].push_back(
      {{"in", {"x", "x"}}, {"out", {{{"basis", "x"}, {"coeff", "1"}}}}});
  try {
    parse_algebra(j);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SemanticError);
    std::string msg = e.what();
    CHECK(msg.find("(x,x)") != std::string::npos);
    CHECK(msg.find("degree") != std::string::npos);
  }
}

TEST_CASE("malformed json is a parse error") {
  CHECK_THROWS_AS(parse_algebra(json::parse("{\"field\": 3}", nullptr, false)), Error);
  try {
    load_json_file("/nonexistent/file.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  // structurally wrong documents
  CHECK_THROWS_AS(parse_algebra(json::parse("{}")), Error);
  CHECK_THROWS_AS(parse_algebra(json::parse(R"({"field":"Q","basis":[{"name":"a"}]})")),
                  Error);
}

TEST_CASE("bad component keys and out-of-range arities are rejected") {
  json j = json::parse(fixture_text("trivial"));
  j["products"]["q2"] = json::array();
  CHECK_THROWS_AS(parse_algebra(j), Error);
  json k = json::parse(fixture_text("trivial"));
  k["products"]["m9"] = json::array();  // cap is 6
  CHECK_THROWS_AS(parse_algebra(k), Error);
}

TEST_CASE("emitted reports are deterministic") {
  AlgebraSpec spec = load_fixture("lambda_xyz");
  DeformationRetract r =
      build_retract(spec.algebra.space, spec.algebra.differential());
  TransferResult t = transfer_dga(spec.algebra.space, spec.algebra.differential(),
                                  spec.algebra.op(2), r, 4);
  std::string a = dump_canonical(emit_transfer_report(spec, t));
  TransferResult t2 = transfer_dga(spec.algebra.space, spec.algebra.differential(),
                                   spec.algebra.op(2), r, 4);
  std::string b = dump_canonical(emit_transfer_report(spec, t2));
  CHECK(a == b);
  CHECK(a.back() == '\n');
}

TEST_CASE("the transfer report's minimal model block re-ingests cleanly") {
  AlgebraSpec spec = load_fixture("lambda_xyz");
  DeformationRetract r =
      build_retract(spec.algebra.space, spec.algebra.differential());
  TransferResult t = transfer_dga(spec.algebra.space, spec.algebra.differential(),
                                  spec.algebra.op(2), r, 4);
  json report = emit_transfer_report(spec, t);
  AlgebraSpec mm = parse_algebra(report.at("minimal_model"));
  CHECK(algebra_ok(mm.algebra, mm.cap));
  CHECK_FALSE(mm.algebra.op(3).is_zero());
  for (int n = 1; n <= mm.cap; ++n) CHECK(mm.algebra.op(n) == t.minimal.op(n));
}

TEST_CASE("fixture catalogue") {
  CHECK(fixture_names().size() == 6);
  CHECK_THROWS_AS(fixture_text("does_not_exist"), Error);
  for (const auto& name : fixture_names()) CHECK(load_fixture(name).name == name);
}
