#ifndef AINFTY_IO_HPP
#define AINFTY_IO_HPP

#include <json.hpp>

#include "ainfty/transfer.hpp"

namespace ainfty {

/// An algebra as described by an input file: structure plus metadata.
struct AlgebraSpec {
  std::string name;  // optional display name
  Field field = Field::rationals();
  int cap = 6;
  bool is_dga = true;
  bool is_commutative_expected = false;
  AInftyAlgebra algebra;
};

/// A morphism file: both endpoint algebras plus the component tables.
struct MorphismSpec {
  AlgebraSpec source, target;
  AInftyMorphism morphism;
};

AlgebraSpec parse_algebra(const nlohmann::json& j);
nlohmann::json emit_algebra(const AlgebraSpec& spec);

MorphismSpec parse_morphism(const nlohmann::json& j);
nlohmann::json emit_morphism(const MorphismSpec& spec);

/// Loads and parses a file; throws ParseError with filename/position context.
nlohmann::json load_json_file(const std::string& path);
AlgebraSpec load_algebra_file(const std::string& path);
MorphismSpec load_morphism_file(const std::string& path);

/// Canonical serialization used for every report: sorted keys, two-space
/// indent, trailing newline. Byte-identical across runs on equal input.
std::string dump_canonical(const nlohmann::json& j);

nlohmann::json emit_lincomb(const GradedVectorSpace& space, const LinComb& v);
nlohmann::json emit_multilinear(const MultilinearOp& op);
nlohmann::json emit_check_report(const GradedVectorSpace& space,
                                 const CheckReport& rep);

/// Self-describing transfer report; the minimal model block is itself a valid
/// algebra file (re-ingestable through parse_algebra).
nlohmann::json emit_transfer_report(const AlgebraSpec& input,
                                    const TransferResult& result);

/// Built-in example algebras, shipped as JSON text.
std::vector<std::string> fixture_names();
const std::string& fixture_text(const std::string& name);  // throws ParseError
AlgebraSpec load_fixture(const std::string& name);

}  // namespace ainfty

#endif
