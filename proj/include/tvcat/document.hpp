#pragma once

#include "tvcat/algkm.hpp"
#include "tvcat/presheaf.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tvcat {

/// Malformed document text; carries the 1-based line and column.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_, column_;
};

/// A validated instance document. Blocks are kept in name order.
///
/// Top-level keys: quantale, monad, structures, maps, algebras, relations.
/// Elements are written as strings (atoms), arrays (lists or subsets,
/// following the monad) and {"pair": [l, r]}; values as names or numbers.
struct Document {
  struct MapBlock {
    std::string source, target;
    Map map;
  };
  struct AlgebraBlock {
    std::string base;
    TAlgebra algebra;
  };
  struct RelationBlock {
    std::string source, target;
    VRel rel;
  };

  QuantaleRef quantale;
  MonadRef monad;
  std::map<std::string, TVStructure> structures;
  std::map<std::string, MapBlock> maps;
  std::map<std::string, AlgebraBlock> algebras;
  std::map<std::string, RelationBlock> relations;

  enum class Kind { structure, map, algebra, relation };
  std::optional<Kind> kind_of(const std::string& name) const;
  TVRel tvrel(const std::string& name) const;
};

/// Parses and validates. Syntax errors raise ParseError; unknown keys,
/// dangling references and values outside the carrier raise ConfigError
/// naming the offending path. `budget` overrides the monad block.
Document parse_document(std::string_view text, std::optional<std::size_t> budget = std::nullopt);

/// JSON form of an element of `set`, inverse to the document encoding.
nlohmann::json element_to_json(const FinSet& set, std::size_t i);
std::size_t element_from_json(const FinSet& set, const nlohmann::json& j, const std::string& path);

/// Document form of a structure: carrier, monad, non-bottom entries.
nlohmann::json structure_to_json(const TVStructure& s);

} // namespace tvcat
