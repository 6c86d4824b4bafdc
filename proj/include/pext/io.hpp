#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "pext/complex.hpp"
#include "pext/partitioning.hpp"

namespace pext::io {

using Json = nlohmann::json;

/// Malformed input. `line`/`column` are 1-based; zero when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_, column_;
};

struct ComplexDocument {
  SimplicialComplex complex;
  std::optional<std::string> name;
};

/**
 * JSON ({"facets": [[1,2],[2,3]], "name": ...}) when the first non-blank
 * character is '{' or '['; otherwise text: one facet per line, labels
 * separated by whitespace, "-" for the empty facet, '#' starts a comment.
 * An input without facets is the void complex.
 */
ComplexDocument parse_complex(const std::string& text, const std::string& source = "<input>");
ComplexDocument read_complex(const std::string& path);

/// JSON [{"bottom": [..], "top": [..]}, ...] or {"intervals": [...]}; text
/// lines "bottom | top" with "-" for an empty side.
IntervalPartition parse_partition(const std::string& text, const std::string& source = "<input>");

/// JSON [[..], ...] or {"order": [...]}; text: one facet per line.
ShellingOrder parse_order(const std::string& text, const std::string& source = "<input>");

std::string read_file(const std::string& path);

/// Parses JSON, turning syntax errors into ParseError with line and column.
Json parse_json(const std::string& text, const std::string& source);

Json to_json(const Face& f);
Json to_json(const CountVector& v);
Json to_json(const CountTriangle& t);
Json to_json(const IntervalPartition& p);
/// Array of facets in shortlex order; empty for the void complex.
Json facets_json(const SimplicialComplex& c);

Face face_from_json(const Json& j, const std::string& where);
SimplicialComplex complex_from_json(const Json& j, const std::string& where);
IntervalPartition partition_from_json(const Json& j, const std::string& where);

}  // namespace pext::io
