#include "pext/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pext/error.hpp"

namespace pext::io {
namespace {

std::string located(const std::string& source, std::size_t line, std::size_t column,
                    const std::string& what) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(column);
  return out + ": " + what;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

struct Token {
  std::string text;
  std::size_t column;
};

// Splits one line into whitespace-separated tokens, dropping a '#' comment.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

Vertex parse_label(const Token& t, const std::string& source, std::size_t line) {
  Vertex v = 0;
  const char* end = t.text.data() + t.text.size();
  const auto [ptr, ec] = std::from_chars(t.text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(source, line, t.column, "expected a nonnegative integer label, got '" + t.text + "'");
  return v;
}

// Face from tokens; a single "-" is the empty face.
Face parse_face_tokens(std::span<const Token> tokens, const std::string& source, std::size_t line) {
  if (tokens.size() == 1 && tokens[0].text == "-") return Face{};
  std::vector<Vertex> labels;
  for (const Token& t : tokens) {
    if (t.text == "-") throw ParseError(source, line, t.column, "'-' must stand alone");
    labels.push_back(parse_label(t, source, line));
  }
  try {
    return Face(std::move(labels));
  } catch (const Error& e) {
    throw ParseError(source, line, tokens.front().column, e.what());
  }
}

template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = tokenize(line);
    if (!tokens.empty()) fn(tokens, number);
  }
}

std::vector<Face> parse_face_lines(const std::string& text, const std::string& source) {
  std::vector<Face> faces;
  for_each_line(text, [&](const std::vector<Token>& tokens, std::size_t line) {
    faces.push_back(parse_face_tokens(tokens, source, line));
  });
  return faces;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(where, 0, 0, std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error(located(source, line, column, what)), line_(line), column_(column) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(source, line, column, what);
  }
}

Face face_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, 0, 0, "a face must be an array of labels");
  std::vector<Vertex> labels;
  for (const Json& x : j) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0 ||
        x.get<std::int64_t>() > std::numeric_limits<Vertex>::max())
      throw ParseError(where, 0, 0, "labels must be nonnegative integers, got " + x.dump());
    labels.push_back(x.get<Vertex>());
  }
  try {
    return Face(std::move(labels));
  } catch (const Error& e) {
    throw ParseError(where, 0, 0, e.what());
  }
}

SimplicialComplex complex_from_json(const Json& j, const std::string& where) {
  const Json& facets = j.is_object() ? member(j, "facets", where) : j;
  if (!facets.is_array()) throw ParseError(where, 0, 0, "\"facets\" must be an array");
  std::vector<Face> faces;
  for (std::size_t i = 0; i < facets.size(); ++i)
    faces.push_back(face_from_json(facets[i], where + ": facet " + std::to_string(i + 1)));
  return SimplicialComplex::from_facets(std::move(faces));
}

IntervalPartition partition_from_json(const Json& j, const std::string& where) {
  const Json& list = j.is_object() ? member(j, "intervals", where) : j;
  if (!list.is_array()) throw ParseError(where, 0, 0, "intervals must be an array");
  IntervalPartition p;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + ": interval " + std::to_string(i + 1);
    p.intervals.push_back({face_from_json(member(list[i], "bottom", at), at),
                           face_from_json(member(list[i], "top", at), at)});
  }
  return p;
}

ComplexDocument parse_complex(const std::string& text, const std::string& source) {
  ComplexDocument doc;
  if (looks_like_json(text)) {
    const Json j = parse_json(text, source);
    doc.complex = complex_from_json(j, source);
    if (j.is_object() && j.contains("name")) {
      if (!j["name"].is_string()) throw ParseError(source, 0, 0, "\"name\" must be a string");
      doc.name = j["name"].get<std::string>();
    }
    return doc;
  }
  doc.complex = SimplicialComplex::from_facets(parse_face_lines(text, source));
  return doc;
}

ComplexDocument read_complex(const std::string& path) { return parse_complex(read_file(path), path); }

IntervalPartition parse_partition(const std::string& text, const std::string& source) {
  if (looks_like_json(text)) return partition_from_json(parse_json(text, source), source);
  IntervalPartition p;
  for_each_line(text, [&](const std::vector<Token>& tokens, std::size_t line) {
    const auto bar = std::find_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.text == "|"; });
    if (bar == tokens.end() || bar == tokens.begin() || bar + 1 == tokens.end())
      throw ParseError(source, line, tokens.front().column, "expected 'bottom | top'");
    p.intervals.push_back({parse_face_tokens(std::span(tokens.begin(), bar), source, line),
                           parse_face_tokens(std::span(bar + 1, tokens.end()), source, line)});
  });
  return p;
}

ShellingOrder parse_order(const std::string& text, const std::string& source) {
  if (!looks_like_json(text)) return parse_face_lines(text, source);
  const Json j = parse_json(text, source);
  const Json& list = j.is_object() ? member(j, "order", source) : j;
  if (!list.is_array()) throw ParseError(source, 0, 0, "order must be an array");
  ShellingOrder order;
  for (std::size_t i = 0; i < list.size(); ++i)
    order.push_back(face_from_json(list[i], source + ": entry " + std::to_string(i + 1)));
  return order;
}

Json to_json(const Face& f) {
  Json out = Json::array();
  for (Vertex v : f.vertices()) out.push_back(v);
  return out;
}

Json to_json(const CountVector& v) { return Json(v.entries); }

Json to_json(const CountTriangle& t) { return Json(t.rows); }

Json to_json(const IntervalPartition& p) {
  Json out = Json::array();
  for (const Interval& iv : p.canonical().intervals)
    out.push_back({{"bottom", to_json(iv.bottom)}, {"top", to_json(iv.top)}});
  return out;
}

Json facets_json(const SimplicialComplex& c) {
  Json out = Json::array();
  for (const Face& f : c.facets()) out.push_back(to_json(f));
  return out;
}

}  // namespace pext::io
