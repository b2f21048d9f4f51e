#include "supergeom/document.hpp"

#include <json.hpp>

#include "supergeom/io.hpp"

namespace supergeom {

namespace {

using json = nlohmann::json;

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

class DocumentReader {
 public:
  explicit DocumentReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& anchor, const std::string& message) const {
    std::size_t at = anchor.empty() ? std::string_view::npos : text_.find(anchor);
    if (at == std::string_view::npos) at = 0;
    const Position p = position_of(text_, at);
    throw ParseError(p.line, p.column, message);
  }

  const json& member(const json& obj, const char* key, bool required = true) const {
    static const json null_value;
    if (!obj.contains(key)) {
      if (required) fail("", std::string("missing key \"") + key + "\"");
      return null_value;
    }
    return obj.at(key);
  }

  int integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail("", path + " must be an integer");
    return v.get<int>();
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail("", path + " must be a string");
    return v.get<std::string>();
  }

  SuperMatrix matrix(const json& v, const std::string& path, Dims dims, int rank,
                     const std::string& anchor) const {
    if (!v.is_array() || static_cast<int>(v.size()) != dims.total())
      fail(anchor, path + " must be an array of " + std::to_string(dims.total()) + " rows");
    std::vector<GrassmannElement> entries;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const json& row = v[i];
      const std::string row_path = path + "[" + std::to_string(i) + "]";
      if (!row.is_array() || static_cast<int>(row.size()) != dims.total())
        fail(anchor, row_path + " must hold " + std::to_string(dims.total()) + " entries");
      for (std::size_t j = 0; j < row.size(); ++j) {
        const std::string entry_path = row_path + "[" + std::to_string(j) + "]";
        if (row[j].is_number()) {
          entries.push_back(GrassmannElement::scalar(rank, row[j].get<double>()));
          continue;
        }
        const std::string literal = string(row[j], entry_path);
        try {
          entries.push_back(parse_element(literal, rank));
        } catch (const ParseError& e) {
          // Point into the literal as it appears in the document.
          std::size_t at = text_.find(anchor);
          at = text_.find("\"" + literal + "\"", at == std::string_view::npos ? 0 : at);
          if (at == std::string_view::npos) fail(anchor, entry_path + ": " + e.message());
          const Position p = position_of(text_, at + 1 + (e.column() - 1));
          throw ParseError(p.line, p.column, entry_path + ": " + e.message());
        }
      }
    }
    return SuperMatrix(dims, rank, std::move(entries));
  }

 private:
  std::string_view text_;
};

json matrix_json(const SuperMatrix& l) {
  json rows = json::array();
  for (int i = 0; i < l.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < l.size(); ++j) row.push_back(to_literal(l(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json chart_map_json(const std::map<std::string, SuperMatrix>& reps) {
  json obj = json::object();
  for (const auto& [chart, h] : reps) obj[chart] = matrix_json(h);
  return obj;
}

}  // namespace

Section CocycleDocument::section_data() const {
  if (!section) throw Error(ErrorKind::UnknownChart, "document has no section block");
  return Section(nerve, *section);
}

ReductionData CocycleDocument::reduction() const {
  if (!frames) throw Error(ErrorKind::InvalidReduction, "document has no frames block");
  return ReductionData(nerve, cocycle().transitions(), *frames);
}

CocycleDocument parse_cocycle_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const Position p = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(p.line, p.column, "invalid JSON");
  }
  DocumentReader reader(text);
  if (!root.is_object()) reader.fail("", "document must be a JSON object");

  CocycleDocument doc;
  doc.rank = reader.integer(reader.member(root, "rank"), "rank");
  if (doc.rank < 0 || doc.rank > kMaxRank) reader.fail("\"rank\"", "rank out of range");
  const json& dims = reader.member(root, "dims");
  if (!dims.is_array() || dims.size() != 2) reader.fail("\"dims\"", "dims must be [n, m]");
  doc.dims = Dims{reader.integer(dims[0], "dims[0]"), reader.integer(dims[1], "dims[1]")};
  if (doc.dims.even < 0 || doc.dims.odd < 0) reader.fail("\"dims\"", "dims must be non-negative");

  std::vector<std::string> charts;
  const json& chart_list = reader.member(root, "charts");
  if (!chart_list.is_array()) reader.fail("\"charts\"", "charts must be an array");
  for (std::size_t i = 0; i < chart_list.size(); ++i)
    charts.push_back(reader.string(chart_list[i], "charts[" + std::to_string(i) + "]"));

  std::vector<ChartPair> overlaps;
  const json& overlap_list = reader.member(root, "overlaps", false);
  if (!overlap_list.is_null() && !overlap_list.is_array())
    reader.fail("\"overlaps\"", "overlaps must be an array");
  for (std::size_t i = 0; !overlap_list.is_null() && i < overlap_list.size(); ++i) {
    const std::string path = "overlaps[" + std::to_string(i) + "]";
    const json& o = overlap_list[i];
    if (!o.is_object()) reader.fail("\"overlaps\"", path + " must be an object");
    const std::string from = reader.string(reader.member(o, "from"), path + ".from");
    const std::string to = reader.string(reader.member(o, "to"), path + ".to");
    const SuperMatrix j = reader.matrix(reader.member(o, "matrix"), path + ".matrix", doc.dims, doc.rank,
                                        "\"overlaps\"");
    if (!doc.transitions.emplace(ChartPair{from, to}, j).second)
      reader.fail("\"overlaps\"", path + " repeats transition " + from + " -> " + to);
    if (from != to) overlaps.emplace_back(from, to);
  }

  std::vector<ChartTriple> triples;
  const json& triple_list = reader.member(root, "triples", false);
  for (std::size_t i = 0; !triple_list.is_null() && i < triple_list.size(); ++i) {
    const std::string path = "triples[" + std::to_string(i) + "]";
    const json& t = triple_list[i];
    if (!t.is_array() || t.size() != 3) reader.fail("\"triples\"", path + " must list three charts");
    triples.push_back({reader.string(t[0], path), reader.string(t[1], path), reader.string(t[2], path)});
  }

  try {
    doc.nerve = Nerve(charts, overlaps, triples);
  } catch (const Error& e) {
    reader.fail("\"charts\"", e.what());
  }

  auto chart_block = [&](const char* key) -> std::optional<std::map<std::string, SuperMatrix>> {
    const json& block = reader.member(root, key, false);
    if (block.is_null()) return std::nullopt;
    if (!block.is_object()) reader.fail(std::string("\"") + key + "\"", std::string(key) + " must be an object");
    std::map<std::string, SuperMatrix> out;
    for (const auto& [chart, m] : block.items()) {
      out.emplace(chart, reader.matrix(m, std::string(key) + "." + chart, doc.dims, doc.rank,
                                       std::string("\"") + key + "\""));
    }
    return out;
  };
  doc.section = chart_block("section");
  doc.frames = chart_block("frames");
  return doc;
}

std::string to_json(const CocycleDocument& doc) {
  json root = json::object();
  root["rank"] = doc.rank;
  root["dims"] = json::array({doc.dims.even, doc.dims.odd});
  root["charts"] = doc.nerve.charts();
  json overlaps = json::array();
  for (const auto& [pair, j] : doc.transitions)
    overlaps.push_back(json{{"from", pair.first}, {"to", pair.second}, {"matrix", matrix_json(j)}});
  root["overlaps"] = std::move(overlaps);
  json triples = json::array();
  for (const auto& t : doc.nerve.triples()) triples.push_back(json::array({t[0], t[1], t[2]}));
  root["triples"] = std::move(triples);
  if (doc.section) root["section"] = chart_map_json(*doc.section);
  if (doc.frames) root["frames"] = chart_map_json(*doc.frames);
  return root.dump(2) + "\n";
}

CocycleDocument reduction_document(const ReductionData& reduction, int rank, Dims dims) {
  CocycleDocument doc;
  doc.rank = rank;
  doc.dims = dims;
  doc.nerve = reduction.nerve();
  // Only the sorted orientation of each overlap; the reverse is its inverse.
  for (const auto& [a, b] : reduction.nerve().overlaps())
    doc.transitions.emplace(ChartPair{a, b}, reduction.osp_cocycle().at({a, b}));
  doc.frames = reduction.frames();
  return doc;
}

}  // namespace supergeom
