#include "wofreg/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wofreg/error.hpp"

namespace wofreg {

namespace {

struct Declared {
  std::vector<Vertex> vertices;
  std::vector<std::size_t> vertex_lines;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::size_t> edge_lines;
};

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool valid_id(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

Declared parse_text(std::string_view text) {
  Declared out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t semi = std::min(line.find(';', start), line.size());
      const std::string_view stmt = trim(line.substr(start, semi - start));
      start = semi + 1;
      if (stmt.empty()) continue;

      if (auto arrow = stmt.find("->"); arrow != std::string_view::npos) {
        const auto head = trim(stmt.substr(0, arrow));
        const auto tail = trim(stmt.substr(arrow + 2));
        if (!valid_id(head) || !valid_id(tail))
          throw ParseError(line_no, "malformed edge '" + std::string(stmt) + "'");
        out.edges.emplace_back(std::string(head), std::string(tail));
        out.edge_lines.push_back(line_no);
      } else if (auto colon = stmt.find(':'); colon != std::string_view::npos) {
        const auto id = trim(stmt.substr(0, colon));
        const auto wtxt = trim(stmt.substr(colon + 1));
        if (!valid_id(id)) throw ParseError(line_no, "malformed vertex id '" + std::string(id) + "'");
        long long w = 0;
        auto [p, ec] = std::from_chars(wtxt.data(), wtxt.data() + wtxt.size(), w);
        if (ec != std::errc() || p != wtxt.data() + wtxt.size() || wtxt.empty())
          throw ParseError(line_no, "malformed weight '" + std::string(wtxt) + "'");
        if (w < 1) throw ParseError(line_no, "weight < 1 for vertex '" + std::string(id) + "'");
        if (w > 0xFFFF) throw ParseError(line_no, "weight too large for vertex '" + std::string(id) + "'");
        out.vertices.push_back({std::string(id), static_cast<std::uint32_t>(w)});
        out.vertex_lines.push_back(line_no);
      } else {
        throw ParseError(line_no, "malformed statement '" + std::string(stmt) + "'");
      }
    }
    if (eol == text.size()) break;
  }
  return out;
}

Declared parse_json(std::string_view text) {
  Declared out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::nullopt, std::string("malformed JSON: ") + e.what());
  }
  try {
    for (const auto& v : j.at("vertices")) {
      const long long w = v.contains("weight") ? v.at("weight").get<long long>() : 1;
      const auto id = v.at("id").get<std::string>();
      if (!valid_id(id)) throw ParseError(std::nullopt, "malformed vertex id '" + id + "'");
      if (w < 1) throw ParseError(std::nullopt, "weight < 1 for vertex '" + id + "'");
      if (w > 0xFFFF) throw ParseError(std::nullopt, "weight too large for vertex '" + id + "'");
      out.vertices.push_back({id, static_cast<std::uint32_t>(w)});
      out.vertex_lines.push_back(0);
    }
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      if (!e.is_array() || e.size() != 2) throw ParseError(std::nullopt, "edge must be [head, tail]");
      out.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
      out.edge_lines.push_back(0);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::nullopt, std::string("malformed graph JSON: ") + e.what());
  }
  return out;
}

std::optional<std::size_t> line_or_none(std::size_t l) {
  return l == 0 ? std::nullopt : std::optional<std::size_t>(l);
}

}  // namespace

WeightedOrientedGraph parse_digraph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  Declared decl = (first != std::string_view::npos && text[first] == '{') ? parse_json(text) : parse_text(text);

  // Re-run the structural checks here so errors carry line numbers.
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < decl.vertices.size(); ++i) {
    if (!seen.emplace(decl.vertices[i].id, i).second)
      throw ParseError(line_or_none(decl.vertex_lines[i]), "duplicate vertex '" + decl.vertices[i].id + "'");
  }
  std::set<std::pair<std::string, std::string>> edge_set;
  std::set<std::string> has_in;
  for (std::size_t i = 0; i < decl.edges.size(); ++i) {
    const auto& [h, t] = decl.edges[i];
    const auto line = line_or_none(decl.edge_lines[i]);
    if (!seen.count(h)) throw ParseError(line, "unknown endpoint '" + h + "'");
    if (!seen.count(t)) throw ParseError(line, "unknown endpoint '" + t + "'");
    if (h == t) throw ParseError(line, "self-loop at '" + h + "'");
    if (!edge_set.insert(decl.edges[i]).second) throw ParseError(line, "duplicate edge '" + h + "->" + t + "'");
    has_in.insert(t);
  }

  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < decl.vertices.size(); ++i) {
    auto& v = decl.vertices[i];
    if (!has_in.count(v.id) && v.weight != 1) {
      std::string w = "source vertex '" + v.id + "' declared with weight " + std::to_string(v.weight) +
                      "; normalized to 1";
      if (decl.vertex_lines[i] != 0) w = "line " + std::to_string(decl.vertex_lines[i]) + ": " + w;
      warnings.push_back(std::move(w));
      v.weight = 1;
    }
  }
  auto g = WeightedOrientedGraph::build(std::move(decl.vertices), decl.edges, /*normalize_sources=*/false);
  for (auto& w : warnings) g.add_warning(std::move(w));
  return g;
}

WeightedOrientedGraph read_digraph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error("cannot read '" + path.string() + "'");
  return parse_digraph(ss.str());
}

std::string to_text(const WeightedOrientedGraph& d) {
  std::ostringstream os;
  for (const auto& v : d.vertices()) os << v.id << ':' << v.weight << '\n';
  for (const auto& [h, t] : d.edges()) os << d.id(h) << "->" << d.id(t) << '\n';
  return os.str();
}

std::string to_json(const WeightedOrientedGraph& d) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : d.vertices()) j["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  j["edges"] = nlohmann::json::array();
  for (const auto& [h, t] : d.edges()) j["edges"].push_back({d.id(h), d.id(t)});
  return j.dump();
}

}  // namespace wofreg
