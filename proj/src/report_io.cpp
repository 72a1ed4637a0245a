#include "wofreg/report_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "wofreg/error.hpp"

namespace wofreg {

namespace {

constexpr std::string_view kCsvHeader = "instance,k,theta,oracle,match,skipped,reason";

template <class T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, "bad number '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s, std::size_t line) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError(line, "bad flag '" + s + "'");
}

}  // namespace

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string to_csv(const EquivalenceReport& rep) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rep.rows) {
    os << csv_field(r.instance) << ',' << r.k << ',' << r.theta << ',';
    if (r.oracle) os << *r.oracle;
    os << ',' << (r.match ? "true" : "false") << ',' << (r.skipped ? "true" : "false") << ',' << csv_field(r.reason)
       << '\n';
  }
  return os.str();
}

EquivalenceReport report_from_csv(std::string_view text) {
  EquivalenceReport rep;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(1, "unexpected CSV header");
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields, got " + std::to_string(f.size()));
    EquivalenceRow r;
    r.instance = f[0];
    r.k = parse_number<unsigned>(f[1], line_no);
    r.theta = parse_number<std::int64_t>(f[2], line_no);
    if (!f[3].empty()) r.oracle = parse_number<std::int64_t>(f[3], line_no);
    r.match = parse_bool(f[4], line_no);
    r.skipped = parse_bool(f[5], line_no);
    r.reason = f[6];
    rep.rows.push_back(std::move(r));
  }
  if (line_no == 0) throw ParseError(std::nullopt, "empty CSV");
  return rep;
}

std::string to_json(const EquivalenceReport& rep) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json row = {{"instance", r.instance}, {"k", r.k},           {"theta", r.theta},
                          {"match", r.match},       {"skipped", r.skipped}, {"reason", r.reason},
                          {"seconds", r.seconds}};
    row["oracle"] = r.oracle ? nlohmann::json(*r.oracle) : nlohmann::json(nullptr);
    j["rows"].push_back(std::move(row));
  }
  j["lemma_checks"] = rep.lemma_checks;
  j["lemma_failures"] = rep.lemma_failures;
  j["bound_checks"] = rep.bound_checks;
  j["bound_failures"] = rep.bound_failures;
  j["monotonicity_checks"] = rep.monotonicity_checks;
  j["monotonicity_failures"] = rep.monotonicity_failures;
  j["counterexample"] = rep.counterexample ? nlohmann::json(*rep.counterexample) : nlohmann::json(nullptr);
  j["counterexample_k"] = rep.counterexample_k ? nlohmann::json(*rep.counterexample_k) : nlohmann::json(nullptr);
  j["passed"] = rep.passed();
  return j.dump(2);
}

EquivalenceReport report_from_json(std::string_view text) {
  EquivalenceReport rep;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& row : j.at("rows")) {
      EquivalenceRow r;
      r.instance = row.at("instance").get<std::string>();
      r.k = row.at("k").get<unsigned>();
      r.theta = row.at("theta").get<std::int64_t>();
      if (!row.at("oracle").is_null()) r.oracle = row.at("oracle").get<std::int64_t>();
      r.match = row.at("match").get<bool>();
      r.skipped = row.at("skipped").get<bool>();
      r.reason = row.at("reason").get<std::string>();
      r.seconds = row.value("seconds", 0.0);
      rep.rows.push_back(std::move(r));
    }
    rep.lemma_checks = j.value("lemma_checks", std::size_t{0});
    rep.lemma_failures = j.value("lemma_failures", std::size_t{0});
    rep.bound_checks = j.value("bound_checks", std::size_t{0});
    rep.bound_failures = j.value("bound_failures", std::size_t{0});
    rep.monotonicity_checks = j.value("monotonicity_checks", std::size_t{0});
    rep.monotonicity_failures = j.value("monotonicity_failures", std::size_t{0});
    if (j.contains("counterexample") && !j["counterexample"].is_null())
      rep.counterexample = j["counterexample"].get<std::string>();
    if (j.contains("counterexample_k") && !j["counterexample_k"].is_null())
      rep.counterexample_k = j["counterexample_k"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::nullopt, std::string("malformed report JSON: ") + e.what());
  }
  return rep;
}

}  // namespace wofreg
