#include <charconv>
#include <sstream>

#include "wofreg/error.hpp"
#include "wofreg/monomial.hpp"

namespace wofreg {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace

std::string to_string(const Monomial& m, const VariableRegistry& reg) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < m.num_vars(); ++v) {
    if (m[v] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << reg.name(v);
    if (m[v] > 1) os << '^' << m[v];
  }
  if (first) os << '1';
  return os.str();
}

std::string to_string(const MonomialIdeal& i) {
  if (i.is_zero()) return "0";
  std::string out;
  for (const auto& g : i.generators()) {
    if (!out.empty()) out += ", ";
    out += to_string(g, *i.registry());
  }
  return out;
}

Monomial parse_monomial(std::string_view text, const VariableRegistry& reg) {
  text = trim(text);
  Monomial m(reg.size());
  if (text == "1") return m;
  if (text.empty()) throw ParseError(std::nullopt, "empty monomial");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t star = std::min(text.find('*', pos), text.size());
    const auto factor = trim(text.substr(pos, star - pos));
    pos = star + 1;
    const auto caret = factor.find('^');
    const auto name = trim(factor.substr(0, caret));
    unsigned long e = 1;
    if (caret != std::string_view::npos) {
      const auto etxt = trim(factor.substr(caret + 1));
      auto [p, ec] = std::from_chars(etxt.data(), etxt.data() + etxt.size(), e);
      if (ec != std::errc() || p != etxt.data() + etxt.size() || etxt.empty())
        throw ParseError(std::nullopt, "malformed exponent in '" + std::string(factor) + "'");
    }
    const auto v = reg.index_of(name);
    if (!v) throw ParseError(std::nullopt, "unknown variable '" + std::string(name) + "'");
    if (m[*v] + e > 0xFFFF) throw ExponentOverflow();
    m[*v] = static_cast<Exponent>(m[*v] + e);
    if (star == text.size()) break;
  }
  return m;
}

MonomialIdeal parse_ideal(std::string_view text, RegistryPtr reg) {
  text = trim(text);
  if (text == "0") return MonomialIdeal::zero(std::move(reg));
  std::vector<Monomial> gens;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    gens.push_back(parse_monomial(text.substr(pos, comma - pos), *reg));
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return minimalize(std::move(reg), std::move(gens));
}

}  // namespace wofreg
