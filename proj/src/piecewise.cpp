#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "wofreg/error.hpp"
#include "wofreg/theta.hpp"

namespace wofreg {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::string affine(const PiecewiseLinearFunction::Line& l) {
  std::ostringstream os;
  os << l.slope << "(k-1)";
  if (l.intercept >= 0) os << '+';
  os << l.intercept;
  return os.str();
}

}  // namespace

PiecewiseLinearFunction PiecewiseLinearFunction::upper_envelope(std::vector<Line> lines) {
  PiecewiseLinearFunction f;
  std::map<std::int64_t, std::int64_t> best;  // slope -> intercept
  for (const auto& l : lines) {
    auto [it, inserted] = best.emplace(l.slope, l.intercept);
    if (!inserted) it->second = std::max(it->second, l.intercept);
  }
  if (best.empty()) return f;
  std::vector<Line> cand;
  for (auto [a, b] : best) cand.push_back({a, b});

  // Past k_end the steepest line is strictly above every other one.
  const Line& top = cand.back();
  std::int64_t k_end = 1;
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    const std::int64_t lead = cand[i].intercept - top.intercept;
    const std::int64_t gap = top.slope - cand[i].slope;
    k_end = std::max(k_end, 2 + std::max<std::int64_t>(0, ceil_div(lead, gap)));
  }

  const std::size_t n = cand.size();
  std::vector<std::int64_t> first(n, 0), last(n, 0);
  std::vector<bool> prev(n, false);
  for (std::int64_t k = 1; k <= k_end; ++k) {
    std::int64_t mx = cand[0].at(k);
    for (const auto& l : cand) mx = std::max(mx, l.at(k));
    bool entered = false;
    for (std::size_t i = 0; i < n; ++i) {
      const bool on = cand[i].at(k) == mx;
      if (on) {
        if (first[i] == 0) first[i] = k;
        last[i] = k;
        if (!prev[i] && k > 1) entered = true;
      }
      prev[i] = on;
    }
    if (entered) f.breakpoints_.push_back(k);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (first[i] == 0) continue;
    f.lines_.push_back(cand[i]);
    Regime reg{cand[i], first[i], last[i]};
    if (i + 1 == n) reg.last.reset();
    f.regimes_.push_back(reg);
  }
  return f;
}

std::int64_t PiecewiseLinearFunction::value(std::int64_t k) const {
  if (lines_.empty()) return 0;
  std::int64_t mx = lines_.front().at(k);
  for (const auto& l : lines_) mx = std::max(mx, l.at(k));
  return mx;
}

std::string PiecewiseLinearFunction::describe() const {
  if (regimes_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < regimes_.size(); ++i) {
    const auto& r = regimes_[i];
    if (i) os << "; ";
    os << affine(r.line);
    if (r.last) os << " for " << r.first << " <= k <= " << *r.last;
    else os << " for k >= " << r.first;
  }
  return os.str();
}

std::string PiecewiseLinearFunction::to_json() const {
  nlohmann::json j;
  j["lines"] = nlohmann::json::array();
  for (const auto& l : lines_) j["lines"].push_back({l.slope, l.intercept});
  j["breakpoints"] = breakpoints_;
  return j.dump();
}

PiecewiseLinearFunction PiecewiseLinearFunction::from_json(const std::string& text) {
  std::vector<Line> lines;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& l : j.at("lines")) lines.push_back({l.at(0).get<std::int64_t>(), l.at(1).get<std::int64_t>()});
    auto f = upper_envelope(std::move(lines));
    if (j.contains("breakpoints") && j.at("breakpoints").get<std::vector<std::int64_t>>() != f.breakpoints_)
      throw ParseError(std::nullopt, "breakpoints do not match the line set");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::nullopt, std::string("malformed piecewise JSON: ") + e.what());
  }
}

PiecewiseLinearFunction theta_piecewise(const ThetaInstance& inst) {
  std::vector<PiecewiseLinearFunction::Line> lines;
  if (inst.size() <= kFamilyEnumerationCap) {
    for_each_family(inst, [&](std::span<const std::size_t> idx) {
      std::int64_t mw = 0, sum = 0;
      for (std::size_t i : idx) {
        mw = std::max<std::int64_t>(mw, inst.weight(i));
        sum += inst.weight(i);
      }
      lines.push_back({mw + 1, sum + 1});
    });
  } else {
    for (auto [w, s] : best_sum_by_max_weight(inst))
      lines.push_back({static_cast<std::int64_t>(w) + 1, static_cast<std::int64_t>(s) + 1});
  }
  return PiecewiseLinearFunction::upper_envelope(std::move(lines));
}

PiecewiseLinearFunction theta_piecewise(const WeightedOrientedGraph& d) {
  return theta_piecewise(ThetaInstance::from_accepted(d));
}

}  // namespace wofreg
