// wofreg: validate weighted oriented forests, evaluate the regularity formula
// for powers of their edge ideals, and compare it with the homology oracle.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wofreg/digraph.hpp"
#include "wofreg/error.hpp"
#include "wofreg/graph_io.hpp"
#include "wofreg/monomial.hpp"
#include "wofreg/report_io.hpp"
#include "wofreg/resolution.hpp"
#include "wofreg/theta.hpp"
#include "wofreg/verify.hpp"

namespace {

using namespace wofreg;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;

enum class Format { Table, Csv, Json };

struct CommandConfig {
  Format format = Format::Table;
  std::optional<std::size_t> cap;
  std::string field = "Q";

  std::string path;
  std::optional<unsigned> k;
  std::optional<unsigned> k_max;
  bool oracle = false;
  bool piecewise = false;
  bool outside_hypothesis = false;

  unsigned power = 1;
  bool polarize = false;

  std::string suite;
  std::uint64_t seed = 7;
  std::size_t r_max = 3;
  std::size_t count = 100;
  std::uint32_t max_weight = 3;
  bool bounds = false;
  bool monotonicity = false;
  bool no_lemmas = false;
  std::string counterexample_path = "wofreg-counterexample.graph";
};

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

OracleOptions oracle_options(const CommandConfig& cfg) {
  auto opts = OracleOptions::from_environment();
  if (cfg.cap) opts.support_cap = *cfg.cap;
  if (cfg.field != "Q") {
    const std::string_view f = cfg.field;
    std::uint64_t p = 0;
    const auto digits = f.substr(6);
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (!f.starts_with("prime:") || ec != std::errc() || end != digits.data() + digits.size() || !is_prime(p) ||
        p >= (1ull << 32))
      throw CLI::ValidationError("--field", "expected Q or prime:p with p a prime below 2^32");
    opts.check_prime = static_cast<std::uint32_t>(p);
  }
  return opts;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Left-aligned first column, right-aligned numbers.
void print_table(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) os << "  ";
      if (c + 1 == r.size() && !std::all_of(r[c].begin(), r[c].end(), ::isdigit))
        os << r[c];
      else
        os << std::setw(static_cast<int>(width[c])) << r[c];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

// --- validate -------------------------------------------------------------------

int cmd_validate(const CommandConfig& cfg) {
  const auto d = read_digraph_file(cfg.path);
  const auto rep = check_cm_hypothesis(d);
  const bool ok = rep.accepted();
  std::vector<std::pair<std::string, std::string>> pairs;
  if (rep.matching)
    for (const auto& p : rep.matching->pairs) pairs.emplace_back(d.id(p.x), d.id(p.y));

  switch (cfg.format) {
    case Format::Json: {
      nlohmann::json j;
      j["accepted"] = ok;
      j["is_forest"] = rep.is_forest;
      j["matching"] = rep.matching ? nlohmann::json(pairs) : nlohmann::json(nullptr);
      j["matched_leaves_are_sinks"] = rep.all_matched_leaves_are_sinks;
      j["weight_condition"] = rep.weight_condition_ok;
      j["violations"] = rep.violations;
      j["warnings"] = d.warnings();
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      std::cout << "accepted,is_forest,matching,leaves_are_sinks,weight_condition,violations\n";
      std::string m;
      for (const auto& [x, y] : pairs) m += (m.empty() ? "" : " ") + x + "-" + y;
      std::string v;
      for (const auto& s : rep.violations) v += (v.empty() ? "" : "; ") + s;
      std::cout << (ok ? "true" : "false") << ',' << (rep.is_forest ? "true" : "false") << ',' << csv_field(m) << ','
                << (rep.all_matched_leaves_are_sinks ? "true" : "false") << ','
                << (rep.weight_condition_ok ? "true" : "false") << ',' << csv_field(v) << '\n';
      break;
    }
    case Format::Table: {
      std::cout << "graph:                    " << cfg.path << '\n'
                << "vertices / edges:         " << d.size() << " / " << d.edges().size() << '\n'
                << "forest:                   " << yes_no(rep.is_forest) << '\n'
                << "leaf perfect matching:    ";
      if (rep.matching) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
          std::cout << (i ? " " : "") << '{' << pairs[i].first << ',' << pairs[i].second << '}';
      } else {
        std::cout << "none";
      }
      std::cout << '\n'
                << "matched leaves are sinks: " << yes_no(rep.all_matched_leaves_are_sinks) << '\n'
                << "matched weights are 1:    " << yes_no(rep.weight_condition_ok) << '\n';
      for (const auto& w : d.warnings()) std::cout << "warning: " << w << '\n';
      for (const auto& v : rep.violations) std::cout << "violation: " << v << '\n';
      std::cout << "status: " << (ok ? "accepted" : "rejected") << '\n';
      break;
    }
  }
  return ok ? kOk : kRejected;
}

// --- reg --------------------------------------------------------------------------

int cmd_reg(const CommandConfig& cfg) {
  const auto d = read_digraph_file(cfg.path);
  const auto rep = check_cm_hypothesis(d);
  const bool accepted = rep.accepted();
  if (!accepted && !cfg.outside_hypothesis) {
    std::cerr << "error: hypothesis rejected";
    if (!rep.violations.empty()) std::cerr << ": " << rep.violations.front();
    std::cerr << "\n(run `wofreg validate " << cfg.path
              << "` for the full report, or pass --outside-hypothesis to evaluate the formula anyway)\n";
    return kRejected;
  }
  if (!accepted && !rep.matching) {
    std::cerr << "error: the formula needs a leaf perfect matching, and this graph has none\n";
    return kRejected;
  }
  const auto inst = ThetaInstance::from_matching(d, *rep.matching);
  const auto opts = oracle_options(cfg);

  unsigned k_lo = 1, k_hi = 1;
  if (cfg.k) k_lo = k_hi = *cfg.k;
  if (cfg.k_max) k_hi = *cfg.k_max;

  const std::string note = accepted ? "" : "formula outside hypothesis";
  EquivalenceReport report;
  const auto base = edge_ideal(d);
  for (unsigned k = k_lo; k <= k_hi; ++k) {
    EquivalenceRow row;
    row.instance = std::filesystem::path(cfg.path).stem().string();
    row.k = k;
    row.theta = theta(k, inst);
    row.reason = note;
    if (!cfg.oracle) {
      row.skipped = true;
      if (row.reason.empty()) row.reason = "oracle not requested";
    } else {
      try {
        const auto table = betti_table(power(base, k), opts);
        row.oracle = table.regularity();
        row.match = *row.oracle == row.theta;
        if (table.prime_mismatch)
          row.reason += std::string(row.reason.empty() ? "" : "; ") + "Betti numbers differ in characteristic " +
                        std::to_string(*opts.check_prime);
      } catch (const OracleInfeasible& e) {
        row.skipped = true;
        row.reason += std::string(row.reason.empty() ? "" : "; ") + "oracle infeasible: support " +
                      std::to_string(e.support()) + " exceeds cap " + std::to_string(e.cap());
      }
    }
    report.rows.push_back(std::move(row));
  }

  std::optional<PiecewiseLinearFunction> pw;
  if (cfg.piecewise) pw = theta_piecewise(inst);

  switch (cfg.format) {
    case Format::Csv:
      std::cout << to_csv(report);
      break;
    case Format::Json: {
      auto j = nlohmann::json::parse(to_json(report));
      j.erase("lemma_checks");
      j.erase("lemma_failures");
      j.erase("bound_checks");
      j.erase("bound_failures");
      j.erase("monotonicity_checks");
      j.erase("monotonicity_failures");
      j.erase("counterexample");
      j.erase("counterexample_k");
      j.erase("passed");
      j["accepted"] = accepted;
      if (pw) j["piecewise"] = nlohmann::json::parse(pw->to_json());
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Table: {
      std::vector<std::string> header = {"k", "theta"};
      if (cfg.oracle) header.insert(header.end(), {"oracle", "match"});
      const bool notes = std::any_of(report.rows.begin(), report.rows.end(), [&](const EquivalenceRow& r) {
        return !r.reason.empty() && (cfg.oracle || !accepted);
      });
      if (notes) header.push_back("note");
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : report.rows) {
        std::vector<std::string> line = {std::to_string(r.k), std::to_string(r.theta)};
        if (cfg.oracle) {
          line.push_back(r.oracle ? std::to_string(*r.oracle) : "-");
          line.push_back(r.skipped ? "skipped" : (r.match ? "yes" : "NO"));
        }
        if (notes) line.push_back(r.reason);
        rows.push_back(std::move(line));
      }
      print_table(std::cout, header, rows);
      if (pw) {
        std::cout << "\nregimes: " << pw->describe() << '\n' << "lines (slope, intercept):";
        for (const auto& l : pw->lines()) std::cout << " (" << l.slope << ", " << l.intercept << ')';
        std::cout << "\nbreakpoints:";
        if (pw->breakpoints().empty()) std::cout << " none";
        for (auto b : pw->breakpoints()) std::cout << ' ' << b;
        std::cout << '\n';
      }
      break;
    }
  }
  if (!accepted) return kRejected;
  return report.mismatches() == 0 ? kOk : kRejected;
}

// --- ideal --------------------------------------------------------------------------

int cmd_ideal(const CommandConfig& cfg) {
  const auto d = read_digraph_file(cfg.path);
  auto i = power(edge_ideal(d), cfg.power);
  if (cfg.polarize) i = polarize(i).ideal;
  const auto& reg = *i.registry();
  switch (cfg.format) {
    case Format::Json: {
      nlohmann::json j;
      j["variables"] = reg.names();
      j["generators"] = nlohmann::json::array();
      for (const auto& g : i.generators()) j["generators"].push_back(to_string(g, reg));
      std::cout << j.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      std::cout << "generator,degree\n";
      for (const auto& g : i.generators()) std::cout << csv_field(to_string(g, reg)) << ',' << g.degree() << '\n';
      break;
    case Format::Table:
      std::cout << i.size() << " minimal generator" << (i.size() == 1 ? "" : "s") << '\n';
      for (const auto& g : i.generators()) std::cout << "  " << to_string(g, reg) << '\n';
      break;
  }
  return kOk;
}

// --- verify -------------------------------------------------------------------------------

int cmd_verify(const CommandConfig& cfg) {
  SuiteOptions opts;
  opts.r_max = cfg.r_max;
  opts.k_max = cfg.k_max.value_or(2);
  opts.max_weight = cfg.max_weight;
  opts.seed = cfg.seed;
  opts.count = cfg.count;
  opts.lemmas = !cfg.no_lemmas;
  opts.bounds = cfg.bounds;
  opts.monotonicity = cfg.monotonicity;
  opts.oracle = oracle_options(cfg);
#ifdef WOFREG_FAULT_INJECTION
  if (const char* f = std::getenv("WOFREG_INJECT_FAULT"); f && std::string_view(f) == "theta-off-by-one") {
    opts.theta_fn = [](unsigned k, const WeightedOrientedGraph& d) { return theta(k, d) + 1; };
  }
#endif

  const auto report = cfg.suite == "exhaustive" ? run_exhaustive_suite(opts) : run_random_suite(opts);

  switch (cfg.format) {
    case Format::Csv:
      std::cout << to_csv(report);
      break;
    case Format::Json:
      std::cout << to_json(report) << '\n';
      break;
    case Format::Table: {
      double seconds = 0;
      for (const auto& r : report.rows) seconds += r.seconds;
      std::cout << "suite:            " << cfg.suite << '\n'
                << "rows compared:    " << report.rows.size() - report.skipped() << '\n'
                << "rows skipped:     " << report.skipped() << '\n'
                << "mismatches:       " << report.mismatches() << '\n';
      if (opts.lemmas)
        std::cout << "lemma identities: " << report.lemma_checks << " checked, " << report.lemma_failures << " failed\n";
      if (opts.bounds)
        std::cout << "bounds:           " << report.bound_checks << " checked, " << report.bound_failures << " failed\n";
      if (opts.monotonicity)
        std::cout << "monotonicity:     " << report.monotonicity_checks << " checked, " << report.monotonicity_failures
                  << " failed\n";
      std::cout << "oracle time:      " << std::fixed << std::setprecision(2) << seconds << " s\n"
                << "result:           " << (report.passed() ? "pass" : "FAIL") << '\n';
      break;
    }
  }

  if (report.passed()) return kOk;
  if (report.counterexample) {
    std::ofstream out(cfg.counterexample_path);
    out << "# first counterexample, k = " << report.counterexample_k.value_or(0) << '\n'
        << "# replay: wofreg reg <this file> --k " << report.counterexample_k.value_or(0) << " --oracle\n"
        << *report.counterexample;
    if (!out) {
      std::cerr << "error: cannot write " << cfg.counterexample_path << '\n';
      return kUsage;
    }
    std::cerr << "counterexample written to " << cfg.counterexample_path << '\n';
  }
  return kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity of powers of edge ideals of weighted oriented forests"};
  app.require_subcommand(1);
  app.fallthrough();
  CommandConfig cfg;

  std::string format = "table";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--cap", cfg.cap, "Largest multidegree support the oracle accepts")->check(CLI::PositiveNumber);
  app.add_option("--field", cfg.field, "Coefficient field for homology: Q or prime:p (Q plus a check over F_p)");

  auto* validate = app.add_subcommand("validate", "Check the Cohen-Macaulay sink-leaf hypothesis");
  validate->add_option("path", cfg.path, "Graph file")->required();

  auto* reg = app.add_subcommand("reg", "Evaluate the regularity formula for I(D)^k");
  reg->add_option("path", cfg.path, "Graph file")->required();
  auto* k_opt = reg->add_option("--k", cfg.k, "Single power k");
  reg->add_option("--kmax", cfg.k_max, "Rows k = 1..kmax")->check(CLI::PositiveNumber)->excludes(k_opt);
  reg->add_flag("--oracle", cfg.oracle, "Also compute reg(I(D)^k) from Koszul homology");
  reg->add_flag("--piecewise", cfg.piecewise, "Print the formula as an upper envelope of lines in k");
  reg->add_flag("--outside-hypothesis", cfg.outside_hypothesis,
                "Evaluate the formula on a rejected graph (rows are annotated; exit status stays 1)");

  auto* ideal = app.add_subcommand("ideal", "Print the minimal generators of I(D)^k");
  ideal->add_option("path", cfg.path, "Graph file")->required();
  ideal->add_option("--power", cfg.power, "Exponent k (default 1)");
  ideal->add_flag("--polarize", cfg.polarize, "Polarize the result");

  auto* verify = app.add_subcommand("verify", "Compare the formula with the oracle on generated forests");
  verify->add_option("--suite", cfg.suite, "exhaustive or random")
      ->required()
      ->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--seed", cfg.seed, "Seed for the random suite");
  verify->add_option("--rmax", cfg.r_max, "Largest number of matched pairs")->check(CLI::Range(1, 6));
  verify->add_option("--kmax", cfg.k_max, "Largest power")->check(CLI::PositiveNumber);
  verify->add_option("--count", cfg.count, "Instances in the random suite");
  verify->add_option("--max-weight", cfg.max_weight, "Largest leaf weight")->check(CLI::Range(1, 9));
  verify->add_flag("--bounds", cfg.bounds, "Also check the deletion bound, the power bound and the short exact sequence inequalities");
  verify->add_flag("--monotonicity", cfg.monotonicity, "Also check monotonicity under deleting matched pairs");
  verify->add_flag("--no-lemmas", cfg.no_lemmas, "Skip the ideal identity checks");
  verify->add_option("--counterexample", cfg.counterexample_path, "Where to write the first failing graph");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  cfg.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Table;

  try {
    if (validate->parsed()) return cmd_validate(cfg);
    if (reg->parsed()) return cmd_reg(cfg);
    if (ideal->parsed()) return cmd_ideal(cfg);
    return cmd_verify(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const HypothesisRejected& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRejected;
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRejected;
  } catch (const ParseError& e) {
    std::cerr << "error: " << cfg.path << ": " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
