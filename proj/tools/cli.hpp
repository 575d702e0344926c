#pragma once

// `rta` command line. run() never touches std::cout/std::cerr directly so
// tests can drive it with string streams.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include "rta/json_io.hpp"
#include "rta/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rta::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;

struct Config {
  Budget budget = Budget::defaults();
  bool json_output = true;
  std::optional<std::string> hints_path;
  unsigned threads = 1;
};

/// Budget selected by RTA_BUDGET_PROFILE; unset means default.
inline Budget profile_budget(const char* profile) {
  if (profile == nullptr || std::string(profile).empty() || std::string(profile) == "default") {
    return Budget::defaults();
  }
  if (std::string(profile) == "hard") return Budget::hard();
  throw domain_error("RTA_BUDGET_PROFILE must be 'default' or 'hard', got '" + std::string(profile) + "'");
}

namespace detail {

inline std::vector<BigInt> parse_decimal_list(const std::string& text, std::size_t expected,
                                              const char* what) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string piece = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(parse_decimal(piece));
    } catch (const domain_error&) {
      throw domain_error(std::string(what) + ": malformed decimal '" + piece + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) {
    throw domain_error(std::string(what) + ": expected " + std::to_string(expected) +
                       " comma-separated integers");
  }
  return out;
}

inline Witness parse_witness(const std::string& text, const char* what) {
  auto v = parse_decimal_list(text, 2, what);
  return {v[0], v[1]};
}

inline QuarticTuple parse_tuple(const std::string& text) {
  auto v = parse_decimal_list(text, 4, "--tuple");
  return {v[0], v[1], v[2], v[3]};
}

inline BigInt parse_positive(const std::string& text, const char* what) {
  BigInt v;
  try {
    v = parse_decimal(text);
  } catch (const domain_error&) {
    throw domain_error(std::string(what) + ": malformed decimal '" + text + "'");
  }
  if (v < 1) throw domain_error(std::string(what) + " must be >= 1");
  return v;
}

/// Budget flags shared by represent and scan. Values are applied on top of
/// the profile chosen by --budget or RTA_BUDGET_PROFILE.
struct BudgetFlags {
  std::string profile;
  bool hard = false;
  std::optional<unsigned long> trial;
  std::optional<unsigned long> rho_iterations;
  std::optional<unsigned> rho_restarts;

  void attach(CLI::App* app) {
    app->add_option("--budget", profile, "budget profile: default or hard")
        ->check(CLI::IsMember({"default", "hard"}));
    app->add_flag("--hard", hard, "shorthand for --budget hard");
    app->add_option("--trial-bound", trial, "trial division bound");
    app->add_option("--rho-iterations", rho_iterations, "Pollard rho iteration cap per attempt");
    app->add_option("--rho-restarts", rho_restarts, "Pollard rho restart cap");
  }

  Budget resolve() const {
    Budget b = profile_budget(std::getenv("RTA_BUDGET_PROFILE"));
    if (!profile.empty()) b = profile_budget(profile.c_str());
    if (hard) b = Budget::hard();
    if (trial) b.trial_division_bound = *trial;
    if (rho_iterations) b.rho_iterations_cap = *rho_iterations;
    if (rho_restarts) b.rho_restart_cap = *rho_restarts;
    return b;
  }
};

inline std::string join_reports(const std::vector<SearchReport>& reports, bool timings) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r, timings));
  return arr.dump(2);
}

inline std::string log_line(const SearchReport& r) {
  std::string line = "d=" + std::to_string(r.d) + " index=" + std::to_string(r.index) + " " +
                     to_string(r.overall);
  if (r.overall == OverallKind::Poisoned) {
    line += " side=" + r.poisoned_side + " prime=" + to_decimal(r.poison_prime) +
            " exponent=" + std::to_string(r.poison_exponent);
  }
  return line;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pell sequences, norm-form representability and quartic solution search", "rta"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rta 1.0");

  // Each subcommand stores its action here; run after a successful parse.
  std::function<int()> action;

  // pell
  int pell_d = 0;
  std::uint64_t pell_k = 0;
  auto* pell = app.add_subcommand("pell", "x_k, y_k for x^2 - d y^2 = 1");
  pell->add_option("--d", pell_d, "Heegner number")->required();
  pell->add_option("--k", pell_k, "index")->required();
  pell->callback([&] {
    action = [&] {
      out << to_json(pell_nth(pell_d, pell_k)).dump() << "\n";
      return kOk;
    };
  });

  // npell
  std::uint64_t npell_n = 0;
  auto* npell = app.add_subcommand("npell", "A_n, B_n with 2A^2 - B^2 = 1");
  npell->add_option("--n", npell_n, "index")->required();
  npell->callback([&] {
    action = [&] {
      out << to_json(npell_nth(npell_n)).dump() << "\n";
      return kOk;
    };
  });

  // factor
  std::string factor_n;
  detail::BudgetFlags factor_budget;
  auto* factor_cmd = app.add_subcommand("factor", "factor a positive integer");
  factor_cmd->add_option("--n", factor_n, "decimal integer >= 1")->required();
  factor_budget.attach(factor_cmd);
  factor_cmd->callback([&] {
    action = [&] {
      out << to_json(factor(detail::parse_positive(factor_n, "--n"), factor_budget.resolve())).dump()
          << "\n";
      return kOk;
    };
  });

  // classify
  int classify_d = 0;
  std::string classify_p;
  auto* classify = app.add_subcommand("classify", "split/inert/ramified class of a prime");
  classify->add_option("--d", classify_d, "Heegner number")->required();
  classify->add_option("--p", classify_p, "prime")->required();
  classify->callback([&] {
    action = [&] {
      const BigInt p = detail::parse_positive(classify_p, "--p");
      json j = {{"d", classify_d}, {"p", to_decimal(p)}, {"class", to_string(classify_prime(classify_d, p))}};
      out << j.dump() << "\n";
      return kOk;
    };
  });

  // represent
  int repr_d = 0;
  std::string repr_m, repr_hint;
  bool repr_pure = false;
  detail::BudgetFlags repr_budget;
  auto* represent = app.add_subcommand("represent", "decide whether m is represented by the form");
  represent->add_option("--d", repr_d, "Heegner number")->required();
  represent->add_option("--m", repr_m, "decimal integer >= 1")->required();
  represent->add_flag("--pure", repr_pure, "use w^2 + d t^2 instead of the norm form");
  represent->add_option("--hint", repr_hint, "known witness w,t");
  repr_budget.attach(represent);
  represent->callback([&] {
    action = [&] {
      const FormVariant f = repr_pure ? FormVariant::pure(repr_d) : FormVariant::norm(repr_d);
      std::optional<Witness> hint;
      if (!repr_hint.empty()) hint = detail::parse_witness(repr_hint, "--hint");
      const ReprVerdict v =
          representable(f, detail::parse_positive(repr_m, "--m"), repr_budget.resolve(), hint);
      out << to_json(v).dump() << "\n";
      return kOk;
    };
  });

  // quartic
  auto* quartic = app.add_subcommand("quartic", "the quaternary quartic equations");
  quartic->require_subcommand(1);

  int q_d = 0;
  std::string q_tuple;
  auto* q_eval = quartic->add_subcommand("eval", "evaluate the left-hand side at a tuple");
  q_eval->add_option("--d", q_d, "2, 3, 7, 11, 19 or 43")->required();
  q_eval->add_option("--tuple", q_tuple, "r,s,u,v")->required();
  q_eval->callback([&] {
    action = [&] {
      const QuarticSpec& spec = quartic_spec(q_d);
      const QuarticTuple t = detail::parse_tuple(q_tuple);
      const BigInt value = evaluate(spec, t);
      json j = {{"d", q_d},
                {"value", to_decimal(value)},
                {"constant", spec.constant},
                {"is_solution", value == spec.constant},
                {"nontrivial", is_nontrivial(t)}};
      out << j.dump() << "\n";
      return kOk;
    };
  });

  std::optional<int> qv_d;
  std::string qv_file;
  auto* q_verify = quartic->add_subcommand("verify", "check solutions (bundled ones by default)");
  q_verify->add_option("--d", qv_d, "only check entries for this d");
  q_verify->add_option("--file", qv_file, "solutions JSON file");
  q_verify->callback([&] {
    action = [&] {
      if (qv_d) (void)quartic_spec(*qv_d);
      const auto sols = qv_file.empty() ? bundled_solutions() : load_solutions(qv_file);
      json arr = json::array();
      bool all_ok = true;
      for (std::size_t i = 0; i < sols.size(); ++i) {
        const auto& s = sols[i];
        if (qv_d && s.d != *qv_d) continue;
        const QuarticSpec& spec = quartic_spec(s.d);
        const bool ok = is_solution(spec, s.tuple);
        json e = {{"entry", i}, {"d", s.d}, {"is_solution", ok}, {"nontrivial", is_nontrivial(s.tuple)}};
        if (ok) {
          const PellSystemSolution sys = pell_from_solution(spec, s.tuple);
          std::optional<std::uint64_t> idx;
          if (s.d == 2) {
            idx = npell_index_of(sys.X, sys.Y);
          } else {
            const BigInt y = sys.Y * params(s.d).y1;
            idx = pell_index_of(s.d, sys.X, abs(y));
          }
          e["index"] = idx ? json(*idx) : json(nullptr);
        } else {
          e["value"] = to_decimal(evaluate(spec, s.tuple));
          all_ok = false;
        }
        arr.push_back(std::move(e));
      }
      out << arr.dump(2) << "\n";
      return all_ok ? kOk : kVerificationFailed;
    };
  });

  int qc_d = 0;
  std::uint64_t qc_ell = 0;
  std::string qc_w1, qc_w2;
  auto* q_construct = quartic->add_subcommand("construct", "solution from a Pell index and two witnesses");
  q_construct->add_option("--d", qc_d, "2, 3, 7, 11, 19 or 43")->required();
  q_construct->add_option("--ell", qc_ell, "Pell index (the companion index n for d = 2)")->required();
  q_construct->add_option("--wit1", qc_w1, "w,t for the first inner form")->required();
  q_construct->add_option("--wit2", qc_w2, "w,t for the second inner form")->required();
  q_construct->callback([&] {
    action = [&] {
      (void)quartic_spec(qc_d);
      const Witness w1 = detail::parse_witness(qc_w1, "--wit1");
      const Witness w2 = detail::parse_witness(qc_w2, "--wit2");
      const QuarticTuple t = qc_d == 2 ? solution_from_npell(qc_ell, w1, w2)
                                       : solution_from_pell(qc_d, qc_ell, w1, w2);
      json j = {{"d", qc_d}};
      j.update(to_json(t));
      out << j.dump() << "\n";
      return kOk;
    };
  });

  int qi_d = 0;
  std::string qi_tuple;
  auto* q_invert = quartic->add_subcommand("invert", "Pell pair of a solution");
  q_invert->add_option("--d", qi_d, "2, 3, 7, 11, 19 or 43")->required();
  q_invert->add_option("--tuple", qi_tuple, "r,s,u,v")->required();
  q_invert->callback([&] {
    action = [&] {
      const QuarticSpec& spec = quartic_spec(qi_d);
      const PellSystemSolution sys = pell_from_solution(spec, detail::parse_tuple(qi_tuple));
      json j = {{"d", qi_d}};
      if (sys.companion) {
        j["A"] = to_decimal(sys.X);
        j["B"] = to_decimal(sys.Y);
        const auto n = npell_index_of(sys.X, sys.Y);
        j["index"] = n ? json(*n) : json(nullptr);
      } else {
        j["X"] = to_decimal(sys.X);
        j["Y"] = to_decimal(sys.Y);
        j["F1"] = to_decimal(sys.form1_value);
        j["F2"] = to_decimal(sys.form2_value);
        const auto k = pell_index_of(qi_d, sys.X, abs(BigInt(sys.Y * params(qi_d).y1)));
        j["index"] = k ? json(*k) : json(nullptr);
      }
      j["positive"] = sys.positive;
      if (!sys.diagnostic.empty()) j["diagnostic"] = sys.diagnostic;
      out << j.dump() << "\n";
      return kOk;
    };
  });

  // scan
  int scan_d = 0;
  std::uint64_t scan_from = 0, scan_to = 0;
  std::string scan_hints, scan_json;
  unsigned scan_threads = 1;
  bool scan_timings = false;
  detail::BudgetFlags scan_budget;
  auto* scan = app.add_subcommand("scan", "search a range of indices for solutions");
  scan->add_option("--d", scan_d, "2, 3, 7, 11, 19 or 43")->required();
  scan->add_option("--from", scan_from, "first index")->required();
  scan->add_option("--to", scan_to, "last index")->required();
  scan->add_option("--hints", scan_hints, "hints JSON file");
  scan->add_option("--json", scan_json, "write the report array here instead of stdout");
  scan->add_option("--threads", scan_threads, "worker threads")->check(CLI::PositiveNumber);
  scan->add_flag("--timings", scan_timings, "include elapsed_ms per report");
  scan_budget.attach(scan);
  scan->callback([&] {
    action = [&] {
      Config cfg;
      cfg.budget = scan_budget.resolve();
      cfg.threads = scan_threads;
      cfg.json_output = scan_json.empty();
      if (!scan_hints.empty()) cfg.hints_path = scan_hints;
      (void)quartic_spec(scan_d);
      ScanHints hints;
      if (cfg.hints_path) hints = load_hints(*cfg.hints_path);
      const auto reports = scan_d == 2
                               ? scan_d2(scan_from, scan_to, cfg.budget, &hints, cfg.threads)
                               : scan_odd_d(scan_d, scan_from, scan_to, cfg.budget, &hints, cfg.threads);
      const std::string body = detail::join_reports(reports, scan_timings);
      if (cfg.json_output) {
        out << body << "\n";
      } else {
        std::ofstream file(scan_json, std::ios::binary);
        if (!file) throw domain_error(scan_json + ": cannot open for writing");
        file << body << "\n";
        for (const auto& r : reports) out << detail::log_line(r) << "\n";
      }
      return kOk;
    };
  });

  // growth
  int growth_d = 0;
  std::string growth_check;
  std::optional<std::uint64_t> growth_to;
  std::optional<unsigned long> growth_k;
  auto* growth = app.add_subcommand("growth", "exponential-growth checks");
  growth->add_option("--d", growth_d, "Heegner number (2, 3, 7, 11, 19 or 43 for J-relation checks)")->required();
  growth->add_option("--check", growth_check, "fact31, fact32, matiyasevich or robinson")
      ->required()
      ->check(CLI::IsMember({"fact31", "fact32", "matiyasevich", "robinson"}));
  growth->add_option("--to", growth_to, "upper end of the checked range");
  growth->add_option("--k", growth_k, "exponent for the unboundedness instance (robinson)");
  growth->callback([&] {
    action = [&] {
      json j;
      bool ok = false;
      if (growth_check == "fact31") {
        const std::uint64_t n = growth_to.value_or(300);
        ok = check_growth_lower_bound(growth_d, n);
        j = {{"d", growth_d}, {"check", growth_check}, {"n_to", n}, {"holds", ok}};
      } else if (growth_check == "fact32") {
        const std::uint64_t w_to = growth_to.value_or(100'000);
        if (w_to < 1) throw domain_error("--to must be >= 1");
        std::optional<std::uint64_t> first_bad;
        std::map<unsigned, std::uint64_t> first_w;
        for (std::uint64_t w = 1; w <= w_to; ++w) {
          const auto ell = interval_even(w);
          if (!ell) {
            first_bad = w;
            break;
          }
          first_w.emplace(*ell, w);
        }
        ok = !first_bad;
        json per_ell = json::object();
        for (const auto& [ell, w] : first_w) per_ell[std::to_string(ell)] = w;
        j = {{"check", growth_check}, {"w_to", w_to}, {"holds", ok},
             {"first_failure", first_bad ? json(*first_bad) : json(nullptr)},
             {"first_w_per_ell", std::move(per_ell)}};
      } else if (growth_check == "matiyasevich") {
        const auto rep = check_matiyasevich(growth_d, 1, growth_to.value_or(10'000));
        ok = rep.all_passed;
        j = to_json(rep);
      } else {
        std::vector<unsigned> ells;
        const unsigned first = j_params(growth_d).ell_min + 1;
        const unsigned last = static_cast<unsigned>(growth_to.value_or(first + 3));
        if (last < first || last > 10) {
          throw domain_error("--to must lie in [" + std::to_string(first) + ", 10] for robinson");
        }
        for (unsigned ell = first; ell <= last; ++ell) ells.push_back(ell);
        const auto rep = check_robinson(growth_d, ells, growth_k.value_or(5));
        ok = rep.all_passed;
        j = to_json(rep);
      }
      out << j.dump(2) << "\n";
      return ok ? kOk : kVerificationFailed;
    };
  });

  // verify-paper
  bool dump_fixtures = false;
  unsigned verify_threads = 1;
  auto* verify_cmd = app.add_subcommand("verify-paper", "run the reproduction suite");
  verify_cmd->add_flag("--dump-fixtures", dump_fixtures, "print the embedded fixtures and exit");
  verify_cmd->add_option("--threads", verify_threads, "worker threads for the scan criterion")
      ->check(CLI::PositiveNumber);
  verify_cmd->callback([&] {
    action = [&] {
      if (dump_fixtures) {
        json table = json::array();
        for (int d : kHeegnerNumbers) {
          const auto& hp = params(d);
          table.push_back({{"d", d}, {"x1", to_decimal(hp.x1)}, {"y1", to_decimal(hp.y1)}});
        }
        json j = {{"fundamental_solutions", std::move(table)},
                  {"solutions", solutions_to_json(bundled_solutions())}};
        out << j.dump(2) << "\n";
        return kOk;
      }
      verify::Options opt;
      opt.threads = verify_threads;
      const auto results = verify::run_all(opt, out);
      std::size_t passed = 0;
      for (const auto& r : results) passed += r.passed() ? 1 : 0;
      out << passed << "/" << results.size() << " criteria passed\n";
      return passed == results.size() ? kOk : kVerificationFailed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const verification_error& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace rta::cli
