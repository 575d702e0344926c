#pragma once

// JSON encodings. Every big integer is a decimal string.

#include "rta/fixtures.hpp"
#include "rta/growth.hpp"
#include "rta/normform.hpp"
#include "rta/quartic.hpp"
#include "rta/scan.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace rta {

using json = nlohmann::ordered_json;

/// Malformed input file; the message carries a line number when known.
class input_error : public domain_error {
 public:
  using domain_error::domain_error;
};

inline json to_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& pp : f.factors) factors.push_back({to_decimal(pp.prime), pp.exponent});
  return {{"value", to_decimal(f.value)},
          {"factors", std::move(factors)},
          {"cofactor", to_decimal(f.cofactor)},
          {"complete", f.complete}};
}

inline json to_json(const PellPair& p) { return {{"x", to_decimal(p.x)}, {"y", to_decimal(p.y)}}; }

inline json to_json(const NPellPair& p) { return {{"A", to_decimal(p.A)}, {"B", to_decimal(p.B)}}; }

inline json to_json(const ReprVerdict& v) {
  json out;
  out["outcome"] = v.name();
  if (v.representable()) {
    out["w"] = to_decimal(v.witness().w);
    out["t"] = to_decimal(v.witness().t);
  } else if (v.not_representable()) {
    out["poison"] = to_decimal(v.poison().poison);
    out["exponent"] = v.poison().exponent;
  } else {
    out["cofactor"] = to_decimal(std::get<UnknownVerdict>(v.outcome).cofactor);
  }
  return out;
}

inline json to_json(const QuarticTuple& t) {
  return {{"r", to_decimal(t.r)}, {"s", to_decimal(t.s)}, {"u", to_decimal(t.u)}, {"v", to_decimal(t.v)}};
}

inline json to_json(const SearchReport& r, bool with_timing = false) {
  json sides = json::array();
  for (const auto& s : r.sides) {
    sides.push_back({{"side", s.name}, {"value", to_decimal(s.value)}, {"verdict", to_json(s.verdict)}});
  }
  json overall = {{"kind", to_string(r.overall)}};
  if (r.overall == OverallKind::Poisoned) {
    overall["side"] = r.poisoned_side;
    overall["prime"] = to_decimal(r.poison_prime);
    overall["exponent"] = r.poison_exponent;
  }
  json out = {{"d", r.d},
              {"index", r.index},
              {"prefilter_passed", r.prefilter_passed},
              {"side_verdicts", std::move(sides)},
              {"overall", std::move(overall)}};
  if (with_timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

inline json to_json(const MatiyasevichReport& rep) {
  const auto& c = rep.constants;
  std::uint64_t failures = 0;
  json first_failure = nullptr;
  for (const auto& e : rep.entries) {
    const bool ok = e.ell != 0 && e.p_bound_ok && e.growth_ok && e.strong_ok;
    if (!ok) {
      ++failures;
      if (first_failure.is_null()) first_failure = e.w;
    }
  }
  json out = {{"d", rep.d},
              {"alpha", to_decimal(c.alpha)},
              {"beta", to_decimal(c.beta)},
              {"gamma", to_decimal(c.gamma)},
              {"delta", to_decimal(c.delta)},
              {"w_from", rep.entries.empty() ? 0 : rep.entries.front().w},
              {"w_to", rep.entries.empty() ? 0 : rep.entries.back().w},
              {"all_passed", rep.all_passed},
              {"failures", failures},
              {"first_failure", first_failure}};
  out["min_w_with_ell_above_min"] =
      rep.min_w_in_relation ? json(*rep.min_w_in_relation) : json(nullptr);
  out["relation_holds_from_min_w"] = rep.relation_from_min_w;
  json ells = json::object();
  unsigned last = 0;
  for (const auto& e : rep.entries) {
    if (e.ell != last) {
      ells[std::to_string(e.ell)] = e.w;  // first w using this l
      last = e.ell;
    }
  }
  out["first_w_per_ell"] = std::move(ells);
  return out;
}

inline json to_json(const RobinsonReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"ell", e.ell},
                       {"p_min", to_decimal(e.p_min)},
                       {"q_bits", e.q_bits},
                       {"j_holds", e.j_holds},
                       {"q_le_p_pow_p", e.q_at_most_p_pow_p},
                       {"q_gt_p_pow_k", e.q_above_p_pow_k}});
  }
  return {{"d", rep.d}, {"k", rep.k}, {"entries", std::move(entries)}, {"all_passed", rep.all_passed}};
}

namespace detail {

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(origin + ":" + std::to_string(line_of_offset(text, e.byte)) +
                      ": malformed JSON: " + e.what());
  }
}

/// Line of the first occurrence of the given string literal, for diagnostics.
inline std::size_t line_of_literal(const std::string& text, const std::string& literal) {
  const auto pos = text.find("\"" + literal + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

inline BigInt decimal_field(const json& entry, const char* key, std::size_t index,
                            const std::string& text, const std::string& origin) {
  auto where = [&](const std::string& literal) {
    const std::size_t line = literal.empty() ? 0 : line_of_literal(text, literal);
    return origin + (line ? ":" + std::to_string(line) : std::string()) + ": entry " +
           std::to_string(index) + ", field '" + key + "'";
  };
  if (!entry.contains(key)) throw input_error(where("") + ": missing");
  const json& v = entry.at(key);
  if (!v.is_string()) throw input_error(where("") + ": big integers must be decimal strings");
  const std::string s = v.get<std::string>();
  try {
    return parse_decimal(s);
  } catch (const domain_error&) {
    throw input_error(where(s) + ": malformed decimal '" + s + "'");
  }
}

inline int int_field(const json& entry, const char* key, std::size_t index, const std::string& origin) {
  if (!entry.contains(key) || !entry.at(key).is_number_integer()) {
    throw input_error(origin + ": entry " + std::to_string(index) + ", field '" + key +
                      "' must be an integer");
  }
  return entry.at(key).get<int>();
}

}  // namespace detail

struct SolutionRecord {
  int d = 0;
  QuarticTuple tuple;
};

inline std::vector<SolutionRecord> parse_solutions(const std::string& text,
                                                   const std::string& origin = "<solutions>") {
  const json doc = detail::parse_json_text(text, origin);
  if (!doc.is_array()) throw input_error(origin + ":1: expected a JSON array of solutions");
  std::vector<SolutionRecord> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    if (!e.is_object()) throw input_error(origin + ": entry " + std::to_string(i) + " is not an object");
    SolutionRecord rec;
    rec.d = detail::int_field(e, "d", i, origin);
    rec.tuple.r = detail::decimal_field(e, "r", i, text, origin);
    rec.tuple.s = detail::decimal_field(e, "s", i, text, origin);
    rec.tuple.u = detail::decimal_field(e, "u", i, text, origin);
    rec.tuple.v = detail::decimal_field(e, "v", i, text, origin);
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<SolutionRecord> load_solutions(const std::string& path) {
  return parse_solutions(detail::read_file(path), path);
}

inline std::vector<SolutionRecord> bundled_solutions() {
  std::vector<SolutionRecord> out;
  for (const auto& f : fixtures::kKnownSolutions) {
    out.push_back({f.d, {parse_decimal(f.r), parse_decimal(f.s), parse_decimal(f.u), parse_decimal(f.v)}});
  }
  return out;
}

inline json solutions_to_json(const std::vector<SolutionRecord>& sols) {
  json out = json::array();
  for (const auto& s : sols) {
    json e = {{"d", s.d}};
    e.update(to_json(s.tuple));
    out.push_back(std::move(e));
  }
  return out;
}

/// Hints file: array of entries, each one of
///   {"d", "r", "s", "u", "v"}                 a known solution
///   {"d", "index", "side", "w", "t"}          a witness for one side
///   {"d", "index", "side", "divisors": [...]} known prime divisors
inline ScanHints parse_hints(const std::string& text, const std::string& origin = "<hints>") {
  const json doc = detail::parse_json_text(text, origin);
  if (!doc.is_array()) throw input_error(origin + ":1: expected a JSON array of hints");
  ScanHints hints;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    if (!e.is_object()) throw input_error(origin + ": entry " + std::to_string(i) + " is not an object");
    const int d = detail::int_field(e, "d", i, origin);
    if (e.contains("r")) {
      QuarticTuple t{detail::decimal_field(e, "r", i, text, origin),
                     detail::decimal_field(e, "s", i, text, origin),
                     detail::decimal_field(e, "u", i, text, origin),
                     detail::decimal_field(e, "v", i, text, origin)};
      if (!add_solution_hints(hints, d, t)) {
        throw input_error(origin + ": entry " + std::to_string(i) +
                          " is not a solution on the Pell sequence");
      }
      continue;
    }
    if (!e.contains("index") || !e["index"].is_number_unsigned() || !e.contains("side") ||
        !e["side"].is_string()) {
      throw input_error(origin + ": entry " + std::to_string(i) + " needs 'index' and 'side'");
    }
    const ScanHints::Key key{d, e["index"].get<std::uint64_t>(), e["side"].get<std::string>()};
    if (e.contains("divisors")) {
      std::vector<BigInt> divs;
      for (const auto& dv : e["divisors"]) {
        if (!dv.is_string()) throw input_error(origin + ": entry " + std::to_string(i) + ": divisors must be decimal strings");
        try {
          divs.push_back(parse_decimal(dv.get<std::string>()));
        } catch (const domain_error&) {
          throw input_error(origin + ": entry " + std::to_string(i) + ": malformed divisor");
        }
      }
      hints.divisors[key] = std::move(divs);
    } else {
      hints.witnesses[key] = {detail::decimal_field(e, "w", i, text, origin),
                              detail::decimal_field(e, "t", i, text, origin)};
    }
  }
  return hints;
}

inline ScanHints load_hints(const std::string& path) {
  return parse_hints(detail::read_file(path), path);
}

}  // namespace rta
