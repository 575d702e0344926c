#pragma once

// Shanks-Wagstaff style search for non-trivial quartic solutions: walk the
// Pell (or companion Pell) indices, decide representability of the two
// linear forms at each index, and report per-index evidence.

#include "rta/normform.hpp"
#include "rta/pell.hpp"
#include "rta/quartic.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace rta {

enum class OverallKind { BothRepresentable, Poisoned, Unknown, FilteredOut };

inline const char* to_string(OverallKind k) {
  switch (k) {
    case OverallKind::BothRepresentable: return "BothRepresentable";
    case OverallKind::Poisoned: return "Poisoned";
    case OverallKind::Unknown: return "Unknown";
    case OverallKind::FilteredOut: return "FilteredOut";
  }
  return "?";
}

struct SideReport {
  std::string name;  // "A"/"B" for d = 2, "F1"/"F2" for odd d
  BigInt value;
  ReprVerdict verdict;
};

struct SearchReport {
  int d = 0;
  std::uint64_t index = 0;
  bool prefilter_passed = true;
  std::vector<SideReport> sides;
  OverallKind overall = OverallKind::Unknown;
  std::string poisoned_side;  // set when overall == Poisoned
  BigInt poison_prime;
  unsigned poison_exponent = 0;
  std::int64_t elapsed_ms = 0;
};

/// Externally obtained evidence, keyed by (d, index, side name).
struct ScanHints {
  struct Key {
    int d;
    std::uint64_t index;
    std::string side;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  std::map<Key, Witness> witnesses;
  std::map<Key, std::vector<BigInt>> divisors;

  const Witness* witness_for(int d, std::uint64_t index, const std::string& side) const {
    auto it = witnesses.find({d, index, side});
    return it == witnesses.end() ? nullptr : &it->second;
  }
  std::vector<BigInt> divisors_for(int d, std::uint64_t index, const std::string& side) const {
    auto it = divisors.find({d, index, side});
    return it == divisors.end() ? std::vector<BigInt>{} : it->second;
  }
};

/// Both A_n and B_n are 1 (mod 8) exactly when n = 0 (mod 4); odd numbers
/// represented by w^2 + 2t^2 are 1 or 3 (mod 8), while A_n = 5 for
/// n = 1, 2 (mod 4) and B_n = 7 for odd n.
inline bool residue_prefilter_d2(std::uint64_t n) {
  if (n < 1) throw domain_error("residue_prefilter_d2: n must be >= 1");
  return n % 4 == 0;
}

/// Runs fn(i) for i in [0, count) on `threads` workers; results keep index order.
template <typename Result, typename Fn>
std::vector<Result> run_indexed(std::size_t count, unsigned threads, Fn fn) {
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace detail {

inline void summarize(SearchReport& report) {
  bool all_representable = true;
  for (const auto& side : report.sides) {
    if (side.verdict.not_representable()) {
      report.overall = OverallKind::Poisoned;
      report.poisoned_side = side.name;
      report.poison_prime = side.verdict.poison().poison;
      report.poison_exponent = side.verdict.poison().exponent;
      return;
    }
    all_representable = all_representable && side.verdict.representable();
  }
  report.overall = all_representable ? OverallKind::BothRepresentable : OverallKind::Unknown;
}

inline SideReport decide_side(int d, std::uint64_t index, std::string name, BigInt value,
                              const FormVariant& form, const Budget& budget,
                              const ScanHints* hints) {
  std::optional<Witness> hint;
  std::vector<BigInt> divisors;
  if (hints) {
    if (const Witness* w = hints->witness_for(d, index, name)) hint = *w;
    divisors = hints->divisors_for(d, index, name);
  }
  ReprVerdict verdict = representable(form, value, budget, hint, divisors);
  return {std::move(name), std::move(value), std::move(verdict)};
}

inline void check_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw domain_error("scan: empty range (from > to)");
}

}  // namespace detail

inline SearchReport scan_d2_index(std::uint64_t n, const Budget& budget,
                                  const ScanHints* hints = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.d = 2;
  report.index = n;
  report.prefilter_passed = residue_prefilter_d2(n);
  if (!report.prefilter_passed) {
    report.overall = OverallKind::FilteredOut;
  } else {
    const NPellPair np = npell_nth(n);
    const FormVariant form = FormVariant::norm(2);
    report.sides.push_back(detail::decide_side(2, n, "A", np.A, form, budget, hints));
    report.sides.push_back(detail::decide_side(2, n, "B", np.B, form, budget, hints));
    detail::summarize(report);
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

inline std::vector<SearchReport> scan_d2(std::uint64_t n_lo, std::uint64_t n_hi,
                                         const Budget& budget = {},
                                         const ScanHints* hints = nullptr,
                                         unsigned threads = 1) {
  detail::check_range(n_lo, n_hi);
  if (n_lo < 1) throw domain_error("scan_d2: indices start at 1");
  return run_indexed<SearchReport>(n_hi - n_lo + 1, threads, [&](std::size_t i) {
    return scan_d2_index(n_lo + i, budget, hints);
  });
}

/// Inner form used by the quartic of d on both sides.
inline FormVariant scan_form(int d) {
  return quartic_spec(d).left_form;
}

inline SearchReport scan_odd_index(int d, std::uint64_t ell, const Budget& budget,
                                   const ScanHints* hints = nullptr) {
  if (d % 2 == 0) throw domain_error("scan_odd_d: d must be odd");
  const auto start = std::chrono::steady_clock::now();
  const auto& hp = params(d);
  const FormVariant form = scan_form(d);
  const PellPair p = pell_nth(d, ell);
  const BigInt X = p.x;
  const BigInt Y = p.y / hp.y1;
  SearchReport report;
  report.d = d;
  report.index = ell;
  report.sides.push_back(
      detail::decide_side(d, ell, "F1", X + hp.bin_b * hp.bin_b * Y, form, budget, hints));
  report.sides.push_back(
      detail::decide_side(d, ell, "F2", X + d * hp.bin_a * hp.bin_a * Y, form, budget, hints));
  detail::summarize(report);
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

inline std::vector<SearchReport> scan_odd_d(int d, std::uint64_t ell_lo, std::uint64_t ell_hi,
                                            const Budget& budget = {},
                                            const ScanHints* hints = nullptr,
                                            unsigned threads = 1) {
  detail::check_range(ell_lo, ell_hi);
  (void)quartic_spec(d);
  if (d % 2 == 0) throw domain_error("scan_odd_d: d must be odd");
  return run_indexed<SearchReport>(ell_hi - ell_lo + 1, threads, [&](std::size_t i) {
    return scan_odd_index(d, ell_lo + i, budget, hints);
  });
}

/// Registers the inner-form witnesses of a known quartic solution as hints
/// at the index it corresponds to. Returns that index, or nullopt if the
/// tuple is not a solution that maps onto the Pell sequence.
inline std::optional<std::uint64_t> add_solution_hints(ScanHints& hints, int d,
                                                       const QuarticTuple& t) {
  const QuarticSpec& spec = quartic_spec(d);
  if (!is_solution(spec, t)) return std::nullopt;
  const PellSystemSolution sys = pell_from_solution(spec, t);
  std::optional<std::uint64_t> index;
  if (d == 2) {
    index = npell_index_of(sys.X, sys.Y);
  } else {
    const BigInt y = sys.Y * params(d).y1;
    index = pell_index_of(d, sys.X, y < 0 ? BigInt(-y) : y);
  }
  if (!index) return std::nullopt;
  const std::string first = d == 2 ? "A" : "F1";
  const std::string second = d == 2 ? "B" : "F2";
  // Scan sides hold unfolded values; folded witnesses are only usable when
  // the fold factor is 1.
  if (spec.fold_left == 1) hints.witnesses[{d, *index, first}] = {t.r, t.s};
  if (spec.fold_right == 1) hints.witnesses[{d, *index, second}] = {t.u, t.v};
  return index;
}

}  // namespace rta
