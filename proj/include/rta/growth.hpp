#pragma once

// Exact checks of the exponential-growth facts about the relations
//
//   d in {2, 7}:          J(p, q) <=> exists l > 4: q = y_{2^l},      p | q, p >= 2^{l+1}
//   d in {3, 11, 19, 43}: J(p, q) <=> exists l > 5: q = y_{2^{2l+1}}, p | q, p >= 2^{2l+2}
//
// All comparisons are exact integer comparisons; bit lengths are only
// used to skip work when the answer is already determined.

#include "rta/pell.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rta {

struct JRelationParams {
  int d = 0;
  unsigned ell_min = 0;  // l must exceed this
  bool single_exponent = false;  // index 2^l (d = 2, 7) vs 2^{2l+1}
  BigInt alpha, beta, gamma, delta;

  /// log2 of the Pell index used at l.
  unsigned index_exponent(unsigned ell) const { return single_exponent ? ell : 2 * ell + 1; }
  /// log2 of the lower bound on p at l.
  unsigned p_bound_exponent(unsigned ell) const { return single_exponent ? ell + 1 : 2 * ell + 2; }
  BigInt p_bound(unsigned ell) const { return pow2(p_bound_exponent(ell)); }
};

inline JRelationParams j_params(int d) {
  const auto& hp = params(d);
  JRelationParams jp;
  jp.d = d;
  if (d == 2 || d == 7) {
    jp.ell_min = 4;
    jp.single_exponent = true;
    jp.alpha = hp.x1;
    jp.beta = 2;
    jp.gamma = pow2(6);
    jp.delta = 1;
  } else if (d == 3 || d == 11 || d == 19 || d == 43) {
    jp.ell_min = 5;
    jp.alpha = pow_ui(hp.x1, 4);
    jp.beta = 2;
    jp.gamma = pow2(7);
    jp.delta = pow_ui(hp.x1, 3);
  } else {
    throw domain_error("no J relation for d = " + std::to_string(d));
  }
  return jp;
}

/// y_{2^j}(d) for j = 0..j_max by repeated doubling.
inline std::vector<BigInt> y_at_powers_of_two(int d, unsigned j_max) {
  std::vector<BigInt> out;
  PellPair p = pell_fundamental(d);
  out.push_back(p.y);
  for (unsigned j = 1; j <= j_max; ++j) {
    p = pell_double(p);
    out.push_back(p.y);
  }
  return out;
}

inline BigInt y_at_power_of_two(int d, unsigned j) {
  PellPair p = pell_fundamental(d);
  for (unsigned i = 0; i < j; ++i) p = pell_double(p);
  return p.y;
}

/// The l witnessing J_d(p, q), if any.
inline std::optional<unsigned> j_holds(int d, const BigInt& p, const BigInt& q) {
  const JRelationParams jp = j_params(d);
  if (sgn(p) < 0 || sgn(q) <= 0) return std::nullopt;
  PellPair pair = pell_fundamental(d);
  unsigned j = 0;
  while (pair.y <= q) {
    if (pair.y == q) {
      // Which l (if any) has index exponent j?
      for (unsigned ell = jp.ell_min + 1; jp.index_exponent(ell) <= j; ++ell) {
        if (jp.index_exponent(ell) != j) continue;
        if (sgn(p) > 0 && mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t()) && p >= jp.p_bound(ell)) {
          return ell;
        }
      }
      return std::nullopt;
    }
    pair = pell_double(pair);
    ++j;
  }
  return std::nullopt;
}

/// u | v with v/u odd, i.e. exists x: (2x + 1) u = v.
inline bool odd_quotient_divides(const BigInt& u, const BigInt& v) {
  if (sgn(v) == 0) throw domain_error("odd_quotient_divides: v must be non-zero");
  if (sgn(u) == 0) return false;
  if (!mpz_divisible_p(v.get_mpz_t(), u.get_mpz_t())) return false;
  const BigInt q = v / u;
  return mpz_odd_p(q.get_mpz_t()) != 0;
}

/// x1(d)^{n-1} < y_n(d) for every 2 <= n <= n_max.
inline bool check_growth_lower_bound(int d, std::uint64_t n_max) {
  if (n_max < 2) throw domain_error("check_growth_lower_bound: n_max must be >= 2");
  const auto& hp = params(d);
  PellPair prev = pell_identity(d);
  PellPair cur = pell_fundamental(d);
  BigInt power = 1;  // x1^{n-1}
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    PellPair next = pell_next(cur, prev);
    prev = std::move(cur);
    cur = std::move(next);
    power *= hp.x1;
    if (!(power < cur.y)) return false;
  }
  return true;
}

/// Smallest l >= min_ell satisfying the exact form of the interval
/// condition for d's relation:
///   d in {2, 7}: 2^l > 1 + w            and 2^l  < 2^5 w^2
///   otherwise:   2^{2l+1} > 4 + 4w      and 2^{2l} < 2^5 w^2
inline std::optional<unsigned> admissible_ell(const JRelationParams& jp, std::uint64_t w,
                                              unsigned min_ell = 1) {
  if (w < 1) throw domain_error("admissible_ell: w must be >= 1");
  const BigInt W = big_u(w);
  const BigInt upper = 32 * W * W;
  for (unsigned ell = min_ell;; ++ell) {
    const unsigned e = jp.single_exponent ? ell : 2 * ell;
    if (!(pow2(e) < upper)) return std::nullopt;
    const bool lower = jp.single_exponent ? pow2(ell) > 1 + W : pow2(2 * ell + 1) > 4 + 4 * W;
    if (lower) return ell;
  }
}

/// Smallest l >= 1 with 2^{2l+1} > 4 + 4w and 2^{2l} < 2^5 w^2: the even
/// number 2l then lies strictly between 1 + log2(1 + w) and 5 + 2 log2 w.
inline std::optional<unsigned> interval_even(std::uint64_t w) {
  JRelationParams jp;
  jp.single_exponent = false;
  return admissible_ell(jp, w, 1);
}

struct MatiyasevichEntry {
  std::uint64_t w = 0;
  unsigned ell = 0;
  bool p_bound_ok = false;  // p_bound(l) < gamma * w^beta
  bool growth_ok = false;   // y_{index(l)} > delta * alpha^w
  bool strong_ok = false;   // x1^{index(l) - 1} > delta * alpha^w (exponent form)
  std::optional<unsigned> ell_in_relation;  // smallest admissible l > ell_min
  bool relation_ok = false;  // inequalities hold at ell_in_relation as well
};

struct MatiyasevichReport {
  int d = 0;
  JRelationParams constants;
  std::vector<MatiyasevichEntry> entries;
  bool all_passed = false;  // every w admits an l satisfying every inequality
  std::optional<std::uint64_t> min_w_in_relation;  // first w with an admissible l > ell_min
  bool relation_from_min_w = false;  // every w >= that minimum admits such an l
};

/// Checks, for w in [w_lo, w_hi], the inequality chain that yields p, q with
/// J(p, q), p < gamma w^beta, q > delta alpha^w.
inline MatiyasevichReport check_matiyasevich(int d, std::uint64_t w_lo, std::uint64_t w_hi) {
  if (w_lo < 1 || w_lo > w_hi) throw domain_error("check_matiyasevich: bad w range");
  MatiyasevichReport rep;
  rep.d = d;
  rep.constants = j_params(d);
  const JRelationParams& jp = rep.constants;
  const auto& hp = params(d);
  const unsigned long beta = jp.beta.get_ui();
  std::map<unsigned, BigInt> y_cache;
  auto y_at = [&](unsigned ell) -> const BigInt& {
    auto it = y_cache.find(ell);
    if (it == y_cache.end()) {
      it = y_cache.emplace(ell, y_at_power_of_two(d, jp.index_exponent(ell))).first;
    }
    return it->second;
  };
  // delta * alpha^w, maintained incrementally.
  BigInt rhs = jp.delta * pow_ui(jp.alpha, static_cast<unsigned long>(w_lo));
  // exponent of x1 in delta * alpha^w.
  const std::uint64_t alpha_exp = jp.single_exponent ? 1 : 4;
  const std::uint64_t delta_exp = jp.single_exponent ? 0 : 3;
  (void)hp;

  auto holds_at = [&](std::uint64_t w, unsigned ell, bool& p_ok, bool& g_ok, bool& s_ok) {
    const BigInt W = big_u(w);
    p_ok = jp.p_bound(ell) < jp.gamma * pow_ui(W, beta);
    const BigInt& y = y_at(ell);
    g_ok = bit_length(y) > bit_length(rhs) || y > rhs;
    const std::uint64_t index = std::uint64_t{1} << jp.index_exponent(ell);
    s_ok = index - 1 > delta_exp + alpha_exp * w;
    return p_ok && g_ok && s_ok;
  };

  rep.all_passed = true;
  rep.relation_from_min_w = true;
  for (std::uint64_t w = w_lo; w <= w_hi; ++w) {
    if (w > w_lo) rhs *= jp.alpha;
    MatiyasevichEntry e;
    e.w = w;
    const auto ell = d == 2 || d == 7 ? admissible_ell(jp, w, 1) : interval_even(w);
    if (!ell) {
      rep.all_passed = false;
    } else {
      e.ell = *ell;
      if (!holds_at(w, *ell, e.p_bound_ok, e.growth_ok, e.strong_ok)) rep.all_passed = false;
    }
    e.ell_in_relation = admissible_ell(jp, w, jp.ell_min + 1);
    if (e.ell_in_relation) {
      bool p_ok = false, g_ok = false, s_ok = false;
      e.relation_ok = holds_at(w, *e.ell_in_relation, p_ok, g_ok, s_ok);
      if (!rep.min_w_in_relation && e.relation_ok) rep.min_w_in_relation = w;
    }
    if (rep.min_w_in_relation && !e.relation_ok) rep.relation_from_min_w = false;
    rep.entries.push_back(std::move(e));
  }
  if (!rep.min_w_in_relation) rep.relation_from_min_w = false;
  return rep;
}

struct RobinsonEntry {
  unsigned ell = 0;
  BigInt p_min;
  std::size_t q_bits = 0;
  bool j_holds = false;           // J(p_min, q)
  bool q_at_most_p_pow_p = false;  // q <= p_min^p_min
  bool q_above_p_pow_k = false;    // q > p_min^k
};

struct RobinsonReport {
  int d = 0;
  unsigned long k = 0;
  std::vector<RobinsonEntry> entries;
  bool all_passed = false;
};

namespace detail {

/// q <= p^p, p >= 2.
inline bool at_most_self_power(const BigInt& q, const BigInt& p) {
  const std::size_t pb = bit_length(p);
  const BigInt lo_bits = p * (pb - 1) + 1;  // p^p >= 2^{p(pb-1)}
  const BigInt hi_bits = p * pb;            // p^p <  2^{p*pb}
  const BigInt qb = BigInt(static_cast<unsigned long>(bit_length(q)));
  if (qb < lo_bits) return true;
  if (qb > hi_bits) return false;
  return q <= pow_ui(p, p.get_ui());
}

}  // namespace detail

/// For each l: with p = 2^{p-bound exponent} and q = y at the relation's
/// index, checks J(p, q), q <= p^p and q > p^k.
inline RobinsonReport check_robinson(int d, const std::vector<unsigned>& ells, unsigned long k) {
  RobinsonReport rep;
  rep.d = d;
  rep.k = k;
  const JRelationParams jp = j_params(d);
  rep.all_passed = !ells.empty();
  for (unsigned ell : ells) {
    if (ell <= jp.ell_min) throw domain_error("check_robinson: l must exceed " + std::to_string(jp.ell_min));
    if (ell > 10) throw domain_error("check_robinson: l too large (max 10)");
    RobinsonEntry e;
    e.ell = ell;
    e.p_min = jp.p_bound(ell);
    const BigInt q = y_at_power_of_two(d, jp.index_exponent(ell));
    e.q_bits = bit_length(q);
    const auto witnessed = j_holds(d, e.p_min, q);
    e.j_holds = witnessed && *witnessed == ell;
    e.q_at_most_p_pow_p = detail::at_most_self_power(q, e.p_min);
    e.q_above_p_pow_k = q > pow_ui(e.p_min, k);
    if (!(e.j_holds && e.q_at_most_p_pow_p && e.q_above_p_pow_k)) rep.all_passed = false;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace rta
