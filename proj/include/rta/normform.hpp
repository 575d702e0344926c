#pragma once

// Norm forms of the rings of integers of Q(sqrt(-d)) for Heegner d:
//   d = 2:      w^2 + 2t^2
//   d odd:      w^2 + wt + c*t^2,  c = (d+1)/4
// and the pure forms w^2 + d*t^2. Prime splitting classification,
// representability verdicts backed by explicit witnesses or poison primes.

#include "rta/arith.hpp"
#include "rta/pell.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rta {

enum class FormKind { Norm, Pure };

struct Witness {
  BigInt w;
  BigInt t;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct FormVariant {
  FormKind kind = FormKind::Norm;
  int d = 2;

  static FormVariant norm(int d) {
    (void)params(d);
    return {FormKind::Norm, d};
  }
  static FormVariant pure(int d) {
    (void)params(d);
    return {FormKind::Pure, d};
  }

  /// Coefficient of t^2 when written as w^2 + [w*t] + c*t^2.
  long c() const {
    if (kind == FormKind::Pure || d == 2) return d;
    return (d + 1) / 4;
  }
  /// True when the form has the cross term w*t.
  bool has_cross_term() const { return kind == FormKind::Norm && d != 2; }

  BigInt evaluate(const BigInt& w, const BigInt& t) const {
    BigInt v = w * w + c() * t * t;
    if (has_cross_term()) v += w * t;
    return v;
  }
  BigInt evaluate(const Witness& wt) const { return evaluate(wt.w, wt.t); }

  friend bool operator==(const FormVariant&, const FormVariant&) = default;
};

enum class PrimeClass { Ramified, Split, Inert };

inline const char* to_string(PrimeClass c) {
  switch (c) {
    case PrimeClass::Ramified: return "Ramified";
    case PrimeClass::Split: return "Split";
    case PrimeClass::Inert: return "Inert";
  }
  return "?";
}

/// Splitting of the rational prime p in the ring of integers of Q(sqrt(-d)).
/// For d = 3, p = 2 is reported Inert: it is irreducible (a poison prime)
/// although not prime in Z[sqrt(-3)].
inline PrimeClass classify_prime(int d, const BigInt& p) {
  const auto& hp = params(d);
  if (!is_prime(p)) throw domain_error("classify_prime: " + to_decimal(p) + " is not prime");
  if (p == d) return PrimeClass::Ramified;
  if (p == 2) {
    if (d == 2) return PrimeClass::Ramified;
    return hp.norm_c % 2 == 1 ? PrimeClass::Inert : PrimeClass::Split;
  }
  return legendre(BigInt(-d), p) == 1 ? PrimeClass::Split : PrimeClass::Inert;
}

struct Representable {
  Witness witness;
};
struct NotRepresentable {
  BigInt poison;
  unsigned exponent = 0;
};
struct UnknownVerdict {
  BigInt cofactor;
};

struct ReprVerdict {
  std::variant<Representable, NotRepresentable, UnknownVerdict> outcome;

  bool representable() const { return std::holds_alternative<Representable>(outcome); }
  bool not_representable() const { return std::holds_alternative<NotRepresentable>(outcome); }
  bool unknown() const { return std::holds_alternative<UnknownVerdict>(outcome); }
  const Witness& witness() const { return std::get<Representable>(outcome).witness; }
  const NotRepresentable& poison() const { return std::get<NotRepresentable>(outcome); }
  const char* name() const {
    return representable() ? "Representable" : not_representable() ? "NotRepresentable" : "Unknown";
  }
};

/// Form multiplication induced by multiplication of ring elements.
inline Witness compose_witnesses(int d, const Witness& a, const Witness& b) {
  const auto& hp = params(d);
  if (d == 2) {
    return {a.w * b.w - 2 * a.t * b.t, a.w * b.t + a.t * b.w};
  }
  return {a.w * b.w - hp.norm_c * a.t * b.t, a.w * b.t + a.t * b.w + a.t * b.t};
}

/// Canonical representative of a witness up to sign: w >= 0, and t >= 0
/// when w = 0. For forms with a cross term, (w, t) and (w + t, -t) give the
/// same value; the one with smaller |w| is not preferred here, only signs.
inline Witness canonical_witness(Witness wt) {
  if (sgn(wt.w) < 0 || (sgn(wt.w) == 0 && sgn(wt.t) < 0)) {
    wt.w = -wt.w;
    wt.t = -wt.t;
  }
  return wt;
}

namespace detail {

/// Bound on |t| searched by find_witness before it is considered infeasible
/// inside representable().
inline constexpr std::uint64_t kWitnessSearchTLimit = std::uint64_t{1} << 22;

inline BigInt witness_t_bound(const FormVariant& f, const BigInt& m) {
  // Norm form with cross term: 4m = (2w + t)^2 + d*t^2, so d*t^2 <= 4m.
  if (f.has_cross_term()) return isqrt(4 * m / f.d);
  return isqrt(m / f.c());
}

}  // namespace detail

/// Exhaustive search over |t| = 0, 1, 2, ... (positive t before negative)
/// with an exact-square test on the residual quadratic in w. Returns the
/// first witness found with w >= 0.
inline std::optional<Witness> find_witness(const FormVariant& f, const BigInt& m) {
  if (m < 1) throw domain_error("find_witness: m must be >= 1");
  const BigInt t_max = detail::witness_t_bound(f, m);
  if (f.has_cross_term()) {
    const BigInt four_m = 4 * m;
    BigInt disc;
    for (BigInt t = 0; t <= t_max; ++t) {
      disc = four_m - f.d * t * t;
      auto s = is_square(disc);
      if (!s) continue;
      // w = (-t +- s)/2 for +t; w = (t +- s)/2 for -t.
      if (mpz_odd_p(BigInt(*s - t).get_mpz_t())) continue;
      if (*s >= t) return Witness{(*s - t) / 2, t};
      return Witness{(*s + t) / 2, -t};
    }
    return std::nullopt;
  }
  const long c = f.c();
  for (BigInt t = 0; t <= t_max; ++t) {
    if (auto s = is_square(m - c * t * t)) return Witness{*s, t};
  }
  return std::nullopt;
}

namespace detail {

/// Witness for a split or ramified prime p in the norm form of d.
inline Witness prime_norm_witness(int d, const BigInt& p) {
  const FormVariant f = FormVariant::norm(d);
  if (p < 100'000) {
    if (auto wt = find_witness(f, p)) return *wt;
    throw verification_error("no norm-form witness for prime " + to_decimal(p));
  }
  // Cornacchia. d = 2: x^2 + 2y^2 = p. Odd d: X^2 + d*t^2 = 4p, w = (X - t)/2.
  auto root = sqrt_mod_prime(BigInt(-d), p);
  if (!root) throw verification_error("prime " + to_decimal(p) + " is not split");
  BigInt a, b = *root, limit;
  if (d == 2) {
    a = p;
    if (b < p - b) b = p - b;
    limit = isqrt(p);
  } else {
    if (mpz_even_p(b.get_mpz_t())) b = p - b;  // need b^2 = -d (mod 4p)
    a = 2 * p;
    limit = isqrt(4 * p);
  }
  while (b > limit) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  const BigInt target = d == 2 ? p : 4 * p;
  const BigInt rest = target - b * b;
  if (rest % d == 0) {
    if (auto t = is_square(rest / d)) {
      if (d == 2) {
        Witness wt{b, *t};
        if (f.evaluate(wt) == p) return wt;
      } else {
        for (const BigInt& tt : {*t, BigInt(-*t)}) {
          const BigInt twice_w = b - tt;
          if (mpz_even_p(twice_w.get_mpz_t())) {
            Witness wt{twice_w / 2, tt};
            if (f.evaluate(wt) == p) return wt;
          }
        }
      }
    }
  }
  throw verification_error("Cornacchia failed for prime " + to_decimal(p));
}

/// Norm-form witness assembled from a complete factorization with no
/// inert prime to an odd power.
inline Witness witness_from_factorization(int d, const Factorization& fz) {
  Witness acc{BigInt(1), BigInt(0)};
  for (const auto& [p, e] : fz.factors) {
    if (classify_prime(d, p) == PrimeClass::Inert) {
      acc.w *= pow_ui(p, e / 2);
      acc.t *= pow_ui(p, e / 2);
      continue;
    }
    const Witness base = prime_norm_witness(d, p);
    for (unsigned i = 0; i < e; ++i) acc = compose_witnesses(d, acc, base);
  }
  return canonical_witness(acc);
}

/// Norm witness -> pure witness (w^2 + d t^2) when an explicit conversion
/// applies; nullopt otherwise.
inline std::optional<Witness> pure_from_norm(int d, const Witness& norm, const BigInt& m) {
  const FormVariant pure = FormVariant::pure(d);
  auto half_t = [&](const Witness& wt) -> std::optional<Witness> {
    if (!mpz_even_p(wt.t.get_mpz_t())) return std::nullopt;
    Witness out{wt.w + wt.t / 2, wt.t / 2};
    if (pure.evaluate(out) != m) return std::nullopt;
    return canonical_witness(out);
  };
  if (d == 2) return canonical_witness(norm);
  if (auto p = half_t(norm)) return p;
  if (d == 3) {
    // w^2 + wt + t^2 is symmetric, and (w, t) ~ (w + t, -t).
    if (auto p = half_t({norm.t, norm.w})) return p;
    if (auto p = half_t({-norm.t, norm.w + norm.t})) return p;
  }
  return std::nullopt;
}

}  // namespace detail

/// Three-valued representability of m by the given form.
///
/// A supplied hint is accepted if it evaluates to m (and rejected with an
/// exception otherwise). Otherwise m is factored under the budget: an inert
/// prime with odd exact exponent gives NotRepresentable immediately (trial
/// division runs first, so small poison primes short-circuit); a complete
/// factorization without poison gives Representable with an explicit
/// witness; anything else is Unknown.
///
/// Pure forms other than d in {2, 3} are only reported Representable with a
/// witness for that form; NotRepresentable is still taken from poison primes,
/// since pure-representable numbers are norm-representable.
inline ReprVerdict representable(const FormVariant& f, const BigInt& m, const Budget& budget = {},
                                 const std::optional<Witness>& hint = std::nullopt,
                                 const std::vector<BigInt>& known_divisors = {}) {
  if (m < 1) throw domain_error("representable: m must be >= 1");
  if (hint) {
    if (f.evaluate(*hint) != m) {
      throw verification_error("hint (" + to_decimal(hint->w) + ", " + to_decimal(hint->t) +
                               ") does not represent " + to_decimal(m));
    }
    return {Representable{*hint}};
  }

  std::optional<NotRepresentable> poison;
  const Factorization fz = factor(
      m, budget,
      [&](const BigInt& p, unsigned e) {
        if (e % 2 == 1 && classify_prime(f.d, p) == PrimeClass::Inert) {
          poison = NotRepresentable{p, e};
          return true;
        }
        return false;
      },
      known_divisors);
  if (poison) return {*poison};

  const bool search_feasible = detail::witness_t_bound(f, m) <= detail::kWitnessSearchTLimit;
  if (f.kind == FormKind::Norm || f.d == 2) {
    if (!fz.complete) return {UnknownVerdict{fz.cofactor}};
    if (search_feasible) {
      if (auto wt = find_witness(f, m)) return {Representable{*wt}};
      throw verification_error("no witness for poison-free " + to_decimal(m));
    }
    const Witness wt = detail::witness_from_factorization(f.d, fz);
    if (f.evaluate(wt) != m) throw verification_error("assembled witness is wrong");
    return {Representable{wt}};
  }

  // Pure form, d != 2.
  if (search_feasible) {
    if (auto wt = find_witness(f, m)) return {Representable{*wt}};
    if (fz.complete && f.d == 3) throw verification_error("d=3 pure/norm mismatch");
    return {UnknownVerdict{fz.complete ? BigInt(1) : fz.cofactor}};
  }
  if (!fz.complete) return {UnknownVerdict{fz.cofactor}};
  const Witness norm = detail::witness_from_factorization(f.d, fz);
  if (auto wt = detail::pure_from_norm(f.d, norm, m)) return {Representable{*wt}};
  return {UnknownVerdict{BigInt(1)}};
}

}  // namespace rta
