#pragma once

// Arbitrary-precision integer utilities: Miller-Rabin primality, budgeted
// factorization (trial division + Brent's variant of Pollard rho), exact
// square detection, 2-adic valuation, modular square roots.
//
// Primality is deterministic below kDeterministicPrimeBound (bases 2..41).
// Above it the first 40 primes are used as bases; those results are
// probable-prime verdicts.

#include "rta/bigint.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace rta {

struct Budget {
  std::uint64_t trial_division_bound = 1'000'000;
  std::uint64_t rho_iterations_cap = std::uint64_t{1} << 22;
  std::uint64_t rho_restart_cap = 8;

  static Budget defaults() { return {}; }
  static Budget hard() { return {10'000'000, std::uint64_t{1} << 26, 32}; }
  /// Trial division only.
  static Budget trial_only(std::uint64_t bound) { return {bound, 0, 0}; }

  friend bool operator==(const Budget&, const Budget&) = default;
};

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  BigInt value;
  std::vector<PrimePower> factors;  // strictly ascending primes, exact exponents
  BigInt cofactor{1};               // unfactored part, coprime to every listed prime
  bool complete = true;             // cofactor == 1
  bool cofactor_probable_prime = false;

  /// Product of p^e over factors, times cofactor.
  BigInt reconstruct() const {
    BigInt acc = cofactor;
    for (const auto& f : factors) acc *= pow_ui(f.prime, f.exponent);
    return acc;
  }

  /// Exponent of p in value if p is listed, nullopt otherwise.
  std::optional<unsigned> exponent_of(const BigInt& p) const {
    for (const auto& f : factors) {
      if (f.prime == p) return f.exponent;
    }
    return std::nullopt;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Called once per prime as soon as its exact exponent is known.
/// Returning true stops the factorization early; the result is then
/// incomplete unless nothing was left over.
using PrimeObserver = std::function<bool(const BigInt& prime, unsigned exponent)>;

inline const BigInt kDeterministicPrimeBound{"3317044064679887385961981", 10};

namespace detail {

inline constexpr std::array<unsigned, 40> kFirstPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

inline constexpr std::uint32_t kSieveLimit = 10'000'000;

inline const std::vector<std::uint32_t>& sieve_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit + 1, false);
    std::vector<std::uint32_t> out;
    out.reserve(670'000);
    for (std::uint32_t i = 2; i <= kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kSieveLimit; j += i) {
        composite[j] = true;
      }
    }
    return out;
  }();
  return primes;
}

inline bool miller_rabin_round(const BigInt& n, const BigInt& n_minus_1, const BigInt& odd,
                               unsigned long twos, unsigned long base) {
  BigInt a = base;
  a %= n;
  if (a == 0) return true;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), odd.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < twos; ++i) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

inline bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned p : detail::kFirstPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 173 * 173) return true;
  const BigInt n_minus_1 = n - 1;
  const unsigned long twos = mpz_scan1(n_minus_1.get_mpz_t(), 0);
  BigInt odd;
  mpz_tdiv_q_2exp(odd.get_mpz_t(), n_minus_1.get_mpz_t(), twos);
  const std::size_t rounds = n < kDeterministicPrimeBound ? 13 : detail::kFirstPrimes.size();
  for (std::size_t i = 0; i < rounds; ++i) {
    if (!detail::miller_rabin_round(n, n_minus_1, odd, twos, detail::kFirstPrimes[i])) {
      return false;
    }
  }
  return true;
}

inline std::optional<BigInt> is_square(const BigInt& n) {
  if (sgn(n) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Largest e with 2^e | n; n must be non-zero.
inline unsigned long valuation2(const BigInt& n) {
  if (sgn(n) == 0) throw domain_error("2-adic valuation of zero");
  return mpz_scan1(n.get_mpz_t(), 0);
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Floor square root of a non-negative integer.
inline BigInt isqrt(const BigInt& n) {
  if (sgn(n) < 0) throw domain_error("square root of a negative integer");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Legendre symbol (a | p) for an odd prime p.
inline int legendre(const BigInt& a, const BigInt& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks); nullopt when a
/// is a non-residue. The smaller of the two roots is returned.
inline std::optional<BigInt> sqrt_mod_prime(const BigInt& a, const BigInt& p) {
  BigInt r = a % p;
  if (r < 0) r += p;
  if (r == 0) return BigInt(0);
  if (legendre(r, p) != 1) return std::nullopt;

  const BigInt p_minus_1 = p - 1;
  const unsigned long s = mpz_scan1(p_minus_1.get_mpz_t(), 0);
  BigInt q;
  mpz_tdiv_q_2exp(q.get_mpz_t(), p_minus_1.get_mpz_t(), s);

  BigInt z = 2;
  while (legendre(z, p) != -1) ++z;

  BigInt c, x, t, b;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  BigInt exp = (q + 1) / 2;
  mpz_powm(x.get_mpz_t(), r.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    BigInt t2 = t;
    while (t2 != 1) {
      mpz_powm_ui(t2.get_mpz_t(), t2.get_mpz_t(), 2, p.get_mpz_t());
      ++i;
    }
    b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) {
      mpz_powm_ui(b.get_mpz_t(), b.get_mpz_t(), 2, p.get_mpz_t());
    }
    x = (x * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  if (x > p - x) x = p - x;
  return x;
}

namespace detail {

/// One Brent-rho run with x -> x^2 + c. Returns a proper divisor of n or
/// nullopt when the iteration cap is hit or the run degenerates.
inline std::optional<BigInt> brent_rho(const BigInt& n, unsigned long c,
                                       std::uint64_t iteration_cap) {
  constexpr std::uint64_t kBatch = 128;
  mpz_srcptr nn = n.get_mpz_t();
  BigInt x, y = 2, ys, q = 1, g = 1, diff;
  auto step = [&](BigInt& v) {
    mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
    mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), nn);
  };

  std::uint64_t r = 1;
  std::uint64_t iterations = 0;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    iterations += r;
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t batch = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < batch; ++i) {
        step(y);
        mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), nn);
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), nn);
      k += batch;
      iterations += batch;
    }
    r *= 2;
    if (g == 1 && iterations >= iteration_cap) return std::nullopt;
  }
  if (g == n) {
    // Batched product hit zero; redo the last batch one step at a time.
    do {
      step(ys);
      mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), nn);
    } while (g == 1);
  }
  if (g == n) return std::nullopt;
  return g;
}

inline std::optional<std::pair<BigInt, unsigned long>> perfect_power(const BigInt& n) {
  if (!mpz_perfect_power_p(n.get_mpz_t()) || n < 4) return std::nullopt;
  const std::size_t bits = bit_length(n);
  for (unsigned long k = bits; k >= 2; --k) {
    BigInt root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) {
      return std::make_pair(root, k);
    }
  }
  return std::nullopt;
}

/// Distinct primes dividing composite n that the budget lets us find.
inline void split_primes(const BigInt& n, const Budget& budget, std::vector<BigInt>& out) {
  auto collect = [&](const BigInt& piece) {
    if (piece == 1) return;
    if (is_prime(piece)) {
      out.push_back(piece);
    } else {
      split_primes(piece, budget, out);
    }
  };
  if (auto pp = perfect_power(n)) {
    collect(pp->first);
    return;
  }
  if (mpz_even_p(n.get_mpz_t())) {
    out.emplace_back(2);
    BigInt rest = n;
    mpz_tdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), mpz_scan1(rest.get_mpz_t(), 0));
    collect(rest);
    return;
  }
  for (std::uint64_t restart = 0; restart < budget.rho_restart_cap; ++restart) {
    if (auto g = brent_rho(n, static_cast<unsigned long>(restart + 1), budget.rho_iterations_cap)) {
      collect(*g);
      collect(n / *g);
      return;
    }
  }
}

inline unsigned remove_factor(BigInt& n, const BigInt& p) {
  unsigned e = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

inline unsigned remove_factor_ui(BigInt& n, unsigned long p) {
  unsigned e = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++e;
  }
  return e;
}

}  // namespace detail

/// Factors n >= 1 under the given budget. Deterministic: rho restarts use
/// the increments c = 1, 2, 3, ... and the fixed seed 2. Every prime found
/// is divided out of the remainder completely before work continues, so
/// listed exponents are exact even when the result is incomplete.
/// `known_divisors` are tried before rho (e.g. externally supplied factors).
inline Factorization factor(const BigInt& n, const Budget& budget = {},
                            const PrimeObserver& observer = {},
                            const std::vector<BigInt>& known_divisors = {}) {
  if (n < 1) throw domain_error("factor: n must be >= 1");
  Factorization result;
  result.value = n;
  BigInt rem = n;
  bool stop = false;

  auto record = [&](const BigInt& p, unsigned e) {
    result.factors.push_back({p, e});
    if (observer && observer(p, e)) stop = true;
  };

  const auto& primes = detail::sieve_primes();
  bool remainder_is_prime = false;
  std::uint64_t tested_up_to = 1;
  for (std::uint32_t p : primes) {
    if (p > budget.trial_division_bound) break;
    if (BigInt(p) * p > rem) {
      remainder_is_prime = rem > 1;
      break;
    }
    if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      record(BigInt(p), detail::remove_factor_ui(rem, p));
      if (stop) break;
    }
    tested_up_to = p;
  }
  if (!stop && !remainder_is_prime && rem > 1 &&
      budget.trial_division_bound > detail::kSieveLimit) {
    // Past the sieve: odd trial divisors (not all prime; composites never divide).
    for (std::uint64_t p = detail::kSieveLimit + 1 + (detail::kSieveLimit % 2);
         p <= budget.trial_division_bound; p += 2) {
      if (BigInt(big_u(p)) * big_u(p) > rem) {
        remainder_is_prime = rem > 1;
        break;
      }
      if (mpz_divisible_ui_p(rem.get_mpz_t(), static_cast<unsigned long>(p))) {
        record(big_u(p), detail::remove_factor_ui(rem, static_cast<unsigned long>(p)));
        if (stop) break;
      }
      tested_up_to = p;
    }
  }
  if (!stop && !remainder_is_prime && rem > 1) {
    const BigInt next = big_u(tested_up_to) + 1;
    if (rem < next * next) remainder_is_prime = true;
  }
  if (!stop && remainder_is_prime) {
    record(rem, 1);
    rem = 1;
  }

  if (!stop) {
    std::vector<BigInt> hinted;
    for (const auto& d : known_divisors) {
      if (d > 1 && is_prime(d) && mpz_divisible_p(rem.get_mpz_t(), d.get_mpz_t())) {
        hinted.push_back(d);
      }
    }
    std::sort(hinted.begin(), hinted.end());
    hinted.erase(std::unique(hinted.begin(), hinted.end()), hinted.end());
    for (const auto& p : hinted) {
      record(p, detail::remove_factor(rem, p));
      if (stop) break;
    }
  }

  while (!stop && rem > 1) {
    if (is_prime(rem)) {
      record(rem, 1);
      rem = 1;
      break;
    }
    std::vector<BigInt> found;
    detail::split_primes(rem, budget, found);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    bool progressed = false;
    for (const auto& p : found) {
      const unsigned e = detail::remove_factor(rem, p);
      if (e == 0) continue;
      progressed = true;
      record(p, e);
      if (stop) break;
    }
    if (!progressed) break;
  }

  std::sort(result.factors.begin(), result.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  result.cofactor = rem;
  result.complete = rem == 1;
  result.cofactor_probable_prime = rem > 1 && is_prime(rem);
  return result;
}

}  // namespace rta
