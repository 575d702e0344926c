#pragma once

// Solutions of x^2 - d*y^2 = 1 for the Heegner numbers d > 1, and the
// companion sequence of 2*A^2 - B^2 = 1.

#include "rta/arith.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rta {

struct HeegnerParams {
  int d = 0;
  BigInt x1;  // fundamental solution
  BigInt y1;
  int norm_c = 0;  // w^2 + 2t^2 (d = 2) or w^2 + wt + c*t^2
  long bin_a = 0;  // y_{2l+1} = prefactor * (a*x + b*y) * (b*x + a*d*y)
  long bin_b = 0;
  int prefactor = 1;
};

inline constexpr std::array<int, 8> kHeegnerNumbers = {2, 3, 7, 11, 19, 43, 67, 163};

inline bool is_heegner(int d) {
  for (int h : kHeegnerNumbers) {
    if (h == d) return true;
  }
  return false;
}

inline const HeegnerParams& params(int d) {
  static const std::array<HeegnerParams, 8> table = {{
      {2, BigInt(3), BigInt(2), 2, 1, 1, 2},
      {3, BigInt(2), BigInt(1), 1, 1, 1, 1},
      {7, BigInt(8), BigInt(3), 2, 1, 3, 1},
      {11, BigInt(10), BigInt(3), 3, 1, 3, 1},
      {19, BigInt(170), BigInt(39), 5, 3, 13, 1},
      {43, BigInt(3482), BigInt(531), 11, 9, 59, 1},
      {67, BigInt(48842), BigInt(5967), 17, 27, 221, 1},
      {163, BigInt(64080026), BigInt(5019135), 41, 627, 8005, 1},
  }};
  for (const auto& row : table) {
    if (row.d == d) return row;
  }
  throw domain_error("not a Heegner number > 1: " + std::to_string(d));
}

struct PellPair {
  int d = 0;
  std::uint64_t k = 0;
  BigInt x{1};
  BigInt y{0};

  bool satisfies_equation() const { return x * x - d * y * y == 1; }

  friend bool operator==(const PellPair&, const PellPair&) = default;
};

inline PellPair pell_identity(int d) {
  (void)params(d);
  return {d, 0, BigInt(1), BigInt(0)};
}

inline PellPair pell_fundamental(int d) {
  const auto& p = params(d);
  return {d, 1, p.x1, p.y1};
}

/// Three-term recurrence: (x, y)_{k+1} = 2*x1*(x, y)_k - (x, y)_{k-1}.
inline PellPair pell_next(const PellPair& current, const PellPair& previous) {
  if (current.d != previous.d) throw domain_error("pell_next: mismatched d");
  if (previous.k + 1 != current.k) throw domain_error("pell_next: indices are not consecutive");
  const BigInt twice_x1 = 2 * params(current.d).x1;
  return {current.d, current.k + 1, twice_x1 * current.x - previous.x,
          twice_x1 * current.y - previous.y};
}

/// (x_l, y_l) -> (x_{2l}, y_{2l}).
inline PellPair pell_double(const PellPair& p) {
  return {p.d, 2 * p.k, p.x * p.x + p.d * p.y * p.y, 2 * p.x * p.y};
}

/// (x_m, y_m), (x_n, y_n) -> (x_{m+n}, y_{m+n}).
inline PellPair pell_compose(const PellPair& p, const PellPair& q) {
  if (p.d != q.d) throw domain_error("pell_compose: mismatched d");
  return {p.d, p.k + q.k, p.x * q.x + p.d * p.y * q.y, p.x * q.y + q.x * p.y};
}

/// k-th solution by binary decomposition of k.
inline PellPair pell_nth(int d, std::uint64_t k) {
  PellPair acc = pell_identity(d);
  const PellPair base = pell_fundamental(d);
  for (int bit = 63; bit >= 0; --bit) {
    acc = pell_double(acc);
    if ((k >> bit) & 1U) acc = pell_compose(acc, base);
  }
  return acc;
}

/// Solutions 0..k_max by the recurrence.
inline std::vector<PellPair> pell_sequence(int d, std::uint64_t k_max) {
  std::vector<PellPair> out;
  out.reserve(k_max + 1);
  out.push_back(pell_identity(d));
  if (k_max >= 1) out.push_back(pell_fundamental(d));
  for (std::uint64_t k = 2; k <= k_max; ++k) {
    out.push_back(pell_next(out[k - 1], out[k - 2]));
  }
  return out;
}

struct OddIndexSplit {
  BigInt v;       // a*x_l + b*y_l
  BigInt w;       // b*x_l + a*d*y_l
  BigInt y_next;  // y_{2l+1} = prefactor * v * w
};

inline OddIndexSplit odd_index_split(const PellPair& pair) {
  const auto& hp = params(pair.d);
  OddIndexSplit s;
  s.v = hp.bin_a * pair.x + hp.bin_b * pair.y;
  s.w = hp.bin_b * pair.x + hp.bin_a * pair.d * pair.y;
  s.y_next = hp.prefactor * s.v * s.w;
  return s;
}

inline OddIndexSplit odd_index_split(int d, std::uint64_t ell) {
  return odd_index_split(pell_nth(d, ell));
}

inline constexpr unsigned kDefaultPowerOfTwoCap = 20;

/// y_{2^m * h} = 2^m * x_h * y_h * prod_{0<i<m} x_{2^i h}, h odd, m >= 1.
inline BigInt power_of_two_index(int d, unsigned m, std::uint64_t h,
                                 unsigned m_cap = kDefaultPowerOfTwoCap) {
  if (m < 1) throw domain_error("power_of_two_index: m must be >= 1");
  if (m > m_cap) throw domain_error("power_of_two_index: m exceeds the configured cap");
  if (h % 2 == 0) throw domain_error("power_of_two_index: h must be odd");
  PellPair p = pell_nth(d, h);
  BigInt acc = pow2(m) * p.x * p.y;
  for (unsigned i = 1; i < m; ++i) {
    p = pell_double(p);
    acc *= p.x;
  }
  return acc;
}

struct NPellPair {
  std::uint64_t n = 0;
  BigInt A{1};
  BigInt B{1};

  bool satisfies_equation() const { return 2 * A * A - B * B == 1; }

  friend bool operator==(const NPellPair&, const NPellPair&) = default;
};

/// A_0 = B_0 = 1, A_{n+1} = 3A_n + 2B_n, B_{n+1} = 4A_n + 3B_n.
inline std::vector<NPellPair> npell_iter(std::uint64_t n_max) {
  std::vector<NPellPair> out;
  out.reserve(n_max + 1);
  out.push_back({0, BigInt(1), BigInt(1)});
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto& prev = out.back();
    out.push_back({n, 3 * prev.A + 2 * prev.B, 4 * prev.A + 3 * prev.B});
  }
  return out;
}

/// Direct route: B_n + A_n*sqrt2 = (1 + sqrt2)(x_n + y_n*sqrt2) with (x_n, y_n)
/// the d = 2 Pell pair, i.e. A_n = x_n + y_n and B_n = x_n + 2*y_n.
inline NPellPair npell_nth(std::uint64_t n) {
  const PellPair p = pell_nth(2, n);
  return {n, p.x + p.y, p.x + 2 * p.y};
}

}  // namespace rta
