#pragma once

// The six candidate quaternary quartics
//
//   d=2:  2(r^2+2s^2)^2 - (u^2+2v^2)^2            =  1
//   d=3:  3(r^2+3s^2)^2 - (u^2+3v^2)^2            =  2
//   d=7:  7(r^2+7s^2)^2 - 3^2(u^2+7v^2)^2         = -2
//   d=11: 11(r^2+rs+3s^2)^2 - (u^2+uv+3v^2)^2     =  2
//   d=19: 19*3^2(r^2+rs+5s^2)^2 - 13^2(u^2+uv+5v^2)^2 = 2
//   d=43: 43(r^2+rs+11s^2)^2 - (u^2+uv+11v^2)^2   =  2
//
// and the maps between their solutions and Pell pairs. For odd d, with
// (a, b) the odd-index split coefficients, X = x_l and Y = y_l / (a*b):
//
//   F1 = X + b^2 Y,   F2 = X + d a^2 Y,
//   d a^2 F1^2 - b^2 F2^2 = (d a^2 - b^2)(X^2 - d (ab)^2 Y^2) = d a^2 - b^2.
//
// The d=11 and d=43 equations fold constant factors into the inner forms
// (F1' = fold_left*F1, F2' = fold_right*F2); the tuple components are
// always witnesses of the folded inner form values.

#include "rta/normform.hpp"
#include "rta/pell.hpp"

#include <array>
#include <optional>
#include <string>

namespace rta {

struct QuarticSpec {
  int d = 0;
  long left_coeff = 0;   // as written in the equation
  long right_coeff = 0;  // as written in the equation
  long constant = 0;
  FormVariant left_form;
  FormVariant right_form;
  long fold_left = 1;  // folded F1' = fold_left * F1
  long fold_right = 1;
  Witness fold_left_witness{BigInt(1), BigInt(0)};
  Witness fold_right_witness{BigInt(1), BigInt(0)};

  /// Unfolded coefficients d*a^2 and b^2 (d = 2: the written ones).
  long unfolded_left() const { return left_coeff * fold_left * fold_left; }
  long unfolded_right() const { return right_coeff * fold_right * fold_right; }
};

inline constexpr std::array<int, 6> kQuarticDs = {2, 3, 7, 11, 19, 43};

inline const QuarticSpec& quartic_spec(int d) {
  auto make = [](int d, long l, long r, long c, FormKind k, long fl, Witness wl, long fr,
                 Witness wr) {
    QuarticSpec s;
    s.d = d;
    s.left_coeff = l;
    s.right_coeff = r;
    s.constant = c;
    s.left_form = {k, d};
    s.right_form = {k, d};
    s.fold_left = fl;
    s.fold_left_witness = std::move(wl);
    s.fold_right = fr;
    s.fold_right_witness = std::move(wr);
    return s;
  };
  const Witness one{BigInt(1), BigInt(0)};
  static const std::array<QuarticSpec, 6> table = {
      make(2, 2, 1, 1, FormKind::Pure, 1, one, 1, one),
      make(3, 3, 1, 2, FormKind::Pure, 1, one, 1, one),
      make(7, 7, 9, -2, FormKind::Pure, 1, one, 1, one),
      make(11, 11, 1, 2, FormKind::Norm, 1, one, 3, {BigInt(0), BigInt(1)}),
      make(19, 171, 169, 2, FormKind::Norm, 1, one, 1, one),
      make(43, 43, 1, 2, FormKind::Norm, 9, {BigInt(3), BigInt(0)}, 59, {BigInt(3), BigInt(2)}),
  };
  for (const auto& s : table) {
    if (s.d == d) return s;
  }
  throw domain_error("no quartic equation for d = " + std::to_string(d));
}

struct QuarticTuple {
  BigInt r, s, u, v;

  friend bool operator==(const QuarticTuple&, const QuarticTuple&) = default;
};

inline BigInt left_inner(const QuarticSpec& spec, const QuarticTuple& t) {
  return spec.left_form.evaluate(t.r, t.s);
}
inline BigInt right_inner(const QuarticSpec& spec, const QuarticTuple& t) {
  return spec.right_form.evaluate(t.u, t.v);
}

inline BigInt evaluate(const QuarticSpec& spec, const QuarticTuple& t) {
  const BigInt f1 = left_inner(spec, t);
  const BigInt f2 = right_inner(spec, t);
  return spec.left_coeff * f1 * f1 - spec.right_coeff * f2 * f2;
}

inline bool is_solution(const QuarticSpec& spec, const QuarticTuple& t) {
  return evaluate(spec, t) == spec.constant;
}

/// Negation of "r = +-1 and s = 0".
inline bool is_nontrivial(const QuarticTuple& t) {
  return !((t.r == 1 || t.r == -1) && sgn(t.s) == 0);
}

/// Builds a quartic solution from the Pell pair at index ell and witnesses
/// of the two linear forms. Each witness may represent either the folded
/// (folded) value or the unfolded one; unfolded witnesses are composed with
/// the fold-factor witness.
inline QuarticTuple solution_from_pell(int d, std::uint64_t ell, const Witness& wit1,
                                       const Witness& wit2) {
  const QuarticSpec& spec = quartic_spec(d);
  if (d % 2 == 0) throw domain_error("solution_from_pell: d must be odd");
  const auto& hp = params(d);
  const PellPair p = pell_nth(d, ell);
  if (p.y % hp.y1 != 0) throw verification_error("y1 does not divide y_ell");
  const BigInt X = p.x;
  const BigInt Y = p.y / hp.y1;
  const BigInt f1 = X + hp.bin_b * hp.bin_b * Y;
  const BigInt f2 = X + d * hp.bin_a * hp.bin_a * Y;

  auto fold = [&](const FormVariant& form, const Witness& wit, const BigInt& unfolded,
                  long factor, const Witness& factor_wit, const char* which) {
    const BigInt value = form.evaluate(wit);
    if (value == factor * unfolded) return wit;
    if (factor != 1 && value == unfolded) return compose_witnesses(d, wit, factor_wit);
    throw verification_error(std::string(which) + " witness evaluates to " + to_decimal(value) +
                             ", expected " + to_decimal(factor * unfolded));
  };
  const Witness w1 = fold(spec.left_form, wit1, f1, spec.fold_left, spec.fold_left_witness, "first");
  const Witness w2 =
      fold(spec.right_form, wit2, f2, spec.fold_right, spec.fold_right_witness, "second");

  QuarticTuple tuple{w1.w, w1.t, w2.w, w2.t};
  if (!is_solution(spec, tuple)) throw verification_error("constructed tuple is not a solution");
  if (hp.y1 * f1 * f2 != odd_index_split(p).y_next) {
    throw verification_error("y1*F1*F2 != y_{2l+1}");
  }
  return tuple;
}

/// d = 2 analogue: witnesses of A_n and B_n in w^2 + 2t^2.
inline QuarticTuple solution_from_npell(std::uint64_t n, const Witness& wit_a, const Witness& wit_b) {
  const QuarticSpec& spec = quartic_spec(2);
  const NPellPair np = npell_nth(n);
  if (spec.left_form.evaluate(wit_a) != np.A) throw verification_error("witness does not represent A_n");
  if (spec.right_form.evaluate(wit_b) != np.B) throw verification_error("witness does not represent B_n");
  return {wit_a.w, wit_a.t, wit_b.w, wit_b.t};
}

struct PellSystemSolution {
  bool companion = false;  // d = 2: X = A, Y = B with 2A^2 - B^2 = 1
  BigInt X;
  BigInt Y;
  BigInt form1_value;  // unfolded F1 (d = 2: A)
  BigInt form2_value;  // unfolded F2 (d = 2: B)
  bool positive = true;
  std::string diagnostic;
};

/// Inverse map: solves X + b^2 Y = F1, X + d a^2 Y = F2 for odd d, and
/// returns (A, B) = (F1, F2) for d = 2.
inline PellSystemSolution pell_from_solution(const QuarticSpec& spec, const QuarticTuple& t) {
  if (!is_solution(spec, t)) throw verification_error("pell_from_solution: not a solution");
  PellSystemSolution out;
  BigInt f1 = left_inner(spec, t);
  BigInt f2 = right_inner(spec, t);
  if (spec.d == 2) {
    out.companion = true;
    out.X = f1;
    out.Y = f2;
    out.form1_value = f1;
    out.form2_value = f2;
    if (2 * f1 * f1 - f2 * f2 != 1) throw verification_error("2A^2 - B^2 != 1");
    return out;
  }
  if (f1 % spec.fold_left != 0 || f2 % spec.fold_right != 0) {
    throw verification_error("inner form values are not divisible by the fold factors");
  }
  f1 /= spec.fold_left;
  f2 /= spec.fold_right;
  const long L = spec.unfolded_left();
  const long R = spec.unfolded_right();
  const long C = L - R;
  const BigInt x_num = L * f1 - R * f2;
  const BigInt y_num = f2 - f1;
  if (x_num % C != 0 || y_num % C != 0) {
    throw verification_error("parity failure: inner forms of different parity");
  }
  out.X = x_num / C;
  out.Y = y_num / C;
  out.form1_value = f1;
  out.form2_value = f2;
  const BigInt y1 = params(spec.d).y1;
  if (out.X * out.X - spec.d * y1 * y1 * out.Y * out.Y != 1) {
    throw verification_error("X^2 - d*y1^2*Y^2 != 1");
  }
  if (is_nontrivial(t) && (sgn(out.X) <= 0 || sgn(out.Y) <= 0)) {
    out.positive = false;
    out.diagnostic = "non-trivial solution with non-positive X or Y";
  }
  return out;
}

/// Index k with (x_k, y_k) = (X, Y) for x^2 - d y^2 = 1, if any.
inline std::optional<std::uint64_t> pell_index_of(int d, const BigInt& X, const BigInt& Y) {
  if (sgn(X) <= 0 || sgn(Y) < 0) return std::nullopt;
  PellPair prev = pell_identity(d);
  if (prev.x == X && prev.y == Y) return 0;
  PellPair cur = pell_fundamental(d);
  while (cur.y <= Y) {
    if (cur.x == X && cur.y == Y) return cur.k;
    PellPair next = pell_next(cur, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return std::nullopt;
}

/// Index n with (A_n, B_n) = (A, B), if any.
inline std::optional<std::uint64_t> npell_index_of(const BigInt& A, const BigInt& B) {
  BigInt a = 1, b = 1;
  for (std::uint64_t n = 0; a <= A; ++n) {
    if (a == A && b == B) return n;
    BigInt na = 3 * a + 2 * b;
    b = 4 * a + 3 * b;
    a = std::move(na);
  }
  return std::nullopt;
}

}  // namespace rta
