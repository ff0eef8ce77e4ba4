#pragma once

// Count polynomials over direction/sign symbols and their compilation into
// relation-annihilating formulas; the generator coefficient system, its exact
// integer solver and the product construction; even/odd decomposition of
// subdiagram-sum formulas; and the finite-type, virtualization, fan, and
// zero-index probes built on top of evaluation.

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "parity_gauss/core.hpp"
#include "parity_gauss/enumerate.hpp"
#include "parity_gauss/exact_linalg.hpp"
#include "parity_gauss/formal_sum.hpp"
#include "parity_gauss/parity.hpp"
#include "parity_gauss/quotient.hpp"

namespace parity_gauss {

// ---------------------------------------------------------------------------
// Count polynomials
// ---------------------------------------------------------------------------

// A polynomial in the direction/sign counting symbols.  On the line the
// exponent array is (a, b, c, d) for (left plus)^a (left minus)^b
// (right plus)^c (right minus)^d; an arrow points right when its tail sits
// left of its head.  On the loop only the sign matters and the exponents are
// (a, b, 0, 0) for (plus)^a (minus)^b.
struct CountPolynomial {
  Ambient ambient = Ambient::line;
  std::map<std::array<int, 4>, Int> terms;  // exponents -> coefficient, no zeros
};

inline void add_monomial(CountPolynomial& p, const std::array<int, 4>& expo,
                         const Int& coeff) {
  for (int e : expo)
    if (e < 0) throw domain_error("monomial exponents must be nonnegative");
  if (p.ambient == Ambient::loop && (expo[2] != 0 || expo[3] != 0))
    throw domain_error("loop monomials use only the two sign exponents");
  if (coeff == 0) return;
  auto [it, fresh] = p.terms.try_emplace(expo, coeff);
  if (fresh) return;
  it->second += coeff;
  if (it->second == 0) p.terms.erase(it);
}

namespace detail {

// Exponent profile of an all-ones diagram: on the line (left+, left-,
// right+, right-), on the loop (plus, minus, 0, 0).
inline std::array<int, 4> direction_sign_profile(const GaussDiagram& d) {
  std::array<int, 4> prof{0, 0, 0, 0};
  for (const Arrow& a : d.arrows) {
    if (d.ambient == Ambient::loop) {
      ++prof[a.sign > 0 ? 0 : 1];
    } else {
      const bool right = a.tail < a.head;
      ++prof[(right ? 2 : 0) + (a.sign > 0 ? 0 : 1)];
    }
  }
  return prof;
}

}  // namespace detail

// Expands each monomial into the full set of all-ones-marked diagrams whose
// direction/sign multiset matches its exponents, weighted by the monomial's
// coefficient.  Every monomial's total degree must fit the [k, n] window of
// the zero-killing quotient the result lives in.
inline Formula compile_count_polynomial(const CountPolynomial& p, int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw domain_error("the target quotient needs 1 <= k <= n");
  Formula f;
  f.quotient = QuotientKind::O;
  f.n = n;
  f.k = k;
  f.sum.ambient = p.ambient;
  for (const auto& [expo, coeff] : p.terms) {
    const int degree = expo[0] + expo[1] + expo[2] + expo[3];
    if (degree < k || degree > n)
      throw domain_error("monomial degree " + std::to_string(degree) +
                         " falls outside the quotient window [" +
                         std::to_string(k) + ", " + std::to_string(n) + "]");
    enumerate_diagrams(p.ambient, degree, true, [&](const GaussDiagram& d) {
      if (detail::direction_sign_profile(d) != expo) return;
      add_term(f.sum, canonical_key(with_marks(d, 1)), coeff);
    });
  }
  return f;
}

// ---------------------------------------------------------------------------
// Generator solutions
// ---------------------------------------------------------------------------

// One integer solution of the generator coefficient system for the degree
// n1 + n2 generator with n1 right and n2 left arrows.  The top-degree block
// (i+j = n1 and k+l = n2) always carries coefficient (-1)^{j+l} * c0 and is
// not stored; `coeff` holds every lower monomial w^i x^j y^k z^l (with
// w = right+, x = right-, y = left+, z = left-), absent entries being zero.
struct GeneratorSolution {
  int n1 = 0;
  int n2 = 0;
  Int c0 = 0;
  std::map<std::array<int, 4>, Int> coeff;
};

namespace detail {

// Coefficient of w^i x^j y^k z^l in the solution's polynomial.
inline Int generator_coefficient(const GeneratorSolution& s, int i, int j,
                                 int k, int l) {
  if (i + j == s.n1 && k + l == s.n2)
    return (j + l) % 2 == 0 ? s.c0 : -s.c0;
  auto it = s.coeff.find(std::array<int, 4>{i, j, k, l});
  return it == s.coeff.end() ? Int(0) : it->second;
}

}  // namespace detail

// Substitutes the solution into every equation of the generator system.
// An equation that would reference a negative index is dropped whole.
inline bool satisfies_generator_system(const GeneratorSolution& s) {
  const int n1 = s.n1, n2 = s.n2;
  const auto c = [&](int i, int j, int k, int l) {
    return detail::generator_coefficient(s, i, j, k, l);
  };
  const auto top = [&](int j, int l) { return (j + l) % 2 == 0 ? s.c0 : -s.c0; };
  // Top-degree pair relations in the right factor.
  for (int k = 0; k <= n2; ++k) {
    const int l = n2 - k;
    for (int j = 1; j <= n1 - 1; ++j)
      if (top(j, l) + c(n1 - 1 - j, j, k, l) + c(n1 - j, j - 1, k, l) != 0)
        return false;
  }
  // Top-degree pair relations in the left factor.
  for (int i = 0; i <= n1; ++i) {
    const int j = n1 - i;
    for (int l = 1; l <= n2 - 1; ++l)
      if (top(j, l) + c(i, j, n2 - 1 - l, l) + c(i, j, n2 - l, l - 1) != 0)
        return false;
  }
  // Interior pair relations in the right factor.
  for (int i = 1; i <= n1 - 2; ++i)
    for (int j = 1; i + j <= n1 - 1; ++j)
      for (int k = 0; k <= n2; ++k)
        for (int l = 0; k + l <= n2; ++l)
          if (c(i, j, k, l) + c(i - 1, j, k, l) + c(i, j - 1, k, l) != 0)
            return false;
  // Interior pair relations in the left factor.
  for (int k = 1; k <= n2 - 2; ++k)
    for (int l = 1; k + l <= n2 - 1; ++l)
      for (int i = 0; i <= n1; ++i)
        for (int j = 0; i + j <= n1; ++j)
          if (c(i, j, k, l) + c(i, j, k - 1, l) + c(i, j, k, l - 1) != 0)
            return false;
  // Overflow relations: one factor one past its top degree.
  if (n2 >= 1)
    for (int i = 1; i <= n1; ++i) {
      const int j = n1 + 1 - i;
      for (int k = 0; k <= n2 - 1; ++k)
        for (int l = 0; k + l <= n2 - 1; ++l)
          if (c(i - 1, j, k, l) + c(i, j - 1, k, l) != 0) return false;
    }
  if (n1 >= 1)
    for (int k = 1; k <= n2; ++k) {
      const int l = n2 + 1 - k;
      for (int i = 0; i <= n1 - 1; ++i)
        for (int j = 0; i + j <= n1 - 1; ++j)
          if (c(i, j, k - 1, l) + c(i, j, k, l - 1) != 0) return false;
    }
  return true;
}

// Coefficient-wise polynomial product of a pure right-factor solution with a
// pure left-factor solution.  The product is itself a generator solution,
// which is checked by substitution before returning.
inline GeneratorSolution product_formula(const GeneratorSolution& s1,
                                         const GeneratorSolution& s2) {
  if (s1.n2 != 0 || s2.n1 != 0)
    throw domain_error(
        "the product takes a pure right-factor and a pure left-factor solution");
  GeneratorSolution out;
  out.n1 = s1.n1;
  out.n2 = s2.n2;
  out.c0 = s1.c0 * s2.c0;
  std::map<std::pair<int, int>, Int> right, left;
  for (int i = 0; i <= s1.n1; ++i)
    for (int j = 0; i + j <= s1.n1; ++j) {
      Int v = detail::generator_coefficient(s1, i, j, 0, 0);
      if (v != 0) right[{i, j}] = v;
    }
  for (int k = 0; k <= s2.n2; ++k)
    for (int l = 0; k + l <= s2.n2; ++l) {
      Int v = detail::generator_coefficient(s2, 0, 0, k, l);
      if (v != 0) left[{k, l}] = v;
    }
  for (const auto& [ij, cv] : right)
    for (const auto& [kl, cw] : left) {
      const auto [i, j] = ij;
      const auto [k, l] = kl;
      const Int value = cv * cw;
      if (i + j == out.n1 && k + l == out.n2) {
        const Int expected = (j + l) % 2 == 0 ? out.c0 : -out.c0;
        if (value != expected)
          throw domain_error("internal error: product top block is malformed");
        continue;
      }
      if (value != 0) out.coeff[{i, j, k, l}] = value;
    }
  if (!satisfies_generator_system(out))
    throw domain_error("internal error: product violates the generator system");
  return out;
}

namespace detail {

// Solves the one-sided generator system of degree n exactly: the top and
// interior pair relations together with the (skew-)symmetry conditions and
// the pinned coefficients that make the textbook solution unique.  Returns
// c0 plus the below-top coefficients keyed by exponent pair.
inline std::pair<Int, std::map<std::pair<int, int>, Int>> solve_pure_generator(
    int n) {
  std::map<std::pair<int, int>, int> var;  // exponent pair -> column
  var[{-1, -1}] = 0;                       // column 0 holds c0
  for (int i = 0; i <= n - 1; ++i)
    for (int j = (i == 0 ? 1 : 0); i + j <= n - 1; ++j)
      var[{i, j}] = static_cast<int>(var.size());
  SparseIntMatrix m(static_cast<int>(var.size()));
  RationalVector b;
  const auto push = [&](SparseRow row, Rat rhs) {
    m.append_row(std::move(row));
    b.push_back(std::move(rhs));
  };
  const auto col = [&](int i, int j) { return var.at({i, j}); };
  if (n == 1) {
    push({{0, Int(1)}}, Rat(1));  // nothing else constrains c0
  } else {
    for (int i = 1; i <= n - 1; ++i)
      push({{0, Int(i % 2 == 0 ? 1 : -1)},
            {col(n - i - 1, i), Int(1)},
            {col(n - i, i - 1), Int(1)}},
           Rat(0));
    for (int i = 1; i <= n - 2; ++i)
      for (int j = 1; i + j <= n - 1; ++j)
        push({{col(i, j), Int(1)}, {col(i - 1, j), Int(1)}, {col(i, j - 1), Int(1)}},
             Rat(0));
    if (n % 2 == 0) {
      for (int i = 0; i <= n - 1; ++i)
        for (int j = i + 1; i + j <= n - 1; ++j)
          push({{col(i, j), Int(1)}, {col(j, i), Int(-1)}}, Rat(0));
      push({{col(n / 2 - 1, n / 2), Int(1)}}, Rat((n / 2 - 1) % 2 == 0 ? 1 : -1));
      for (int k = 1; k <= n / 2 - 1; ++k)
        push({{col(k, k - 1), Int(1)}}, Rat(1));
    } else {
      for (int i = 0; i <= n - 1; ++i)
        for (int j = i + 1; i + j <= n - 1; ++j)
          push({{col(i, j), Int(1)}, {col(j, i), Int(1)}}, Rat(0));
      for (int i = 1; 2 * i <= n - 1; ++i) push({{col(i, i), Int(1)}}, Rat(0));
      push({{col((n + 1) / 2, (n - 3) / 2), Int(1)}},
           Rat((n + 1) / 2 % 2 == 0 ? 1 : -1));
      for (int j = 2; j <= (n - 1) / 2; ++j)
        push({{col(j, j - 1), Int(1)}}, Rat(j % 2 == 1 ? 1 : -1));
      push({{col(1, 0), Int(1)}}, Rat(0));
    }
  }
  std::optional<RationalVector> sol = solve_particular(m, b);
  if (!sol)
    throw domain_error("internal error: the pinned generator system is infeasible");
  std::map<std::pair<int, int>, Int> out;
  Int c0;
  for (const auto& [ij, column] : var) {
    const Rat& v = (*sol)[column];
    if (denominator(v) != 1)
      throw domain_error("internal error: generator solution is not integral");
    if (ij.first < 0)
      c0 = numerator(v);
    else if (numerator(v) != 0)
      out[ij] = numerator(v);
  }
  if (c0 == 0)
    throw domain_error("internal error: generator solution has vanishing c0");
  return {c0, std::move(out)};
}

}  // namespace detail

// Integer solution of the generator system for the R^{n1} L^{n2} generator.
// Pure one-sided systems are solved directly with the pinned conventions;
// mixed systems are the product of their two pure factors.
inline GeneratorSolution solve_generator_system(int n1, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 < 1)
    throw domain_error("the generator system needs n1 + n2 >= 1");
  GeneratorSolution s;
  if (n1 > 0 && n2 > 0)
    s = product_formula(solve_generator_system(n1, 0), solve_generator_system(0, n2));
  else {
    const bool is_right = n1 > 0;
    auto [c0, coeffs] = detail::solve_pure_generator(is_right ? n1 : n2);
    s.n1 = n1;
    s.n2 = n2;
    s.c0 = std::move(c0);
    for (auto& [ij, v] : coeffs) {
      if (is_right)
        s.coeff[{ij.first, ij.second, 0, 0}] = std::move(v);
      else
        s.coeff[{0, 0, ij.first, ij.second}] = std::move(v);
    }
  }
  if (!satisfies_generator_system(s))
    throw domain_error("internal error: solver output violates the generator system");
  return s;
}

// The full counting polynomial of a solution, top block included.  A pure
// right solution can be reinterpreted on the loop, where the same pair
// relations apply to the two sign symbols.
inline CountPolynomial to_count_polynomial(const GeneratorSolution& s,
                                           Ambient ambient = Ambient::line) {
  if (ambient == Ambient::loop && s.n1 > 0 && s.n2 > 0)
    throw domain_error("a loop polynomial comes from a pure solution");
  CountPolynomial p;
  p.ambient = ambient;
  for (int i = 0; i <= s.n1; ++i)
    for (int j = 0; i + j <= s.n1; ++j)
      for (int k = 0; k <= s.n2; ++k)
        for (int l = 0; k + l <= s.n2; ++l) {
          if (i + j + k + l == 0) continue;
          Int v = detail::generator_coefficient(s, i, j, k, l);
          if (v == 0) continue;
          if (ambient == Ambient::loop)
            add_monomial(p, {i + k, j + l, 0, 0}, v);
          else
            add_monomial(p, {k, l, i, j}, v);
        }
  return p;
}

// ---------------------------------------------------------------------------
// Built-in formulas
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& builtin_formula_names() {
  static const std::vector<std::string> names = {
      "l",   "r",   "lr",  "ll",  "rr",  "lll", "rrr",
      "lrr", "rll", "n",   "nn",  "nnn", "v21", "v22"};
  return names;
}

namespace detail {

inline CountPolynomial make_polynomial(
    Ambient ambient,
    std::initializer_list<std::pair<std::array<int, 4>, int>> monomials) {
  CountPolynomial p;
  p.ambient = ambient;
  for (const auto& [e, c] : monomials) add_monomial(p, e, Int(c));
  return p;
}

// The two degree-2 unmarked-expansion formulas: a signed count over the two
// interleaved two-arrow patterns (heads outward for the first, inward for
// the second), each summed over both sign choices with weight sign1 * sign2.
inline Formula interleaved_pair_formula(bool heads_outward) {
  Formula f;
  f.quotient = QuotientKind::GPV;
  f.n = 2;
  f.k = 0;
  f.sum.ambient = Ambient::line;
  for (int s1 : {+1, -1})
    for (int s2 : {+1, -1}) {
      const char c1 = s1 > 0 ? '+' : '-';
      const char c2 = s2 > 0 ? '+' : '-';
      std::string code;
      if (heads_outward)
        code = std::string("U1") + c1 + " O2" + c2 + " O1" + c1 + " U2" + c2;
      else
        code = std::string("O1") + c1 + " U2" + c2 + " U1" + c1 + " O2" + c2;
      add_term(f.sum,
               canonical_key(parse_gauss_code_unmarked(code, Ambient::line)),
               Int(s1 * s2));
    }
  return f;
}

}  // namespace detail

// The published low-order formulas by name.  The line and loop families are
// compiled from their counting polynomials in the k = 1 zero-killing
// quotient; "v21"/"v22" are the order-2 unmarked-expansion formulas.  "rl"
// is accepted as an alias of "lr".
inline Formula builtin_formula(const std::string& name) {
  using detail::make_polynomial;
  const Ambient li = Ambient::line, lo = Ambient::loop;
  if (name == "l")
    return compile_count_polynomial(
        make_polynomial(li, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, -1}}), 1, 1);
  if (name == "r")
    return compile_count_polynomial(
        make_polynomial(li, {{{0, 0, 1, 0}, 1}, {{0, 0, 0, 1}, -1}}), 1, 1);
  if (name == "lr" || name == "rl")
    return compile_count_polynomial(
        make_polynomial(li, {{{1, 0, 1, 0}, 1},
                             {{1, 0, 0, 1}, -1},
                             {{0, 1, 1, 0}, -1},
                             {{0, 1, 0, 1}, 1}}),
        2, 1);
  if (name == "ll")
    return compile_count_polynomial(
        make_polynomial(li, {{{2, 0, 0, 0}, 2},
                             {{1, 1, 0, 0}, -2},
                             {{0, 2, 0, 0}, 2},
                             {{1, 0, 0, 0}, 1},
                             {{0, 1, 0, 0}, 1}}),
        2, 1);
  if (name == "rr")
    return compile_count_polynomial(
        make_polynomial(li, {{{0, 0, 2, 0}, 2},
                             {{0, 0, 1, 1}, -2},
                             {{0, 0, 0, 2}, 2},
                             {{0, 0, 1, 0}, 1},
                             {{0, 0, 0, 1}, 1}}),
        2, 1);
  if (name == "lll")
    return compile_count_polynomial(
        make_polynomial(li, {{{3, 0, 0, 0}, 1},
                             {{2, 1, 0, 0}, -1},
                             {{1, 2, 0, 0}, 1},
                             {{0, 3, 0, 0}, -1},
                             {{2, 0, 0, 0}, 1},
                             {{0, 2, 0, 0}, -1}}),
        3, 1);
  if (name == "rrr")
    return compile_count_polynomial(
        make_polynomial(li, {{{0, 0, 3, 0}, 1},
                             {{0, 0, 2, 1}, -1},
                             {{0, 0, 1, 2}, 1},
                             {{0, 0, 0, 3}, -1},
                             {{0, 0, 2, 0}, 1},
                             {{0, 0, 0, 2}, -1}}),
        3, 1);
  if (name == "lrr")
    return compile_count_polynomial(
        make_polynomial(li, {{{1, 0, 2, 0}, 2},
                             {{0, 1, 2, 0}, -2},
                             {{1, 0, 1, 1}, -2},
                             {{0, 1, 1, 1}, 2},
                             {{1, 0, 0, 2}, 2},
                             {{0, 1, 0, 2}, -2},
                             {{1, 0, 1, 0}, 1},
                             {{1, 0, 0, 1}, 1},
                             {{0, 1, 1, 0}, -1},
                             {{0, 1, 0, 1}, -1}}),
        3, 1);
  if (name == "rll")
    return compile_count_polynomial(
        make_polynomial(li, {{{2, 0, 1, 0}, 2},
                             {{2, 0, 0, 1}, -2},
                             {{1, 1, 1, 0}, -2},
                             {{1, 1, 0, 1}, 2},
                             {{0, 2, 1, 0}, 2},
                             {{0, 2, 0, 1}, -2},
                             {{1, 0, 1, 0}, 1},
                             {{0, 1, 1, 0}, 1},
                             {{1, 0, 0, 1}, -1},
                             {{0, 1, 0, 1}, -1}}),
        3, 1);
  if (name == "n")
    return compile_count_polynomial(
        make_polynomial(lo, {{{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, -1}}), 1, 1);
  if (name == "nn")
    return compile_count_polynomial(
        make_polynomial(lo, {{{2, 0, 0, 0}, 2},
                             {{1, 1, 0, 0}, -2},
                             {{0, 2, 0, 0}, 2},
                             {{1, 0, 0, 0}, 1},
                             {{0, 1, 0, 0}, 1}}),
        2, 1);
  if (name == "nnn")
    return compile_count_polynomial(
        make_polynomial(lo, {{{3, 0, 0, 0}, 1},
                             {{2, 1, 0, 0}, -1},
                             {{1, 2, 0, 0}, 1},
                             {{0, 3, 0, 0}, -1},
                             {{2, 0, 0, 0}, 1},
                             {{0, 2, 0, 0}, -1}}),
        3, 1);
  if (name == "v21") return detail::interleaved_pair_formula(true);
  if (name == "v22") return detail::interleaved_pair_formula(false);
  throw domain_error("unknown builtin formula '" + name + "'");
}

// Integer linear combination of formulas sharing one quotient signature.
inline Formula formula_combination(
    const std::vector<std::pair<Int, Formula>>& parts) {
  if (parts.empty()) throw domain_error("an empty combination has no signature");
  Formula out;
  out.quotient = parts.front().second.quotient;
  out.n = parts.front().second.n;
  out.k = parts.front().second.k;
  out.sum.ambient = parts.front().second.sum.ambient;
  for (const auto& [scale, f] : parts) {
    if (f.quotient != out.quotient || f.n != out.n || f.k != out.k ||
        f.sum.ambient != out.sum.ambient)
      throw domain_error("combined formulas must share one quotient signature");
    for (const auto& [key, coeff] : f.sum.terms)
      add_term(out.sum, key, scale * coeff);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Even/odd decomposition
// ---------------------------------------------------------------------------

namespace detail {

// Relation matrices are expensive; probes and decompositions reuse them.
inline const RelationMatrix& cached_relation_matrix(int n, int k, Ambient ambient,
                                                    QuotientKind q) {
  static std::map<std::tuple<int, int, int, int>, RelationMatrix> cache;
  static std::mutex mu;
  std::scoped_lock lock(mu);
  const auto key = std::make_tuple(n, k, static_cast<int>(ambient),
                                   static_cast<int>(q));
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, generate_relation_matrix(n, k, ambient, q)).first;
  return it->second;
}

// True when every row of the matrix pairs to zero against the formula and
// every supported diagram is a column of the matrix.
inline bool annihilates(const Formula& f, const RelationMatrix& rm) {
  std::map<std::string, const Int*> support;
  for (const auto& [key, coeff] : f.sum.terms) support[key] = &coeff;
  std::size_t seen = 0;
  for (const std::string& column : rm.columns)
    if (support.count(column)) ++seen;
  if (seen != support.size()) return false;
  for (const SparseRow& row : rm.matrix.rows) {
    Int acc = 0;
    for (const auto& [c, v] : row) {
      auto it = f.sum.terms.find(rm.columns[c]);
      if (it != f.sum.terms.end()) acc += v * it->second;
    }
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace detail

// Replaces every summand of a homogeneous order-n subdiagram-sum formula by
// its 2^n - 1 mark assignments with at least one odd arrow.  The result is
// checked against the full (n, n) zero-killing relation matrix.
inline Formula homogeneous_odd_part(const Formula& f) {
  if (f.quotient != QuotientKind::GPV)
    throw domain_error("the odd part takes an unmarked subdiagram-sum formula");
  Formula out;
  out.quotient = QuotientKind::O;
  out.n = f.n;
  out.k = f.n;
  out.sum.ambient = f.sum.ambient;
  for (const auto& [key, coeff] : f.sum.terms) {
    GaussDiagram d = parse_gauss_code_unmarked(key, f.sum.ambient);
    if (d.size() != f.n)
      throw domain_error("the odd part needs a homogeneous formula");
    for (unsigned mask = 1; mask < (1u << f.n); ++mask) {
      MarkedDiagram md{d, std::vector<std::uint8_t>(f.n, 0)};
      for (int i = 0; i < f.n; ++i) md.marks[i] = (mask >> i) & 1u;
      add_term(out.sum, canonical_key(md), coeff);
    }
  }
  if (f.n >= 1 && !out.sum.terms.empty() &&
      !detail::annihilates(out, detail::cached_relation_matrix(
                                    f.n, f.n, f.sum.ambient, QuotientKind::O)))
    throw domain_error("internal error: odd part misses a relation");
  return out;
}

// Marks every arrow of every summand 0 (the empty diagram maps to itself).
// The result is checked against the full all-even relation matrix.
inline Formula even_part(const Formula& f) {
  if (f.quotient != QuotientKind::GPV)
    throw domain_error("the even part takes an unmarked subdiagram-sum formula");
  Formula out;
  out.quotient = QuotientKind::E;
  out.n = f.n;
  out.k = 0;
  out.sum.ambient = f.sum.ambient;
  for (const auto& [key, coeff] : f.sum.terms) {
    GaussDiagram d = parse_gauss_code_unmarked(key, f.sum.ambient);
    add_term(out.sum, canonical_key(with_marks(d, 0)), coeff);
  }
  if (!out.sum.terms.empty() &&
      !detail::annihilates(out, detail::cached_relation_matrix(
                                    f.n, 0, f.sum.ambient, QuotientKind::E)))
    throw domain_error("internal error: even part misses a relation");
  return out;
}

// Whether the unmarked evaluation of a homogeneous formula splits into its
// odd and even parts evaluated through the given parity.
inline bool decomposition_check(const Formula& f, const ParityRule& rule,
                                const GaussDiagram& d) {
  const Formula odd = homogeneous_odd_part(f);
  const Formula even = even_part(f);
  return evaluate(f, rule, d) ==
         evaluate(odd, rule, d) + evaluate(even, rule, d);
}

// ---------------------------------------------------------------------------
// Probes
// ---------------------------------------------------------------------------

// Alternating sum of evaluations over all ways of switch-crossing a subset
// of the singular arrows: the combinatorial resolution of singular vertices.
inline Int kauffman_vanishing_probe(const Formula& f, const ParityRule& rule,
                                    const GaussDiagram& d,
                                    const std::vector<int>& singular) {
  for (int i : singular)
    if (i < 0 || i >= d.size())
      throw domain_error("singular arrow index out of range");
  if (singular.size() >= 8 * sizeof(unsigned long long))
    throw domain_error("too many singular arrows");
  Int acc = 0;
  for (unsigned long long mask = 0; mask < (1ull << singular.size()); ++mask) {
    GaussDiagram cur = d;
    int flips = 0;
    for (std::size_t t = 0; t < singular.size(); ++t)
      if ((mask >> t) & 1ull) {
        cur = switch_crossing(cur, singular[t]);
        ++flips;
      }
    const Int value = evaluate(f, rule, cur);
    acc += flips % 2 == 0 ? value : -value;
  }
  return acc;
}

// Whether the evaluation survives reversing the listed arrows' directions.
inline bool virtualization_check(const Formula& f, const ParityRule& rule,
                                 const GaussDiagram& d,
                                 const std::vector<int>& flips) {
  GaussDiagram cur = d;
  for (int i : flips) {
    if (i < 0 || i >= d.size())
      throw domain_error("flip arrow index out of range");
    cur = virtualize_arrow(cur, i);
  }
  return evaluate(f, rule, d) == evaluate(f, rule, cur);
}

// The fan diagram: k pairwise-linked right-pointing plus arrows.
inline GaussDiagram linked_fan(int k) {
  if (k < 1) throw domain_error("the fan needs at least one arrow");
  std::string code;
  for (int i = 1; i <= k; ++i) code += "O" + std::to_string(i) + "+ ";
  for (int i = 1; i <= k; ++i) {
    code += "U" + std::to_string(i) + "+";
    if (i < k) code += " ";
  }
  return parse_gauss_code_unmarked(code, Ambient::line);
}

// Degree-2 right-pair formula evaluated on the fan family under the degree
// parity: zero on odd fans, growing without bound on even fans.
inline Int linked_fan_evaluation(int k) {
  return evaluate(builtin_formula("rr"), gaussian_parity(), linked_fan(k));
}

// ---------------------------------------------------------------------------
// Zero-index checks
// ---------------------------------------------------------------------------

struct ZeroIndexReport {
  long long diagrams_checked = 0;
  std::vector<std::string> violations;  // empty when every check passed
};

// Over every line diagram with at most `bound` arrows whose arrows all have
// index zero: the two interleaved-pair formulas agree, and both are constant
// along the full rotation orbit of the diagram.
inline ZeroIndexReport zero_index_invariant_checks(int bound) {
  if (bound < 1) throw domain_error("the bound must be at least one arrow");
  const Formula out_pairs = builtin_formula("v21");
  const Formula in_pairs = builtin_formula("v22");
  const ParityRule rule = gaussian_parity();
  ZeroIndexReport rep;
  enumerate_diagrams_up_to(Ambient::line, bound, true, [&](const GaussDiagram& d) {
    if (!zero_index_check(d)) return;
    ++rep.diagrams_checked;
    const std::string key = canonical_key(d);
    const Int a = evaluate(out_pairs, rule, d);
    const Int b = evaluate(in_pairs, rule, d);
    if (a != b)
      rep.violations.push_back("pair formulas disagree on " + key + ": " +
                               a.str() + " vs " + b.str());
    for (int zeta = 1; zeta < 2 * d.size(); ++zeta) {
      const GaussDiagram rotated = rotation_act(d, zeta);
      if (evaluate(out_pairs, rule, rotated) != a ||
          evaluate(in_pairs, rule, rotated) != b) {
        rep.violations.push_back("rotation by " + std::to_string(zeta) +
                                 " changes a value on " + key);
        break;
      }
    }
  });
  return rep;
}

}  // namespace parity_gauss
