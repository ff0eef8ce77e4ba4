#pragma once

// Exact sparse linear algebra over the integers and rationals: kernel bases,
// rank, and particular solutions.  No floating point anywhere; elimination
// is fraction-free on primitive integer rows, and the huge two-term rows the
// relation matrices produce are folded away first by a signed union-find.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parity_gauss/core.hpp"

namespace parity_gauss {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;
using RationalVector = std::vector<Rat>;

using SparseRow = std::vector<std::pair<int, Int>>;  // (column, entry)

namespace detail {

// Sort by column, merge duplicates, drop zeros.
inline SparseRow normalize_entries(SparseRow row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  for (auto& [c, v] : row) {
    if (!out.empty() && out.back().first == c)
      out.back().second += v;
    else
      out.push_back({c, std::move(v)});
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& e) { return e.second == 0; }),
            out.end());
  return out;
}

inline Int entries_content(const SparseRow& row) {
  Int g = 0;
  for (const auto& [c, v] : row) g = boost::multiprecision::gcd(g, v);
  return g < 0 ? Int(-g) : g;
}

}  // namespace detail

struct SparseIntMatrix {
  int cols = 0;
  std::vector<SparseRow> rows;

  SparseIntMatrix() = default;
  explicit SparseIntMatrix(int columns) : cols(columns) {}

  int row_count() const { return static_cast<int>(rows.size()); }

  void append_row(SparseRow entries) {
    SparseRow r = detail::normalize_entries(std::move(entries));
    for (const auto& [c, v] : r)
      if (c < 0 || c >= cols) throw domain_error("matrix entry column out of range");
    rows.push_back(std::move(r));
  }
};

// Triplet text dump (1-based indices): header "rows cols nnz", then one
// "row col value" line per entry in row-major order.
inline std::string triplet_dump(const SparseIntMatrix& m) {
  std::size_t nnz = 0;
  for (const auto& r : m.rows) nnz += r.size();
  std::ostringstream os;
  os << m.row_count() << ' ' << m.cols << ' ' << nnz << '\n';
  for (int i = 0; i < m.row_count(); ++i)
    for (const auto& [c, v] : m.rows[i]) os << i + 1 << ' ' << c + 1 << ' ' << v << '\n';
  return os.str();
}

namespace detail {

// Signed union-find:每 column is ±(its class representative) or forced to
// zero outright.  Consumes the one-term rows and the two-term rows with unit
// entries that dominate relation matrices, leaving a much smaller system.
struct SignedClasses {
  std::vector<int> parent;
  std::vector<int> sign;  // value = sign * value(parent)
  std::vector<char> zero; // valid at roots: whole class forced to 0

  explicit SignedClasses(int n) : parent(n), sign(n, 1), zero(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  std::pair<int, int> find(int x) {
    int r = x, s_total = 1;
    while (parent[r] != r) {
      s_total *= sign[r];
      r = parent[r];
    }
    // Second pass: point everything at the root with its cumulative sign.
    int cur = x, prod = 1;  // invariant: v_x = prod * v_cur
    while (cur != r) {
      int next = parent[cur];
      int step = sign[cur];
      parent[cur] = r;
      sign[cur] = s_total * prod;  // v_cur = prod * v_x = prod * s_total * v_r
      prod *= step;
      cur = next;
    }
    return {r, s_total};
  }

  bool is_zero(int x) {
    auto [r, s] = find(x);
    (void)s;
    return zero[r] != 0;
  }

  void force_zero(int x) { zero[find(x).first] = 1; }

  // Impose v_a = rel * v_b; a contradiction zeroes the merged class.
  void unite(int a, int b, int rel) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra == rb) {
      if (sa != rel * sb) zero[ra] = 1;
      return;
    }
    // v_ra = (sa_inv...) derive: v_a = sa v_ra, v_b = sb v_rb, v_a = rel v_b
    // => v_ra = sa * rel * sb * v_rb  (signs are self-inverse).
    parent[ra] = rb;
    sign[ra] = sa * rel * sb;
    zero[rb] = static_cast<char>(zero[rb] | zero[ra]);
  }
};

struct PreprocessResult {
  SignedClasses classes;
  std::vector<SparseRow> residual_rows;  // rewritten over class representatives
  std::vector<int> live_roots;           // ascending original column index
  std::vector<int> root_slot;            // original column -> dense slot or -1
};

inline SparseRow rewrite_row(const SparseRow& row, SignedClasses& cls) {
  SparseRow mapped;
  for (const auto& [c, v] : row) {
    auto [r, s] = cls.find(c);
    if (cls.zero[r]) continue;
    mapped.push_back({r, v * s});
  }
  return normalize_entries(std::move(mapped));
}

inline PreprocessResult preprocess(const SparseIntMatrix& m) {
  PreprocessResult res{SignedClasses(m.cols), {}, {}, {}};
  std::vector<SparseRow> pending = m.rows;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<SparseRow> keep;
    for (SparseRow& row : pending) {
      SparseRow r = rewrite_row(row, res.classes);
      if (r.empty()) continue;
      if (r.size() == 1) {
        res.classes.force_zero(r[0].first);
        changed = true;
        continue;
      }
      Int a0 = r[0].second < 0 ? Int(-r[0].second) : r[0].second;
      Int a1 = r[1].second < 0 ? Int(-r[1].second) : r[1].second;
      if (r.size() == 2 && a0 == 1 && a1 == 1) {
        // v_x + v_y = 0 (up to signs): glue the classes.
        int rel = (r[0].second > 0) == (r[1].second > 0) ? -1 : 1;
        res.classes.unite(r[0].first, r[1].first, rel);
        changed = true;
        continue;
      }
      keep.push_back(std::move(r));
    }
    pending.swap(keep);
  }
  res.root_slot.assign(m.cols, -1);
  for (int c = 0; c < m.cols; ++c) {
    auto [r, s] = res.classes.find(c);
    (void)s;
    if (r == c && !res.classes.zero[r]) {
      res.root_slot[c] = static_cast<int>(res.live_roots.size());
      res.live_roots.push_back(c);
    }
  }
  for (SparseRow& row : pending) {
    SparseRow r = rewrite_row(row, res.classes);  // final rewrite
    if (r.empty()) continue;
    for (auto& [c, v] : r) c = res.root_slot[c];
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    res.residual_rows.push_back(std::move(r));
  }
  return res;
}

// Fraction-free elimination with Markowitz pivoting: smallest
// (row fill - 1) * (column fill - 1), ties to the lowest column then row.
// Rows stay primitive; the optional rational tail carries a right-hand side.
struct ElimRow {
  SparseRow e;
  Rat b;
  bool active = true;
};

struct PivotRecord {
  int col = -1;
  SparseRow e;
  Rat b;
};

struct ElimOutcome {
  std::vector<PivotRecord> pivots;
  bool infeasible = false;
};

inline void scale_primitive(ElimRow& r) {
  Int g = entries_content(r.e);
  if (g > 1) {
    for (auto& [c, v] : r.e) v /= g;
    r.b /= Rat(g);
  }
}

inline ElimOutcome eliminate(std::vector<ElimRow> rows, int cols) {
  ElimOutcome out;
  std::vector<std::set<int>> col_rows(cols);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    scale_primitive(rows[i]);
    if (rows[i].e.empty()) {
      if (rows[i].b != 0) out.infeasible = true;
      rows[i].active = false;
      continue;
    }
    for (const auto& [c, v] : rows[i].e) col_rows[c].insert(i);
  }
  std::vector<int> row_nnz(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    row_nnz[i] = static_cast<int>(rows[i].e.size());

  while (true) {
    long long best_fill = -1;
    int best_col = -1, best_row = -1;
    for (int c = 0; c < cols; ++c) {
      if (col_rows[c].empty()) continue;
      const long long col_deg = static_cast<long long>(col_rows[c].size());
      for (int r : col_rows[c]) {
        long long fill = (static_cast<long long>(row_nnz[r]) - 1) * (col_deg - 1);
        if (best_fill < 0 || fill < best_fill ||
            (fill == best_fill && (c < best_col || (c == best_col && r < best_row)))) {
          best_fill = fill;
          best_col = c;
          best_row = r;
        }
      }
    }
    if (best_col < 0) break;

    ElimRow& piv = rows[best_row];
    Int pval = 0;
    for (const auto& [c, v] : piv.e)
      if (c == best_col) pval = v;
    out.pivots.push_back({best_col, piv.e, piv.b});
    // Retire the pivot row.
    for (const auto& [c, v] : piv.e) col_rows[c].erase(best_row);
    piv.active = false;

    std::vector<int> touched(col_rows[best_col].begin(), col_rows[best_col].end());
    for (int ri : touched) {
      ElimRow& tgt = rows[ri];
      Int tval = 0;
      for (const auto& [c, v] : tgt.e)
        if (c == best_col) tval = v;
      Int g = boost::multiprecision::gcd(pval, tval);
      if (g < 0) g = -g;
      Int mp = pval / g, mt = tval / g;
      // tgt' = mp * tgt - mt * piv  kills the pivot column exactly.
      SparseRow merged;
      merged.reserve(tgt.e.size() + piv.e.size());
      for (auto& [c, v] : tgt.e) merged.push_back({c, v * mp});
      for (const auto& [c, v] : piv.e) merged.push_back({c, v * -mt});
      for (const auto& [c, v] : tgt.e) col_rows[c].erase(ri);
      tgt.e = normalize_entries(std::move(merged));
      tgt.b = tgt.b * Rat(mp) - piv.b * Rat(mt);
      scale_primitive(tgt);
      if (tgt.e.empty()) {
        if (tgt.b != 0) out.infeasible = true;
        tgt.active = false;
        row_nnz[ri] = 0;
        continue;
      }
      for (const auto& [c, v] : tgt.e) col_rows[c].insert(ri);
      row_nnz[ri] = static_cast<int>(tgt.e.size());
    }
  }
  return out;
}

// Make an integer vector primitive with its first nonzero entry positive.
inline void normalize_int_vector(IntVector& v) {
  Int g = 0;
  for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
  if (g < 0) g = -g;
  if (g > 1)
    for (Int& x : v) x /= g;
  for (const Int& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    break;
  }
}

}  // namespace detail

inline int rank(const SparseIntMatrix& m) {
  detail::PreprocessResult pre = detail::preprocess(m);
  std::vector<detail::ElimRow> work;
  for (auto& r : pre.residual_rows) work.push_back({r, Rat(0), true});
  detail::ElimOutcome elim =
      detail::eliminate(std::move(work), static_cast<int>(pre.live_roots.size()));
  // Unions and zero-forcings each consumed one independent relation.
  int kernel_dim = static_cast<int>(pre.live_roots.size() - elim.pivots.size());
  return m.cols - kernel_dim;
}

// Basis of {v : Mv = 0}: primitive integer vectors with positive leading
// entry, sorted lexicographically — canonical for golden tests.
inline std::vector<IntVector> kernel_basis(const SparseIntMatrix& m) {
  detail::PreprocessResult pre = detail::preprocess(m);
  const int live = static_cast<int>(pre.live_roots.size());
  std::vector<detail::ElimRow> work;
  for (auto& r : pre.residual_rows) work.push_back({r, Rat(0), true});
  detail::ElimOutcome elim = detail::eliminate(std::move(work), live);

  std::vector<char> pivoted(live, 0);
  for (const auto& p : elim.pivots) pivoted[p.col] = 1;
  std::vector<int> free_slots;
  for (int s = 0; s < live; ++s)
    if (!pivoted[s]) free_slots.push_back(s);

  std::vector<IntVector> basis;
  for (int f : free_slots) {
    RationalVector w(live, Rat(0));
    w[f] = 1;
    // Later pivots never touch earlier pivot columns, so reverse order
    // resolves every dependency.
    for (auto it = elim.pivots.rbegin(); it != elim.pivots.rend(); ++it) {
      Rat acc(0);
      Rat pval(0);
      for (const auto& [c, v] : it->e) {
        if (c == it->col)
          pval = Rat(v);
        else
          acc += Rat(v) * w[c];
      }
      w[it->col] = -acc / pval;
    }
    // Expand classes back to original columns and clear denominators.
    Int lcm_den = 1;
    for (const Rat& x : w)
      lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(x));
    IntVector v(m.cols, Int(0));
    for (int c = 0; c < m.cols; ++c) {
      auto [r, s] = pre.classes.find(c);
      if (pre.classes.zero[r]) continue;
      const Rat& val = w[pre.root_slot[r]];
      v[c] = boost::multiprecision::numerator(val) *
             (lcm_den / boost::multiprecision::denominator(val)) * s;
    }
    detail::normalize_int_vector(v);
    basis.push_back(std::move(v));
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

// Any exact solution of Mv = b, or nothing when the system is inconsistent.
// Free variables are set to zero.
inline std::optional<RationalVector> solve_particular(const SparseIntMatrix& m,
                                                      const RationalVector& b) {
  if (static_cast<int>(b.size()) != m.row_count())
    throw domain_error("right-hand side length does not match row count");
  std::vector<detail::ElimRow> work;
  for (int i = 0; i < m.row_count(); ++i) work.push_back({m.rows[i], b[i], true});
  detail::ElimOutcome elim = detail::eliminate(std::move(work), m.cols);
  if (elim.infeasible) return std::nullopt;
  RationalVector v(m.cols, Rat(0));
  for (auto it = elim.pivots.rbegin(); it != elim.pivots.rend(); ++it) {
    Rat acc = it->b;
    Rat pval(0);
    for (const auto& [c, val] : it->e) {
      if (c == it->col)
        pval = Rat(val);
      else
        acc -= Rat(val) * v[c];
    }
    v[it->col] = acc / pval;
  }
  return v;
}

}  // namespace parity_gauss
