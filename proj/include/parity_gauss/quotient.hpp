#pragma once

// The quotient groups the formulae live in: variable registries of canonical
// diagrams, relation matrices generated from labelled move instances, kernel
// bases wrapped as formulae, and the fast path for the top all-odd quotient.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "parity_gauss/core.hpp"
#include "parity_gauss/enumerate.hpp"
#include "parity_gauss/exact_linalg.hpp"
#include "parity_gauss/formal_sum.hpp"
#include "parity_gauss/moves.hpp"

namespace parity_gauss {

// O: marked diagrams with arrow count in [k, n] and fewer than k even marks.
// E: all-even-marked diagrams with at most n arrows.  GPV: unmarked diagrams
// with at most n arrows (no parity in play).
enum class QuotientKind { O, E, GPV };

inline const char* quotient_name(QuotientKind q) {
  switch (q) {
    case QuotientKind::O: return "O";
    case QuotientKind::E: return "E";
    default: return "GPV";
  }
}

struct Formula {
  FormalSum sum;
  QuotientKind quotient = QuotientKind::O;
  int n = 0;
  int k = 0;  // meaningful in O mode only
};

struct RelationMatrix {
  Ambient ambient = Ambient::line;
  QuotientKind quotient = QuotientKind::O;
  int n = 0;
  int k = 0;
  std::vector<std::string> columns;    // canonical keys, sorted — the variables
  SparseIntMatrix matrix;
  std::vector<long long> row_source;   // ordinal of the move instance behind
                                       // each row; -1 for synthetic rows
};

namespace detail {

// A curl (an arrow with adjacent endpoints) whose mark is even dies under
// the first-move relation, so such diagrams never enter a registry.  In the
// all-even and unmarked registries every curl is lethal.
inline bool has_even_curl(const MarkedDiagram& md, bool every_mark) {
  for (int i = 0; i < md.size(); ++i)
    if ((every_mark || md.marks[i] == 0) && is_isolated_arrow(md.d, i)) return true;
  return false;
}

}  // namespace detail

// With top_all_plus, diagrams of the top degree n are kept only when every
// sign is plus: the top-degree single-sign-flip relations identify the rest
// up to sign, so the reduction shrinks the registry without moving the
// kernel dimension.
inline std::vector<std::string> quotient_registry(int n, int k, Ambient ambient,
                                                  QuotientKind q,
                                                  bool top_all_plus = false) {
  std::set<std::string> keys;
  if (q != QuotientKind::O) keys.insert("");  // the empty diagram
  const int lo = q == QuotientKind::O ? k : 1;
  for (int m = lo; m <= n; ++m) {
    enumerate_diagrams(ambient, m, /*all_signs=*/true, [&](const GaussDiagram& d) {
      if (top_all_plus && m == n)
        for (const Arrow& a : d.arrows)
          if (a.sign < 0) return;
      switch (q) {
        case QuotientKind::GPV:
          if (!detail::has_even_curl(with_marks(d), true)) keys.insert(canonical_key(d));
          break;
        case QuotientKind::E: {
          MarkedDiagram md = with_marks(d, 0);
          if (!detail::has_even_curl(md, true)) keys.insert(canonical_key(md));
          break;
        }
        case QuotientKind::O:
          for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
            MarkedDiagram md = with_marks(d);
            int evens = 0;
            for (int i = 0; i < m; ++i)
              if ((bits >> i) & 1) {
                md.marks[i] = 0;
                ++evens;
              }
            if (evens >= k || detail::has_even_curl(md, false)) continue;
            keys.insert(canonical_key(md));
          }
          break;
      }
    });
  }
  return {keys.begin(), keys.end()};
}

namespace detail {

// The projected relation of one labelled instance: over all nonempty subsets
// S of each side's affected arrows, +/- [side restricted to context + S],
// with terms outside the registry dropped.  Rows are sign-normalized so a
// relation and its negative collapse in deduplication.
inline SparseRow instance_row(const MoveInstance& mi,
                              const std::map<std::string, int>& col_of,
                              QuotientKind q, int top_degree = -1) {
  std::map<int, Int> acc;
  auto side = [&](const MarkedDiagram& md, const std::vector<int>& context,
                  const std::vector<int>& affected, int sgn) {
    const int a = static_cast<int>(affected.size());
    for (std::uint32_t bits = 1; bits < (1u << a); ++bits) {
      std::vector<int> keep = context;
      for (int i = 0; i < a; ++i)
        if ((bits >> i) & 1) keep.push_back(affected[i]);
      MarkedDiagram sub = restrict_to(md, keep);
      int coeff = sgn;
      if (sub.size() == top_degree) {
        // Rewrite a top-degree term as +/- its all-plus twin.
        for (Arrow& arrow : sub.d.arrows)
          if (arrow.sign < 0) {
            arrow.sign = 1;
            coeff = -coeff;
          }
      }
      std::string key =
          q == QuotientKind::GPV ? canonical_key(sub.d) : canonical_key(sub);
      auto it = col_of.find(key);
      if (it != col_of.end()) acc[it->second] += coeff;
    }
  };
  side(mi.lhs, mi.context_lhs, mi.affected_lhs, +1);
  side(mi.rhs, mi.context_rhs, mi.affected_rhs, -1);
  SparseRow row;
  for (const auto& [c, v] : acc)
    if (v != 0) row.push_back({c, v});
  if (!row.empty() && row[0].second < 0)
    for (auto& [c, v] : row) v = -v;
  return row;
}

inline RelationMatrix assemble(RelationMatrix rm,
                               std::map<SparseRow, long long> rows) {
  rm.matrix = SparseIntMatrix(static_cast<int>(rm.columns.size()));
  for (auto& [row, src] : rows) {
    rm.matrix.rows.push_back(row);
    rm.row_source.push_back(src);
  }
  return rm;
}

}  // namespace detail

inline RelationMatrix generate_relation_matrix(int n, int k, Ambient ambient,
                                               QuotientKind q,
                                               bool top_all_plus = false) {
  if (q == QuotientKind::O) {
    if (k < 1 || k > n) throw domain_error("the all-odd quotient needs 1 <= k <= n");
  } else {
    if (n < 0) throw domain_error("order must be nonnegative");
    k = 0;
  }
  RelationMatrix rm;
  rm.ambient = ambient;
  rm.quotient = q;
  rm.n = n;
  rm.k = k;
  rm.columns = quotient_registry(n, k, ambient, q, top_all_plus);
  std::map<std::string, int> col_of;
  for (int i = 0; i < static_cast<int>(rm.columns.size()); ++i) col_of[rm.columns[i]] = i;

  const MarkMode mode = q == QuotientKind::GPV ? MarkMode::unmarked
                        : (q == QuotientKind::O && k == 1)
                            ? MarkMode::all_ones
                            : MarkMode::parity_labeled;
  std::map<SparseRow, long long> rows;
  long long ordinal = -1;
  move_instance_pairs(n + 1, ambient, mode, [&](const MoveInstance& mi) {
    ++ordinal;
    // Contexts past these budgets only make rows whose every term
    // overflows the registry.
    const int ctx = static_cast<int>(mi.context_lhs.size());
    if (ctx > (mi.kind == MoveKind::r3 ? n - 2 : n - 1)) return;
    if (q == QuotientKind::E) {
      // Only the all-even labellings can touch the all-even registry.
      for (int t : mi.context_lhs)
        if (mi.lhs.marks[t] != 0) return;
      for (int a : mi.affected_lhs)
        if (mi.lhs.marks[a] != 0) return;
      for (int a : mi.affected_rhs)
        if (mi.rhs.marks[a] != 0) return;
    }
    SparseRow row = detail::instance_row(mi, col_of, q, top_all_plus ? n : -1);
    if (!row.empty()) rows.try_emplace(std::move(row), ordinal);
  });
  return detail::assemble(std::move(rm), std::move(rows));
}

inline std::vector<Formula> formula_basis(int n, int k, Ambient ambient,
                                          QuotientKind q) {
  RelationMatrix rm = generate_relation_matrix(n, k, ambient, q);
  std::vector<Formula> out;
  for (const IntVector& v : kernel_basis(rm.matrix)) {
    for (const SparseRow& row : rm.matrix.rows) {
      Int dot = 0;
      for (const auto& [c, val] : row) dot += val * v[c];
      if (dot != 0)
        throw domain_error("internal error: kernel vector misses a relation");
    }
    Formula f;
    f.quotient = q;
    f.n = n;
    f.k = k;
    f.sum.ambient = ambient;
    for (int c = 0; c < static_cast<int>(v.size()); ++c)
      if (v[c] != 0) f.sum.terms.emplace(rm.columns[c], v[c]);
    out.push_back(std::move(f));
  }
  return out;
}

inline int dimension(int n, int k, Ambient ambient, QuotientKind q) {
  return static_cast<int>(formula_basis(n, k, ambient, q).size());
}

// Fast path for O(n,1): variables are the all-odd diagrams; relations are the
// pair rows (truncated at the top degree) plus the commutativity rows — two
// arrows of the same sign with adjacent endpoints may trade those endpoints.
inline RelationMatrix reduced_on1_matrix(int n, Ambient ambient) {
  if (n < 1) throw domain_error("the reduced system needs n >= 1");
  RelationMatrix rm;
  rm.ambient = ambient;
  rm.quotient = QuotientKind::O;
  rm.n = n;
  rm.k = 1;
  rm.columns = quotient_registry(n, 1, ambient, QuotientKind::O);
  std::map<std::string, int> col_of;
  for (int i = 0; i < static_cast<int>(rm.columns.size()); ++i) col_of[rm.columns[i]] = i;

  std::map<SparseRow, long long> rows;
  long long ordinal = -1;
  enumerate_diagrams_up_to(ambient, n - 1, true, [&](const GaussDiagram& ctx) {
    MarkedDiagram mctx = with_marks(ctx);
    const int gaps = gap_count(ctx);
    for (int g1 = 0; g1 < gaps; ++g1)
      for (int g2 = g1; g2 < gaps; ++g2)
        for (const R2Variant& v : r2_variants()) {
          ++ordinal;
          SparseRow row = detail::instance_row(
              make_r2_insertion(mctx, g1, g2, v, 1, 1), col_of, QuotientKind::O);
          if (!row.empty()) rows.try_emplace(std::move(row), ordinal);
        }
  });
  for (const std::string& key : rm.columns) {
    MarkedDiagram md = parse_gauss_code(key, ambient);
    const int pts = md.d.points();
    std::vector<int> owner(pts, -1);
    for (int i = 0; i < md.size(); ++i) {
      owner[md.d.arrows[i].tail] = i;
      owner[md.d.arrows[i].head] = i;
    }
    const int pair_count = ambient == Ambient::line ? pts - 1 : pts;
    for (int p = 0; p < pair_count; ++p) {
      const int next = (p + 1) % pts;
      const int a = owner[p], b = owner[next];
      if (a == b || md.d.arrows[a].sign != md.d.arrows[b].sign) continue;
      MarkedDiagram swapped = md;
      detail::swap_endpoints(swapped, p, next);
      auto it = col_of.find(canonical_key(swapped));
      if (it == col_of.end() || it->second == col_of.at(key)) continue;
      SparseRow row = {{col_of.at(key), Int(1)}, {it->second, Int(-1)}};
      if (row[0].first > row[1].first) std::swap(row[0], row[1]);
      if (row[0].second < 0)
        for (auto& [c, v] : row) v = -v;
      rows.try_emplace(std::move(row), -1);
    }
  }
  return detail::assemble(std::move(rm), std::move(rows));
}

// <F, I[P](D)> in the marked quotients; the unmarked expansion in GPV mode,
// where the rule plays no part.
inline Int evaluate(const Formula& f, const ParityRule& rule, const GaussDiagram& d) {
  FormalSum expansion = f.quotient == QuotientKind::GPV
                            ? expand_I_gpv(d, f.n)
                            : expand_I(d, rule, f.n);
  return pairing(f.sum, expansion);
}

}  // namespace parity_gauss
