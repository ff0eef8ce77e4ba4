#pragma once

// Reidemeister move catalogue for Gauss diagrams: kink insertion/removal
// (R1), slide-pair insertion/removal (R2) and triangle slides (R3), plus the
// based-instance stream that relation matrices and axiom sweeps consume.

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parity_gauss/core.hpp"
#include "parity_gauss/enumerate.hpp"
#include "parity_gauss/parity.hpp"

namespace parity_gauss {

enum class MoveKind { r1, r2, r3 };

// One concrete move between two marked diagrams.  The sides agree outside
// the affected arrows: context_lhs[i] and context_rhs[i] are the same arrow
// seen from either side, and for slides affected_lhs[i] corresponds to
// affected_rhs[i].
struct MoveInstance {
  MoveKind kind = MoveKind::r1;
  MarkedDiagram lhs, rhs;
  std::vector<int> affected_lhs, affected_rhs;
  std::vector<int> context_lhs, context_rhs;
};

inline MoveInstance reversed(const MoveInstance& mi) {
  MoveInstance out;
  out.kind = mi.kind;
  out.lhs = mi.rhs;
  out.rhs = mi.lhs;
  out.affected_lhs = mi.affected_rhs;
  out.affected_rhs = mi.affected_lhs;
  out.context_lhs = mi.context_rhs;
  out.context_rhs = mi.context_lhs;
  return out;
}

// Number of places a new block of endpoints can go.  A line with 2m points
// has 2m+1 gaps; on a loop every gap is between two consecutive points, and
// the empty loop still has the one gap.
inline int gap_count(const GaussDiagram& d) {
  int p = d.points();
  if (d.ambient == Ambient::line) return p + 1;
  return std::max(p, 1);
}

namespace detail {

// Pending endpoint of a new arrow: which arrow of the batch, and which end.
struct NewTok {
  int arrow = 0;
  bool is_tail = true;
};

// Insert blocks of new endpoints into `base`.  Gap g means "immediately
// before old point g" (g == points appends at the right end of a line);
// blocks listed for the same gap land in list order.  New arrows are
// appended after the old ones, so arrow indices of `base` survive verbatim.
inline MarkedDiagram insert_blocks(
    const MarkedDiagram& base,
    const std::vector<std::pair<int, std::vector<NewTok>>>& blocks,
    const std::vector<int>& new_signs,
    const std::vector<std::uint8_t>& new_marks) {
  const int old_points = base.d.points();
  std::vector<int> at_gap(old_points + 1, 0);
  for (const auto& b : blocks) at_gap.at(b.first) += static_cast<int>(b.second.size());
  // shift[p] = endpoints inserted at gaps <= p, so old point p moves to
  // p + shift[p].
  std::vector<int> shift(old_points + 1, 0);
  int run = 0;
  for (int g = 0; g <= old_points; ++g) {
    run += at_gap[g];
    shift[g] = run;
  }
  const int n_new = static_cast<int>(new_signs.size());
  std::vector<int> tail_pos(n_new, -1), head_pos(n_new, -1);
  std::vector<int> placed(old_points + 1, 0);
  for (const auto& [g, toks] : blocks)
    for (const NewTok& t : toks) {
      int pos = g + (shift[g] - at_gap[g]) + placed[g]++;
      (t.is_tail ? tail_pos : head_pos)[t.arrow] = pos;
    }
  MarkedDiagram out;
  out.d.ambient = base.d.ambient;
  for (std::size_t i = 0; i < base.d.arrows.size(); ++i) {
    const Arrow& a = base.d.arrows[i];
    out.d.arrows.push_back({a.tail + shift[a.tail], a.head + shift[a.head], a.sign});
    out.marks.push_back(base.marks[i]);
  }
  for (int i = 0; i < n_new; ++i) {
    out.d.arrows.push_back({tail_pos[i], head_pos[i], new_signs[i]});
    out.marks.push_back(new_marks[i]);
  }
  return out;
}

// Successor position along the ambient; -1 when a line runs off the end.
inline int succ_pos(const GaussDiagram& d, int p) {
  int pts = d.points();
  if (d.ambient == Ambient::line) return p + 1 < pts ? p + 1 : -1;
  return pts == 0 ? -1 : (p + 1) % pts;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// R1: the four one-arrow curls per gap (which end comes first, and the sign).

struct R1Variant {
  bool tail_first = true;
  int sign = 1;
};

inline const std::array<R1Variant, 4>& r1_variants() {
  static const std::array<R1Variant, 4> v = {{
      {true, +1}, {true, -1}, {false, +1}, {false, -1}}};
  return v;
}

// Built with the curl on the lhs, so affected sizes are (1,0).
inline MoveInstance make_r1_insertion(const MarkedDiagram& ctx, int gap,
                                      const R1Variant& v, std::uint8_t mark) {
  using detail::NewTok;
  std::vector<NewTok> toks = v.tail_first
                                 ? std::vector<NewTok>{{0, true}, {0, false}}
                                 : std::vector<NewTok>{{0, false}, {0, true}};
  MoveInstance mi;
  mi.kind = MoveKind::r1;
  mi.lhs = detail::insert_blocks(ctx, {{gap, toks}}, {v.sign}, {mark});
  mi.rhs = ctx;
  const int n = static_cast<int>(ctx.d.arrows.size());
  mi.affected_lhs = {n};
  for (int i = 0; i < n; ++i) {
    mi.context_lhs.push_back(i);
    mi.context_rhs.push_back(i);
  }
  return mi;
}

// ---------------------------------------------------------------------------
// R2: the eight two-arrow slides per ordered gap pair.  One block holds both
// tails, the other both heads; the chords either cross or nest; the two
// signs are opposite either way round.

struct R2Variant {
  bool heads_first_block = false;
  bool crossed = true;
  int sign = 1;  // first arrow's sign; the partner gets the negative
};

inline const std::array<R2Variant, 8>& r2_variants() {
  static const std::array<R2Variant, 8> v = {{
      {false, true, +1}, {false, true, -1}, {false, false, +1}, {false, false, -1},
      {true, true, +1}, {true, true, -1}, {true, false, +1}, {true, false, -1}}};
  return v;
}

// g1 <= g2; when they coincide the first block lands first.  Affected (2,0).
inline MoveInstance make_r2_insertion(const MarkedDiagram& ctx, int g1, int g2,
                                      const R2Variant& v, std::uint8_t mark0,
                                      std::uint8_t mark1) {
  using detail::NewTok;
  const bool b1_tail = !v.heads_first_block;
  std::vector<NewTok> b1 = {{0, b1_tail}, {1, b1_tail}};
  std::vector<NewTok> b2 = v.crossed
                               ? std::vector<NewTok>{{0, !b1_tail}, {1, !b1_tail}}
                               : std::vector<NewTok>{{1, !b1_tail}, {0, !b1_tail}};
  MoveInstance mi;
  mi.kind = MoveKind::r2;
  mi.lhs = detail::insert_blocks(ctx, {{g1, std::move(b1)}, {g2, std::move(b2)}},
                                 {v.sign, -v.sign}, {mark0, mark1});
  mi.rhs = ctx;
  const int n = static_cast<int>(ctx.d.arrows.size());
  mi.affected_lhs = {n, n + 1};
  for (int i = 0; i < n; ++i) {
    mi.context_lhs.push_back(i);
    mi.context_rhs.push_back(i);
  }
  return mi;
}

// ---------------------------------------------------------------------------
// R3: triangle slides.  A slide involves three arrows whose six endpoints
// form three blocks of two consecutive positions (one block per strand of
// the planar triangle); applying the slide transposes each block in place.
// The admissible decorated patterns are generated from the planar move
// itself: strand a runs along y=0, b along y=x, c along y=-x+t, and pushing
// t through 0 transposes every block.  Enumerating the 6 strand stackings
// and 8 orientation choices and translating each crossing to an arrow
// (tail = overpass, sign = det of the over/under directions) yields every
// realizable pattern.

namespace detail {

struct R3Tok {
  int arrow = 0;  // 0 = ab, 1 = ac, 2 = bc at generation time
  bool is_tail = true;
  bool operator==(const R3Tok&) const = default;
};

using R3Side = std::array<std::array<R3Tok, 2>, 3>;

struct R3Pattern {
  R3Side lhs, rhs;  // rhs is lhs with every block transposed
  std::array<int, 3> sign{};
};

inline const int kBlockPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

// Canonical string of one side (blocks and per-arrow signs) modulo block
// order and arrow naming, so placed occurrences can be matched against the
// table no matter where the blocks sit or how the arrows are numbered.
inline std::string r3_side_canon(const R3Side& side, const std::array<int, 3>& sign) {
  std::string best;
  for (const auto& p : kBlockPerms) {
    std::array<int, 3> rename = {-1, -1, -1};
    int next = 0;
    std::string s;
    for (int bi = 0; bi < 3; ++bi)
      for (const R3Tok& t : side[p[bi]]) {
        if (rename[t.arrow] < 0) rename[t.arrow] = next++;
        s += static_cast<char>('a' + rename[t.arrow]);
        s += t.is_tail ? 'T' : 'H';
      }
    s += '|';
    std::array<int, 3> inv{};
    for (int a = 0; a < 3; ++a) inv[rename[a]] = a;
    for (int r = 0; r < 3; ++r) s += sign[inv[r]] > 0 ? '+' : '-';
    if (best.empty() || s < best) best = s;
  }
  return best;
}

inline R3Side transpose_side(const R3Side& side) {
  R3Side out = side;
  for (auto& blk : out) std::swap(blk[0], blk[1]);
  return out;
}

inline const std::vector<R3Pattern>& r3_patterns() {
  static const std::vector<R3Pattern> pats = [] {
    std::vector<R3Pattern> out;
    std::set<std::string> seen;
    for (const auto& rk : kBlockPerms) {  // strand stacking: rank 0 on top
      auto over = [&](int u, int v) { return rk[u] < rk[v]; };
      const bool o_ab = over(0, 1), o_ac = over(0, 2), o_bc = over(1, 2);
      for (int alpha : {+1, -1})
        for (int beta : {+1, -1})
          for (int gamma : {+1, -1}) {
            R3Pattern p;
            p.sign = {(o_ab ? +1 : -1) * alpha * beta,
                      (o_ac ? -1 : +1) * alpha * gamma,
                      (o_bc ? -1 : +1) * beta * gamma};
            std::array<R3Tok, 2> a_blk = {{{0, o_ab}, {1, o_ac}}};
            if (alpha < 0) std::swap(a_blk[0], a_blk[1]);
            std::array<R3Tok, 2> b_blk = {{{0, !o_ab}, {2, o_bc}}};
            if (beta < 0) std::swap(b_blk[0], b_blk[1]);
            std::array<R3Tok, 2> c_blk = {{{2, !o_bc}, {1, !o_ac}}};
            if (gamma < 0) std::swap(c_blk[0], c_blk[1]);
            p.lhs = {a_blk, b_blk, c_blk};
            p.rhs = transpose_side(p.lhs);
            // The move is its own inverse, so patterns are deduplicated as
            // unordered pairs of sides.
            std::string key = std::min(r3_side_canon(p.lhs, p.sign),
                                       r3_side_canon(p.rhs, p.sign));
            if (seen.insert(std::move(key)).second) out.push_back(p);
          }
    }
    return out;
  }();
  return pats;
}

inline const std::set<std::string>& r3_side_canon_set() {
  static const std::set<std::string> s = [] {
    std::set<std::string> acc;
    for (const R3Pattern& p : r3_patterns()) {
      acc.insert(r3_side_canon(p.lhs, p.sign));
      acc.insert(r3_side_canon(p.rhs, p.sign));
    }
    return acc;
  }();
  return s;
}

}  // namespace detail

// Place one slide pattern onto a context: the pattern's three blocks go to
// gaps g1 <= g2 <= g3 in the order named by perm (0..5 indexes the block
// orders), with same-gap blocks stacking in that order.  Affected (3,3) with
// the identity correspondence.
inline MoveInstance make_r3_instance(const MarkedDiagram& ctx, int pattern_index,
                                     int perm, const std::array<int, 3>& gaps,
                                     const std::array<std::uint8_t, 3>& marks) {
  const detail::R3Pattern& pat = detail::r3_patterns().at(pattern_index);
  const int* order = detail::kBlockPerms[perm];
  auto place = [&](const detail::R3Side& side) {
    std::vector<std::pair<int, std::vector<detail::NewTok>>> blocks;
    for (int s = 0; s < 3; ++s) {
      const auto& blk = side[order[s]];
      blocks.push_back({gaps[s], {{blk[0].arrow, blk[0].is_tail},
                                  {blk[1].arrow, blk[1].is_tail}}});
    }
    return detail::insert_blocks(ctx, blocks, {pat.sign[0], pat.sign[1], pat.sign[2]},
                                 {marks[0], marks[1], marks[2]});
  };
  MoveInstance mi;
  mi.kind = MoveKind::r3;
  mi.lhs = place(pat.lhs);
  mi.rhs = place(pat.rhs);
  const int n = static_cast<int>(ctx.d.arrows.size());
  for (int i = 0; i < n; ++i) {
    mi.context_lhs.push_back(i);
    mi.context_rhs.push_back(i);
  }
  mi.affected_lhs = {n, n + 1, n + 2};
  mi.affected_rhs = mi.affected_lhs;
  return mi;
}

namespace detail {

// Transpose the endpoints at positions p and q (each owned by a different
// arrow) without renumbering anything else.
inline void swap_endpoints(MarkedDiagram& md, int p, int q) {
  for (Arrow& a : md.d.arrows) {
    if (a.tail == p)
      a.tail = q;
    else if (a.tail == q)
      a.tail = p;
    if (a.head == p)
      a.head = q;
    else if (a.head == q)
      a.head = p;
  }
}

}  // namespace detail

// All moves applicable to D, each with lhs = D.  Removal candidates are
// structural (marks ride along); insertions label new arrows with 1.
inline std::vector<MoveInstance> enumerate_moves(const MarkedDiagram& D) {
  std::vector<MoveInstance> out;
  const int n = static_cast<int>(D.d.arrows.size());
  const int pts = D.d.points();

  auto complement_context = [&](const std::vector<int>& affected, MoveInstance& mi) {
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (std::find(affected.begin(), affected.end(), i) == affected.end())
        keep.push_back(i);
    mi.context_lhs = keep;
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) mi.context_rhs.push_back(i);
    mi.rhs = restrict_to(D, keep);
  };

  // R1 removals: isolated arrows.
  for (int i = 0; i < n; ++i)
    if (is_isolated_arrow(D.d, i)) {
      MoveInstance mi;
      mi.kind = MoveKind::r1;
      mi.lhs = D;
      mi.affected_lhs = {i};
      complement_context({i}, mi);
      out.push_back(std::move(mi));
    }

  // R2 removals: both tails consecutive, both heads consecutive, opposite
  // signs.
  auto adjacent = [&](int p, int q) {
    return detail::succ_pos(D.d, p) == q || detail::succ_pos(D.d, q) == p;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Arrow& x = D.d.arrows[i];
      const Arrow& y = D.d.arrows[j];
      if (x.sign != -y.sign) continue;
      if (!adjacent(x.tail, y.tail) || !adjacent(x.head, y.head)) continue;
      MoveInstance mi;
      mi.kind = MoveKind::r2;
      mi.lhs = D;
      mi.affected_lhs = {i, j};
      complement_context({i, j}, mi);
      out.push_back(std::move(mi));
    }

  // R3 slides: three disjoint consecutive-position blocks carving out the
  // six endpoints of three arrows, matching the pattern table.
  if (n >= 3) {
    std::vector<int> owner(pts), is_tail(pts);
    for (int i = 0; i < n; ++i) {
      owner[D.d.arrows[i].tail] = i;
      is_tail[D.d.arrows[i].tail] = 1;
      owner[D.d.arrows[i].head] = i;
      is_tail[D.d.arrows[i].head] = 0;
    }
    std::vector<std::array<int, 2>> blocks;  // candidate (p, succ p) pairs
    for (int p = 0; p < pts; ++p) {
      int q = detail::succ_pos(D.d, p);
      if (q >= 0 && owner[p] != owner[q]) blocks.push_back({p, q});
    }
    const int nb = static_cast<int>(blocks.size());
    for (int b1 = 0; b1 < nb; ++b1)
      for (int b2 = b1 + 1; b2 < nb; ++b2)
        for (int b3 = b2 + 1; b3 < nb; ++b3) {
          std::array<std::array<int, 2>, 3> tri = {blocks[b1], blocks[b2], blocks[b3]};
          std::set<int> posns, arrows;
          for (const auto& blk : tri)
            for (int p : blk) {
              posns.insert(p);
              arrows.insert(owner[p]);
            }
          if (posns.size() != 6 || arrows.size() != 3) continue;
          detail::R3Side side;
          std::array<int, 3> sign{};
          std::array<int, 3> local = {-1, -1, -1};
          std::vector<int> ids(arrows.begin(), arrows.end());
          for (int s = 0; s < 3; ++s) {
            local[s] = ids[s];
            sign[s] = D.d.arrows[ids[s]].sign;
          }
          auto local_id = [&](int arrow) {
            return static_cast<int>(std::find(local.begin(), local.end(), arrow) -
                                    local.begin());
          };
          for (int s = 0; s < 3; ++s) {
            side[s][0] = {local_id(owner[tri[s][0]]), is_tail[tri[s][0]] == 1};
            side[s][1] = {local_id(owner[tri[s][1]]), is_tail[tri[s][1]] == 1};
          }
          if (!detail::r3_side_canon_set().count(detail::r3_side_canon(side, sign)))
            continue;
          MoveInstance mi;
          mi.kind = MoveKind::r3;
          mi.lhs = D;
          mi.rhs = D;
          for (const auto& blk : tri) detail::swap_endpoints(mi.rhs, blk[0], blk[1]);
          mi.affected_lhs = ids;
          mi.affected_rhs = ids;
          for (int i = 0; i < n; ++i)
            if (!arrows.count(i)) {
              mi.context_lhs.push_back(i);
              mi.context_rhs.push_back(i);
            }
          out.push_back(std::move(mi));
        }
  }

  // Insertions, phrased from D's side: lhs = D, rhs = enlarged.
  for (int g = 0; g < gap_count(D.d); ++g)
    for (const R1Variant& v : r1_variants())
      out.push_back(reversed(make_r1_insertion(D, g, v, 1)));
  for (int g1 = 0; g1 < gap_count(D.d); ++g1)
    for (int g2 = g1; g2 < gap_count(D.d); ++g2)
      for (const R2Variant& v : r2_variants())
        out.push_back(reversed(make_r2_insertion(D, g1, g2, v, 1, 1)));
  return out;
}

inline std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d) {
  return enumerate_moves(with_marks(d, 1));
}

// ---------------------------------------------------------------------------
// Based-instance stream: every move instance whose larger side stays within
// max_total_arrows, over contexts drawn from the diagram enumerator.

enum class MarkMode { unmarked, all_ones, parity_labeled };

namespace detail {

// Context mark assignments for one diagram under the given mode.
template <typename Fn>
void for_each_context_marks(int n, MarkMode mode, Fn&& fn) {
  if (mode != MarkMode::parity_labeled) {
    fn(std::vector<std::uint8_t>(n, 1));
    return;
  }
  std::vector<std::uint8_t> marks(n, 0);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    for (int i = 0; i < n; ++i) marks[i] = (bits >> i) & 1;
    fn(marks);
  }
}

}  // namespace detail

// Admissible parity labels for the affected arrows: the R1 curl is even, an
// R2 pair agrees, and an R3 triple has even total.  Unmarked mode collapses
// to the all-ones labelling since marks are ignored downstream.
inline std::vector<std::vector<std::uint8_t>> admissible_affected_marks(MoveKind kind,
                                                                        MarkMode mode) {
  if (mode == MarkMode::unmarked) {
    switch (kind) {
      case MoveKind::r1: return {{1}};
      case MoveKind::r2: return {{1, 1}};
      case MoveKind::r3: return {{1, 1, 1}};
    }
  }
  switch (kind) {
    case MoveKind::r1: return {{0}};
    case MoveKind::r2: return {{0, 0}, {1, 1}};
    case MoveKind::r3: return {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
  }
  return {};
}

template <typename Fn>
void move_instance_pairs(int max_total_arrows, Ambient ambient, MarkMode mode, Fn&& fn) {
  if (max_total_arrows < 1) return;
  auto contexts = [&](int max_ctx, auto&& body) {
    enumerate_diagrams_up_to(ambient, std::min(max_ctx, max_total_arrows), true,
                             [&](const GaussDiagram& ctx) {
                               detail::for_each_context_marks(
                                   static_cast<int>(ctx.arrows.size()), mode,
                                   [&](const std::vector<std::uint8_t>& marks) {
                                     body(MarkedDiagram{ctx, marks});
                                   });
                             });
  };

  contexts(max_total_arrows - 1, [&](const MarkedDiagram& ctx) {
    for (int g = 0; g < gap_count(ctx.d); ++g)
      for (const R1Variant& v : r1_variants())
        for (const auto& am : admissible_affected_marks(MoveKind::r1, mode))
          fn(make_r1_insertion(ctx, g, v, am[0]));
  });

  if (max_total_arrows >= 2)
    contexts(max_total_arrows - 2, [&](const MarkedDiagram& ctx) {
      for (int g1 = 0; g1 < gap_count(ctx.d); ++g1)
        for (int g2 = g1; g2 < gap_count(ctx.d); ++g2)
          for (const R2Variant& v : r2_variants())
            for (const auto& am : admissible_affected_marks(MoveKind::r2, mode))
              fn(make_r2_insertion(ctx, g1, g2, v, am[0], am[1]));
    });

  if (max_total_arrows >= 3)
    contexts(max_total_arrows - 3, [&](const MarkedDiagram& ctx) {
      const int g = gap_count(ctx.d);
      const int npat = static_cast<int>(detail::r3_patterns().size());
      for (int pi = 0; pi < npat; ++pi)
        for (int perm = 0; perm < 6; ++perm)
          for (int g1 = 0; g1 < g; ++g1)
            for (int g2 = g1; g2 < g; ++g2)
              for (int g3 = g2; g3 < g; ++g3)
                for (const auto& am : admissible_affected_marks(MoveKind::r3, mode))
                  fn(make_r3_instance(ctx, pi, perm, {g1, g2, g3},
                                      {am[0], am[1], am[2]}));
    });
}

// ---------------------------------------------------------------------------
// Seeded random walk through the move graph.

enum class WalkConstraint { none, zero_index };

struct WalkResult {
  GaussDiagram diagram;
  bool stalled = false;  // a step found no admissible move
  int steps_taken = 0;
};

inline WalkResult apply_random_walk(const GaussDiagram& start, int steps,
                                    std::uint64_t seed,
                                    WalkConstraint constraint = WalkConstraint::none) {
  if (constraint == WalkConstraint::zero_index && start.ambient != Ambient::line)
    throw domain_error("zero-index walks are defined on the line only");
  // Past this size, prefer moves that do not grow the diagram so walks stay
  // tractable.
  constexpr int kShrinkBias = 10;
  std::mt19937_64 rng(seed);
  WalkResult res;
  res.diagram = start;
  for (int s = 0; s < steps; ++s) {
    std::vector<MoveInstance> all = enumerate_moves(res.diagram);
    std::vector<const MoveInstance*> ok;
    for (const MoveInstance& mi : all) {
      if (constraint == WalkConstraint::zero_index && !zero_index_check(mi.rhs.d))
        continue;
      ok.push_back(&mi);
    }
    if (static_cast<int>(res.diagram.arrows.size()) >= kShrinkBias) {
      std::vector<const MoveInstance*> shrink;
      for (const MoveInstance* mi : ok)
        if (mi->rhs.d.arrows.size() <= res.diagram.arrows.size()) shrink.push_back(mi);
      if (!shrink.empty()) ok.swap(shrink);
    }
    if (ok.empty()) {
      res.stalled = true;
      return res;
    }
    res.diagram = ok[rng() % ok.size()]->rhs.d;
    ++res.steps_taken;
  }
  return res;
}

}  // namespace parity_gauss
