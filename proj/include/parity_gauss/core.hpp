#pragma once

// Core value types for Gauss diagrams of (long) virtual knots: signed directed
// chord diagrams on a line or loop, their text format, canonical forms and the
// basic combinatorial predicates everything else is built from.
//
// Conventions:
//  * endpoints are 0..2m-1 in order along the line (or around the loop),
//  * an arrow points from its over-passage to its under-passage, so the tail
//    sits at the "O" token and the head at the "U" token,
//  * sign is the local writhe (+1 / -1),
//  * every arrow additionally carries a mark in {0,1} (a parity label);
//    mark 1 is the default and is omitted in the text format.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parity_gauss {

enum class Ambient { line, loop };

inline const char* ambient_name(Ambient a) { return a == Ambient::line ? "line" : "loop"; }

struct Arrow {
  int tail = 0;  // endpoint position of the over passage ("O")
  int head = 0;  // endpoint position of the under passage ("U")
  int sign = 1;  // +1 or -1
};

struct GaussDiagram {
  Ambient ambient = Ambient::line;
  std::vector<Arrow> arrows;

  int size() const { return static_cast<int>(arrows.size()); }
  int points() const { return 2 * static_cast<int>(arrows.size()); }
};

// A Gauss diagram with a {0,1} mark on every arrow, in a vector parallel to
// d.arrows. Marks default to 1.
struct MarkedDiagram {
  GaussDiagram d;
  std::vector<std::uint8_t> marks;

  int size() const { return d.size(); }
};

inline MarkedDiagram with_marks(const GaussDiagram& d, std::uint8_t fill = 1) {
  return MarkedDiagram{d, std::vector<std::uint8_t>(d.arrows.size(), fill)};
}

// Raised on malformed Gauss code input. `position` is the 1-based index of
// the offending whitespace-separated token (0 if no single token is at fault).
struct parse_error : std::runtime_error {
  int position;
  parse_error(int pos, const std::string& msg) : std::runtime_error(msg), position(pos) {}
};

// Raised on structurally valid input used outside an operation's domain
// (wrong ambient, unknown arrow, level restrictions, ...).
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------
//
// A diagram is a whitespace-separated token list; each token is
//   O<id><sign>[:<mark>]  or  U<id><sign>[:<mark>]
// with <id> a positive integer appearing exactly once as O and once as U,
// <sign> one of '+'/'-' (agreeing across the two occurrences) and <mark>
// one of '0'/'1' (optional, default 1, agreeing when given twice).

inline MarkedDiagram parse_gauss_code(const std::string& text, Ambient ambient) {
  struct Occurrence {
    int o_pos = -1, u_pos = -1;
    int sign = 0;
    int mark = -1;           // -1 = unspecified
    int first_token = 0;     // for error reporting and ordering
  };

  std::vector<std::pair<std::string, int>> tokens;  // (token, 1-based index)
  {
    std::string cur;
    int idx = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      char c = i < text.size() ? text[i] : ' ';
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        if (!cur.empty()) {
          tokens.emplace_back(cur, ++idx);
          cur.clear();
        }
      } else {
        cur.push_back(c);
      }
    }
  }

  std::map<long long, Occurrence> seen;
  int pos = 0;
  for (const auto& [tok, tpos] : tokens) {
    std::size_t i = 0;
    if (tok[i] != 'O' && tok[i] != 'U')
      throw parse_error(tpos, "token '" + tok + "' must start with O or U");
    bool is_over = tok[i] == 'O';
    ++i;
    if (i >= tok.size() || tok[i] < '0' || tok[i] > '9')
      throw parse_error(tpos, "token '" + tok + "' is missing a numeric id");
    long long id = 0;
    while (i < tok.size() && tok[i] >= '0' && tok[i] <= '9') {
      id = id * 10 + (tok[i] - '0');
      if (id > 1000000000LL) throw parse_error(tpos, "id in token '" + tok + "' is out of range");
      ++i;
    }
    if (id == 0) throw parse_error(tpos, "id 0 is not allowed in token '" + tok + "'");
    if (i >= tok.size() || (tok[i] != '+' && tok[i] != '-'))
      throw parse_error(tpos, "token '" + tok + "' is missing a sign (+ or -)");
    int sign = tok[i] == '+' ? 1 : -1;
    ++i;
    int mark = -1;
    if (i < tok.size()) {
      if (tok[i] != ':' || i + 2 != tok.size() || (tok[i + 1] != '0' && tok[i + 1] != '1'))
        throw parse_error(tpos, "trailing characters in token '" + tok + "' (expected :0 or :1)");
      mark = tok[i + 1] - '0';
    }

    Occurrence& occ = seen[id];
    if (occ.sign == 0) {
      occ.sign = sign;
      occ.mark = mark;
      occ.first_token = tpos;
    } else {
      if (occ.sign != sign)
        throw parse_error(tpos, "sign of id " + std::to_string(id) + " disagrees with its other occurrence");
      if (mark != -1 && occ.mark != -1 && mark != occ.mark)
        throw parse_error(tpos, "mark of id " + std::to_string(id) + " disagrees with its other occurrence");
      if (mark != -1) occ.mark = mark;
    }
    if (is_over) {
      if (occ.o_pos != -1)
        throw parse_error(tpos, "id " + std::to_string(id) + " occurs twice as O");
      occ.o_pos = pos;
    } else {
      if (occ.u_pos != -1)
        throw parse_error(tpos, "id " + std::to_string(id) + " occurs twice as U");
      occ.u_pos = pos;
    }
    ++pos;
  }

  MarkedDiagram md;
  md.d.ambient = ambient;
  std::vector<std::pair<int, const Occurrence*>> by_first;  // (min position, occ)
  for (const auto& [id, occ] : seen) {
    if (occ.o_pos == -1)
      throw parse_error(occ.first_token, "id " + std::to_string(id) + " has no O occurrence");
    if (occ.u_pos == -1)
      throw parse_error(occ.first_token, "id " + std::to_string(id) + " has no U occurrence");
    by_first.emplace_back(std::min(occ.o_pos, occ.u_pos), &occ);
  }
  std::sort(by_first.begin(), by_first.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [first, occ] : by_first) {
    md.d.arrows.push_back(Arrow{occ->o_pos, occ->u_pos, occ->sign});
    md.marks.push_back(occ->mark == 0 ? 0 : 1);
  }
  return md;
}

inline GaussDiagram parse_gauss_code_unmarked(const std::string& text, Ambient ambient) {
  return parse_gauss_code(text, ambient).d;
}

// Serializes with ids renumbered 1.. by order of first endpoint. Marks are
// printed as ":0" on both occurrences of a 0-marked arrow when include_marks.
inline std::string to_gauss_code(const MarkedDiagram& md, bool include_marks = true) {
  const int n = md.d.size();
  std::vector<int> owner(2 * n, -1);
  std::vector<bool> at_head(2 * n, false);
  for (int i = 0; i < n; ++i) {
    owner[md.d.arrows[i].tail] = i;
    owner[md.d.arrows[i].head] = i;
    at_head[md.d.arrows[i].head] = true;
  }
  std::vector<int> id(n, 0);
  int next_id = 0;
  std::string out;
  for (int p = 0; p < 2 * n; ++p) {
    int a = owner[p];
    if (id[a] == 0) id[a] = ++next_id;
    if (p) out.push_back(' ');
    out.push_back(at_head[p] ? 'U' : 'O');
    out += std::to_string(id[a]);
    out.push_back(md.d.arrows[a].sign > 0 ? '+' : '-');
    if (include_marks && md.marks[a] == 0) out += ":0";
  }
  return out;
}

inline std::string to_gauss_code(const GaussDiagram& d) {
  return to_gauss_code(with_marks(d), false);
}

// Loop rotation: relabels endpoint p as p - r (mod 2m), i.e. the scan of the
// rotated diagram starts at old position r.
inline MarkedDiagram rotate_loop(const MarkedDiagram& md, int r) {
  const int pts = md.d.points();
  if (pts == 0) return md;
  MarkedDiagram out = md;
  for (auto& a : out.d.arrows) {
    a.tail = detail::mod(a.tail - r, pts);
    a.head = detail::mod(a.head - r, pts);
  }
  return out;
}

// Canonical string key. Line diagrams: the renumbered code itself. Loop
// diagrams: the lexicographically smallest code over all 2m rotations
// (orientation-preserving symmetries only; no reflections).
inline std::string canonical_key(const MarkedDiagram& md, bool include_marks = true) {
  if (md.d.ambient == Ambient::line || md.d.size() == 0)
    return to_gauss_code(md, include_marks);
  std::string best;
  const int pts = md.d.points();
  for (int r = 0; r < pts; ++r) {
    std::string s = to_gauss_code(rotate_loop(md, r), include_marks);
    if (r == 0 || s < best) best = std::move(s);
  }
  return best;
}

inline std::string canonical_key(const GaussDiagram& d) {
  return canonical_key(with_marks(d), false);
}

inline bool same_diagram(const MarkedDiagram& a, const MarkedDiagram& b, bool include_marks = true) {
  return a.d.ambient == b.d.ambient && canonical_key(a, include_marks) == canonical_key(b, include_marks);
}

// ---------------------------------------------------------------------------
// Chord predicates
// ---------------------------------------------------------------------------

// True iff the endpoints of arrows i and j alternate along the ambient
// 1-manifold (the chords "cross"). i and j index into d.arrows.
inline bool linked(const GaussDiagram& d, int i, int j) {
  if (i == j) return false;
  const Arrow& x = d.arrows[i];
  const Arrow& y = d.arrows[j];
  if (d.ambient == Ambient::line) {
    int lo = std::min(x.tail, x.head), hi = std::max(x.tail, x.head);
    auto inside = [&](int p) { return lo < p && p < hi; };
    return inside(y.tail) != inside(y.head);
  }
  const int pts = d.points();
  // strictly inside the positively-oriented arc tail->head of x
  auto inside = [&](int p) {
    int off = detail::mod(p - x.tail, pts);
    return 0 < off && off < detail::mod(x.head - x.tail, pts);
  };
  return inside(y.tail) != inside(y.head);
}

struct IntersectionGraph {
  std::vector<std::vector<int>> neighbors;
  std::vector<int> degree;
};

inline IntersectionGraph intersection_graph(const GaussDiagram& d) {
  const int n = d.size();
  IntersectionGraph g;
  g.neighbors.assign(n, {});
  g.degree.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (linked(d, i, j)) {
        g.neighbors[i].push_back(j);
        g.neighbors[j].push_back(i);
        ++g.degree[i];
        ++g.degree[j];
      }
  return g;
}

// Evenness criterion: a diagram can come from a classical (planar) knot
// diagram only if every chord meets an even number of others.
inline bool is_classical_candidate(const GaussDiagram& d) {
  for (int deg : intersection_graph(d).degree)
    if (deg % 2 != 0) return false;
  return true;
}

// An arrow whose two endpoints are adjacent along the ambient (a candidate
// for a first Reidemeister move).
inline bool is_isolated_arrow(const GaussDiagram& d, int i) {
  const Arrow& a = d.arrows[i];
  int diff = std::abs(a.tail - a.head);
  if (d.ambient == Ambient::line) return diff == 1;
  const int pts = d.points();
  return diff == 1 || diff == pts - 1;
}

// ---------------------------------------------------------------------------
// Subdiagrams
// ---------------------------------------------------------------------------

// Keeps the arrows listed in `keep` (indices into md.d.arrows, any order) and
// renumbers the surviving endpoints 0..2k-1 preserving their order.
inline MarkedDiagram restrict_to(const MarkedDiagram& md, const std::vector<int>& keep) {
  std::vector<int> pts;
  pts.reserve(2 * keep.size());
  for (int i : keep) {
    pts.push_back(md.d.arrows[i].tail);
    pts.push_back(md.d.arrows[i].head);
  }
  std::sort(pts.begin(), pts.end());
  auto rank = [&](int p) {
    return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin());
  };
  MarkedDiagram out;
  out.d.ambient = md.d.ambient;
  for (int i : keep) {
    out.d.arrows.push_back(
        Arrow{rank(md.d.arrows[i].tail), rank(md.d.arrows[i].head), md.d.arrows[i].sign});
    out.marks.push_back(md.marks[i]);
  }
  return out;
}

inline GaussDiagram restrict_to(const GaussDiagram& d, const std::vector<int>& keep) {
  return restrict_to(with_marks(d), keep).d;
}

// Calls fn(subset) for every arrow subset with |subset| <= max_size (or all
// subsets if max_size < 0), in deterministic order: by size, then
// lexicographically on indices. Includes the empty subset.
template <typename Fn>
void for_each_subdiagram(int n_arrows, int max_size, Fn&& fn) {
  int cap = max_size < 0 ? n_arrows : std::min(max_size, n_arrows);
  std::vector<int> subset;
  for (int k = 0; k <= cap; ++k) {
    subset.assign(k, 0);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      fn(const_cast<const std::vector<int>&>(subset));
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && subset[i] == n_arrows - k + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
}

// ---------------------------------------------------------------------------
// Elementary diagram surgeries
// ---------------------------------------------------------------------------

// Crossing change: the arrow reverses direction and flips sign.
inline GaussDiagram switch_crossing(const GaussDiagram& d, int i) {
  GaussDiagram out = d;
  std::swap(out.arrows[i].tail, out.arrows[i].head);
  out.arrows[i].sign = -out.arrows[i].sign;
  return out;
}

// Virtualization: the arrow reverses direction, sign unchanged.
inline GaussDiagram virtualize_arrow(const GaussDiagram& d, int i) {
  GaussDiagram out = d;
  std::swap(out.arrows[i].tail, out.arrows[i].head);
  return out;
}

inline MarkedDiagram switch_crossing(const MarkedDiagram& md, int i) {
  return MarkedDiagram{switch_crossing(md.d, i), md.marks};
}

inline MarkedDiagram virtualize_arrow(const MarkedDiagram& md, int i) {
  return MarkedDiagram{virtualize_arrow(md.d, i), md.marks};
}

// Z_{2m} action on line diagrams: the generator moves the last endpoint to
// the front, i.e. every endpoint position shifts by +1 (mod 2m).
inline GaussDiagram rotation_act(const GaussDiagram& d, int zeta) {
  if (d.ambient != Ambient::line)
    throw domain_error("rotation_act is defined on line diagrams");
  const int pts = d.points();
  if (pts == 0) throw domain_error("rotation_act needs at least one arrow");
  GaussDiagram out = d;
  for (auto& a : out.arrows) {
    a.tail = detail::mod(a.tail + zeta, pts);
    a.head = detail::mod(a.head + zeta, pts);
  }
  return out;
}

// One-point compactification: reads the same chord data on a loop.
inline GaussDiagram closure(const GaussDiagram& d) {
  if (d.ambient != Ambient::line)
    throw domain_error("closure takes a line diagram");
  GaussDiagram out = d;
  out.ambient = Ambient::loop;
  return out;
}

}  // namespace parity_gauss
