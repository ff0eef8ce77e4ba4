#pragma once

// Checks that a candidate parity rule satisfies the parity axioms across
// concrete move instances, that the arrow index behaves as the moves demand,
// and that rules ignore crossing switches.

#include <cstdint>
#include <string>
#include <vector>

#include "parity_gauss/core.hpp"
#include "parity_gauss/moves.hpp"
#include "parity_gauss/parity.hpp"

namespace parity_gauss {

struct AxiomReport {
  long long instances_checked = 0;
  long long violation_count = 0;
  std::vector<std::string> samples;  // first few offending instances
  bool ok() const { return violation_count == 0; }
};

namespace detail {

inline void report_violation(AxiomReport& rep, const std::string& what,
                             const MoveInstance& mi) {
  ++rep.violation_count;
  if (rep.samples.size() < 20)
    rep.samples.push_back(what + "  lhs=\"" + to_gauss_code(mi.lhs.d) + "\"  rhs=\"" +
                          to_gauss_code(mi.rhs.d) + "\"");
}

}  // namespace detail

// One instance against the axioms: the curl arrow is even, a slide pair
// agrees, a triangle triple sums to zero mod 2 and corresponds across the
// move, and untouched arrows keep their marks.
inline void check_parity_axioms(const ParityRule& rule, const MoveInstance& mi,
                                AxiomReport& rep) {
  ++rep.instances_checked;
  const std::vector<std::uint8_t> ml = rule(mi.lhs.d);
  const std::vector<std::uint8_t> mr = rule(mi.rhs.d);
  for (std::size_t t = 0; t < mi.context_lhs.size(); ++t)
    if (ml[mi.context_lhs[t]] != mr[mi.context_rhs[t]]) {
      detail::report_violation(rep, "context mark changed", mi);
      break;
    }
  switch (mi.kind) {
    case MoveKind::r1: {
      const auto& aff = mi.affected_lhs.empty() ? mi.affected_rhs : mi.affected_lhs;
      const auto& mk = mi.affected_lhs.empty() ? mr : ml;
      if (mk[aff[0]] != 0) detail::report_violation(rep, "curl arrow is odd", mi);
      break;
    }
    case MoveKind::r2: {
      const auto& aff = mi.affected_lhs.empty() ? mi.affected_rhs : mi.affected_lhs;
      const auto& mk = mi.affected_lhs.empty() ? mr : ml;
      if (mk[aff[0]] != mk[aff[1]])
        detail::report_violation(rep, "slide pair marks differ", mi);
      break;
    }
    case MoveKind::r3: {
      const int sum =
          ml[mi.affected_lhs[0]] + ml[mi.affected_lhs[1]] + ml[mi.affected_lhs[2]];
      if (sum % 2 != 0) detail::report_violation(rep, "triangle marks sum to 1", mi);
      for (int t = 0; t < 3; ++t)
        if (ml[mi.affected_lhs[t]] != mr[mi.affected_rhs[t]]) {
          detail::report_violation(rep, "triangle correspondence broken", mi);
          break;
        }
      break;
    }
  }
}

inline AxiomReport verify_parity_axioms(const ParityRule& rule,
                                        const std::vector<MoveInstance>& instances) {
  AxiomReport rep;
  for (const MoveInstance& mi : instances) check_parity_axioms(rule, mi, rep);
  return rep;
}

// Exhaustive sweep: every generated instance within the arrow bound, not a
// sample.
inline AxiomReport verify_parity_axioms(const ParityRule& rule, int max_total_arrows,
                                        Ambient ambient) {
  if (rule.line_only && ambient != Ambient::line)
    throw domain_error("parity rule '" + rule.name + "' is defined on the line only");
  AxiomReport rep;
  move_instance_pairs(max_total_arrows, ambient, MarkMode::unmarked,
                      [&](const MoveInstance& mi) { check_parity_axioms(rule, mi, rep); });
  return rep;
}

// The index across a move: untouched arrows keep their index, a curl arrow
// has index 0, a slide pair has opposite indices, and triangle arrows keep
// their index through the slide.  Line diagrams only.
inline void check_index_lemma(const MoveInstance& mi, AxiomReport& rep) {
  if (mi.lhs.d.ambient != Ambient::line)
    throw domain_error("the index is defined for line diagrams only");
  ++rep.instances_checked;
  const std::vector<int> il = index_vector(mi.lhs.d);
  const std::vector<int> ir = index_vector(mi.rhs.d);
  for (std::size_t t = 0; t < mi.context_lhs.size(); ++t)
    if (il[mi.context_lhs[t]] != ir[mi.context_rhs[t]]) {
      detail::report_violation(rep, "context index changed", mi);
      break;
    }
  switch (mi.kind) {
    case MoveKind::r1: {
      const auto& aff = mi.affected_lhs.empty() ? mi.affected_rhs : mi.affected_lhs;
      const auto& iv = mi.affected_lhs.empty() ? ir : il;
      if (iv[aff[0]] != 0) detail::report_violation(rep, "curl arrow has index != 0", mi);
      break;
    }
    case MoveKind::r2: {
      const auto& aff = mi.affected_lhs.empty() ? mi.affected_rhs : mi.affected_lhs;
      const auto& iv = mi.affected_lhs.empty() ? ir : il;
      if (iv[aff[0]] != -iv[aff[1]])
        detail::report_violation(rep, "slide pair indices are not opposite", mi);
      break;
    }
    case MoveKind::r3: {
      for (int t = 0; t < 3; ++t)
        if (il[mi.affected_lhs[t]] != ir[mi.affected_rhs[t]]) {
          detail::report_violation(rep, "triangle index changed", mi);
          break;
        }
      break;
    }
  }
}

inline AxiomReport verify_index_lemma(const std::vector<MoveInstance>& instances) {
  AxiomReport rep;
  for (const MoveInstance& mi : instances) check_index_lemma(mi, rep);
  return rep;
}

inline AxiomReport verify_index_lemma(int max_total_arrows) {
  AxiomReport rep;
  move_instance_pairs(max_total_arrows, Ambient::line, MarkMode::unmarked,
                      [&](const MoveInstance& mi) { check_index_lemma(mi, rep); });
  return rep;
}

// A rule is switch symmetric when reversing a crossing (direction and sign
// together) never changes any mark.
inline bool is_switch_symmetric(const ParityRule& rule,
                                const std::vector<GaussDiagram>& sample) {
  for (const GaussDiagram& d : sample) {
    const std::vector<std::uint8_t> base = rule(d);
    for (int x = 0; x < static_cast<int>(d.arrows.size()); ++x)
      if (rule(switch_crossing(d, x)) != base) return false;
  }
  return true;
}

}  // namespace parity_gauss
