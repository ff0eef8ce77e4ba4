#pragma once

// Formal integer combinations of canonical diagram keys, the mark-decorated
// and plain subdiagram expansions, and the diagram pairing they feed.

#include <map>
#include <string>

#include "parity_gauss/core.hpp"
#include "parity_gauss/exact_linalg.hpp"
#include "parity_gauss/parity.hpp"

namespace parity_gauss {

struct FormalSum {
  Ambient ambient = Ambient::line;
  std::map<std::string, Int> terms;  // canonical key -> coefficient, no zeros
};

inline void add_term(FormalSum& s, const std::string& key, const Int& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = s.terms.try_emplace(key, coeff);
  if (fresh) return;
  it->second += coeff;
  if (it->second == 0) s.terms.erase(it);
}

// Sum of all subdiagrams with at most max_size arrows (all of them when
// max_size is negative).  Marks come from the rule applied to the WHOLE
// diagram and are carried along into each restriction — an arrow keeps the
// parity it has in D even when the subdiagram alone would grade it
// differently.
inline FormalSum expand_I(const GaussDiagram& d, const ParityRule& rule, int max_size) {
  if (rule.line_only && d.ambient != Ambient::line)
    throw domain_error("parity rule '" + rule.name + "' needs a line diagram");
  MarkedDiagram md{d, rule.eval(d)};
  FormalSum out{d.ambient, {}};
  for_each_subdiagram(d.size(), max_size, [&](const std::vector<int>& subset) {
    add_term(out, canonical_key(restrict_to(md, subset)), Int(1));
  });
  return out;
}

// The unmarked (parity-free) subdiagram expansion.
inline FormalSum expand_I_gpv(const GaussDiagram& d, int max_size) {
  FormalSum out{d.ambient, {}};
  for_each_subdiagram(d.size(), max_size, [&](const std::vector<int>& subset) {
    add_term(out, canonical_key(restrict_to(d, subset)), Int(1));
  });
  return out;
}

// Inverse of the untruncated unmarked expansion: the alternating subdiagram
// sum.  Composing the two is the identity on single-diagram sums because the
// inner alternating sums cancel everywhere except on the full diagram.
inline FormalSum inverse_I_gpv(const FormalSum& a) {
  FormalSum out{a.ambient, {}};
  for (const auto& [key, coeff] : a.terms) {
    GaussDiagram d = parse_gauss_code_unmarked(key, a.ambient);
    for_each_subdiagram(d.size(), -1, [&](const std::vector<int>& subset) {
      Int signed_coeff =
          (d.size() - static_cast<int>(subset.size())) % 2 == 0 ? coeff : -coeff;
      add_term(out, canonical_key(restrict_to(d, subset)), signed_coeff);
    });
  }
  return out;
}

// <F, S>: diagrams pair to 1 exactly with themselves, so this is the sum of
// coefficient products over shared keys.
inline Int pairing(const FormalSum& f, const FormalSum& s) {
  if (f.ambient != s.ambient)
    throw domain_error("pairing needs both sums on the same ambient");
  const FormalSum& small = f.terms.size() <= s.terms.size() ? f : s;
  const FormalSum& large = f.terms.size() <= s.terms.size() ? s : f;
  Int acc = 0;
  for (const auto& [key, coeff] : small.terms) {
    auto it = large.terms.find(key);
    if (it != large.terms.end()) acc += coeff * it->second;
  }
  return acc;
}

}  // namespace parity_gauss
