#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "subst/core.hpp"

namespace subst {

enum class SccKind { Trivial, Cycle, Expanding };

// The multigraph G(sigma) on the alphabet, with |sigma(a)|_b edges a -> b,
// together with its SCC structure and reachability closure.
struct MorphismGraph {
  std::vector<std::vector<long long>> matrix;  // matrix[a][b] = |sigma(a)|_b
  std::vector<int> scc_of;                     // letter -> SCC id
  std::vector<std::vector<LetterId>> scc_members;
  std::vector<SccKind> scc_kind;
  std::vector<std::optional<long long>> scc_period;  // absent for trivial
  std::vector<std::vector<char>> reach;  // reflexive-transitive closure

  bool reaches(LetterId a, LetterId b) const { return reach[a][b] != 0; }
  int scc_count() const { return static_cast<int>(scc_kind.size()); }
};

MorphismGraph build_graph(const Morphism& m);

// Witness for a type-2' classification, recorded for explainability.
struct Type2Witness {
  LetterId trivial_letter;
  LetterId cycle_letter;
  long long k = 0;
  long long p = 0;
  Word u, v, w, z;
};

struct LetterClassification {
  std::vector<char> erasable;
  std::vector<std::optional<int>> mex_of;  // only for erasable letters
  std::vector<char> growing;
  std::vector<std::set<std::string>> shift_types;  // subset of {1,2',2'',3}
  std::vector<char> in_shift_language;
  std::vector<std::optional<Type2Witness>> type2p_witness;
  int mex_sigma = 0;  // max mex over erasable letters, 0 if none

  bool letter_in_shift(LetterId a) const { return in_shift_language[a] != 0; }
};

LetterClassification classify_letters(const Morphism& m);

// Smallest (i, p) with sigma^i(a) = sigma^{i+p}(a) for every non-growing a,
// found by direct iteration of the image tuple.
struct StabilizationConstants {
  long long i = 0;
  long long p = 1;
};

StabilizationConstants stabilization_constants(const Morphism& m);

// X(sigma) is non-empty iff some letter belongs to L(X(sigma)).
bool shift_nonempty(const Morphism& m);

}  // namespace subst
