#pragma once

#include <set>
#include <vector>

#include "subst/core.hpp"
#include "subst/graph.hpp"

namespace subst {

// Square boolean matrix, rows packed in 64-bit words.
class BoolMat {
 public:
  BoolMat() : n_(0) {}
  explicit BoolMat(int n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  static BoolMat identity(int n);

  int dim() const { return n_; }
  bool get(int i, int j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1;
  }
  void set(int i, int j) { bits_[i * words_ + j / 64] |= uint64_t(1) << (j % 64); }

  BoolMat operator*(const BoolMat& o) const;
  bool operator==(const BoolMat& o) const {
    return n_ == o.n_ && bits_ == o.bits_;
  }
  bool operator<(const BoolMat& o) const { return bits_ < o.bits_; }
  bool any() const;

 private:
  int n_;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

// Complete deterministic automaton recognizing A*uA* (states = prefix
// lengths of u, final state absorbing), as in the transition-monoid proofs.
struct PatternAutomaton {
  int states = 1;
  int initial = 0;
  int final_state = 0;
  std::vector<std::vector<int>> delta;  // [state][letter]

  static PatternAutomaton factor(int alphabet_size, const Word& u);

  BoolMat relation(const Word& w) const;
  BoolMat letter_relation(LetterId a) const;
};

// The eventually periodic sequence psi_n = phi . sigma^n of relation tuples,
// cut at the first repetition.
struct MonoidTrace {
  std::vector<std::vector<BoolMat>> psi;  // psi[k][letter], k <= preperiod+period
  long long preperiod = 0;
  long long period = 1;

  bool accepting(long long k, const PatternAutomaton& aut) const;
};

MonoidTrace monoid_trace(const Morphism& m, const PatternAutomaton& aut,
                         long long cap_steps = 100000);

// u in L(sigma)?
bool member_language(const Morphism& m, const Word& u);

// Is u a factor of sigma^n(a), some a, for infinitely many n?
bool infinitely_often_factor(const Morphism& m, const Word& u);

// Is L(sigma) restricted to (A \ {avoid})* infinite? Decided through the
// monoid trace and through G(sigma); the two routes are asserted equal.
bool avoiding_factors_infinite(const Morphism& m, LetterId avoid);

struct ShiftLanguageConstants {
  long long N = 0;  // max |sigma^n(a)|, a non-growing
  long long M = 0;  // max |sigma^n(a)|, a erasable
  long long r = 0;  // max |sigma^i|, 0 <= i <= Card(A)^2
  long long K = 0;  // (N+M)*r
};

ShiftLanguageConstants shift_language_constants(const Morphism& m);

struct ShiftMemberOptions {
  long long candidate_cap = 1000000;  // extension candidates tried
  long long k_override = -1;          // use instead of the computed K if >= 0
  // Longest extension actually enumerated. A search that dies earlier still
  // yields an exact "false"; surviving to this cap with K beyond it raises
  // CapExceeded instead of guessing.
  long long enum_length_cap = 64;
};

// u in L(X(sigma))? Exact via the length-K two-sided extension criterion;
// single letters short-circuit through the letter types.
bool member_shift_language(const Morphism& m, const Word& u,
                           const ShiftMemberOptions& opt = {});

// L(sigma) = L(X(sigma))?
bool languages_equal(const Morphism& m);

struct FactorOracleOptions {
  long long max_words = 2000000;  // total distinct factors tracked
  long long cap_steps = 4096;     // iterations before declaring failure
};

// Exact set of length-n factors of L(sigma); stops at a certified fixpoint
// (repetition of the bounded factor-summary tuple).
std::set<Word> factors_oracle(const Morphism& m, int n,
                              const FactorOracleOptions& opt = {});

// Exact set of factors of length <= n.
std::set<Word> factors_up_to(const Morphism& m, int n,
                             const FactorOracleOptions& opt = {});

// The finite set of words over erasable letters lying in L(sigma).
std::set<Word> erasable_words(const Morphism& m);

}  // namespace subst
