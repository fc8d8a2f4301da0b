#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subst/core.hpp"
#include "subst/points.hpp"

namespace subst {

// Exact rational arithmetic on 64-bit numerator/denominator with overflow
// guards; plenty for letter-count matrices at desk scale.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
  bool operator<(const Rational& o) const;
  bool is_zero() const { return num == 0; }
  bool negative() const { return num < 0; }
  std::string str() const;
};

struct EigenPair {
  long long eigenvalue = 0;
  std::vector<Rational> vec;  // left eigenvector, >= 0, != 0
};

struct PeriodBound {
  Rational rho;
  long long bound = 1;  // max(ceil((2 rho + 1)(|A|+1)), non-growing periods)
  std::vector<EigenPair> eigen_data;
};

PeriodBound period_bound(const Morphism& m);

struct Decomposition {
  Morphism beta;   // A* -> B*
  Morphism alpha;  // B* -> A*
  std::vector<Word> blocks;  // alpha images, over A
};

// Witnessing decomposition through a smaller alphabet, or nullopt when the
// morphism is elementary.
std::optional<Decomposition> elementary_decomposition(
    const Morphism& m, long long node_cap = 2000000);

inline bool is_elementary(const Morphism& m) {
  return !elementary_decomposition(m).has_value();
}

// All orbits w^inf in X(sigma) containing a growing letter, as pairs
// (least conjugate of the primitive period word, power permuting the orbit).
std::vector<std::pair<Word, long long>> growing_periodic_orbits(
    const Morphism& m);

enum class Outcome { True, False, HypothesisNotMet, EmptyShift };

struct Decision {
  Outcome outcome;
  std::string witness;  // rendered witness or note

  bool truth() const { return outcome == Outcome::True; }
};

Decision is_aperiodic(const Morphism& m);
Decision is_periodic_shift(const Morphism& m);
Decision is_fully_recognizable(const Morphism& m);
Decision is_irreducible(const Morphism& m);
Decision is_minimal(const Morphism& m);

std::string outcome_name(Outcome o);

}  // namespace subst
