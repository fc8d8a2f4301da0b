#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "subst/core.hpp"
#include "subst/graph.hpp"
#include "subst/langtools.hpp"

namespace subst {

// Eventually periodic two-sided point ^w u . c v^w. Canonical form: periodic
// points carry the least primitive conjugate on both sides with empty center;
// heteroclinic points are aligned at the boundary where the left periodicity
// stops, which makes the representation unique per orbit.
struct EPPoint {
  Word left_period;
  Word center;
  Word right_period;
  int origin_offset = 0;

  bool periodic() const {
    return center.empty() && left_period == right_period;
  }
  bool operator==(const EPPoint& o) const {
    return left_period == o.left_period && center == o.center &&
           right_period == o.right_period;
  }
  bool operator<(const EPPoint& o) const {
    if (left_period != o.left_period) return left_period < o.left_period;
    if (center != o.center) return center < o.center;
    return right_period < o.right_period;
  }
};

// Canonicalizes an arbitrary ^w u . c v^w description (u, v nonempty).
EPPoint canonical_ep(const Word& u, const Word& c, const Word& v);

struct FixedPointDescriptor {
  enum class Shape {
    EventuallyPeriodic,  // ^w u . c v^w, all parts fixed words
    LeftEPRightSeed,     // ^w u . c sigma^w(t)
    LeftSeedRightEP,     // sigma^~w(t) c . v^w
    TwoSeed              // sigma^~w(r) . sigma^w(s)
  };
  Shape shape;
  long long power = 1;  // the point is fixed by sigma^power
  Word left;            // period word or left seed
  Word center;          // sigma^power-fixed junction (empty for TwoSeed)
  Word right;           // period word or right seed

  bool left_is_seed() const {
    return shape == Shape::LeftSeedRightEP || shape == Shape::TwoSeed;
  }
  bool right_is_seed() const {
    return shape == Shape::LeftEPRightSeed || shape == Shape::TwoSeed;
  }
};

struct QuasiFixedDescriptor {
  enum class Shape { ShiftedFixed, LetterContext, Rotating };
  Shape shape;
  long long power = 1;
  std::optional<FixedPointDescriptor> fixed;  // ShiftedFixed
  LetterId letter = -1;                       // LetterContext: s^k(a) = u a v
  Word ctx_left, ctx_right;
  Word rot_u, rot_v;  // Rotating: s^k(uv) = vu, (uv)^inf
};

// Finite window [-left, right) of the described point, origin at the start
// of the center (for TwoSeed: at the start of the right seed).
Word expand_fixed(const Morphism& m, const FixedPointDescriptor& d,
                  long long left, long long right);
Word expand_quasi(const Morphism& m, const QuasiFixedDescriptor& d,
                  long long left, long long right);

// A(sigma) and F(sigma) = {sigma^{Card A}(a) : a in A(sigma)}; the finite
// fixed points are the submonoid generated by F.
std::pair<std::set<LetterId>, std::set<Word>> finite_fixed_points(
    const Morphism& m);

struct PointEnumerationOptions {
  std::optional<long long> k_max;  // cap on the engine power
  long long junction_cap = 12;     // longest junction gap enumerated
  long long image_cap = 10000000;
};

struct FixedOrbits {
  std::vector<FixedPointDescriptor> orbits;
  long long engine_power = 1;
};

FixedOrbits enumerate_fixed_orbits(const Morphism& m,
                                   const PointEnumerationOptions& opt = {});

// Orbits of points of X(sigma) made of non-growing letters only.
std::vector<EPPoint> non_growing_orbits(const Morphism& m,
                                        const PointEnumerationOptions& opt = {});

std::vector<QuasiFixedDescriptor> enumerate_quasi_fixed_orbits(
    const Morphism& m, const PointEnumerationOptions& opt = {});

// Minimal period <= bound of the described point, absent when aperiodic.
// `bound` must dominate the true period bound for the morphism.
std::optional<long long> descriptor_period(const Morphism& m,
                                           const FixedPointDescriptor& d,
                                           long long bound);
std::optional<long long> quasi_descriptor_period(const Morphism& m,
                                                 const QuasiFixedDescriptor& d,
                                                 long long bound);

// True iff the expansions of the two descriptors match under some shift
// (desk-scale orbit equality; window grows with the part sizes).
bool same_orbit(const Morphism& m, const FixedPointDescriptor& a,
                const FixedPointDescriptor& b);

std::string render_fixed(const Morphism& m, const FixedPointDescriptor& d);
std::string render_quasi(const Morphism& m, const QuasiFixedDescriptor& d);
std::string render_ep(const Morphism& m, const EPPoint& p);

}  // namespace subst
