#pragma once

#include <utility>
#include <vector>

#include "subst/core.hpp"
#include "subst/decide.hpp"

namespace subst {

// k-th higher block presentation of a non-erasing endomorphism.
struct BlockSystem {
  int k = 1;
  Alphabet block_alphabet;            // tokens <u>
  std::vector<Word> blocks;           // block letter -> its k-word over A
  Morphism sigma_k;                   // endomorphism of the block alphabet
  Morphism projection;                // pi_k: block -> first letter
};

BlockSystem higher_block(const Morphism& m, int k);

// Extension tau over A + A x {1..p-1} with X(tau^n) = X(tau) = X(sigma).
Morphism power_stabilize(const Morphism& m);

// Cobham normalization: theta . gamma = phi . tau^m, zeta . gamma =
// gamma . tau^n, zeta non-erasing, theta letter-to-letter.
struct Normalization {
  Morphism gamma;  // B* -> C*
  Morphism zeta;   // C* -> C*, non-erasing
  Morphism theta;  // C* -> A*, letter-to-letter
  long long m = 0;
  long long n = 1;
};

struct NormalizeOptions {
  long long search_cap = 64;  // cap on the (m, n) index search
};

Normalization cobham_normalize(const Morphism& tau, const Morphism& phi,
                               const Word& seed,
                               const NormalizeOptions& opt = {});

struct ReturnWordSystem {
  Word left, right;                // the anchor pair (r, l)
  long long power = 1;             // sigma^power fixes the anchored point
  std::vector<Word> return_words;  // U = R(r . l), sorted
  Alphabet coding_alphabet;        // B, one letter per return word
  Morphism phi;                    // B* -> A*, b_i -> u_i
  Morphism tau;                    // derived endomorphism of B*
};

ReturnWordSystem return_words(const Morphism& m, const Word& r, const Word& l);

// (tau primitive, phi) with X(sigma) conjugate to X(tau); requires a minimal
// morphism. The periodic case short-circuits to the constant morphism onto
// the period word.
std::pair<Morphism, Morphism> primitive_conjugate(const Morphism& m);

// Rauzy refinement: (zeta primitive, theta letter-to-letter) from a
// primitive sigma and a circular phi.
std::pair<Morphism, Morphism> rauzy_refine(const Morphism& sigma,
                                           const Morphism& phi);

}  // namespace subst
