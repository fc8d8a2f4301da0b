#pragma once

// Shared corpus of morphisms used across the test suites. The strings are in
// the morphism file format understood by parse_morphism.

#include <string>
#include <vector>

#include "subst/core.hpp"

namespace corpus {

inline const char* kFibonacci = "a -> ab\nb -> a\n";
inline const char* kThueMorse = "a -> ab\nb -> ba\n";
inline const char* kABab = "a -> a\nb -> bab\n";          // periodic, minimal
inline const char* kAbbB = "a -> abb\nb -> b\n";          // X = {b^inf}
inline const char* kAbAcAc = "a -> ab\nb -> ac\nc -> ac\n";
inline const char* kAbBcCc = "a -> ab\nb -> bc\nc -> cc\n";
inline const char* kECbd = "e -> cbd\nc -> cc\nd -> dd\nb -> ba\na ->\n";
inline const char* kEBcd = "e -> bcd\nc -> cc\nd -> dd\nb -> ba\na ->\n";
inline const char* kBaabEps = "a -> baab\nb ->\n";
inline const char* kBabB = "a -> bab\nb -> b\n";
inline const char* kChacon = "0 -> 0010\n1 -> 1\n";
inline const char* kCassaigneNicolas = "a -> abccc\nb -> baccc\nc ->\n";
inline const char* kTauAbc = "a -> abc\nb -> ac\nc ->\n";
inline const char* kIdentityA = "a -> a\n";
inline const char* kSwap = "a -> b\nb -> a\n";
inline const char* kInfiniteFp = "a -> bc\nb -> bd\nc -> ec\nd -> d\ne -> e\n";
inline const char* kBac = "a -> bac\nb -> b\nc -> c\n";
inline const char* kBaabab = "a -> a\nb -> baabab\n";

inline std::vector<std::string> all() {
  return {kFibonacci, kThueMorse,  kABab,    kAbbB,
          kAbAcAc,    kAbBcCc,     kECbd,    kEBcd,
          kBaabEps,   kBabB,       kChacon,  kCassaigneNicolas,
          kTauAbc,    kIdentityA,  kSwap,    kInfiniteFp,
          kBac,       kBaabab};
}

inline subst::Morphism parse(const char* text) {
  return subst::parse_morphism(text);
}

inline subst::Word w(const subst::Morphism& m, const std::string& s) {
  return subst::parse_word(m.source(), s);
}

}  // namespace corpus
