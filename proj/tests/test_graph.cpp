#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "subst/graph.hpp"

using namespace subst;

namespace {

std::set<std::string> types_of(const LetterClassification& cls,
                               const Morphism& m, const std::string& tok) {
  return cls.shift_types[*m.source().find(tok)];
}

}  // namespace

TEST_CASE("fibonacci graph") {
  Morphism m = corpus::parse(corpus::kFibonacci);
  MorphismGraph g = build_graph(m);
  CHECK(g.matrix == std::vector<std::vector<long long>>{{1, 1}, {1, 0}});
  CHECK(g.scc_count() == 1);
  CHECK(g.scc_kind[0] == SccKind::Expanding);
  CHECK(g.scc_period[0] == 1);
  CHECK(g.reaches(0, 1));
  CHECK(g.reaches(1, 0));
}

TEST_CASE("single loop is a cycle scc of period 1") {
  Morphism m = corpus::parse(corpus::kIdentityA);
  MorphismGraph g = build_graph(m);
  CHECK(g.scc_count() == 1);
  CHECK(g.scc_kind[0] == SccKind::Cycle);
  CHECK(g.scc_period[0] == 1);
}

TEST_CASE("swap has one cycle scc of period 2") {
  Morphism m = corpus::parse(corpus::kSwap);
  MorphismGraph g = build_graph(m);
  CHECK(g.scc_count() == 1);
  CHECK(g.scc_kind[0] == SccKind::Cycle);
  CHECK(g.scc_period[0] == 2);
}

TEST_CASE("scc kinds for a->bab, b->cd, c->c, d->d") {
  Morphism m = parse_morphism("a -> bab\nb -> cd\nc -> c\nd -> d\n");
  MorphismGraph g = build_graph(m);
  auto kind = [&](const char* tok) {
    return g.scc_kind[g.scc_of[*m.source().find(tok)]];
  };
  // a has one internal self-edge: a cycle component; b is trivial
  CHECK(kind("a") == SccKind::Cycle);
  CHECK(kind("b") == SccKind::Trivial);
  CHECK(kind("c") == SccKind::Cycle);
  CHECK(kind("d") == SccKind::Cycle);
  CHECK(g.scc_period[g.scc_of[*m.source().find("a")]] == 1);
}

TEST_CASE("erasable letters and mortality exponents") {
  Morphism m = corpus::parse(corpus::kECbd);
  LetterClassification cls = classify_letters(m);
  LetterId a = *m.source().find("a");
  CHECK(cls.erasable[a]);
  CHECK(cls.mex_of[a] == 1);
  CHECK(cls.mex_sigma == 1);
  for (auto tok : {"e", "c", "d", "b"})
    CHECK_FALSE(cls.erasable[*m.source().find(tok)]);

  Morphism tau = corpus::parse(corpus::kTauAbc);
  LetterClassification ct = classify_letters(tau);
  LetterId c = *tau.source().find("c");
  CHECK(ct.erasable[c]);
  CHECK(ct.mex_of[c] == 1);
  // mex(w) <= Card(A) invariant
  CHECK(ct.mex_sigma <= tau.source().size());
}

TEST_CASE("growing letters") {
  Morphism m = corpus::parse(corpus::kAbBcCc);
  LetterClassification cls = classify_letters(m);
  for (auto tok : {"a", "b", "c"}) CHECK(cls.growing[*m.source().find(tok)]);

  Morphism e = corpus::parse(corpus::kECbd);
  LetterClassification ce = classify_letters(e);
  CHECK(ce.growing[*e.source().find("e")]);
  CHECK(ce.growing[*e.source().find("c")]);
  CHECK(ce.growing[*e.source().find("d")]);
  CHECK_FALSE(ce.growing[*e.source().find("b")]);  // sigma^n(b) = ba forever
  CHECK_FALSE(ce.growing[*e.source().find("a")]);

  Morphism bac = corpus::parse(corpus::kBac);
  LetterClassification cb = classify_letters(bac);
  CHECK(cb.growing[*bac.source().find("a")]);  // |sigma^n(a)| = 2n+1
  CHECK_FALSE(cb.growing[*bac.source().find("b")]);
}

TEST_CASE("letter types: a->ab, b->bc, c->cc") {
  Morphism m = corpus::parse(corpus::kAbBcCc);
  LetterClassification cls = classify_letters(m);
  CHECK(types_of(cls, m, "c") == std::set<std::string>{"1", "3"});
  CHECK(types_of(cls, m, "b") == std::set<std::string>{"3"});
  CHECK(types_of(cls, m, "a").empty());
  CHECK_FALSE(cls.letter_in_shift(*m.source().find("a")));
}

TEST_CASE("letter types: example with 2' letters") {
  Morphism m = corpus::parse(corpus::kECbd);
  LetterClassification cls = classify_letters(m);
  CHECK(types_of(cls, m, "a") == std::set<std::string>{"2'"});
  CHECK(types_of(cls, m, "b") == std::set<std::string>{"2'"});
  CHECK(types_of(cls, m, "c") == std::set<std::string>{"1"});
  CHECK(types_of(cls, m, "d") == std::set<std::string>{"1"});
  CHECK(types_of(cls, m, "e").empty());
  // the witness carries the defining factorization
  auto wit = cls.type2p_witness[*m.source().find("b")];
  REQUIRE(wit.has_value());
  CHECK(wit->cycle_letter == *m.source().find("b"));
}

TEST_CASE("letter types: all 2'' for a->bac, b->b, c->c") {
  Morphism m = corpus::parse(corpus::kBac);
  LetterClassification cls = classify_letters(m);
  // b and c additionally satisfy the type-3 definition (their components are
  // reachable from the cycle component of a); letters may have several types
  CHECK(types_of(cls, m, "a") == std::set<std::string>{"2''"});
  CHECK(types_of(cls, m, "b").count("2''"));
  CHECK(types_of(cls, m, "c").count("2''"));
  for (auto tok : {"a", "b", "c"})
    CHECK(cls.letter_in_shift(*m.source().find(tok)));
}

TEST_CASE("same multigraph, different types") {
  Morphism s = corpus::parse(corpus::kECbd);
  Morphism t = corpus::parse(corpus::kEBcd);
  CHECK(build_graph(s).matrix == build_graph(t).matrix);
  LetterClassification cs = classify_letters(s);
  LetterClassification ct = classify_letters(t);
  LetterId bs = *s.source().find("b");
  LetterId bt = *t.source().find("b");
  CHECK(cs.letter_in_shift(bs));
  CHECK_FALSE(ct.letter_in_shift(bt));
}

TEST_CASE("stabilization constants") {
  Morphism m1 = corpus::parse(corpus::kAbbB);
  StabilizationConstants s1 = stabilization_constants(m1);
  CHECK(s1.i == 0);
  CHECK(s1.p == 1);

  Morphism m2 = corpus::parse(corpus::kBaabEps);
  StabilizationConstants s2 = stabilization_constants(m2);
  CHECK(s2.i == 1);
  CHECK(s2.p == 1);

  Morphism m3 = corpus::parse(corpus::kECbd);
  StabilizationConstants s3 = stabilization_constants(m3);
  CHECK(s3.i == 1);
  CHECK(s3.p == 1);

  // invariant on the whole corpus
  for (const auto& text : corpus::all()) {
    Morphism m = parse_morphism(text);
    StabilizationConstants st = stabilization_constants(m);
    LetterClassification cls = classify_letters(m);
    for (LetterId a = 0; a < m.source().size(); ++a) {
      if (cls.growing[a]) continue;
      CHECK(m.iterate_letter(a, st.i) == m.iterate_letter(a, st.i + st.p));
    }
  }
}

TEST_CASE("shift_nonempty") {
  CHECK(shift_nonempty(corpus::parse(corpus::kFibonacci)));
  CHECK(shift_nonempty(corpus::parse(corpus::kAbbB)));
  CHECK_FALSE(shift_nonempty(corpus::parse(corpus::kIdentityA)));
  CHECK_FALSE(shift_nonempty(corpus::parse(corpus::kSwap)));
}
