#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "subst/core.hpp"

using namespace subst;

TEST_CASE("parse fibonacci") {
  Morphism m = corpus::parse(corpus::kFibonacci);
  CHECK(m.source().size() == 2);
  CHECK(m.source().token(0) == "a");
  CHECK(m.source().token(1) == "b");
  CHECK(m.image(0).render(m.source()) == "ab");
  CHECK(m.image(1).render(m.source()) == "a");
  CHECK(m.image_length_sum() == 3);
  CHECK(m.size() == 5);
}

TEST_CASE("parse identity and erasing rules") {
  Morphism id = corpus::parse(corpus::kIdentityA);
  CHECK(id.source().size() == 1);
  CHECK(id.image(0).render(id.source()) == "a");

  Morphism m = corpus::parse(corpus::kBaabEps);
  CHECK(m.image(0).render(m.source()) == "baab");
  CHECK(m.image(1).empty());
  CHECK(m.is_erasing());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_morphism("a -> ab\na -> b\n"), ParseError);
  CHECK_THROWS_AS(parse_morphism("a -> ax\n"), ParseError);
  CHECK_THROWS_AS(parse_morphism("a = ab\n"), ParseError);
  CHECK_THROWS_AS(parse_morphism("# only a comment\n"), ParseError);
  try {
    parse_morphism("a -> ab\nb -> q\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("multi-token alphabets parse with spaces") {
  Morphism m = parse_morphism("x.1 -> x.1 x.2\nx.2 -> x.1\n");
  CHECK(m.source().token(0) == "x.1");
  CHECK(m.image(0).size() == 2);
  CHECK(m.serialize() == "x.1 -> x.1 x.2\nx.2 -> x.1\n");
}

TEST_CASE("apply") {
  Morphism fib = corpus::parse(corpus::kFibonacci);
  CHECK(fib.apply(corpus::w(fib, "ab")).render(fib.source()) == "aba");
  CHECK(fib.apply(Word{}).empty());

  Morphism tm = corpus::parse(corpus::kThueMorse);
  Word twice = tm.apply(tm.apply(corpus::w(tm, "a")));
  CHECK(twice.render(tm.source()) == "abba");

  Morphism ba = corpus::parse(corpus::kBaabEps);
  CHECK(ba.apply(corpus::w(ba, "baab")).render(ba.source()) == "baabbaab");
}

TEST_CASE("compose and power") {
  Morphism fib = corpus::parse(corpus::kFibonacci);
  Morphism fib2 = fib.power(2);
  CHECK(fib2.image(0).render(fib.source()) == "aba");
  CHECK(fib2.image(1).render(fib.source()) == "ab");

  Morphism id = fib.power(0);
  CHECK(id == Morphism::identity(fib.source()));

  // |m^n(a)| = 2n+1: iterating abb -> abbbb -> abbbbbb
  Morphism m = parse_morphism("a -> abb\nb -> b\n");
  Morphism m3 = m.power(3);
  CHECK(m3.image(0).render(m.source()) == "abbbbbb");
  CHECK(m3.image(0) == m.apply(m.apply(m.apply(corpus::w(m, "a")))));
  CHECK(m3.image(1).render(m.source()) == "b");
}

TEST_CASE("power image cap") {
  Morphism tm = corpus::parse(corpus::kThueMorse);
  CHECK_THROWS_AS(tm.power(60), CapExceeded);
}

TEST_CASE("derivation trees") {
  Morphism fib = corpus::parse(corpus::kFibonacci);
  DerivationTree t = derivation_tree(fib, 0, 2);
  CHECK(t.nodes[t.root].letter == 0);
  REQUIRE(t.nodes[t.root].children.size() == 2);
  int c0 = t.nodes[t.root].children[0];
  int c1 = t.nodes[t.root].children[1];
  CHECK(t.nodes[c0].letter == 0);
  CHECK(t.nodes[c1].letter == 1);
  CHECK(t.nodes[c0].children.size() == 2);
  CHECK(t.nodes[c1].children.size() == 1);
  CHECK(t.frontier() == fib.power(2).image(0));

  DerivationTree t0 = derivation_tree(fib, 0, 0);
  CHECK(t0.nodes.size() == 1);
  CHECK(t0.frontier().render(fib.source()) == "a");

  Morphism ba = corpus::parse(corpus::kBaabEps);
  DerivationTree t2 = derivation_tree(ba, 0, 2);
  CHECK(t2.frontier().render(ba.source()) == "baabbaab");
}

TEST_CASE("serialize round trip over the corpus") {
  for (const auto& text : corpus::all()) {
    Morphism m = parse_morphism(text);
    CHECK(parse_morphism(m.serialize()) == m);
  }
}

TEST_CASE("word primitives") {
  Morphism fib = corpus::parse(corpus::kFibonacci);
  Word abab = corpus::w(fib, "abab");
  CHECK_FALSE(is_primitive(abab));
  CHECK(primitive_root(abab) == corpus::w(fib, "ab"));
  CHECK(is_primitive(corpus::w(fib, "aab")));
  CHECK(least_conjugate(corpus::w(fib, "baa")) == corpus::w(fib, "aab"));
  CHECK(are_conjugate(corpus::w(fib, "ab"), corpus::w(fib, "ba")));
  CHECK_FALSE(are_conjugate(corpus::w(fib, "ab"), corpus::w(fib, "aa")));
  CHECK(is_power_of_conjugate(corpus::w(fib, "abab"), corpus::w(fib, "ba")));
  CHECK_FALSE(is_power_of_conjugate(corpus::w(fib, "abaa"), corpus::w(fib, "ba")));
  CHECK(conjugates(corpus::w(fib, "aa")).size() == 1);
}
