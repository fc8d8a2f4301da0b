#include "subst/decide.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "subst/langtools.hpp"

namespace subst {

namespace {

long long safe_ll(__int128 v, const char* what) {
  if (v > static_cast<__int128>(9223372036854775807LL) ||
      v < -static_cast<__int128>(9223372036854775807LL))
    throw CapExceeded(std::string(what) + ": rational overflow");
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw DomainError("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.den +
               static_cast<__int128>(o.num) * den;
  __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(safe_ll(n, "+"), safe_ll(d, "+"));
}

Rational Rational::operator-(const Rational& o) const {
  return *this + Rational(-o.num, o.den);
}

Rational Rational::operator*(const Rational& o) const {
  __int128 n = static_cast<__int128>(num) * o.num;
  __int128 d = static_cast<__int128>(den) * o.den;
  return Rational(safe_ll(n, "*"), safe_ll(d, "*"));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num == 0) throw DomainError("division by zero");
  return *this * Rational(o.den, o.num);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num) * o.den <
         static_cast<__int128>(o.num) * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

// Nullspace basis of the |S| x |S| system z^T (M_S - n I) = 0 over the
// rationals, via Gauss-Jordan on the transposed system.
std::vector<std::vector<Rational>> left_eigen_nullspace(
    const std::vector<std::vector<long long>>& mat,
    const std::vector<int>& support, long long n) {
  int k = static_cast<int>(support.size());
  // equations indexed by b in S: sum_a z_a M[a][b] - n z_b = 0
  std::vector<std::vector<Rational>> eq(k, std::vector<Rational>(k));
  for (int bi = 0; bi < k; ++bi)
    for (int ai = 0; ai < k; ++ai) {
      Rational v(mat[support[ai]][support[bi]]);
      if (ai == bi) v = v - Rational(n);
      eq[bi][ai] = v;
    }
  // row reduce
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < k && row < k; ++col) {
    int sel = -1;
    for (int r = row; r < k; ++r)
      if (!eq[r][col].is_zero()) {
        sel = r;
        break;
      }
    if (sel == -1) continue;
    std::swap(eq[sel], eq[row]);
    Rational inv = Rational(1) / eq[row][col];
    for (int c = 0; c < k; ++c) eq[row][c] = eq[row][c] * inv;
    for (int r = 0; r < k; ++r) {
      if (r == row || eq[r][col].is_zero()) continue;
      Rational f = eq[r][col];
      for (int c = 0; c < k; ++c)
        eq[r][c] = eq[r][c] - f * eq[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(k, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (int freec = 0; freec < k; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<Rational> z(k, Rational(0));
    z[freec] = Rational(1);
    for (int r = 0; r < static_cast<int>(pivot_col.size()); ++r)
      z[pivot_col[r]] = Rational(0) - eq[r][freec];
    basis.push_back(std::move(z));
  }
  return basis;
}

bool nonneg_nonzero(const std::vector<Rational>& z) {
  bool nonzero = false;
  for (const auto& v : z) {
    if (v.negative()) return false;
    if (!v.is_zero()) nonzero = true;
  }
  return nonzero;
}

std::vector<Rational> negate(std::vector<Rational> z) {
  for (auto& v : z) v = Rational(0) - v;
  return z;
}

}  // namespace

PeriodBound period_bound(const Morphism& m) {
  MorphismGraph g = build_graph(m);
  LetterClassification cls = classify_letters(m);
  int n = m.source().size();
  PeriodBound out;
  out.rho = Rational(0);

  long long max_img = 0;
  for (LetterId a = 0; a < n; ++a)
    max_img = std::max<long long>(max_img, m.image(a).size());

  // candidate supports: letter subsets closed under the edge relation
  std::vector<std::vector<int>> supports;
  for (int mask = 1; mask < (1 << n); ++mask) {
    bool closed = true;
    for (int a = 0; a < n && closed; ++a) {
      if (!(mask >> a & 1)) continue;
      for (int b = 0; b < n && closed; ++b)
        if (g.matrix[a][b] > 0 && !(mask >> b & 1)) closed = false;
    }
    if (!closed) continue;
    std::vector<int> s;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1) s.push_back(a);
    supports.push_back(std::move(s));
  }

  std::set<std::pair<long long, std::vector<std::pair<long long, long long>>>>
      seen;
  for (long long ev = 2; ev <= max_img; ++ev) {
    for (const auto& s : supports) {
      auto basis = left_eigen_nullspace(g.matrix, s, ev);
      if (basis.empty()) continue;
      std::vector<std::vector<Rational>> candidates;
      for (auto& b : basis) {
        candidates.push_back(b);
        candidates.push_back(negate(b));
      }
      if (basis.size() >= 2) {
        std::vector<Rational> sum(basis[0].size(), Rational(0));
        for (auto& b : basis)
          for (size_t i = 0; i < b.size(); ++i) sum[i] = sum[i] + b[i];
        candidates.push_back(sum);
        candidates.push_back(negate(sum));
      }
      for (auto& cz : candidates) {
        if (!nonneg_nonzero(cz)) continue;
        std::vector<Rational> full(n, Rational(0));
        for (size_t i = 0; i < s.size(); ++i) full[s[i]] = cz[i];
        // validate z^T M = ev z^T exactly
        bool valid = true;
        for (int b = 0; b < n && valid; ++b) {
          Rational acc(0);
          for (int a = 0; a < n; ++a)
            acc = acc + full[a] * Rational(g.matrix[a][b]);
          if (!(acc == full[b] * Rational(ev))) valid = false;
        }
        if (!valid) continue;
        std::vector<std::pair<long long, long long>> key;
        for (auto& v : full) key.emplace_back(v.num, v.den);
        if (!seen.insert({ev, key}).second) continue;
        out.eigen_data.push_back({ev, full});
        Rational ng(0), gr(0);
        for (int a = 0; a < n; ++a) {
          if (cls.growing[a])
            gr = gr + full[a];
          else
            ng = ng + full[a];
        }
        if (!gr.is_zero()) {
          Rational ratio = ng / gr;
          if (out.rho < ratio) out.rho = ratio;
        }
      }
    }
  }

  // B = ceil((2 rho + 1)(|A|+1))
  Rational b = (Rational(2) * out.rho + Rational(1)) * Rational(n + 1);
  long long bound = b.num / b.den + (b.num % b.den ? 1 : 0);
  // fold in the periods of non-growing periodic orbits
  try {
    for (const EPPoint& p : non_growing_orbits(m))
      if (p.periodic())
        bound = std::max<long long>(
            bound, static_cast<long long>(p.left_period.size()));
  } catch (const CapExceeded&) {
    // leave the eigen bound; callers relying on non-growing periods will
    // hit the same cap loudly
  }
  out.bound = std::max<long long>(bound, 1);
  return out;
}

namespace {

// Backtracking search for a block set of size < |A| covering all images.
struct BlockSearch {
  const std::vector<Word>& images;
  std::vector<Word> candidates;  // ordered factor pool
  size_t limit;
  long long nodes = 0;
  long long node_cap;
  std::vector<Word> chosen;
  std::vector<std::vector<int>> factorization;  // per image, candidate ids
  bool found = false;
  std::vector<Word> best_blocks;
  std::vector<std::vector<int>> best_fact;

  BlockSearch(const std::vector<Word>& imgs, size_t lim, long long cap)
      : images(imgs), limit(lim), node_cap(cap) {
    std::set<Word> pool;
    for (const Word& w : images)
      for (size_t i = 0; i < w.size(); ++i)
        for (size_t l = 1; l + i <= w.size(); ++l) pool.insert(w.sub(i, l));
    candidates.assign(pool.begin(), pool.end());
    std::sort(candidates.begin(), candidates.end(),
              [](const Word& a, const Word& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
  }

  bool run() {
    factorization.assign(images.size(), {});
    cover(0, 0);
    return found;
  }

  void cover(size_t img, size_t pos) {
    if (found) return;
    if (++nodes > node_cap)
      throw CapExceeded("block factorization search cap exceeded");
    if (img == images.size()) {
      found = true;
      best_blocks = chosen;
      best_fact = factorization;
      return;
    }
    const Word& w = images[img];
    if (pos == w.size()) {
      cover(img + 1, 0);
      return;
    }
    // existing blocks first
    for (size_t i = 0; i < chosen.size() && !found; ++i) {
      const Word& u = chosen[i];
      if (pos + u.size() <= w.size() && w.sub(pos, u.size()) == u) {
        factorization[img].push_back(static_cast<int>(i));
        cover(img, pos + u.size());
        factorization[img].pop_back();
      }
    }
    if (chosen.size() < limit) {
      for (const Word& u : candidates) {
        if (found) break;
        if (std::find(chosen.begin(), chosen.end(), u) != chosen.end())
          continue;
        if (pos + u.size() > w.size() || w.sub(pos, u.size()) != u) continue;
        chosen.push_back(u);
        factorization[img].push_back(static_cast<int>(chosen.size()) - 1);
        cover(img, pos + u.size());
        factorization[img].pop_back();
        chosen.pop_back();
      }
    }
  }
};

Alphabet fresh_alphabet(const Alphabet& avoid, size_t count) {
  Alphabet b;
  const std::string pool = "defghijklmnopqrstuvwxyz";
  size_t made = 0;
  for (char c : pool) {
    if (made == count) break;
    std::string tok(1, c);
    if (avoid.find(tok)) continue;
    b.add(tok);
    ++made;
  }
  for (size_t i = 1; made < count; ++i) {
    std::string tok = "B" + std::to_string(i);
    if (avoid.find(tok)) continue;
    b.add(tok);
    ++made;
  }
  return b;
}

}  // namespace

std::optional<Decomposition> elementary_decomposition(const Morphism& m,
                                                      long long node_cap) {
  if (!m.is_endomorphism())
    throw DomainError("elementarity needs an endomorphism");
  size_t n = m.source().size();
  for (size_t t = 1; t < n; ++t) {
    BlockSearch search(m.images(), t, node_cap);
    if (!search.run()) continue;
    Alphabet b = fresh_alphabet(m.source(), search.best_blocks.size());
    std::vector<Word> alpha_imgs = search.best_blocks;
    std::vector<Word> beta_imgs;
    for (const auto& f : search.best_fact) {
      std::vector<LetterId> ids(f.begin(), f.end());
      beta_imgs.push_back(Word(std::move(ids)));
    }
    Morphism beta(m.source(), b, beta_imgs);
    Morphism alpha(b, m.source(), alpha_imgs);
    // alpha . beta = sigma letterwise
    for (LetterId a = 0; a < m.source().size(); ++a)
      if (alpha.apply(beta.image(a)) != m.image(a))
        throw DomainError("decomposition verification failed");
    return Decomposition{beta, alpha, search.best_blocks};
  }
  return std::nullopt;
}

namespace {

std::vector<std::pair<Word, long long>> growing_periodic_orbits_rec(
    const Morphism& m, int depth);

std::vector<std::pair<Word, long long>> elementary_growing_orbits(
    const Morphism& m) {
  LetterClassification cls = classify_letters(m);
  long long bound = period_bound(m).bound;
  // candidate primitive words with w^2 in L(sigma)
  std::set<Word> fset;
  for (const Word& w : factors_up_to(m, static_cast<int>(bound))) {
    if (w.empty() || !is_primitive(w)) continue;
    if (member_language(m, concat(w, w))) fset.insert(least_conjugate(w));
  }
  // functional graph on conjugacy classes: [w] -> [primitive root of s(w)]
  std::map<Word, Word> next;
  for (const Word& w : fset) {
    Word img = m.apply(w);
    if (img.empty()) continue;
    Word root = least_conjugate(primitive_root(img));
    if (fset.count(root)) next[w] = root;
  }
  std::vector<std::pair<Word, long long>> out;
  for (const Word& w : fset) {
    // does the walk from w return to w?
    Word x = w;
    long long steps = 0;
    bool cycles = false;
    std::set<Word> visited;
    while (next.count(x)) {
      x = next[x];
      ++steps;
      if (x == w) {
        cycles = true;
        break;
      }
      if (!visited.insert(x).second) break;
    }
    if (!cycles) continue;
    bool has_growing = false;
    for (LetterId a : w)
      if (cls.growing[a]) has_growing = true;
    if (!has_growing) continue;
    out.emplace_back(w, steps);
  }
  return out;
}

std::vector<std::pair<Word, long long>> growing_periodic_orbits_rec(
    const Morphism& m, int depth) {
  if (depth > m.source().size() + 1)
    throw DomainError("decomposition recursion too deep");
  if (!shift_nonempty(m)) return {};
  auto dec = elementary_decomposition(m);
  if (!dec) return elementary_growing_orbits(m);

  // sigma = alpha . beta; recurse on tau = beta . alpha and lift through alpha
  Morphism tau = dec->beta.compose_after(dec->alpha);
  auto below = growing_periodic_orbits_rec(tau, depth + 1);
  LetterClassification cls = classify_letters(m);
  std::vector<std::pair<Word, long long>> out;
  for (auto& [v, k] : below) {
    Word w = least_conjugate(primitive_root(dec->alpha.apply(v)));
    if (w.empty()) continue;
    bool has_growing = false;
    for (LetterId a : w)
      if (cls.growing[a]) has_growing = true;
    if (!has_growing) continue;
    Morphism mk = m.power(k);
    if (!is_power_of_conjugate(mk.apply(w), w))
      throw DomainError("lifted periodic orbit failed verification");
    if (!member_language(m, concat(w, w)))
      throw DomainError("lifted periodic orbit not in the language");
    bool dup = false;
    for (auto& [w2, k2] : out)
      if (w2 == w) dup = true;
    if (!dup) out.emplace_back(w, k);
  }
  return out;
}

}  // namespace

std::vector<std::pair<Word, long long>> growing_periodic_orbits(
    const Morphism& m) {
  auto out = growing_periodic_orbits_rec(m, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Decision is_aperiodic(const Morphism& m) {
  if (!shift_nonempty(m)) return {Outcome::True, "empty shift"};
  auto gpo = growing_periodic_orbits(m);
  if (!gpo.empty())
    return {Outcome::False,
            "(" + gpo[0].first.render(m.source()) + ")^inf"};
  for (const EPPoint& p : non_growing_orbits(m))
    if (p.periodic())
      return {Outcome::False, "(" + p.left_period.render(m.source()) + ")^inf"};
  return {Outcome::True, ""};
}

Decision is_periodic_shift(const Morphism& m) {
  if (!shift_nonempty(m)) return {Outcome::EmptyShift, "shift is empty"};
  long long bound = period_bound(m).bound;
  for (const QuasiFixedDescriptor& q : enumerate_quasi_fixed_orbits(m)) {
    if (!quasi_descriptor_period(m, q, bound))
      return {Outcome::False, render_quasi(m, q)};
  }
  return {Outcome::True, ""};
}

Decision is_fully_recognizable(const Morphism& m) {
  if (!shift_nonempty(m)) return {Outcome::True, "empty shift"};
  auto gpo = growing_periodic_orbits(m);
  if (gpo.empty()) return {Outcome::True, ""};
  return {Outcome::False,
          "(" + gpo[0].first.render(m.source()) + ")^inf contains a growing letter"};
}

Decision is_irreducible(const Morphism& m) {
  if (!languages_equal(m))
    return {Outcome::HypothesisNotMet, "L(sigma) != L(X(sigma))"};
  MorphismGraph g = build_graph(m);
  int n = m.source().size();
  for (LetterId a = 0; a < n; ++a) {
    int c = g.scc_of[a];
    if (g.scc_kind[c] != SccKind::Expanding) continue;
    if (g.scc_period[c] != 1) continue;
    bool reaches_all = true;
    for (LetterId b = 0; b < n; ++b)
      if (!g.reaches(a, b)) reaches_all = false;
    if (reaches_all)
      return {Outcome::True, "letter " + m.source().token(a)};
  }
  return {Outcome::False, ""};
}

Decision is_minimal(const Morphism& m) {
  if (!languages_equal(m))
    return {Outcome::HypothesisNotMet, "L(sigma) != L(X(sigma))"};
  MorphismGraph g = build_graph(m);
  LetterClassification cls = classify_letters(m);
  int n = m.source().size();
  for (LetterId a = 0; a < n; ++a) {
    if (!cls.growing[a]) continue;
    bool gaps_bounded = true;  // no growing letter avoids a
    for (LetterId b = 0; b < n; ++b)
      if (cls.growing[b] && !g.reaches(b, a)) gaps_bounded = false;
    bool reaches_all = true;
    for (LetterId b = 0; b < n; ++b)
      if (!g.reaches(a, b)) reaches_all = false;
    if (gaps_bounded && reaches_all)
      return {Outcome::True, "letter " + m.source().token(a)};
  }
  return {Outcome::False, ""};
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::True:
      return "true";
    case Outcome::False:
      return "false";
    case Outcome::HypothesisNotMet:
      return "hypothesis-not-met";
    case Outcome::EmptyShift:
      return "empty-shift";
  }
  return "?";
}

}  // namespace subst
