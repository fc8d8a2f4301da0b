#include "subst/langtools.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace subst {

BoolMat BoolMat::identity(int n) {
  BoolMat m(n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BoolMat BoolMat::operator*(const BoolMat& o) const {
  BoolMat r(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      if (!get(i, k)) continue;
      for (int w = 0; w < words_; ++w)
        r.bits_[i * words_ + w] |= o.bits_[k * words_ + w];
    }
  }
  return r;
}

bool BoolMat::any() const {
  for (uint64_t w : bits_)
    if (w) return true;
  return false;
}

PatternAutomaton PatternAutomaton::factor(int alphabet_size, const Word& u) {
  PatternAutomaton a;
  int n = static_cast<int>(u.size());
  a.states = n + 1;
  a.initial = 0;
  a.final_state = n;
  a.delta.assign(a.states, std::vector<int>(alphabet_size, 0));
  // delta(s, c) = longest suffix of u[0..s)c that is a prefix of u;
  // the final state absorbs.
  for (int s = 0; s <= n; ++s) {
    for (LetterId c = 0; c < alphabet_size; ++c) {
      if (s == n) {
        a.delta[s][c] = n;
        continue;
      }
      if (u[s] == c) {
        a.delta[s][c] = s + 1;
        continue;
      }
      // fall back: longest k such that u[0..k) is a suffix of u[0..s)c
      int k = std::min(s + 1, n);
      for (; k > 0; --k) {
        bool ok = (u[k - 1] == c);
        for (int i = 0; ok && i < k - 1; ++i) ok = (u[i] == u[s - (k - 1) + i]);
        if (ok) break;
      }
      a.delta[s][c] = k;
    }
  }
  return a;
}

BoolMat PatternAutomaton::letter_relation(LetterId a) const {
  BoolMat m(states);
  for (int s = 0; s < states; ++s) m.set(s, delta[s][a]);
  return m;
}

BoolMat PatternAutomaton::relation(const Word& w) const {
  BoolMat m = BoolMat::identity(states);
  for (LetterId a : w) m = m * letter_relation(a);
  return m;
}

bool MonoidTrace::accepting(long long k, const PatternAutomaton& aut) const {
  for (const BoolMat& rel : psi[k])
    if (rel.get(aut.initial, aut.final_state)) return true;
  return false;
}

MonoidTrace monoid_trace(const Morphism& m, const PatternAutomaton& aut,
                         long long cap_steps) {
  int n = m.source().size();
  MonoidTrace t;
  std::vector<BoolMat> cur;
  for (LetterId a = 0; a < n; ++a) cur.push_back(aut.letter_relation(a));

  std::map<std::vector<BoolMat>, long long> seen;
  long long step = 0;
  while (true) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      t.preperiod = it->second;
      t.period = step - it->second;
      return t;
    }
    seen[cur] = step;
    t.psi.push_back(cur);
    std::vector<BoolMat> next;
    next.reserve(n);
    for (LetterId a = 0; a < n; ++a) {
      BoolMat rel = BoolMat::identity(aut.states);
      for (LetterId b : m.image(a)) rel = rel * cur[b];
      next.push_back(std::move(rel));
    }
    cur = std::move(next);
    ++step;
    if (step > cap_steps)
      throw CapExceeded("monoid trace failed to repeat within cap");
  }
}

bool member_language(const Morphism& m, const Word& u) {
  if (u.empty()) return true;
  for (LetterId a : u)
    if (a < 0 || a >= m.source().size())
      throw DomainError("word uses letter outside the alphabet");
  PatternAutomaton aut = PatternAutomaton::factor(m.source().size(), u);
  MonoidTrace t = monoid_trace(m, aut);
  for (long long k = 0; k < t.preperiod + t.period; ++k)
    if (t.accepting(k, aut)) return true;
  return false;
}

bool infinitely_often_factor(const Morphism& m, const Word& u) {
  if (u.empty()) return true;
  PatternAutomaton aut = PatternAutomaton::factor(m.source().size(), u);
  MonoidTrace t = monoid_trace(m, aut);
  for (long long k = t.preperiod; k < t.preperiod + t.period; ++k)
    if (t.accepting(k, aut)) return true;
  return false;
}

bool avoiding_factors_infinite(const Morphism& m, LetterId avoid) {
  LetterClassification cls = classify_letters(m);
  MorphismGraph g = build_graph(m);
  int n = m.source().size();

  // graph route: some growing letter never reaches `avoid`
  bool via_graph = false;
  for (LetterId b = 0; b < n; ++b)
    if (cls.growing[b] && !g.reaches(b, avoid)) via_graph = true;

  // monoid route: partial one-state automaton on A \ {avoid}, I = T = Q;
  // alive_k(a) says sigma^k(a) avoids the letter, and the criterion asks for
  // a growing letter alive at every k below the repetition index
  bool via_monoid = false;
  {
    std::vector<char> cur(n);
    for (LetterId a = 0; a < n; ++a) cur[a] = (a != avoid);
    std::vector<char> always = cur;
    std::map<std::vector<char>, char> seen;
    while (!seen.count(cur)) {
      seen[cur] = 1;
      std::vector<char> next(n, 1);
      for (LetterId a = 0; a < n; ++a)
        for (LetterId b : m.image(a))
          if (!cur[b]) next[a] = 0;
      cur = next;
      for (LetterId a = 0; a < n; ++a) always[a] &= cur[a];
    }
    for (LetterId a = 0; a < n; ++a)
      if (cls.growing[a] && always[a]) via_monoid = true;
  }

  if (via_graph != via_monoid)
    throw std::logic_error("avoiding-factor routes disagree");
  return via_graph;
}

ShiftLanguageConstants shift_language_constants(const Morphism& m) {
  LetterClassification cls = classify_letters(m);
  StabilizationConstants st = stabilization_constants(m);
  int n = m.source().size();
  ShiftLanguageConstants out;

  for (LetterId a = 0; a < n; ++a) {
    if (cls.growing[a]) continue;
    Word w(std::vector<LetterId>{a});
    long long best = 1;
    for (long long k = 0; k < st.i + st.p; ++k) {
      w = m.apply(w);
      best = std::max(best, static_cast<long long>(w.size()));
    }
    out.N = std::max(out.N, best);
    if (cls.erasable[a]) out.M = std::max(out.M, best);
  }

  // |sigma^i| = sum of the entries of M^i; computed on lengths only since
  // the words themselves blow up as |sigma|^{Card(A)^2}
  long long bound = checked_mul(n, n, "Card(A)^2");
  std::vector<std::vector<long long>> mat(n, std::vector<long long>(n, 0));
  for (LetterId a = 0; a < n; ++a)
    for (LetterId b : m.image(a)) mat[a][b]++;
  std::vector<std::vector<long long>> pw(n, std::vector<long long>(n, 0));
  for (int a = 0; a < n; ++a) pw[a][a] = 1;
  auto total = [&](const std::vector<std::vector<long long>>& x) {
    long long s = 0;
    for (auto& row : x)
      for (long long v : row) s = checked_add(s, v, "|sigma^i|");
    return s;
  };
  out.r = total(pw);
  for (long long i = 1; i <= bound; ++i) {
    std::vector<std::vector<long long>> nx(n, std::vector<long long>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < n; ++k) {
        if (!pw[a][k]) continue;
        for (int b = 0; b < n; ++b)
          nx[a][b] = checked_add(
              nx[a][b], checked_mul(pw[a][k], mat[k][b], "|sigma^i|"),
              "|sigma^i|");
      }
    pw = std::move(nx);
    out.r = std::max(out.r, total(pw));
  }
  out.K = checked_mul(out.N + out.M, out.r, "K = (N+M)r");
  return out;
}

bool member_shift_language(const Morphism& m, const Word& u,
                           const ShiftMemberOptions& opt) {
  int n = m.source().size();
  if (u.empty()) return shift_nonempty(m);
  if (u.size() == 1) {
    LetterClassification cls = classify_letters(m);
    return cls.letter_in_shift(u[0]);
  }
  long long K = opt.k_override >= 0 ? opt.k_override
                                    : shift_language_constants(m).K;
  if (!infinitely_often_factor(m, u)) return false;
  if (K == 0) return true;

  // Breadth-first two-sided extension with infinitely-often pruning: every
  // sub-extension of a valid (w, z) is itself infinitely often a factor, so
  // pruning preserves completeness. Left is grown to length K first. An
  // exhausted level is an exact "false" even below K.
  long long tried = 0;
  long long steps = std::min(K, opt.enum_length_cap);
  auto grow = [&](std::vector<Word>& level, bool left) {
    for (long long step = 0; step < steps; ++step) {
      std::vector<Word> next;
      for (const Word& w : level) {
        for (LetterId a = 0; a < n; ++a) {
          Word one(std::vector<LetterId>{a});
          Word cand = left ? concat(one, w) : concat(w, one);
          if (++tried > opt.candidate_cap)
            throw CapExceeded("extension search cap exceeded (K = " +
                              std::to_string(K) + ")");
          if (infinitely_often_factor(m, cand))
            next.push_back(std::move(cand));
        }
      }
      level = std::move(next);
      if (level.empty()) return false;
    }
    return true;
  };
  std::vector<Word> level = {u};
  if (!grow(level, true)) return false;
  if (!grow(level, false)) return false;
  if (steps < K)
    throw CapExceeded("extension survives to length " + std::to_string(steps) +
                      " but K = " + std::to_string(K) +
                      " exceeds the enumeration cap");
  return true;
}

bool languages_equal(const Morphism& m) {
  LetterClassification cls = classify_letters(m);
  for (LetterId a = 0; a < m.source().size(); ++a)
    if (!cls.letter_in_shift(a)) return false;
  return true;
}

namespace {

// Bounded summary of a word: its factors of length <= n plus the margins
// needed to compose summaries across concatenation.
struct FactorSummary {
  std::set<Word> factors;  // includes epsilon
  Word pre, suf;           // prefix/suffix up to n-1 letters
  long long len = 0;       // capped at n

  bool operator<(const FactorSummary& o) const {
    if (len != o.len) return len < o.len;
    if (pre != o.pre) return pre < o.pre;
    if (suf != o.suf) return suf < o.suf;
    return factors < o.factors;
  }
  bool operator==(const FactorSummary& o) const {
    return len == o.len && pre == o.pre && suf == o.suf &&
           factors == o.factors;
  }
};

void add_factors(std::set<Word>& out, const Word& w, int n) {
  out.insert(Word{});
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t l = 1; l <= std::min<size_t>(n, w.size() - i); ++l)
      out.insert(w.sub(i, l));
}

FactorSummary summary_of(const Word& w, int n) {
  FactorSummary s;
  add_factors(s.factors, w, n);
  size_t margin = n > 0 ? n - 1 : 0;
  s.pre = w.prefix(margin);
  s.suf = w.suffix(margin);
  s.len = std::min<long long>(w.size(), n);
  return s;
}

FactorSummary combine(const FactorSummary& a, const FactorSummary& b, int n) {
  FactorSummary s;
  s.factors = a.factors;
  s.factors.insert(b.factors.begin(), b.factors.end());
  Word bridge = concat(a.suf, b.pre);
  add_factors(s.factors, bridge, n);
  size_t margin = n > 0 ? n - 1 : 0;
  s.pre = concat(a.pre, b.pre).prefix(margin);
  if (static_cast<size_t>(a.len) >= margin) s.pre = a.pre;
  s.suf = concat(a.suf, b.suf).suffix(margin);
  if (static_cast<size_t>(b.len) >= margin) s.suf = b.suf;
  s.len = std::min<long long>(a.len + b.len, n);
  return s;
}

}  // namespace

std::set<Word> factors_up_to(const Morphism& m, int n,
                             const FactorOracleOptions& opt) {
  if (n < 0) throw DomainError("negative factor length");
  int letters = m.source().size();
  std::set<Word> all;
  all.insert(Word{});
  if (n == 0) return all;

  std::vector<FactorSummary> tuple;
  for (LetterId a = 0; a < letters; ++a)
    tuple.push_back(summary_of(Word(std::vector<LetterId>{a}), n));

  std::map<std::vector<FactorSummary>, long long> seen;
  long long step = 0;
  while (!seen.count(tuple)) {
    seen[tuple] = step;
    for (const auto& s : tuple) {
      all.insert(s.factors.begin(), s.factors.end());
      if (static_cast<long long>(all.size()) > opt.max_words)
        throw CapExceeded("factor oracle word cap exceeded");
    }
    FactorSummary eps = summary_of(Word{}, n);
    std::vector<FactorSummary> next;
    for (LetterId a = 0; a < letters; ++a) {
      FactorSummary s = eps;
      for (LetterId b : m.image(a)) s = combine(s, tuple[b], n);
      next.push_back(std::move(s));
    }
    tuple = std::move(next);
    if (++step > opt.cap_steps)
      throw CapExceeded("factor oracle failed to stabilize within cap");
  }
  return all;
}

std::set<Word> factors_oracle(const Morphism& m, int n,
                              const FactorOracleOptions& opt) {
  std::set<Word> out;
  for (const Word& w : factors_up_to(m, n, opt))
    if (static_cast<int>(w.size()) == n) out.insert(w);
  return out;
}

std::set<Word> erasable_words(const Morphism& m) {
  LetterClassification cls = classify_letters(m);
  std::set<Word> out;
  out.insert(Word{});
  auto all_erasable = [&](const Word& w) {
    for (LetterId a : w)
      if (!cls.erasable[a]) return false;
    return true;
  };
  for (int n = 1;; ++n) {
    std::set<Word> level;
    for (const Word& w : factors_oracle(m, n))
      if (all_erasable(w)) level.insert(w);
    if (level.empty()) break;
    out.insert(level.begin(), level.end());
    if (n > 4096) throw CapExceeded("erasable word length cap exceeded");
  }
  return out;
}

}  // namespace subst
