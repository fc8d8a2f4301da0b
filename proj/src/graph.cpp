#include "subst/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace subst {

namespace {

// Iterative Tarjan over the support graph (edge multiplicities ignored).
std::vector<int> tarjan_scc(const std::vector<std::vector<long long>>& m,
                            int& scc_count) {
  int n = static_cast<int>(m.size());
  std::vector<std::vector<int>> succ(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (m[a][b] > 0) succ[a].push_back(b);

  std::vector<int> comp(n, -1), dfn(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int timer = 0;
  scc_count = 0;

  struct Frame {
    int v;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (dfn[root] != -1) continue;
    std::vector<Frame> call;
    call.push_back({root, 0});
    dfn[root] = low[root] = timer++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < succ[f.v].size()) {
        int w = succ[f.v][f.edge++];
        if (dfn[w] == -1) {
          dfn[w] = low[w] = timer++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], dfn[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == dfn[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = scc_count;
            if (w == v) break;
          }
          ++scc_count;
        }
      }
    }
  }
  return comp;
}

}  // namespace

MorphismGraph build_graph(const Morphism& m) {
  if (!m.is_endomorphism()) throw DomainError("graph needs an endomorphism");
  int n = m.source().size();
  MorphismGraph g;
  g.matrix.assign(n, std::vector<long long>(n, 0));
  for (LetterId a = 0; a < n; ++a)
    for (LetterId b : m.image(a)) g.matrix[a][b]++;

  int count = 0;
  g.scc_of = tarjan_scc(g.matrix, count);
  g.scc_members.assign(count, {});
  for (LetterId a = 0; a < n; ++a) g.scc_members[g.scc_of[a]].push_back(a);

  g.scc_kind.assign(count, SccKind::Trivial);
  g.scc_period.assign(count, std::nullopt);
  for (int c = 0; c < count; ++c) {
    const auto& mem = g.scc_members[c];
    long long internal_edges = 0;
    bool every_out_degree_one = true;
    for (LetterId a : mem) {
      long long deg = 0;
      for (LetterId b : mem)
        if (g.scc_of[b] == c) deg += g.matrix[a][b];
      internal_edges += deg;
      if (deg != 1) every_out_degree_one = false;
    }
    if (internal_edges == 0) {
      g.scc_kind[c] = SccKind::Trivial;
      continue;
    }
    g.scc_kind[c] = every_out_degree_one ? SccKind::Cycle : SccKind::Expanding;

    // period = gcd over internal edges (u,v) of level[u]+1-level[v]
    std::map<LetterId, long long> level;
    std::vector<LetterId> queue = {mem[0]};
    level[mem[0]] = 0;
    long long g_period = 0;
    size_t qi = 0;
    while (qi < queue.size()) {
      LetterId u = queue[qi++];
      for (LetterId v : mem) {
        if (g.matrix[u][v] == 0 || g.scc_of[v] != c) continue;
        if (!level.count(v)) {
          level[v] = level[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (LetterId u : mem)
      for (LetterId v : mem)
        if (g.matrix[u][v] > 0)
          g_period = std::gcd(g_period, level[u] + 1 - level[v]);
    g.scc_period[c] = std::llabs(g_period);
  }

  // reflexive-transitive closure
  g.reach.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) g.reach[a][a] = 1;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.matrix[a][b] > 0) g.reach[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      if (g.reach[a][k])
        for (int b = 0; b < n; ++b)
          if (g.reach[k][b]) g.reach[a][b] = 1;
  return g;
}

StabilizationConstants stabilization_constants(const Morphism& m) {
  MorphismGraph g = build_graph(m);
  int n = m.source().size();

  // growing flags, computed as in classify_letters
  std::vector<char> growing(n, 0);
  {
    std::vector<char> scc_has_other(g.scc_count(), 0);
    for (int c = 0; c < g.scc_count(); ++c) {
      if (g.scc_kind[c] != SccKind::Cycle) continue;
      for (int c2 = 0; c2 < g.scc_count(); ++c2) {
        if (c2 == c || g.scc_kind[c2] == SccKind::Trivial) continue;
        if (g.reaches(g.scc_members[c][0], g.scc_members[c2][0]))
          scc_has_other[c] = 1;
      }
    }
    for (LetterId a = 0; a < n; ++a) {
      for (LetterId b = 0; b < n; ++b) {
        if (!g.reaches(a, b)) continue;
        int c = g.scc_of[b];
        if (g.scc_kind[c] == SccKind::Expanding ||
            (g.scc_kind[c] == SccKind::Cycle && scc_has_other[c]))
          growing[a] = 1;
      }
    }
  }

  std::vector<LetterId> ng;
  for (LetterId a = 0; a < n; ++a)
    if (!growing[a]) ng.push_back(a);
  if (ng.empty()) return {0, 1};

  std::map<std::vector<Word>, long long> seen;
  std::vector<Word> tuple;
  for (LetterId a : ng) tuple.push_back(Word(std::vector<LetterId>{a}));
  long long step = 0;
  while (true) {
    auto it = seen.find(tuple);
    if (it != seen.end()) return {it->second, step - it->second};
    seen[tuple] = step;
    for (auto& w : tuple) w = m.apply(w);
    ++step;
    if (step > 1000000)
      throw CapExceeded("non-growing image tuple failed to stabilize");
  }
}

LetterClassification classify_letters(const Morphism& m) {
  if (!m.is_endomorphism())
    throw DomainError("classification needs an endomorphism");
  MorphismGraph g = build_graph(m);
  int n = m.source().size();
  LetterClassification cls;
  cls.erasable.assign(n, 0);
  cls.mex_of.assign(n, std::nullopt);
  cls.growing.assign(n, 0);
  cls.shift_types.assign(n, {});
  cls.in_shift_language.assign(n, 0);
  cls.type2p_witness.assign(n, std::nullopt);

  // erasable: no non-trivial SCC reachable
  for (LetterId a = 0; a < n; ++a) {
    bool reaches_nontrivial = false;
    for (LetterId b = 0; b < n; ++b)
      if (g.reaches(a, b) && g.scc_kind[g.scc_of[b]] != SccKind::Trivial)
        reaches_nontrivial = true;
    cls.erasable[a] = reaches_nontrivial ? 0 : 1;
  }
  for (LetterId a = 0; a < n; ++a) {
    if (!cls.erasable[a]) continue;
    Word w(std::vector<LetterId>{a});
    int k = 0;
    while (!w.empty()) {
      w = m.apply(w);
      ++k;
      if (k > n + 1) throw DomainError("mortality exponent exceeds Card(A)");
    }
    cls.mex_of[a] = k;
    cls.mex_sigma = std::max(cls.mex_sigma, k);
  }

  auto word_erasable = [&](const Word& w) {
    for (LetterId a : w)
      if (!cls.erasable[a]) return false;
    return true;
  };

  // growing: reaches an expanding SCC, or a cycle SCC from which another
  // non-trivial SCC is reachable
  std::vector<char> cycle_sees_other(g.scc_count(), 0);
  for (int c = 0; c < g.scc_count(); ++c) {
    if (g.scc_kind[c] != SccKind::Cycle) continue;
    for (int c2 = 0; c2 < g.scc_count(); ++c2) {
      if (c2 == c || g.scc_kind[c2] == SccKind::Trivial) continue;
      if (g.reaches(g.scc_members[c][0], g.scc_members[c2][0]))
        cycle_sees_other[c] = 1;
    }
  }
  for (LetterId a = 0; a < n; ++a) {
    for (LetterId b = 0; b < n; ++b) {
      if (!g.reaches(a, b)) continue;
      int c = g.scc_of[b];
      if (g.scc_kind[c] == SccKind::Expanding ||
          (g.scc_kind[c] == SccKind::Cycle && cycle_sees_other[c]))
        cls.growing[a] = 1;
    }
  }

  auto word_growing = [&](const Word& w) {
    for (LetterId a : w)
      if (cls.growing[a]) return true;
    return false;
  };

  auto mark_accessible_from_scc = [&](int c, const std::string& type) {
    for (LetterId s : g.scc_members[c])
      for (LetterId b = 0; b < n; ++b)
        if (g.reaches(s, b)) cls.shift_types[b].insert(type);
  };

  // type 1: accessible from expanding SCCs
  for (int c = 0; c < g.scc_count(); ++c)
    if (g.scc_kind[c] == SccKind::Expanding) mark_accessible_from_scc(c, "1");

  // type 3: accessible from a non-trivial SCC which is itself accessible
  // from a different cycle SCC
  for (int c = 0; c < g.scc_count(); ++c) {
    if (g.scc_kind[c] != SccKind::Cycle) continue;
    for (int c2 = 0; c2 < g.scc_count(); ++c2) {
      if (c2 == c || g.scc_kind[c2] == SccKind::Trivial) continue;
      if (g.reaches(g.scc_members[c][0], g.scc_members[c2][0]))
        mark_accessible_from_scc(c2, "3");
    }
  }

  // types 2'' and 2', per cycle SCC; the cycle-return context (w, z) is
  // computed at p = cycle length, where its erasability is stable
  StabilizationConstants st = stabilization_constants(m);
  long long witness_k_bound = checked_mul(
      n, std::max<long long>(st.i + st.p, 1), "type-2' witness bound");
  for (int c = 0; c < g.scc_count(); ++c) {
    if (g.scc_kind[c] != SccKind::Cycle) continue;
    long long p = static_cast<long long>(g.scc_members[c].size());
    bool qualifies_2pp = false;
    std::optional<Type2Witness> wit2p;
    for (LetterId b : g.scc_members[c]) {
      Word img = m.iterate_letter(b, p);
      auto occ = img.occurrences(Word(std::vector<LetterId>{b}));
      if (occ.empty()) continue;  // cycle letters return at p; paranoia
      size_t pos = occ[0];
      Word w = img.prefix(pos);
      Word z = img.sub(pos + 1, img.size());
      bool w_ne = !word_erasable(w);
      bool z_ne = !word_erasable(z);
      if (w_ne && z_ne) qualifies_2pp = true;

      if (!wit2p) {
        // search a trivial-component letter whose iterate exposes b with
        // suitable contexts
        for (LetterId a0 = 0; a0 < n && !wit2p; ++a0) {
          if (g.scc_kind[g.scc_of[a0]] != SccKind::Trivial) continue;
          if (!g.reaches(a0, b) || a0 == b) continue;
          Word cur(std::vector<LetterId>{a0});
          for (long long k = 1; k <= witness_k_bound && !wit2p; ++k) {
            cur = m.apply(cur);
            if (cur.size() > 2000000)
              throw CapExceeded("type-2' witness image exceeds cap");
            auto bocc = cur.occurrences(Word(std::vector<LetterId>{b}));
            for (size_t bp : bocc) {
              Word u = cur.prefix(bp);
              Word v = cur.sub(bp + 1, cur.size());
              bool c1 = word_growing(u) || w_ne;
              bool c2 = word_growing(v) || z_ne;
              if (c1 && c2) {
                wit2p = Type2Witness{a0, b, k, p, u, v, w, z};
                break;
              }
            }
          }
        }
      }
    }
    if (qualifies_2pp) mark_accessible_from_scc(c, "2''");
    if (wit2p) {
      mark_accessible_from_scc(c, "2'");
      for (LetterId s : g.scc_members[c])
        for (LetterId b = 0; b < n; ++b)
          if (g.reaches(s, b) && !cls.type2p_witness[b])
            cls.type2p_witness[b] = wit2p;
    }
  }

  for (LetterId a = 0; a < n; ++a)
    cls.in_shift_language[a] = cls.shift_types[a].empty() ? 0 : 1;
  return cls;
}

bool shift_nonempty(const Morphism& m) {
  LetterClassification cls = classify_letters(m);
  for (size_t a = 0; a < cls.in_shift_language.size(); ++a)
    if (cls.in_shift_language[a]) return true;
  return false;
}

}  // namespace subst
