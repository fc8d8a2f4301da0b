#include "subst/points.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace subst {

namespace {

Word repeat_to(const Word& w, size_t len, bool take_suffix) {
  if (w.empty()) throw DomainError("empty period word");
  Word out;
  while (out.size() < len + w.size()) out.append(w);
  return take_suffix ? out.suffix(len) : out.prefix(len);
}

// left-infinite tails ^w a and ^w b coincide iff suffixes of length
// |a|+|b| agree (Fine and Wilf)
bool tails_equal_left(const Word& a, const Word& b) {
  if (a.empty() || b.empty()) return false;
  size_t len = a.size() + b.size();
  return repeat_to(a, len, true) == repeat_to(b, len, true);
}

// right-infinite words c1 v1^w and c2 v2^w are eventually periodic, so a
// bounded prefix comparison is exact
bool right_ep_equal(const Word& c1, const Word& v1, const Word& c2,
                    const Word& v2) {
  if (v1.empty() || v2.empty()) return false;
  size_t len =
      std::max(c1.size(), c2.size()) + 2 * (v1.size() + v2.size()) + 2;
  Word w1 = c1, w2 = c2;
  w1.append(repeat_to(v1, len, false));
  w2.append(repeat_to(v2, len, false));
  return w1.prefix(len) == w2.prefix(len);
}

}  // namespace

EPPoint canonical_ep(const Word& u0, const Word& c, const Word& v0) {
  if (u0.empty() || v0.empty())
    throw DomainError("EP point needs nonempty periodic parts");
  Word u = primitive_root(u0);
  Word v = primitive_root(v0);

  size_t span = c.size() + 2 * (u.size() + v.size()) + 8;
  Word full = repeat_to(u, span, true);
  size_t origin = full.size();
  full.append(c);
  full.append(repeat_to(v, span, false));

  // largest R with full[0..R) |u|-periodic
  size_t R = u.size();
  while (R < full.size() && full[R] == full[R - u.size()]) ++R;
  if (R == full.size()) {
    Word root = least_conjugate(u);
    return EPPoint{root, Word{}, root, 0};
  }
  // smallest L2 with full[L2..) |v|-periodic
  size_t L2 = full.size() - v.size();
  while (L2 > 0 && full[L2 - 1] == full[L2 - 1 + v.size()]) --L2;

  size_t cut = R;
  size_t L3 = std::max(L2, R);
  if (cut < u.size() || L3 + v.size() > full.size())
    throw DomainError("EP window too small for canonical form");
  EPPoint p;
  p.left_period = full.sub(cut - u.size(), u.size());
  p.center = full.sub(cut, L3 - cut);
  p.right_period = full.sub(L3, v.size());
  p.origin_offset = static_cast<int>(origin) - static_cast<int>(cut);
  return p;
}

namespace {

// right expansion of a seed under sigma^k: the limit of prefixes s^{kn}(seed)
Word expand_seed_right(const Morphism& mk, const Word& seed, size_t len) {
  Word w = seed;
  size_t guard = 0;
  while (w.size() < len) {
    Word next = mk.apply(w);
    if (!next.starts_with(w)) throw DomainError("seed fails to right-prolong");
    if (next.size() == w.size() || ++guard > 10000)
      throw DomainError("right seed does not grow");
    w = next;
    if (w.size() > 50000000) throw CapExceeded("seed expansion exceeds cap");
  }
  return w.prefix(len);
}

Word expand_seed_left(const Morphism& mk, const Word& seed, size_t len) {
  Word w = seed;
  size_t guard = 0;
  while (w.size() < len) {
    Word next = mk.apply(w);
    if (!next.ends_with(w)) throw DomainError("seed fails to left-prolong");
    if (next.size() == w.size() || ++guard > 10000)
      throw DomainError("left seed does not grow");
    w = next;
    if (w.size() > 50000000) throw CapExceeded("seed expansion exceeds cap");
  }
  return w.suffix(len);
}

// left tail ... s^{2k}(u) s^k(u) u read as a left-infinite word
Word expand_pieces_left(const Morphism& mk, const Word& u, size_t len) {
  Word acc;
  Word piece = u;
  size_t guard = 0;
  while (acc.size() < len) {
    acc = concat(piece, acc);
    piece = mk.apply(piece);
    if (piece.empty()) throw DomainError("context piece erased");
    if (++guard > 200000) throw CapExceeded("context expansion cap");
    if (acc.size() > 50000000) throw CapExceeded("context expansion cap");
  }
  return acc.suffix(len);
}

Word expand_pieces_right(const Morphism& mk, const Word& v, size_t len) {
  Word acc;
  Word piece = v;
  size_t guard = 0;
  while (acc.size() < len) {
    acc.append(piece);
    piece = mk.apply(piece);
    if (piece.empty()) throw DomainError("context piece erased");
    if (++guard > 200000) throw CapExceeded("context expansion cap");
    if (acc.size() > 50000000) throw CapExceeded("context expansion cap");
  }
  return acc.prefix(len);
}

}  // namespace

Word expand_fixed(const Morphism& m, const FixedPointDescriptor& d,
                  long long left, long long right) {
  Morphism mk = m.power(d.power);
  Word lw, rw;
  switch (d.shape) {
    case FixedPointDescriptor::Shape::EventuallyPeriodic:
      lw = repeat_to(d.left, left, true);
      rw = concat(d.center, repeat_to(d.right, right + d.right.size(), false))
               .prefix(right);
      break;
    case FixedPointDescriptor::Shape::LeftEPRightSeed:
      lw = repeat_to(d.left, left, true);
      rw = concat(d.center, expand_seed_right(mk, d.right, right))
               .prefix(right);
      break;
    case FixedPointDescriptor::Shape::LeftSeedRightEP:
      lw = expand_seed_left(mk, d.left, left);
      rw = concat(d.center, repeat_to(d.right, right + d.right.size(), false))
               .prefix(right);
      break;
    case FixedPointDescriptor::Shape::TwoSeed:
      lw = expand_seed_left(mk, d.left, left);
      rw = expand_seed_right(mk, d.right, right);
      break;
  }
  return concat(lw, rw);
}

Word expand_quasi(const Morphism& m, const QuasiFixedDescriptor& d,
                  long long left, long long right) {
  switch (d.shape) {
    case QuasiFixedDescriptor::Shape::ShiftedFixed:
      return expand_fixed(m, *d.fixed, left, right);
    case QuasiFixedDescriptor::Shape::LetterContext: {
      Morphism mk = m.power(d.power);
      Word lw = expand_pieces_left(mk, d.ctx_left, left);
      Word rw = concat(Word(std::vector<LetterId>{d.letter}),
                       expand_pieces_right(mk, d.ctx_right, right));
      return concat(lw, rw.prefix(right));
    }
    case QuasiFixedDescriptor::Shape::Rotating: {
      Word uv = concat(d.rot_u, d.rot_v);
      return concat(repeat_to(uv, left, true), repeat_to(uv, right, false));
    }
  }
  throw DomainError("unknown descriptor shape");
}

std::pair<std::set<LetterId>, std::set<Word>> finite_fixed_points(
    const Morphism& m) {
  LetterClassification cls = classify_letters(m);
  int n = m.source().size();
  std::set<LetterId> a_set;
  std::set<Word> f_set;
  auto erasable_word = [&](const Word& w) {
    for (LetterId x : w)
      if (!cls.erasable[x]) return false;
    return true;
  };
  for (LetterId a = 0; a < n; ++a) {
    const Word& img = m.image(a);
    for (size_t pos : img.occurrences(Word(std::vector<LetterId>{a}))) {
      if (erasable_word(img.prefix(pos)) &&
          erasable_word(img.sub(pos + 1, img.size()))) {
        a_set.insert(a);
        break;
      }
    }
  }
  for (LetterId a : a_set) {
    Word w = m.iterate_letter(a, n);
    if (m.apply(w) != w)
      throw DomainError("finite fixed point verification failed");
    f_set.insert(w);
  }
  return {a_set, f_set};
}

namespace {

// lcm of cycle lengths in a partial functional graph (f[x] = -1: undefined)
long long functional_cycle_lcm(const std::vector<int>& f) {
  long long l = 1;
  int n = static_cast<int>(f.size());
  for (int start = 0; start < n; ++start) {
    int x = start;
    for (int i = 0; i < n && x != -1; ++i) x = f[x];
    if (x == -1) continue;
    int y = f[x];
    long long len = 1;
    while (y != x && y != -1) {
      y = f[y];
      ++len;
    }
    if (y == x) l = std::lcm(l, len);
  }
  return l;
}

struct Engine {
  Morphism mK;
  long long K0 = 1;
  LetterClassification cls;
  MorphismGraph g;
  std::map<LetterId, Word> left_stream;  // stabilized accretion period
  std::map<LetterId, Word> left_seed;    // sigma^K0 left-prolongable word
  std::map<LetterId, Word> right_stream;
  std::map<LetterId, Word> right_seed;

  Engine(const Morphism& m, const PointEnumerationOptions& opt)
      : mK(Morphism::identity(m.source())) {
    cls = classify_letters(m);
    g = build_graph(m);
    StabilizationConstants st = stabilization_constants(m);
    int n = m.source().size();

    // last/first growing-letter successor maps: the engine power must close
    // their cycles so that anchors reoccur as their own boundary letters
    std::vector<int> lg1(n, -1), fg1(n, -1);
    for (LetterId a = 0; a < n; ++a) {
      for (LetterId b : m.image(a)) {
        if (!cls.growing[b]) continue;
        if (fg1[a] == -1) fg1[a] = b;
        lg1[a] = b;
      }
    }

    long long period_lcm = 1;
    for (int c = 0; c < g.scc_count(); ++c)
      if (g.scc_period[c] && *g.scc_period[c] > 0)
        period_lcm = std::lcm(period_lcm, *g.scc_period[c]);
    long long L =
        std::lcm(std::lcm(st.p, period_lcm),
                 std::lcm(functional_cycle_lcm(lg1), functional_cycle_lcm(fg1)));
    long long base = std::max<long long>({st.i, cls.mex_sigma, 1});
    K0 = L * ((base + L - 1) / L);

    long long k_cap = opt.k_max.value_or(default_k_max(m, st));
    auto returns_ok = [&](long long k) {
      BoolMat step(n);
      for (LetterId a = 0; a < n; ++a)
        for (LetterId b : m.image(a)) step.set(a, b);
      BoolMat acc = BoolMat::identity(n);
      BoolMat basepow = step;
      long long e = k;
      while (e > 0) {
        if (e & 1) acc = acc * basepow;
        basepow = basepow * basepow;
        e >>= 1;
      }
      for (LetterId a = 0; a < n; ++a)
        if (g.scc_kind[g.scc_of[a]] != SccKind::Trivial && !acc.get(a, a))
          return false;
      return true;
    };
    while (K0 <= k_cap && !returns_ok(K0)) K0 += L;
    if (K0 > k_cap)
      throw CapExceeded("engine power exceeds k_max = " +
                        std::to_string(k_cap));

    mK = m.power(K0, opt.image_cap);

    for (LetterId d = 0; d < n; ++d) {
      if (!cls.growing[d]) continue;
      if (g.scc_kind[g.scc_of[d]] == SccKind::Trivial) continue;
      const Word& img = mK.image(d);
      int lastg = -1, firstg = -1;
      for (size_t i = 0; i < img.size(); ++i) {
        if (!cls.growing[img[i]]) continue;
        if (firstg == -1) firstg = static_cast<int>(i);
        lastg = static_cast<int>(i);
      }
      if (lastg >= 0 && img[lastg] == d) {
        Word q = img.sub(lastg + 1, img.size());
        Word qhat = mK.apply(q);
        if (!qhat.empty()) {
          left_stream[d] = qhat;
        } else {
          Word seed = concat(Word(std::vector<LetterId>{d}), q);
          if (!mK.apply(seed).ends_with(seed))
            throw DomainError("left seed fails to prolong");
          left_seed[d] = seed;
        }
      }
      if (firstg >= 0 && img[firstg] == d) {
        Word h = img.prefix(firstg);
        Word hhat = mK.apply(h);
        if (!hhat.empty()) {
          right_stream[d] = hhat;
        } else {
          Word seed = concat(h, Word(std::vector<LetterId>{d}));
          if (!mK.apply(seed).starts_with(seed))
            throw DomainError("right seed fails to prolong");
          right_seed[d] = seed;
        }
      }
    }
  }

  static long long default_k_max(const Morphism& m,
                                 const StabilizationConstants& st) {
    long long n = m.source().size();
    long long l = 1;
    for (long long i = 2; i <= n; ++i) l = std::lcm(l, i);
    long long f = 1;
    for (long long i = 2; i <= n && f < 720; ++i) f *= i;
    f = std::min<long long>(f, 720);
    return std::max<long long>(
        64, checked_mul(checked_mul(l, f, "k_max"), st.p, "k_max"));
  }
};

FixedPointDescriptor make_ep_descriptor(const EPPoint& p, long long power) {
  FixedPointDescriptor d;
  d.shape = FixedPointDescriptor::Shape::EventuallyPeriodic;
  d.power = power;
  d.left = p.left_period;
  d.center = p.center;
  d.right = p.right_period;
  return d;
}

// exact sigma^delta-fixedness per shape; delta divides the engine power, so
// the seed limits at delta coincide with the enumerated points
bool fixed_at(const Morphism& m, const FixedPointDescriptor& d,
              long long delta) {
  Morphism md = m.power(delta);
  auto left_tail_ok = [&](const Word& u) {
    Word iu = md.apply(u);
    return !iu.empty() && tails_equal_left(iu, u);
  };
  switch (d.shape) {
    case FixedPointDescriptor::Shape::EventuallyPeriodic:
      return left_tail_ok(d.left) &&
             right_ep_equal(md.apply(d.center), md.apply(d.right), d.center,
                            d.right);
    case FixedPointDescriptor::Shape::LeftEPRightSeed:
      return left_tail_ok(d.left) && md.apply(d.center) == d.center &&
             md.apply(d.right).starts_with(d.right);
    case FixedPointDescriptor::Shape::LeftSeedRightEP:
      return md.apply(d.left).ends_with(d.left) &&
             md.apply(d.center) == d.center &&
             right_ep_equal(Word{}, md.apply(d.right), Word{}, d.right);
    case FixedPointDescriptor::Shape::TwoSeed:
      return md.apply(d.left).ends_with(d.left) &&
             md.apply(d.right).starts_with(d.right);
  }
  return false;
}

long long minimal_power(const Morphism& m, const FixedPointDescriptor& d,
                        long long K0) {
  for (long long delta = 1; delta < K0; ++delta) {
    if (K0 % delta) continue;
    bool ok = false;
    try {
      ok = fixed_at(m, d, delta);
    } catch (const DomainError&) {
      ok = false;
    } catch (const CapExceeded&) {
      ok = false;
    }
    if (ok) return delta;
  }
  return K0;
}

}  // namespace

bool same_orbit(const Morphism& m, const FixedPointDescriptor& a,
                const FixedPointDescriptor& b) {
  if (a.shape == FixedPointDescriptor::Shape::EventuallyPeriodic &&
      b.shape == FixedPointDescriptor::Shape::EventuallyPeriodic) {
    return canonical_ep(a.left, a.center, a.right) ==
           canonical_ep(b.left, b.center, b.right);
  }
  long long parts = static_cast<long long>(
      a.left.size() + a.center.size() + a.right.size() + b.left.size() +
      b.center.size() + b.right.size());

  // periodic points first: exact through the certified period
  long long pbound = 4 * std::max<long long>(parts, 4) + 8;
  auto pa = descriptor_period(m, a, pbound);
  auto pb = descriptor_period(m, b, pbound);
  if (pa && pb) {
    if (*pa != *pb) return false;
    Word ra = expand_fixed(m, a, 0, *pa);
    Word rb = expand_fixed(m, b, 0, *pb);
    return are_conjugate(ra, rb);
  }
  if (pa.has_value() != pb.has_value()) return false;

  // both aperiodic and fixed by sigma^L: a shift S^j of one can only be
  // sigma^L-fixed when the image lengths across the gap balance, which
  // pins down finitely many candidate shifts; agreement on a window whose
  // border halves are sigma^L-prolongable then proves equality
  long long L = std::lcm(a.power, b.power);
  Morphism mL = m.power(L);
  std::vector<long long> img_len(m.source().size());
  for (LetterId c = 0; c < m.source().size(); ++c)
    img_len[c] = static_cast<long long>(mL.image(c).size());

  bool saw_unverified_match = false;
  for (long long W = std::max<long long>(32 + 2 * parts, 48); W <= 4096;
       W *= 2) {
    Word wa, wb;
    try {
      wa = expand_fixed(m, a, W, W);
      wb = expand_fixed(m, b, W, W);
    } catch (const CapExceeded&) {
      return false;
    }
    saw_unverified_match = false;
    for (long long j = -W / 2; j <= W / 2; ++j) {
      long long balance = 0;
      if (j > 0)
        for (long long i = 0; i < j; ++i) balance += img_len[wa[W + i]] - 1;
      if (j < 0)
        for (long long i = j; i < 0; ++i) balance += img_len[wa[W + i]] - 1;
      if (balance != 0) continue;
      bool match = true;
      for (long long i = 0; i < 2 * W && match; ++i) {
        long long k = i + j;
        if (k < 0 || k >= 2 * W) continue;
        if (wb[i] != wa[k]) match = false;
      }
      if (!match) continue;
      // the agreed halves around the origin must determine both points:
      // strictly growing prolongable border words make the match exact
      long long Wp = W - std::llabs(j);
      Word u_left = wb.sub(W - Wp, Wp);
      Word u_right = wb.sub(W, Wp);
      Word il = mL.apply(u_left), ir = mL.apply(u_right);
      if (il.size() > u_left.size() && il.ends_with(u_left) &&
          ir.size() > u_right.size() && ir.starts_with(u_right))
        return true;
      saw_unverified_match = true;
    }
    if (!saw_unverified_match) return false;
  }
  return false;
}

FixedOrbits enumerate_fixed_orbits(const Morphism& m,
                                   const PointEnumerationOptions& opt) {
  if (!m.is_endomorphism())
    throw DomainError("orbit enumeration needs an endomorphism");
  FixedOrbits out;
  if (!shift_nonempty(m)) return out;

  Engine eng(m, opt);
  out.engine_power = eng.K0;
  std::vector<FixedPointDescriptor> found;

  auto add = [&](FixedPointDescriptor d) {
    for (const auto& e : found)
      if (same_orbit(m, e, d)) return;
    found.push_back(std::move(d));
  };

  for (auto& [d, qhat] : eng.left_stream)
    add(make_ep_descriptor(canonical_ep(qhat, Word{}, qhat), eng.K0));
  for (auto& [e, hhat] : eng.right_stream)
    add(make_ep_descriptor(canonical_ep(hhat, Word{}, hhat), eng.K0));

  // junction triples d z e with z non-growing, from the certified factor set
  std::set<Word> factors =
      factors_up_to(m, static_cast<int>(opt.junction_cap) + 2);
  for (const Word& f : factors) {
    if (f.size() < 2) continue;
    LetterId d = f.front(), e = f.back();
    bool dleft = eng.left_stream.count(d) || eng.left_seed.count(d);
    bool eright = eng.right_stream.count(e) || eng.right_seed.count(e);
    if (!dleft || !eright) continue;
    bool middle_ng = true;
    for (size_t i = 1; i + 1 < f.size(); ++i)
      if (eng.cls.growing[f[i]]) middle_ng = false;
    if (!middle_ng) continue;
    Word z = f.sub(1, f.size() - 2);
    Word zhat = eng.mK.apply(z);

    if (eng.left_stream.count(d) && eng.right_stream.count(e)) {
      add(make_ep_descriptor(
          canonical_ep(eng.left_stream[d], zhat, eng.right_stream[e]),
          eng.K0));
    }
    if (eng.left_stream.count(d) && eng.right_seed.count(e)) {
      FixedPointDescriptor fd;
      fd.shape = FixedPointDescriptor::Shape::LeftEPRightSeed;
      fd.power = eng.K0;
      fd.left = primitive_root(eng.left_stream[d]);
      fd.center = zhat;
      fd.right = eng.right_seed[e];
      add(std::move(fd));
    }
    if (eng.left_seed.count(d) && eng.right_stream.count(e)) {
      FixedPointDescriptor fd;
      fd.shape = FixedPointDescriptor::Shape::LeftSeedRightEP;
      fd.power = eng.K0;
      fd.left = eng.left_seed[d];
      fd.center = zhat;
      fd.right = primitive_root(eng.right_stream[e]);
      add(std::move(fd));
    }
    if (eng.left_seed.count(d) && eng.right_seed.count(e)) {
      FixedPointDescriptor fd;
      fd.shape = FixedPointDescriptor::Shape::TwoSeed;
      fd.power = eng.K0;
      fd.left = eng.left_seed[d];
      fd.right = concat(zhat, eng.right_seed[e]);
      if (!eng.mK.apply(fd.right).starts_with(fd.right))
        throw DomainError("folded right seed fails to prolong");
      add(std::move(fd));
    }
  }

  for (auto& d : found) d.power = minimal_power(m, d, eng.K0);
  std::sort(found.begin(), found.end(),
            [](const FixedPointDescriptor& a, const FixedPointDescriptor& b) {
              if (a.shape != b.shape) return a.shape < b.shape;
              if (a.left != b.left) return a.left < b.left;
              if (a.center != b.center) return a.center < b.center;
              return a.right < b.right;
            });
  out.orbits = std::move(found);
  return out;
}

std::vector<EPPoint> non_growing_orbits(const Morphism& m,
                                        const PointEnumerationOptions& opt) {
  std::vector<EPPoint> out;
  if (!shift_nonempty(m)) return out;
  FixedOrbits fo = enumerate_fixed_orbits(m, opt);
  for (const auto& d : fo.orbits) {
    if (d.shape != FixedPointDescriptor::Shape::EventuallyPeriodic) continue;
    out.push_back(canonical_ep(d.left, d.center, d.right));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool same_quasi_orbit(const Morphism& m, const QuasiFixedDescriptor& a,
                      const QuasiFixedDescriptor& b) {
  long long R = 256;
  Word wa = expand_quasi(m, a, R, R);
  Word wb = expand_quasi(m, b, R, R);
  // shifts stay small so the overlap always covers 3/2 R positions
  for (long long s = -R / 2; s <= R / 2; ++s) {
    bool match = true;
    for (long long i = 0; i < 2 * R && match; ++i) {
      long long j = i + s;
      if (j < 0 || j >= 2 * R) continue;
      if (wa[j] != wb[i]) match = false;
    }
    if (match) return true;
  }
  return false;
}

}  // namespace

std::vector<QuasiFixedDescriptor> enumerate_quasi_fixed_orbits(
    const Morphism& m, const PointEnumerationOptions& opt) {
  std::vector<QuasiFixedDescriptor> out;
  if (!shift_nonempty(m)) return out;
  FixedOrbits fo = enumerate_fixed_orbits(m, opt);
  for (const auto& d : fo.orbits) {
    QuasiFixedDescriptor q;
    q.shape = QuasiFixedDescriptor::Shape::ShiftedFixed;
    q.power = d.power;
    q.fixed = d;
    out.push_back(std::move(q));
  }

  Engine eng(m, opt);
  auto non_erasable = [&](const Word& w) {
    for (LetterId x : w)
      if (!eng.cls.erasable[x]) return true;
    return false;
  };
  int n = m.source().size();
  std::vector<QuasiFixedDescriptor> contexts;
  for (LetterId a = 0; a < n; ++a) {
    if (eng.g.scc_kind[eng.g.scc_of[a]] == SccKind::Trivial) continue;
    const Word& img = eng.mK.image(a);
    for (size_t pos : img.occurrences(Word(std::vector<LetterId>{a}))) {
      Word u = img.prefix(pos);
      Word v = img.sub(pos + 1, img.size());
      if (!non_erasable(u) || !non_erasable(v)) continue;
      QuasiFixedDescriptor q;
      q.shape = QuasiFixedDescriptor::Shape::LetterContext;
      q.power = eng.K0;
      q.letter = a;
      q.ctx_left = u;
      q.ctx_right = v;
      bool dup = false;
      for (const auto& e : contexts)
        if (same_quasi_orbit(m, e, q)) dup = true;
      for (const auto& e : out)
        if (!dup && same_quasi_orbit(m, e, q)) dup = true;
      if (!dup) contexts.push_back(std::move(q));
    }
  }
  out.insert(out.end(), contexts.begin(), contexts.end());

  // rotating periodic words among the non-growing periodic orbits
  for (const EPPoint& p : non_growing_orbits(m, opt)) {
    if (!p.periodic()) continue;
    Word w = least_conjugate(p.left_period);
    Word cur = w;
    for (long long k = 1; k <= eng.K0; ++k) {
      cur = m.apply(cur);
      if (cur == w) break;  // fixed at k; covered as a fixed orbit
      if (cur.size() != w.size()) continue;
      bool emitted = false;
      for (size_t t = 1; t < w.size(); ++t) {
        if (rotate_left(w, t) != cur) continue;
        QuasiFixedDescriptor q;
        q.shape = QuasiFixedDescriptor::Shape::Rotating;
        q.power = k;
        q.rot_u = w.prefix(t);
        q.rot_v = w.sub(t, w.size());
        out.push_back(std::move(q));
        emitted = true;
        break;
      }
      if (emitted) break;
    }
  }
  return out;
}

std::optional<long long> descriptor_period(const Morphism& m,
                                           const FixedPointDescriptor& d,
                                           long long bound) {
  if (bound < 1) throw DomainError("period bound must be positive");
  if (d.shape == FixedPointDescriptor::Shape::EventuallyPeriodic) {
    EPPoint p = canonical_ep(d.left, d.center, d.right);
    if (p.periodic()) return static_cast<long long>(p.left_period.size());
    return std::nullopt;
  }
  long long slack =
      static_cast<long long>(d.left.size() + d.center.size() + d.right.size()) +
      8;
  long long R = 2 * bound + slack;
  Word w = expand_fixed(m, d, R, R);
  Morphism mk = m.power(d.power);
  for (long long q = 1; q <= bound; ++q) {
    bool periodic = true;
    for (size_t i = q; i < w.size() && periodic; ++i)
      if (w[i] != w[i - q]) periodic = false;
    if (!periodic) continue;
    Word cand = w.sub(R, q);  // aligned at the origin
    if (is_power_of_conjugate(mk.apply(cand), cand)) return q;
  }
  return std::nullopt;
}

std::optional<long long> quasi_descriptor_period(const Morphism& m,
                                                 const QuasiFixedDescriptor& d,
                                                 long long bound) {
  switch (d.shape) {
    case QuasiFixedDescriptor::Shape::ShiftedFixed:
      return descriptor_period(m, *d.fixed, bound);
    case QuasiFixedDescriptor::Shape::Rotating:
      return static_cast<long long>(
          primitive_root(concat(d.rot_u, d.rot_v)).size());
    case QuasiFixedDescriptor::Shape::LetterContext: {
      long long slack =
          static_cast<long long>(d.ctx_left.size() + d.ctx_right.size()) + 8;
      long long R = 2 * bound + slack;
      Word w = expand_quasi(m, d, R, R);
      Morphism mk = m.power(d.power);
      for (long long q = 1; q <= bound; ++q) {
        bool periodic = true;
        for (size_t i = q; i < w.size() && periodic; ++i)
          if (w[i] != w[i - q]) periodic = false;
        if (!periodic) continue;
        Word cand = w.sub(R, q);
        if (is_power_of_conjugate(mk.apply(cand), cand)) return q;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string render_ep(const Morphism& m, const EPPoint& p) {
  const Alphabet& a = m.source();
  if (p.periodic()) return "(" + p.left_period.render(a) + ")^inf";
  std::string s = "^w(" + p.left_period.render(a) + ")";
  if (!p.center.empty()) s += " " + p.center.render(a);
  s += " . (" + p.right_period.render(a) + ")^w";
  return s;
}

std::string render_fixed(const Morphism& m, const FixedPointDescriptor& d) {
  const Alphabet& a = m.source();
  std::string k = " [power " + std::to_string(d.power) + "]";
  switch (d.shape) {
    case FixedPointDescriptor::Shape::EventuallyPeriodic:
      return render_ep(m, canonical_ep(d.left, d.center, d.right)) + k;
    case FixedPointDescriptor::Shape::LeftEPRightSeed:
      return "^w(" + d.left.render(a) + ") " + d.center.render(a) + " . s^w(" +
             d.right.render(a) + ")" + k;
    case FixedPointDescriptor::Shape::LeftSeedRightEP:
      return "s^~w(" + d.left.render(a) + ") " + d.center.render(a) + " . (" +
             d.right.render(a) + ")^w" + k;
    case FixedPointDescriptor::Shape::TwoSeed:
      return "s^~w(" + d.left.render(a) + ") . s^w(" + d.right.render(a) +
             ")" + k;
  }
  return "?";
}

std::string render_quasi(const Morphism& m, const QuasiFixedDescriptor& d) {
  const Alphabet& a = m.source();
  switch (d.shape) {
    case QuasiFixedDescriptor::Shape::ShiftedFixed:
      return render_fixed(m, *d.fixed);
    case QuasiFixedDescriptor::Shape::LetterContext:
      return "s^{w,i}(" + a.token(d.letter) + ")  [" + d.ctx_left.render(a) +
             " | " + a.token(d.letter) + " | " + d.ctx_right.render(a) +
             ", power " + std::to_string(d.power) + "]";
    case QuasiFixedDescriptor::Shape::Rotating:
      return "((" + d.rot_u.render(a) + ")(" + d.rot_v.render(a) +
             "))^inf [rotates under power " + std::to_string(d.power) + "]";
  }
  return "?";
}

}  // namespace subst
