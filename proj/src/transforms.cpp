#include "subst/transforms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "subst/langtools.hpp"

namespace subst {

BlockSystem higher_block(const Morphism& m, int k) {
  if (!m.is_endomorphism())
    throw DomainError("higher block needs an endomorphism");
  if (m.is_erasing())
    throw DomainError("higher block presentation needs a non-erasing morphism");
  if (k < 1) throw DomainError("block length must be positive");

  std::set<Word> lk = factors_oracle(m, k);
  if (lk.empty()) throw DomainError("L_k(sigma) is empty");

  BlockSystem bs;
  bs.k = k;
  std::map<Word, LetterId> index;
  for (const Word& u : lk) {
    LetterId id = bs.block_alphabet.add("<" + u.render(m.source()) + ">");
    bs.blocks.push_back(u);
    index[u] = id;
  }

  std::vector<Word> sk_images;
  std::vector<Word> proj_images;
  for (const Word& u : bs.blocks) {
    LetterId a = u.front();
    size_t s = m.image(a).size();
    Word img = m.apply(u);
    Word out;
    for (size_t i = 0; i < s; ++i) {
      Word window = img.sub(i, k);
      auto it = index.find(window);
      if (it == index.end())
        throw DomainError("sliding window left the block alphabet");
      out.push_back(it->second);
    }
    sk_images.push_back(std::move(out));
    proj_images.push_back(Word(std::vector<LetterId>{a}));
  }
  bs.sigma_k = Morphism(bs.block_alphabet, bs.block_alphabet, sk_images);
  bs.projection = Morphism(bs.block_alphabet, m.source(), proj_images);
  return bs;
}

Morphism power_stabilize(const Morphism& m) {
  if (!m.is_endomorphism())
    throw DomainError("power stabilization needs an endomorphism");
  MorphismGraph g = build_graph(m);
  long long p = 1;
  for (int c = 0; c < g.scc_count(); ++c)
    if (g.scc_period[c] && *g.scc_period[c] > 0)
      p = std::lcm(p, *g.scc_period[c]);
  if (p == 1) return m;

  Alphabet b;
  for (const auto& tok : m.source().tokens()) b.add(tok);
  // letter (a, i) delays a by i steps
  std::vector<std::vector<LetterId>> delayed(m.source().size());
  for (LetterId a = 0; a < m.source().size(); ++a)
    for (long long i = 1; i < p; ++i)
      delayed[a].push_back(
          b.add(m.source().token(a) + "." + std::to_string(i)));

  std::vector<Word> images;
  for (LetterId a = 0; a < m.source().size(); ++a)
    images.push_back(m.image(a));
  for (LetterId a = 0; a < m.source().size(); ++a)
    for (long long i = 1; i < p; ++i) {
      LetterId prev = (i == 1) ? a : delayed[a][i - 2];
      images.push_back(Word(std::vector<LetterId>{prev}));
    }
  return Morphism(b, b, images);
}

namespace {

std::vector<long long> phi_tau_lengths(const Morphism& tau,
                                       const Morphism& phi, long long k) {
  // |phi(tau^k(b))| for every b, via the count matrix of tau
  int n = tau.source().size();
  std::vector<long long> len(n);
  for (LetterId b = 0; b < n; ++b)
    len[b] = static_cast<long long>(phi.image(b).size());
  for (long long step = 0; step < k; ++step) {
    std::vector<long long> next(n, 0);
    for (LetterId b = 0; b < n; ++b)
      for (LetterId c : tau.image(b))
        next[b] = checked_add(next[b], len[c], "|phi tau^k|");
    len = next;
  }
  return len;
}

bool zeta_growing_on(const Morphism& zeta, const Word& v) {
  LetterClassification cls = classify_letters(zeta);
  for (LetterId c : v)
    if (cls.growing[c]) return true;
  return false;
}

Normalization build_normalization(const Morphism& tau, const Morphism& phi,
                                  long long m_idx, long long n_idx,
                                  bool balanced) {
  Morphism taun = tau.power(n_idx);
  Morphism phip = phi.compose_after(tau.power(m_idx));  // phi . tau^m

  int nb = tau.source().size();
  Alphabet c_alpha;
  std::vector<std::vector<LetterId>> letters_of(nb);
  std::vector<LetterId> theta_target;  // letter of A per C letter
  for (LetterId b = 0; b < nb; ++b) {
    const Word& img = phip.image(b);
    for (size_t p = 0; p < img.size(); ++p) {
      LetterId id = c_alpha.add(tau.source().token(b) + "." +
                                std::to_string(p + 1));
      letters_of[b].push_back(id);
      theta_target.push_back(img[p]);
    }
  }
  std::vector<Word> gamma_imgs(nb);
  for (LetterId b = 0; b < nb; ++b)
    gamma_imgs[b] = Word(std::vector<LetterId>(letters_of[b].begin(),
                                               letters_of[b].end()));
  Morphism gamma(tau.source(), c_alpha, gamma_imgs);

  std::vector<Word> theta_imgs;
  for (LetterId c = 0; c < c_alpha.size(); ++c)
    theta_imgs.push_back(Word(std::vector<LetterId>{theta_target[c]}));
  Morphism theta(c_alpha, phi.target(), theta_imgs);

  // zeta(b_p): split gamma(tau^n(b)) into |phi'(b)| nonempty pieces
  std::vector<Word> zeta_imgs(c_alpha.size());
  for (LetterId b = 0; b < nb; ++b) {
    size_t parts = letters_of[b].size();
    if (parts == 0) continue;
    Word whole = gamma.apply(taun.image(b));
    if (whole.size() < parts)
      throw DomainError("normalization index search produced short images");
    size_t q = whole.size() / parts;
    size_t r = whole.size() % parts;
    size_t pos = 0;
    for (size_t p = 0; p < parts; ++p) {
      size_t piece = balanced ? q + (p < r ? 1 : 0)
                              : (p + 1 < parts ? 1 : whole.size() - pos -
                                                         (parts - 1 - p));
      zeta_imgs[letters_of[b][p]] = whole.sub(pos, piece);
      pos += piece;
    }
  }
  Morphism zeta(c_alpha, c_alpha, zeta_imgs);

  Normalization out{gamma, zeta, theta, m_idx, n_idx};
  // verify both commuting equations letterwise
  for (LetterId b = 0; b < nb; ++b) {
    if (theta.apply(gamma.image(b)) != phip.image(b))
      throw DomainError("theta . gamma != phi . tau^m");
    if (zeta.apply(gamma.image(b)) != gamma.apply(taun.image(b)))
      throw DomainError("zeta . gamma != gamma . tau^n");
  }
  if (zeta.is_erasing()) throw DomainError("zeta is erasing");
  return out;
}

}  // namespace

Normalization cobham_normalize(const Morphism& tau, const Morphism& phi,
                               const Word& seed, const NormalizeOptions& opt) {
  if (!tau.is_endomorphism())
    throw DomainError("normalization needs an endomorphism tau");
  if (phi.source() != tau.source())
    throw DomainError("phi must be defined on tau's alphabet");
  if (seed.empty()) throw DomainError("empty seed");
  if (!tau.apply(seed).starts_with(seed))
    throw DomainError("tau is not right-prolongable on the seed");
  LetterClassification cls = classify_letters(tau);
  LetterId growing_seed = -1;
  for (LetterId a : seed)
    if (growing_seed == -1 && cls.growing[a]) growing_seed = a;
  if (growing_seed == -1)
    throw DomainError("seed is not growing");
  // phi(tau^w(seed)) must be infinite: some growing part must survive phi
  {
    std::vector<long long> l1 = phi_tau_lengths(tau, phi, 2 * tau.source().size());
    std::vector<long long> l2 =
        phi_tau_lengths(tau, phi, 4 * tau.source().size());
    long long a1 = 0, a2 = 0;
    for (LetterId a : seed) {
      a1 += l1[a];
      a2 += l2[a];
    }
    if (a2 <= a1)
      throw DomainError("phi(tau^w(seed)) is not infinite");
  }

  for (long long total = 1; total <= 2 * opt.search_cap; ++total) {
    for (long long mi = 0; mi < total; ++mi) {
      long long ni = total - mi;
      if (mi > opt.search_cap || ni > opt.search_cap || ni < 1) continue;
      std::vector<long long> lm = phi_tau_lengths(tau, phi, mi);
      std::vector<long long> lmn = phi_tau_lengths(tau, phi, mi + ni);
      bool ok = true;
      for (LetterId b = 0; b < tau.source().size(); ++b)
        if (lm[b] > lmn[b]) ok = false;
      if (!ok || lm[growing_seed] >= lmn[growing_seed]) continue;
      for (bool balanced : {true, false}) {
        try {
          Normalization norm = build_normalization(tau, phi, mi, ni, balanced);
          Word v = norm.gamma.apply(seed);
          if (v.empty()) continue;
          if (!norm.zeta.apply(v).starts_with(v)) continue;
          if (!zeta_growing_on(norm.zeta, v)) continue;
          return norm;
        } catch (const DomainError&) {
          continue;
        }
      }
    }
  }
  throw CapExceeded("normalization index search exceeded cap");
}

ReturnWordSystem return_words(const Morphism& m, const Word& r,
                              const Word& l) {
  if (r.empty() || l.empty()) throw DomainError("empty anchor");
  Decision min = is_minimal(m);
  if (min.outcome != Outcome::True)
    throw DomainError("return words need a minimal morphism");
  if (!member_language(m, concat(r, l)))
    throw DomainError("anchor rl is not in L(sigma)");

  long long k = 0;
  for (long long cand = 1; cand <= 64; ++cand) {
    Morphism mk = m.power(cand);
    if (mk.apply(r).ends_with(r) && mk.apply(l).starts_with(l)) {
      k = cand;
      break;
    }
  }
  if (k == 0)
    throw DomainError("anchor is not prolongable under any small power");

  FixedPointDescriptor d;
  d.shape = FixedPointDescriptor::Shape::TwoSeed;
  d.power = k;
  d.left = r;
  d.right = l;

  Word anchor = concat(r, l);
  std::vector<Word> u_set;
  long long window = 512;
  for (int rounds = 0; rounds < 8; ++rounds, window *= 2) {
    Word e = expand_fixed(m, d, window, window);
    auto occ = e.occurrences(anchor);
    std::vector<Word> found;
    for (size_t i = 0; i + 1 < occ.size(); ++i) {
      Word u = e.sub(occ[i] + r.size(), occ[i + 1] - occ[i]);
      if (std::find(found.begin(), found.end(), u) == found.end())
        found.push_back(u);
    }
    if (occ.size() < 4)
      continue;  // widen until the anchor recurs
    std::sort(found.begin(), found.end());
    if (found == u_set && !found.empty()) {
      u_set = found;
      break;
    }
    u_set = found;
    if (window > 2000000) throw CapExceeded("return word window cap");
  }
  if (u_set.empty()) throw CapExceeded("no return words found within window");

  ReturnWordSystem out;
  out.left = r;
  out.right = l;
  out.power = k;
  out.return_words = u_set;
  std::map<Word, LetterId> code;
  for (size_t i = 0; i < u_set.size(); ++i) {
    out.coding_alphabet.add("r" + std::to_string(i + 1));
    code[u_set[i]] = static_cast<LetterId>(i);
  }
  std::vector<Word> phi_imgs = u_set;
  out.phi = Morphism(out.coding_alphabet, m.source(), phi_imgs);

  // tau(b) = the U-factorization of sigma^k(phi(b)), read off the anchored
  // fixed point: sigma^k maps the occurrence grid into itself
  Morphism mk = m.power(k);
  std::vector<Word> tau_imgs;
  for (const Word& u : u_set) {
    Word img = mk.apply(u);
    // factorize img over U, greedy by anchor structure: r img l must
    // decompose into return words
    Word img_ext = concat(concat(r, img), l);
    auto occ = img_ext.occurrences(anchor);
    if (occ.empty() || occ.front() != 0 ||
        occ.back() + anchor.size() > img_ext.size())
      throw DomainError("return word image lost its anchors");
    std::vector<LetterId> letters;
    for (size_t i = 0; i + 1 < occ.size(); ++i) {
      Word piece = img_ext.sub(occ[i] + r.size(), occ[i + 1] - occ[i]);
      auto it = code.find(piece);
      if (it == code.end())
        throw DomainError("image factorization uses an unknown return word");
      letters.push_back(it->second);
    }
    tau_imgs.push_back(Word(std::move(letters)));
  }
  out.tau = Morphism(out.coding_alphabet, out.coding_alphabet, tau_imgs);

  // phi . tau = sigma^k . phi letterwise
  for (LetterId b = 0; b < out.coding_alphabet.size(); ++b)
    if (out.phi.apply(out.tau.image(b)) != mk.apply(out.phi.image(b)))
      throw DomainError("phi . tau != sigma^k . phi");
  return out;
}

namespace {

bool matrix_power_positive(const Morphism& m, long long max_t) {
  int n = m.source().size();
  BoolMat step(n);
  for (LetterId a = 0; a < n; ++a)
    for (LetterId b : m.image(a)) step.set(a, b);
  BoolMat acc = step;
  for (long long t = 1; t <= max_t; ++t) {
    bool all = true;
    for (int i = 0; i < n && all; ++i)
      for (int j = 0; j < n && all; ++j)
        if (!acc.get(i, j)) all = false;
    if (all) return true;
    acc = acc * step;
  }
  return false;
}

}  // namespace

std::pair<Morphism, Morphism> primitive_conjugate(const Morphism& m) {
  Decision min = is_minimal(m);
  if (min.outcome != Outcome::True)
    throw DomainError("primitive conjugate needs a minimal morphism");

  Decision per = is_periodic_shift(m);
  if (per.outcome == Outcome::True) {
    // X(sigma) is one periodic orbit w^inf; send every letter to w
    FixedOrbits fo = enumerate_fixed_orbits(m);
    if (fo.orbits.empty()) throw DomainError("no fixed orbit found");
    long long bound = period_bound(m).bound;
    for (const auto& d : fo.orbits) {
      auto q = descriptor_period(m, d, bound);
      if (!q) continue;
      Word w = expand_fixed(m, d, 0, *q);
      w = least_conjugate(primitive_root(w));
      std::set<LetterId> used(w.begin(), w.end());
      Alphabet b;
      std::vector<LetterId> back;
      for (LetterId a : used) {
        b.add(m.source().token(a));
        back.push_back(a);
      }
      std::vector<Word> tau_imgs, phi_imgs;
      // w rewritten over the restricted alphabet
      std::map<LetterId, LetterId> to_b;
      for (size_t i = 0; i < back.size(); ++i) to_b[back[i]] = i;
      Word wb;
      for (LetterId a : w) wb.push_back(to_b[a]);
      for (size_t i = 0; i < back.size(); ++i) {
        tau_imgs.push_back(wb);
        phi_imgs.push_back(Word(std::vector<LetterId>{back[i]}));
      }
      Morphism tau(b, b, tau_imgs);
      Morphism phi(b, m.source(), phi_imgs);
      if (!matrix_power_positive(tau, 4)) throw DomainError("tau not primitive");
      return {tau, phi};
    }
    throw DomainError("periodic shift without a periodic descriptor");
  }

  // aperiodic minimal: build a return word system from a two-seed orbit
  FixedOrbits fo = enumerate_fixed_orbits(m);
  for (const auto& d : fo.orbits) {
    if (d.shape != FixedPointDescriptor::Shape::TwoSeed) continue;
    ReturnWordSystem rw = return_words(m, d.left, d.right);
    long long n = rw.coding_alphabet.size();
    if (!matrix_power_positive(rw.tau, (n - 1) * (n - 1) + 1 + n))
      throw DomainError("derived return morphism is not primitive");
    return {rw.tau, rw.phi};
  }
  throw DomainError("no two-seed fixed orbit to anchor return words");
}

std::pair<Morphism, Morphism> rauzy_refine(const Morphism& sigma,
                                           const Morphism& phi) {
  if (!sigma.is_endomorphism())
    throw DomainError("rauzy refinement needs an endomorphism");
  if (phi.source() != sigma.source())
    throw DomainError("phi must be defined on sigma's alphabet");
  if (phi.is_erasing()) throw DomainError("phi must be non-erasing");
  long long n = sigma.source().size();
  if (!matrix_power_positive(sigma, (n - 1) * (n - 1) + 1 + n))
    throw DomainError("sigma is not primitive");

  Morphism s = sigma;
  long long tries = 0;
  auto long_enough = [&]() {
    for (LetterId b = 0; b < s.source().size(); ++b)
      if (s.image(b).size() < phi.image(b).size()) return false;
    return true;
  };
  while (!long_enough()) {
    s = s.compose_after(sigma);
    if (++tries > 64) throw CapExceeded("sigma power search cap");
  }

  Alphabet c_alpha;
  std::vector<std::vector<LetterId>> letters_of(s.source().size());
  std::vector<LetterId> theta_target;
  for (LetterId b = 0; b < s.source().size(); ++b) {
    for (size_t p = 0; p < phi.image(b).size(); ++p) {
      LetterId id =
          c_alpha.add(s.source().token(b) + "." + std::to_string(p + 1));
      letters_of[b].push_back(id);
      theta_target.push_back(phi.image(b)[p]);
    }
  }
  std::vector<Word> gamma_imgs(s.source().size());
  for (LetterId b = 0; b < s.source().size(); ++b)
    gamma_imgs[b] = Word(std::vector<LetterId>(letters_of[b].begin(),
                                               letters_of[b].end()));
  Morphism gamma(s.source(), c_alpha, gamma_imgs);

  std::vector<Word> zeta_imgs(c_alpha.size());
  for (LetterId b = 0; b < s.source().size(); ++b) {
    size_t parts = letters_of[b].size();
    const Word& img = s.image(b);
    for (size_t p = 0; p < parts; ++p) {
      if (p + 1 < parts) {
        zeta_imgs[letters_of[b][p]] =
            gamma.apply(Word(std::vector<LetterId>{img[p]}));
      } else {
        zeta_imgs[letters_of[b][p]] =
            gamma.apply(img.sub(parts - 1, img.size()));
      }
    }
  }
  Morphism zeta(c_alpha, c_alpha, zeta_imgs);

  std::vector<Word> theta_imgs;
  for (LetterId c = 0; c < c_alpha.size(); ++c)
    theta_imgs.push_back(Word(std::vector<LetterId>{theta_target[c]}));
  Morphism theta(c_alpha, phi.target(), theta_imgs);

  for (LetterId b = 0; b < s.source().size(); ++b)
    if (zeta.apply(gamma.image(b)) != gamma.apply(s.image(b)))
      throw DomainError("zeta . gamma != gamma . sigma");
  long long nc = c_alpha.size();
  if (!matrix_power_positive(zeta, (nc - 1) * (nc - 1) + 1 + nc))
    throw DomainError("zeta is not primitive");
  return {zeta, theta};
}

}  // namespace subst
