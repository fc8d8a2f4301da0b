#include "subst/core.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace subst {

Alphabet::Alphabet(std::vector<std::string> tokens) {
  for (auto& t : tokens) add(t);
}

LetterId Alphabet::add(const std::string& token) {
  if (token.empty()) throw DomainError("empty letter token");
  if (index_.count(token))
    throw DomainError("duplicate letter '" + token + "'");
  LetterId id = static_cast<LetterId>(tokens_.size());
  tokens_.push_back(token);
  index_[token] = id;
  return id;
}

std::optional<LetterId> Alphabet::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::single_char() const {
  for (auto& t : tokens_)
    if (t.size() != 1) return false;
  return true;
}

Word Word::sub(size_t pos, size_t len) const {
  pos = std::min(pos, size());
  len = std::min(len, size() - pos);
  return Word(std::vector<LetterId>(syms_.begin() + pos,
                                    syms_.begin() + pos + len));
}

bool Word::starts_with(const Word& w) const {
  if (w.size() > size()) return false;
  return std::equal(w.begin(), w.end(), begin());
}

bool Word::ends_with(const Word& w) const {
  if (w.size() > size()) return false;
  return std::equal(w.begin(), w.end(), begin() + (size() - w.size()));
}

std::vector<size_t> Word::occurrences(const Word& w) const {
  std::vector<size_t> out;
  if (w.size() > size()) return out;
  for (size_t i = 0; i + w.size() <= size(); ++i) {
    if (std::equal(w.begin(), w.end(), begin() + i)) out.push_back(i);
  }
  return out;
}

bool Word::contains_letter(LetterId a) const {
  return std::find(begin(), end(), a) != end();
}

size_t Word::count_letter(LetterId a) const {
  return std::count(begin(), end(), a);
}

std::string Word::render(const Alphabet& a) const {
  if (empty()) return "";
  std::string out;
  bool spaced = !a.single_char();
  for (size_t i = 0; i < size(); ++i) {
    if (spaced && i) out += ' ';
    out += a.token(syms_[i]);
  }
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.append(b);
  return r;
}

bool is_primitive(const Word& w) {
  return !w.empty() && primitive_root(w) == w;
}

Word primitive_root(const Word& w) {
  size_t n = w.size();
  if (n == 0) return w;
  for (size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
    if (ok) return w.prefix(d);
  }
  return w;
}

Word rotate_left(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  return concat(w.sub(k, w.size() - k), w.prefix(k));
}

std::vector<Word> conjugates(const Word& w) {
  std::vector<Word> out;
  for (size_t k = 0; k < std::max<size_t>(w.size(), 1); ++k) {
    Word r = rotate_left(w, k);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

Word least_conjugate(const Word& w) {
  Word best = w;
  for (size_t k = 1; k < w.size(); ++k) {
    Word r = rotate_left(w, k);
    if (r < best) best = r;
  }
  return best;
}

bool are_conjugate(const Word& u, const Word& v) {
  if (u.size() != v.size()) return false;
  return least_conjugate(u) == least_conjugate(v);
}

bool is_power_of_conjugate(const Word& w, const Word& u) {
  if (u.empty() || w.empty() || w.size() % u.size()) return false;
  Word r = primitive_root(w);
  Word ru = primitive_root(u);
  return r.size() == ru.size() && are_conjugate(r, ru);
}

Morphism::Morphism(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.size())
    throw DomainError("morphism needs exactly one image per source letter");
  for (auto& img : images_)
    for (LetterId a : img)
      if (a < 0 || a >= target_.size())
        throw DomainError("image uses letter outside target alphabet");
}

Morphism Morphism::identity(const Alphabet& a) {
  std::vector<Word> imgs;
  for (int i = 0; i < a.size(); ++i) imgs.emplace_back(std::vector<LetterId>{i});
  return Morphism(a, a, std::move(imgs));
}

bool Morphism::is_erasing() const {
  for (auto& img : images_)
    if (img.empty()) return true;
  return false;
}

long long Morphism::image_length_sum() const {
  long long s = 0;
  for (auto& img : images_) s += static_cast<long long>(img.size());
  return s;
}

Word Morphism::apply(const Word& w) const {
  Word out;
  for (LetterId a : w) {
    if (a < 0 || a >= source_.size())
      throw DomainError("letter not in source alphabet");
    out.append(images_[a]);
  }
  return out;
}

Morphism Morphism::compose_after(const Morphism& inner) const {
  if (inner.target_ != source_)
    throw DomainError("alphabet mismatch in composition");
  std::vector<Word> imgs;
  imgs.reserve(inner.images_.size());
  for (auto& img : inner.images_) imgs.push_back(apply(img));
  return Morphism(inner.source_, target_, std::move(imgs));
}

Morphism Morphism::power(long long n, long long cap) const {
  if (!is_endomorphism()) throw DomainError("power of a non-endomorphism");
  if (n < 0) throw DomainError("negative power");
  Morphism result = identity(source_);
  Morphism base = *this;
  while (n > 0) {
    if (n & 1) {
      result = base.compose_after(result);
      if (result.image_length_sum() > cap)
        throw CapExceeded("morphism power image length exceeds cap");
    }
    n >>= 1;
    if (n) {
      base = base.compose_after(base);
      if (base.image_length_sum() > cap)
        throw CapExceeded("morphism power image length exceeds cap");
    }
  }
  return result;
}

Word Morphism::iterate_letter(LetterId a, long long n, long long cap) const {
  if (!is_endomorphism()) throw DomainError("iterate on a non-endomorphism");
  Word w(std::vector<LetterId>{a});
  for (long long i = 0; i < n; ++i) {
    w = apply(w);
    if (static_cast<long long>(w.size()) > cap)
      throw CapExceeded("iterated image length exceeds cap");
  }
  return w;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Morphism parse_morphism(const std::string& text) {
  struct Rule {
    std::string lhs;
    std::string rhs;
    int line;
  };
  std::vector<Rule> rules;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = strip(raw);
    if (line.empty()) continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos)
      throw ParseError("expected '<letter> -> <image>'", lineno);
    std::string lhs = strip(line.substr(0, arrow));
    std::string rhs = strip(line.substr(arrow + 2));
    if (lhs.empty()) throw ParseError("missing left-hand side", lineno);
    if (!split_ws(lhs).empty() && split_ws(lhs).size() != 1)
      throw ParseError("left-hand side must be a single letter", lineno);
    rules.push_back({lhs, rhs, lineno});
  }
  if (rules.empty()) throw ParseError("no rules found");

  Alphabet alpha;
  for (auto& r : rules) {
    if (alpha.find(r.lhs))
      throw ParseError("duplicate letter '" + r.lhs + "'", r.line);
    alpha.add(r.lhs);
  }

  bool chars = alpha.single_char();
  std::vector<Word> images;
  for (auto& r : rules) {
    Word img;
    for (auto& chunk : split_ws(r.rhs)) {
      if (auto id = alpha.find(chunk)) {
        img.push_back(*id);
      } else if (chars) {
        for (char c : chunk) {
          auto cid = alpha.find(std::string(1, c));
          if (!cid)
            throw ParseError(
                "image uses undeclared letter '" + std::string(1, c) + "'",
                r.line);
          img.push_back(*cid);
        }
      } else {
        throw ParseError("image uses undeclared letter '" + chunk + "'",
                         r.line);
      }
    }
    images.push_back(std::move(img));
  }
  return Morphism(alpha, alpha, std::move(images));
}

Morphism load_morphism(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_morphism(buf.str());
}

Word parse_word(const Alphabet& a, const std::string& text) {
  Word w;
  for (auto& chunk : split_ws(text)) {
    if (auto id = a.find(chunk)) {
      w.push_back(*id);
    } else if (a.single_char()) {
      for (char c : chunk) {
        auto cid = a.find(std::string(1, c));
        if (!cid)
          throw DomainError("letter '" + std::string(1, c) +
                            "' not in alphabet");
        w.push_back(*cid);
      }
    } else {
      throw DomainError("letter '" + chunk + "' not in alphabet");
    }
  }
  return w;
}

std::string Morphism::serialize() const {
  std::string out;
  for (int a = 0; a < source_.size(); ++a) {
    out += source_.token(a);
    out += " ->";
    std::string img = images_[a].render(target_);
    if (!img.empty()) {
      out += ' ';
      out += img;
    }
    out += '\n';
  }
  return out;
}

DerivationTree derivation_tree(const Morphism& m, LetterId a, int n) {
  if (a < 0 || a >= m.source().size())
    throw DomainError("letter not in alphabet");
  DerivationTree t;
  t.order = n;
  struct Item {
    LetterId letter;
    int depth;
    int index;
  };
  t.nodes.push_back({a, {}, 0});
  t.root = 0;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int idx = stack.back();
    stack.pop_back();
    LetterId b = t.nodes[idx].letter;
    int d = t.nodes[idx].depth;
    if (d >= n) continue;
    const Word& img = m.image(b);
    for (LetterId c : img) {
      int child = static_cast<int>(t.nodes.size());
      t.nodes.push_back({c, {}, d + 1});
      t.nodes[idx].children.push_back(child);
    }
    // depth-first, right to left so children expand in order later
    for (auto it = t.nodes[idx].children.rbegin();
         it != t.nodes[idx].children.rend(); ++it)
      stack.push_back(*it);
  }
  return t;
}

Word DerivationTree::frontier() const {
  Word w;
  // iterative preorder; leaves at full order contribute
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    int idx = stack.back();
    stack.pop_back();
    const Node& nd = nodes[idx];
    if (nd.depth == order) {
      w.push_back(nd.letter);
      continue;
    }
    for (auto it = nd.children.rbegin(); it != nd.children.rend(); ++it)
      stack.push_back(*it);
  }
  return w;
}

long long checked_add(long long a, long long b, const char* what) {
  if (a > std::numeric_limits<long long>::max() - b)
    throw CapExceeded(std::string(what) + ": overflow");
  return a + b;
}

long long checked_mul(long long a, long long b, const char* what) {
  if (a != 0 && b > std::numeric_limits<long long>::max() / a)
    throw CapExceeded(std::string(what) + ": overflow");
  return a * b;
}

}  // namespace subst
