#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace subst {

// Thrown on malformed morphism files. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line(line) {}
  int line;
};

// Thrown when a configured resource cap is exceeded. Never used to signal a
// mathematical "no".
class CapExceeded : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Domain violations: letter outside an alphabet, alphabet mismatch in a
// composition, precondition failures of constructions.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

using LetterId = int32_t;

// Ordered set of distinct letter tokens. Index-addressable; tokens may be
// longer than one character (higher-block letters, Cobham letters).
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> tokens);

  LetterId add(const std::string& token);
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::string& token(LetterId i) const { return tokens_.at(i); }
  std::optional<LetterId> find(const std::string& token) const;
  bool single_char() const;

  bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, LetterId> index_;
};

// A word is a sequence of letter indices into some alphabet. The empty word
// is Word{}. Words do not own their alphabet; rendering takes one.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<LetterId> syms) : syms_(std::move(syms)) {}

  size_t size() const { return syms_.size(); }
  bool empty() const { return syms_.empty(); }
  LetterId operator[](size_t i) const { return syms_[i]; }
  LetterId& operator[](size_t i) { return syms_[i]; }
  LetterId front() const { return syms_.front(); }
  LetterId back() const { return syms_.back(); }

  auto begin() const { return syms_.begin(); }
  auto end() const { return syms_.end(); }

  void push_back(LetterId a) { syms_.push_back(a); }
  void append(const Word& w) {
    syms_.insert(syms_.end(), w.syms_.begin(), w.syms_.end());
  }
  Word sub(size_t pos, size_t len) const;
  Word prefix(size_t len) const { return sub(0, std::min(len, size())); }
  Word suffix(size_t len) const {
    len = std::min(len, size());
    return sub(size() - len, len);
  }

  bool starts_with(const Word& w) const;
  bool ends_with(const Word& w) const;
  // Positions of all (possibly overlapping) occurrences of w.
  std::vector<size_t> occurrences(const Word& w) const;
  bool contains(const Word& w) const { return !occurrences(w).empty(); }
  bool contains_letter(LetterId a) const;
  size_t count_letter(LetterId a) const;

  bool operator==(const Word& o) const { return syms_ == o.syms_; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const { return syms_ < o.syms_; }

  const std::vector<LetterId>& symbols() const { return syms_; }

  std::string render(const Alphabet& a) const;

 private:
  std::vector<LetterId> syms_;
};

Word concat(const Word& a, const Word& b);

// Primitivity and conjugacy helpers (combinatorics on words).
bool is_primitive(const Word& w);
Word primitive_root(const Word& w);
Word rotate_left(const Word& w, size_t k);
std::vector<Word> conjugates(const Word& w);  // all distinct rotations
Word least_conjugate(const Word& w);          // lexicographically least rotation
bool are_conjugate(const Word& u, const Word& v);
// true iff w = c^m for some conjugate c of u, m >= 1
bool is_power_of_conjugate(const Word& w, const Word& u);

class Morphism {
 public:
  Morphism() = default;  // the empty morphism on the empty alphabet
  Morphism(Alphabet source, Alphabet target, std::vector<Word> images);

  static Morphism identity(const Alphabet& a);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  bool is_endomorphism() const { return source_ == target_; }

  const Word& image(LetterId a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }

  bool is_erasing() const;  // some image is empty

  // |sigma| = sum of image lengths; size = |sigma| + Card(A).
  long long image_length_sum() const;
  long long size() const { return image_length_sum() + source_.size(); }

  Word apply(const Word& w) const;
  Word apply_letter(LetterId a) const { return images_.at(a); }

  // this(inner(.)); requires inner.target == this->source.
  Morphism compose_after(const Morphism& inner) const;
  // sigma^n by binary exponentiation; n = 0 gives the identity. Total image
  // length above `cap` raises CapExceeded.
  Morphism power(long long n, long long cap = 10000000) const;

  // Image of a under sigma^n without materializing the morphism power.
  Word iterate_letter(LetterId a, long long n, long long cap = 10000000) const;

  bool operator==(const Morphism& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
  }

  std::string serialize() const;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

// Parses the morphism file format: one `<letter> -> <image>` rule per line,
// `#` comments, alphabet in first-appearance order of left-hand sides.
Morphism parse_morphism(const std::string& text);
Morphism load_morphism(const std::string& path);

// Parses a word over the given alphabet (single-char concatenation when the
// alphabet is single-char, whitespace-separated tokens otherwise).
Word parse_word(const Alphabet& a, const std::string& text);

struct DerivationTree {
  struct Node {
    LetterId letter;
    std::vector<int> children;  // indices into `nodes`, in image order
    int depth;
  };
  std::vector<Node> nodes;
  int root = -1;
  int order = 0;

  // Word read off the depth-`order` leaves, left to right.
  Word frontier() const;
};

DerivationTree derivation_tree(const Morphism& m, LetterId a, int n);

// Checked arithmetic used for size constants that may overflow.
long long checked_add(long long a, long long b, const char* what);
long long checked_mul(long long a, long long b, const char* what);

}  // namespace subst
