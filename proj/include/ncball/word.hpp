#pragma once

#include <vector>

namespace ncball::freepoly {

/// Word over the alphabet {1,...,n}; the empty word denotes the unit.
struct Word {
  std::vector<int> letters;  // 1-based

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters == b.letters;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
};

/// Graded lexicographic order: shorter words first, lexicographic on equal
/// length.  This is the tie-break order used everywhere (minimal words,
/// basis indexing).
struct GradedLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.letters < b.letters;
  }
};

inline Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

/// All words of length <= max_len over {1,...,n} in graded-lex order.
std::vector<Word> all_words(int n, int max_len);

}  // namespace ncball::freepoly
