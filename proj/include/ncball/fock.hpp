// fock.hpp: truncated full Fock space over n free generators. Words are
// ordered by length, then lexicographically, which makes every
// length-increasing operator strictly block lower triangular. Creation
// operators are exact 0/1 matrices; index arithmetic is O(1) per letter.
#pragma once

#include <vector>

#include "ncball/linalg.hpp"

namespace ncball {

// A word over the generators g_1..g_n; the empty word is the vacuum.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}
  int length() const { return static_cast<int>(letters.size()); }
};

struct TruncatedFock {
  int n;  // generators, >= 1
  int m;  // maximum word length, >= 0
  Eigen::Index dim;
  std::vector<Eigen::Index> offsets;  // offsets[l] = first index of level l

  TruncatedFock(int n, int m);
  Eigen::Index level_size(int level) const;
  int level_of(Eigen::Index idx) const;
};

// Length-then-lex order and equality, matching the basis enumeration.
bool operator<(const Word& a, const Word& b);
bool operator==(const Word& a, const Word& b);

// Position of a word in the length-then-lex basis order.
Eigen::Index word_index(const Word& w, const TruncatedFock& space);

// Inverse of word_index.
Word index_word(Eigen::Index idx, const TruncatedFock& space);

Word reverse(const Word& w);

// Index of e_w * e_i (append) and e_i * e_w (prepend); -1 when the result
// leaves the truncated space.
Eigen::Index append_index(const TruncatedFock& space, Eigen::Index idx, int letter);
Eigen::Index prepend_index(const TruncatedFock& space, Eigen::Index idx, int letter);

// Compression of the right creation operator: e_w -> e_{w g_i}, truncated.
ComplexMatrix right_creation(const TruncatedFock& space, int i);

// Compression of the left creation operator: e_w -> e_{g_i w}, truncated.
ComplexMatrix left_creation(const TruncatedFock& space, int i);

}  // namespace ncball
