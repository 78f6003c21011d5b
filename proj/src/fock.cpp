#include "ncball/fock.hpp"

#include <algorithm>
#include <string>

namespace ncball {

namespace {

constexpr Eigen::Index kMaxDim = 1 << 26;

void check_generator(const TruncatedFock& space, int i) {
  if (i < 1 || i > space.n)
    throw BadGenerator("generator index " + std::to_string(i) +
                       " outside 1.." + std::to_string(space.n));
}

}  // namespace

TruncatedFock::TruncatedFock(int n_, int m_) : n(n_), m(m_) {
  if (n < 1) throw BadGenerator("fock space needs at least one generator");
  if (m < 0) throw WordTooLong("fock truncation length must be nonnegative");
  offsets.resize(static_cast<std::size_t>(m) + 2);
  offsets[0] = 0;
  Eigen::Index level = 1;
  for (int l = 0; l <= m; ++l) {
    offsets[static_cast<std::size_t>(l) + 1] = offsets[l] + level;
    if (offsets[l + 1] > kMaxDim)
      throw Error("fock truncation too large to enumerate");
    level *= n;
  }
  dim = offsets[static_cast<std::size_t>(m) + 1];
}

Eigen::Index TruncatedFock::level_size(int level) const {
  return offsets[static_cast<std::size_t>(level) + 1] -
         offsets[static_cast<std::size_t>(level)];
}

int TruncatedFock::level_of(Eigen::Index idx) const {
  for (int l = 0; l <= m; ++l)
    if (idx < offsets[static_cast<std::size_t>(l) + 1]) return l;
  throw WordTooLong("index outside the truncated space");
}

bool operator<(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters < b.letters;
}

bool operator==(const Word& a, const Word& b) {
  return a.letters == b.letters;
}

Eigen::Index word_index(const Word& w, const TruncatedFock& space) {
  if (w.length() > space.m)
    throw WordTooLong("word of length " + std::to_string(w.length()) +
                      " exceeds truncation " + std::to_string(space.m));
  Eigen::Index pos = 0;
  for (int letter : w.letters) {
    if (letter < 1 || letter > space.n)
      throw BadGenerator("word contains letter outside 1..n");
    pos = pos * space.n + (letter - 1);
  }
  return space.offsets[static_cast<std::size_t>(w.length())] + pos;
}

Word index_word(Eigen::Index idx, const TruncatedFock& space) {
  const int l = space.level_of(idx);
  Eigen::Index pos = idx - space.offsets[static_cast<std::size_t>(l)];
  std::vector<int> letters(static_cast<std::size_t>(l));
  for (int k = l - 1; k >= 0; --k) {
    letters[static_cast<std::size_t>(k)] = static_cast<int>(pos % space.n) + 1;
    pos /= space.n;
  }
  return Word(std::move(letters));
}

Word reverse(const Word& w) {
  Word r = w;
  std::reverse(r.letters.begin(), r.letters.end());
  return r;
}

Eigen::Index append_index(const TruncatedFock& space, Eigen::Index idx, int letter) {
  check_generator(space, letter);
  const int l = space.level_of(idx);
  if (l == space.m) return -1;
  const Eigen::Index pos = idx - space.offsets[static_cast<std::size_t>(l)];
  return space.offsets[static_cast<std::size_t>(l) + 1] + pos * space.n +
         (letter - 1);
}

Eigen::Index prepend_index(const TruncatedFock& space, Eigen::Index idx, int letter) {
  check_generator(space, letter);
  const int l = space.level_of(idx);
  if (l == space.m) return -1;
  const Eigen::Index pos = idx - space.offsets[static_cast<std::size_t>(l)];
  return space.offsets[static_cast<std::size_t>(l) + 1] +
         (letter - 1) * space.level_size(l) + pos;
}

ComplexMatrix right_creation(const TruncatedFock& space, int i) {
  check_generator(space, i);
  ComplexMatrix R = ComplexMatrix::Zero(space.dim, space.dim);
  for (Eigen::Index idx = 0; idx < space.dim; ++idx) {
    const Eigen::Index j = append_index(space, idx, i);
    if (j >= 0) R(j, idx) = 1.0;
  }
  return R;
}

ComplexMatrix left_creation(const TruncatedFock& space, int i) {
  check_generator(space, i);
  ComplexMatrix S = ComplexMatrix::Zero(space.dim, space.dim);
  for (Eigen::Index idx = 0; idx < space.dim; ++idx) {
    const Eigen::Index j = prepend_index(space, idx, i);
    if (j >= 0) S(j, idx) = 1.0;
  }
  return S;
}

}  // namespace ncball
