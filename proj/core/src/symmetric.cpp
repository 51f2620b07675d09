#include "wfock/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace wfock {

namespace {

void multisets_rec(int d, int k, int min_letter, Word& prefix, std::vector<Word>& out) {
  if (k == 0) {
    out.push_back(prefix);
    return;
  }
  for (int letter = min_letter; letter <= d; ++letter) {
    prefix.push_back(letter);
    multisets_rec(d, k - 1, letter, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Word> enumerate_multisets(int d, int k) {
  std::vector<Word> out;
  Word prefix;
  multisets_rec(d, k, 1, prefix, out);
  return out;
}

SymmetricFrame symmetric_frame(int d, int k, std::size_t cap) {
  const std::size_t dim_full = tensor_dim(d, k, cap);
  const auto multisets = enumerate_multisets(d, k);

  SymmetricFrame frame;
  frame.d = d;
  frame.k = k;
  frame.dim = static_cast<Index>(multisets.size());

  std::map<Word, Index> column_of;
  for (Index c = 0; c < frame.dim; ++c) column_of[multisets[static_cast<std::size_t>(c)]] = c;

  // One pass over all words: each word contributes 1 to the column of its
  // sorted key; columns are normalized by the rearrangement count afterwards.
  CMat s = CMat::Zero(static_cast<Index>(dim_full), frame.dim);
  std::vector<Index> counts(static_cast<std::size_t>(frame.dim), 0);
  for (std::size_t j = 0; j < dim_full; ++j) {
    Word w = word_at(j, d, k);
    Word key = w;
    std::sort(key.begin(), key.end());
    const Index c = column_of.at(key);
    s(static_cast<Index>(j), c) = 1.0;
    ++counts[static_cast<std::size_t>(c)];
  }
  for (Index c = 0; c < frame.dim; ++c)
    s.col(c) /= std::sqrt(static_cast<double>(counts[static_cast<std::size_t>(c)]));

  frame.isometry = std::move(s);
  return frame;
}

CMat symmetrizer(int d, int k, std::size_t cap) {
  const SymmetricFrame frame = symmetric_frame(d, k, cap);
  return frame.isometry * frame.isometry.adjoint();
}

}  // namespace wfock
