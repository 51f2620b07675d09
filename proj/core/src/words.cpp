#include "wfock/words.hpp"

#include <string>

namespace wfock {

std::size_t tensor_dim(int d, int k, std::size_t cap) {
  if (d < 1) throw InputError("tensor_dim: alphabet size must be >= 1");
  if (k < 0) throw InputError("tensor_dim: word length must be >= 0");
  std::size_t dim = 1;
  for (int i = 0; i < k; ++i) {
    if (dim > cap / static_cast<std::size_t>(d))
      throw CapExceededError("tensor dimension " + std::to_string(d) + "^" +
                             std::to_string(k) + " exceeds cap " + std::to_string(cap));
    dim *= static_cast<std::size_t>(d);
  }
  if (dim > cap)
    throw CapExceededError("tensor dimension exceeds cap " + std::to_string(cap));
  return dim;
}

std::size_t word_index(const Word& alpha, int d) {
  std::size_t idx = 0;
  for (int letter : alpha) {
    if (letter < 1 || letter > d) throw InputError("word_index: letter out of range");
    idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(letter - 1);
  }
  return idx;
}

Word word_at(std::size_t index, int d, int k) {
  Word alpha(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    alpha[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(d)) + 1;
    index /= static_cast<std::size_t>(d);
  }
  return alpha;
}

WordTable enumerate_words(int d, int k, std::size_t cap) {
  const std::size_t dim = tensor_dim(d, k, cap);
  WordTable table;
  table.d = d;
  table.k = k;
  table.words.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) table.words.push_back(word_at(j, d, k));
  return table;
}

std::size_t CompositionSet::total() const {
  std::size_t n = 0;
  for (const auto& group : parts) n += group.size();
  return n;
}

namespace {

void compositions_rec(int remaining, int parts_left, std::vector<int>& prefix,
                      std::vector<std::vector<int>>& out) {
  if (parts_left == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 1; first <= remaining - parts_left + 1; ++first) {
    prefix.push_back(first);
    compositions_rec(remaining - first, parts_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

CompositionSet compositions(int k) {
  if (k < 1) throw InputError("compositions: k must be >= 1");
  CompositionSet set;
  set.k = k;
  set.parts.resize(static_cast<std::size_t>(k));
  for (int l = 1; l <= k; ++l) {
    std::vector<int> prefix;
    compositions_rec(k, l, prefix, set.parts[static_cast<std::size_t>(l - 1)]);
  }
  return set;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i)
    c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  return c;
}

}  // namespace wfock
