#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wfock/types.hpp"

namespace wfock {

// A word on the alphabet {1,...,d}; the empty word has length 0.
using Word = std::vector<int>;

// Default cap on d^k for dense tensor-leg enumeration.
inline constexpr std::size_t kDefaultTensorCap = 1'000'000;

// d^k with overflow and cap guard; throws CapExceededError past the cap.
std::size_t tensor_dim(int d, int k, std::size_t cap = kDefaultTensorCap);

// Big-endian lexicographic index: sum_i (alpha(i)-1) d^(k-i).
// Concatenation satisfies index(ab) = index(a)*d^|b| + index(b).
std::size_t word_index(const Word& alpha, int d);

Word word_at(std::size_t index, int d, int k);

// All words of length k in index order.
struct WordTable {
  int d = 1;
  int k = 0;
  std::vector<Word> words;
};

WordTable enumerate_words(int d, int k, std::size_t cap = kDefaultTensorCap);

// Compositions F(k,l) of k into l positive parts, grouped by l.
// |parts(l)| = binom(k-1, l-1); the total over l is 2^(k-1).
struct CompositionSet {
  int k = 1;
  std::vector<std::vector<std::vector<int>>> parts;  // parts[l-1]

  const std::vector<std::vector<int>>& of_length(int l) const { return parts.at(l - 1); }
  std::size_t total() const;
};

CompositionSet compositions(int k);

std::uint64_t binomial(int n, int k);

}  // namespace wfock
