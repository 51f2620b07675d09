#pragma once

#include "wfock/words.hpp"

namespace wfock {

// Isometry from the multiset (symmetric) basis into (C^d)^{⊗k}.
//
// Columns are indexed by multisets of size k over {1..d} in lexicographic
// order of the sorted word; column for a multiset with occupation numbers
// (m_1,...,m_d) is (1/sqrt(c)) * sum over the c = k!/(m_1!...m_d!) distinct
// rearrangements. Distinct multisets touch disjoint word sets, so the
// columns are exactly orthonormal and span the symmetric subspace.
struct SymmetricFrame {
  int d = 1;
  int k = 0;
  Index dim = 1;   // binom(d+k-1, k)
  CMat isometry;   // d^k x dim
};

SymmetricFrame symmetric_frame(int d, int k, std::size_t cap = kDefaultTensorCap);

// The symmetrizer projection S_k S_k^*.
CMat symmetrizer(int d, int k, std::size_t cap = kDefaultTensorCap);

// All multisets of size k over {1..d} as sorted words, lex order.
std::vector<Word> enumerate_multisets(int d, int k);

}  // namespace wfock
