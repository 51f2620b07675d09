#pragma once

#include <cstdint>
#include <random>

#include "wfock/types.hpp"

namespace wfock {

// Deterministic random source. Distributions are implemented on top of the
// raw mt19937_64 stream (std distributions are not bit-stable across
// standard libraries, and reports must reproduce byte-identically).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();                      // standard real normal
  Complex cgaussian();                    // standard complex normal
  CVec cgaussian_vector(Index n);
  CMat cgaussian_matrix(Index rows, Index cols);
  CMat unitary(Index n);                  // Haar-like, via QR with phase fix

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wfock
