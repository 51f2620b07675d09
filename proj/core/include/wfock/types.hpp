#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace wfock {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

// Thrown on malformed or inconsistent input (shapes, parse errors,
// inadmissible weights). CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when purity could not be certified where required. CLI exit code 3.
struct PurityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a subspace fails the joint-invariance test. CLI exit code 4.
struct InvarianceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a tensor dimension would exceed the configured cap.
// CLI exit code 5.
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wfock
