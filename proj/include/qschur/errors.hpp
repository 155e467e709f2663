#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qschur {

/** @brief Mismatched or invalid matrix dimensions. */
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/** @brief Malformed matrix file or non-finite data on read/write. */
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** @brief Scalar Sylvester equation with coefficients in the same similarity class. */
struct degenerate_sylvester_error : std::domain_error {
  using std::domain_error::domain_error;
};

/** @brief Triangular solve hit a diagonal entry whose class matches the eigenvalue. */
struct eigenvalue_collision_error : std::domain_error {
  int index;
  explicit eigenvalue_collision_error(int index_, const std::string& what_)
      : std::domain_error(what_), index(index_) {}
};

/** @brief Eigenvector extraction requires pairwise distinct diagonal classes. */
struct nondistinct_spectrum_error : std::domain_error {
  int first;
  int second;
  nondistinct_spectrum_error(int first_, int second_, const std::string& what_)
      : std::domain_error(what_), first(first_), second(second_) {}
  nondistinct_spectrum_error(int first_, int second_)
      : nondistinct_spectrum_error(first_, second_,
                                   "diagonal classes " + std::to_string(first_) + " and " +
                                       std::to_string(second_) + " coincide") {}
};

/** @brief Iteration budget exhausted before triangularization. */
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qschur
