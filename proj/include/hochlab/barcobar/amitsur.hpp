#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hochlab/barcobar/coalgebra.hpp"
#include "hochlab/exactalg/sparse_matrix.hpp"

namespace hochlab {

/**
 * K_n = C^{(x) n+1} with d_n = sum_{i=1}^n (-1)^{i-1} id^{(x) i} (x) eps (x) id^{(x) n-i}
 * and h_n = Delta (x) id^{(x) n}. Only eps and Delta of C are used.
 */
struct AmitsurComplex {
  std::size_t rank = 0;          // dim C
  std::vector<SparseMatrix> d;   // d[n] : K_n -> K_{n-1}, d[0] = 0
  std::vector<SparseMatrix> h;   // h[n] : K_n -> K_{n+1}
};

/// Levels 0..length; h up to level `length`.
AmitsurComplex amitsur_complex(const CoalgebraData& C, int length);

struct AmitsurReport {
  bool ok = true;
  int length = 0;
  std::vector<std::size_t> ranks;  // dim K_n
  std::vector<std::string> failures;
};

/**
 * Checks d^2 = 0 and d h + h d = id on K_n for n <= length, exactly. Throws
 * PreconditionError with a witness basis element when (id (x) eps) Delta != id.
 */
AmitsurReport amitsur_homotopy(const CoalgebraData& C, int length);

/// Random eps and Delta on Q^rank with (id (x) eps) Delta = id, small rational entries.
CoalgebraData random_section_coalgebra(std::size_t rank, std::uint64_t seed);

}  // namespace hochlab
