#pragma once

#include <cstdint>
#include <vector>

#include "steinhaus/core.hpp"

namespace steinhaus {

/// Index of the unknown L(x)_coord for cell index `cell`.
inline std::int64_t variable_index(std::int64_t cell, int coord) { return 3 * cell + coord; }

struct RowTag {
  IntVec3 lambda;
  IntVec3 x;
  std::int64_t t;
};

/// Dense linear system over GF(p): coeffs . vars = rhs per row.
struct GFpLinearSystem {
  Prime p;
  std::int64_t num_vars;
  std::vector<std::vector<std::int64_t>> coeffs;
  std::vector<std::int64_t> rhs;
  std::vector<RowTag> tags;  // empty for hand-built systems

  std::size_t rows() const { return coeffs.size(); }
  void add_row(std::vector<std::int64_t> row, std::int64_t constant);
  /// True iff the assignment satisfies every row.
  bool satisfied_by(const std::vector<std::int64_t>& values) const;
};

/// Nonzero slope for every (lambda in W, x in C_lambda), in the order
/// W (sorted) then C_lambda (sorted).
class AffineAnsatz {
 public:
  static AffineAnsatz unit(Prime p);
  static AffineAnsatz random(Prime p, std::uint64_t seed);
  /// Throws InvalidArgument on a zero slope or wrong count.
  AffineAnsatz(Prime p, std::vector<std::int64_t> slopes);

  Prime prime() const noexcept { return p_; }
  const std::vector<std::int64_t>& slopes() const noexcept { return slopes_; }

 private:
  Prime p_;
  std::vector<std::int64_t> slopes_;
};

/// Rows pi(t+1) - pi(t) = c for every table of the W x C_lambda family and
/// t = 0..p-2, in the unknowns L(x)_i. 3p^3 variables, (p+1)p^2(p-1) rows.
GFpLinearSystem build_system(const AffineAnsatz& ansatz);

/// Reduced row echelon outcome of elimination.
struct SolutionSpace {
  bool consistent = false;
  std::int64_t rank = 0;
  std::vector<std::int64_t> particular;          // free variables set to 0
  std::vector<std::vector<std::int64_t>> kernel;  // basis of the homogeneous solutions

  std::int64_t kernel_dimension() const { return static_cast<std::int64_t>(kernel.size()); }
};

SolutionSpace solve(const GFpLinearSystem& system);

/// Up to max_samples distinct solutions: the particular solution plus seeded
/// random kernel combinations (all of them when the space is small enough).
std::vector<std::vector<std::int64_t>> sample_solutions(const SolutionSpace& space, Prime p,
                                                        std::int64_t max_samples,
                                                        std::uint64_t seed);

/// Reads a 3p^3 solution vector back as a complete map on X_p.
PartialMap assemble_map(Prime p, const std::vector<std::int64_t>& values);

/// Inverse of assemble_map.
std::vector<std::int64_t> map_variables(const PartialMap& L);

std::vector<PartialMap> solve_and_sample(const GFpLinearSystem& system, std::int64_t max_samples,
                                         std::uint64_t seed);

}  // namespace steinhaus
