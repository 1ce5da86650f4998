#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "steinhaus/core.hpp"

namespace steinhaus {

/// Candidate values (points of X_p, by cube index) for one cell, as a bit-vector.
class Domain {
 public:
  Domain(std::int64_t cell, std::int64_t p, std::vector<std::uint64_t> bits)
      : cell_(cell), p_(p), bits_(std::move(bits)) {}

  CubePoint cell() const { return CubePoint::from_index(cell_, p_); }
  bool contains(std::int64_t value) const {
    return (bits_[static_cast<std::size_t>(value >> 6)] >> (value & 63)) & 1U;
  }
  std::int64_t size() const;
  std::vector<std::int64_t> values() const;

 private:
  std::int64_t cell_;
  std::int64_t p_;
  std::vector<std::uint64_t> bits_;
};

/// One permutation constraint: pi(t) = offsets[t] + lambda . L(cells[t]) mod p.
struct Constraint {
  IntVec3 lambda;
  std::int32_t lambda_slot;  // position of lambda in W
  IntVec3 anchor;
  std::vector<std::int32_t> cells;
  std::vector<std::int32_t> offsets;
};

struct ConstraintIndex {
  Prime p;
  std::vector<IsoVector> w;
  std::vector<Constraint> constraints;
  /// For every cell, the (constraint, t) pairs it takes part in.
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> memberships;
  /// projection[slot][v] = w[slot] . v mod p for every value index v.
  std::vector<std::vector<std::int32_t>> projection;
};

ConstraintIndex build_constraints(Prime p);

enum class SearchStatus { Found, ExhaustedSpace, BudgetExceeded, Infeasible };

const char* to_string(SearchStatus s);

struct SearchStats {
  std::int64_t nodes = 0;
  std::int64_t backtracks = 0;
  std::int64_t prunings = 0;
  std::int64_t restarts = 0;
  double wall_seconds = 0.0;
};

struct SearchOptions {
  std::int64_t node_limit = 0;            // 0 = unlimited
  std::chrono::milliseconds time_limit{0};  // 0 = unlimited
  std::uint64_t seed = 0;
  int threads = 1;
  /// Pin L(0,0,0) = (0,0,0). Only allowed with an empty initial map.
  bool fix_origin = false;
  /// Restart with a reshuffled value order after this many nodes (doubling
  /// each time); 0 disables restarts. Single-threaded search only.
  std::int64_t restart_nodes = 0;
  /// Fail a branch when some projected value of a constraint has no cell left to take it.
  bool support_check = true;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::BudgetExceeded;
  std::optional<PartialMap> map;  // Found only
  std::optional<PermutationWitness> conflict;  // Infeasible only
  SearchStats stats;
};

/// Backtracking with forward checking over the W x C_lambda constraints.
SearchOutcome search(Prime p, const PartialMap& initial, const SearchOptions& options = {});

/// Domains after forward checking the initial assignments; nullopt when some
/// domain empties. Initial conflicts are not reported here.
std::optional<std::vector<Domain>> propagate_initial(const ConstraintIndex& index,
                                                     const PartialMap& initial);

/// First pair of assigned cells whose projected values collide.
std::optional<PermutationWitness> initial_conflict(const ConstraintIndex& index,
                                                   const PartialMap& initial);

}  // namespace steinhaus
