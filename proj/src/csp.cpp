#include "steinhaus/csp.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace steinhaus {

std::int64_t Domain::size() const {
  std::int64_t n = 0;
  for (auto w : bits_) n += std::popcount(w);
  return n;
}

std::vector<std::int64_t> Domain::values() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    for (std::uint64_t w = bits_[i]; w; w &= w - 1) {
      out.push_back(static_cast<std::int64_t>(i * 64) + std::countr_zero(w));
    }
  }
  return out;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::ExhaustedSpace: return "ExhaustedSpace";
    case SearchStatus::BudgetExceeded: return "BudgetExceeded";
    case SearchStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

ConstraintIndex build_constraints(Prime p) {
  const std::int64_t q = p.value();
  const std::int64_t cells = q * q * q;
  ConstraintIndex idx{p, build_w(p), {}, {}, {}};
  idx.memberships.resize(static_cast<std::size_t>(cells));
  for (std::size_t slot = 0; slot < idx.w.size(); ++slot) {
    const IsoVector& lambda = idx.w[slot];
    const IntVec3 l = lambda.lambda();
    const std::int64_t half_d = lambda.d_value() * half(p) % q;

    std::vector<std::int32_t> proj(static_cast<std::size_t>(cells));
    for (std::int64_t v = 0; v < cells; ++v) {
      proj[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(dot(l, cube_point(v, q)) % q);
    }
    idx.projection.push_back(std::move(proj));

    for (const auto& x : complement_plane(lambda).points) {
      Constraint c{l, static_cast<std::int32_t>(slot), x.coords(), {}, {}};
      for (std::int64_t t = 0; t < q; ++t) {
        const Decomposition dec = decompose(x.coords() + t * l, q);
        c.cells.push_back(static_cast<std::int32_t>(dec.y.index()));
        c.offsets.push_back(static_cast<std::int32_t>(mod_floor(t * half_d - dot(l, dec.eps), q)));
        idx.memberships[static_cast<std::size_t>(dec.y.index())].emplace_back(
            static_cast<std::int32_t>(idx.constraints.size()), static_cast<std::int32_t>(t));
      }
      idx.constraints.push_back(std::move(c));
    }
  }
  return idx;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Control {
  std::int64_t node_limit = 0;
  std::optional<Clock::time_point> deadline;
  std::atomic<std::int64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> budget_hit{false};
};

enum class Result { Found, Exhausted, Stopped };

class Solver {
 public:
  Solver(const ConstraintIndex& idx, const SearchOptions& opts, Control& ctl)
      : idx_(&idx), opts_(&opts), ctl_(&ctl) {
    p_ = static_cast<int>(idx.p.value());
    cells_ = p_ * p_ * p_;
    words_ = (cells_ + 63) / 64;
    dom_.assign(static_cast<std::size_t>(cells_ * words_), 0);
    for (int c = 0; c < cells_; ++c) {
      for (int v = 0; v < cells_; ++v) set_bit(c, v);
    }
    value_.assign(static_cast<std::size_t>(cells_), -1);
    used_.assign(idx.constraints.size(), 0);
    class_mask_.assign(idx.w.size() * static_cast<std::size_t>(p_ * words_), 0);
    for (std::size_t slot = 0; slot < idx.w.size(); ++slot) {
      for (int v = 0; v < cells_; ++v) {
        const auto r = static_cast<std::size_t>(idx.projection[slot][static_cast<std::size_t>(v)]);
        class_mask_[(slot * static_cast<std::size_t>(p_) + r) * static_cast<std::size_t>(words_) +
                    static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
      }
    }
    frames_.resize(static_cast<std::size_t>(cells_ + 1));
  }

  int cells() const { return cells_; }
  int value(int cell) const { return value_[static_cast<std::size_t>(cell)]; }

  /// Forward-checks cell := v. False on a wipeout or a used projected value.
  bool assign(int cell, int v) {
    value_[static_cast<std::size_t>(cell)] = v;
    ++assigned_;
    std::uint64_t* d = dom(cell);
    std::fill(d, d + words_, 0);
    d[v >> 6] = std::uint64_t{1} << (v & 63);
    for (const auto& [ci, t] : idx_->memberships[static_cast<std::size_t>(cell)]) {
      const Constraint& c = idx_->constraints[static_cast<std::size_t>(ci)];
      const int q = (c.offsets[static_cast<std::size_t>(t)] +
                     idx_->projection[static_cast<std::size_t>(c.lambda_slot)][static_cast<std::size_t>(v)]) % p_;
      auto& used = used_[static_cast<std::size_t>(ci)];
      if (used & (1U << q)) return false;
      used |= 1U << q;
      for (int s = 0; s < p_; ++s) {
        if (s == t) continue;
        const int other = c.cells[static_cast<std::size_t>(s)];
        if (value_[static_cast<std::size_t>(other)] >= 0) continue;
        const int r = (q - c.offsets[static_cast<std::size_t>(s)] + p_) % p_;
        const std::uint64_t* mask = cls(c.lambda_slot, r);
        std::uint64_t* od = dom(other);
        std::uint64_t any = 0;
        for (int w = 0; w < words_; ++w) {
          stats.prunings += std::popcount(od[w] & mask[w]);
          od[w] &= ~mask[w];
          any |= od[w];
        }
        if (!any) return false;
      }
    }
    if (opts_->support_check) {
      for (const auto& [ci, t] : idx_->memberships[static_cast<std::size_t>(cell)]) {
        if (!supported(static_cast<std::size_t>(ci))) return false;
      }
    }
    return true;
  }

  Domain domain(int cell) const {
    const std::uint64_t* d = dom_.data() + static_cast<std::size_t>(cell * words_);
    return Domain(cell, p_, std::vector<std::uint64_t>(d, d + words_));
  }

  void reseed(std::uint64_t seed) { rng_.seed(seed); }

  /// Depth-first search; cap bounds the nodes of this run (0 = none).
  Result run(std::int64_t cap) {
    cap_ = cap;
    run_nodes_ = 0;
    capped_ = false;
    return dfs(0);
  }

  bool capped() const { return capped_; }

  /// Candidate values of the MRV cell, in seeded random order.
  std::pair<int, std::vector<int>> branch() {
    const int cell = pick_cell();
    std::vector<int> vals;
    if (cell < 0) return {cell, vals};
    const std::uint64_t* d = dom(cell);
    for (int w = 0; w < words_; ++w) {
      for (std::uint64_t bits = d[w]; bits; bits &= bits - 1) vals.push_back(w * 64 + std::countr_zero(bits));
    }
    std::shuffle(vals.begin(), vals.end(), rng_);
    return {cell, std::move(vals)};
  }

  /// Tries one root value then searches below it; restores state afterwards.
  Result try_value(int cell, int v) {
    Frame& f = frames_[0];
    save(f);
    Result r = Result::Exhausted;
    if (charge()) return Result::Stopped;
    if (assign(cell, v)) r = dfs(1);
    if (r == Result::Found) return r;
    restore(f);
    ++stats.backtracks;
    return r;
  }

  PartialMap to_map() const {
    PartialMap L(p_);
    for (int c = 0; c < cells_; ++c) {
      if (value_[static_cast<std::size_t>(c)] >= 0) {
        L.set(c, cube_point(value_[static_cast<std::size_t>(c)], p_));
      }
    }
    return L;
  }

  SearchStats stats;

 private:
  struct Frame {
    std::vector<std::uint64_t> dom;
    std::vector<std::int32_t> value;
    std::vector<std::uint32_t> used;
    int assigned = 0;
  };

  std::uint64_t* dom(int cell) { return dom_.data() + static_cast<std::size_t>(cell * words_); }
  const std::uint64_t* cls(int slot, int r) const {
    return class_mask_.data() +
           (static_cast<std::size_t>(slot) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(r)) *
               static_cast<std::size_t>(words_);
  }
  void set_bit(int cell, int v) { dom(cell)[v >> 6] |= std::uint64_t{1} << (v & 63); }

  bool supported(std::size_t ci) const {
    const Constraint& c = idx_->constraints[ci];
    const std::uint32_t used = used_[ci];
    for (int q = 0; q < p_; ++q) {
      if (used & (1U << q)) continue;
      bool ok = false;
      for (int s = 0; s < p_ && !ok; ++s) {
        const int cell = c.cells[static_cast<std::size_t>(s)];
        if (value_[static_cast<std::size_t>(cell)] >= 0) continue;
        const int r = (q - c.offsets[static_cast<std::size_t>(s)] + p_) % p_;
        const std::uint64_t* mask = cls(c.lambda_slot, r);
        const std::uint64_t* d = dom_.data() + static_cast<std::size_t>(cell * words_);
        for (int w = 0; w < words_; ++w) {
          if (d[w] & mask[w]) {
            ok = true;
            break;
          }
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  int pick_cell() {
    int best = -1;
    int best_size = 0;
    for (int c = 0; c < cells_; ++c) {
      if (value_[static_cast<std::size_t>(c)] >= 0) continue;
      const std::uint64_t* d = dom(c);
      int n = 0;
      for (int w = 0; w < words_; ++w) n += std::popcount(d[w]);
      if (best < 0 || n < best_size) {
        best = c;
        best_size = n;
      }
    }
    return best;
  }

  void save(Frame& f) const {
    f.dom = dom_;
    f.value = value_;
    f.used = used_;
    f.assigned = assigned_;
  }
  void restore(const Frame& f) {
    dom_ = f.dom;
    value_ = f.value;
    used_ = f.used;
    assigned_ = f.assigned;
  }

  // Counts a node; true when the search must stop.
  /// Accounts one node expansion; true when the search must stop first.
  bool charge() {
    if (ctl_->stop.load(std::memory_order_relaxed)) return true;
    if (cap_ > 0 && run_nodes_ >= cap_) {
      capped_ = true;
      return true;
    }
    const std::int64_t total = ctl_->nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (ctl_->node_limit > 0 && total > ctl_->node_limit) {
      ctl_->nodes.fetch_sub(1, std::memory_order_relaxed);
      ctl_->budget_hit = true;
      return true;
    }
    ++stats.nodes;
    ++run_nodes_;
    if (ctl_->deadline && (stats.nodes & 255) == 0 && Clock::now() >= *ctl_->deadline) {
      ctl_->budget_hit = true;
      return true;
    }
    return false;
  }

  Result dfs(int depth) {
    if (assigned_ == cells_) return Result::Found;
    auto [cell, vals] = branch();
    Frame& f = frames_[static_cast<std::size_t>(depth)];
    save(f);
    for (int v : vals) {
      if (charge()) return Result::Stopped;
      if (assign(cell, v)) {
        const Result r = dfs(depth + 1);
        if (r != Result::Exhausted) return r;
      }
      restore(f);
      ++stats.backtracks;
    }
    return Result::Exhausted;
  }

  const ConstraintIndex* idx_;
  const SearchOptions* opts_;
  Control* ctl_;
  int p_ = 0;
  int cells_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> dom_;
  std::vector<std::int32_t> value_;
  std::vector<std::uint32_t> used_;
  std::vector<std::uint64_t> class_mask_;
  std::vector<Frame> frames_;
  int assigned_ = 0;
  std::mt19937_64 rng_;
  std::int64_t cap_ = 0;
  std::int64_t run_nodes_ = 0;
  bool capped_ = false;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  std::array<std::uint32_t, 2> parts{};
  seq.generate(parts.begin(), parts.end());
  return (static_cast<std::uint64_t>(parts[0]) << 32) | parts[1];
}

// Applies the initial assignments; false on a wipeout.
bool load_initial(Solver& s, const PartialMap& initial) {
  for (std::int64_t i = 0; i < initial.size(); ++i) {
    if (const auto& v = initial.at(i)) {
      if (!s.assign(static_cast<int>(i), static_cast<int>(cube_index(*v, initial.modulus())))) {
        return false;
      }
    }
  }
  return true;
}

SearchOutcome finish(SearchOutcome out, Clock::time_point start) {
  out.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (out.status == SearchStatus::Found) {
    if (!out.map || !verify_bruteforce(*out.map)) {
      throw std::logic_error("search produced a map that fails condition (+)");
    }
  }
  return out;
}

void accumulate(SearchStats& into, const SearchStats& from) {
  into.nodes += from.nodes;
  into.backtracks += from.backtracks;
  into.prunings += from.prunings;
  into.restarts += from.restarts;
}

}  // namespace

std::optional<PermutationWitness> initial_conflict(const ConstraintIndex& index,
                                                   const PartialMap& initial) {
  const std::int64_t p = index.p.value();
  for (const Constraint& c : index.constraints) {
    std::vector<std::int64_t> first(static_cast<std::size_t>(p), -1);
    for (std::int64_t t = 0; t < p; ++t) {
      const auto& v = initial.at(c.cells[static_cast<std::size_t>(t)]);
      if (!v) continue;
      const std::int64_t q = (c.offsets[static_cast<std::size_t>(t)] + dot(c.lambda, *v)) % p;
      auto& slot = first[static_cast<std::size_t>(q)];
      if (slot >= 0) return PermutationWitness{c.lambda, c.anchor, slot, t, q};
      slot = t;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<Domain>> propagate_initial(const ConstraintIndex& index,
                                                     const PartialMap& initial) {
  SearchOptions opts;
  opts.support_check = false;
  Control ctl;
  Solver s(index, opts, ctl);
  if (!load_initial(s, initial)) return std::nullopt;
  std::vector<Domain> out;
  for (int c = 0; c < s.cells(); ++c) out.push_back(s.domain(c));
  return out;
}

SearchOutcome search(Prime p, const PartialMap& initial_map, const SearchOptions& options) {
  const auto start = Clock::now();
  if (initial_map.modulus() != p.value()) {
    throw Error(ErrorCode::InvalidArgument, "initial map modulus differs from p");
  }
  PartialMap initial = initial_map;
  if (options.fix_origin) {
    if (initial.assigned_count() != 0) {
      throw Error(ErrorCode::InvalidArgument, "fix_origin requires an empty initial map");
    }
    initial.set(0, IntVec3{0, 0, 0});
  }

  const ConstraintIndex index = build_constraints(p);
  SearchOutcome out;
  if (auto conflict = initial_conflict(index, initial)) {
    out.status = SearchStatus::Infeasible;
    out.conflict = conflict;
    return finish(std::move(out), start);
  }

  Control ctl;
  ctl.node_limit = options.node_limit;
  if (options.time_limit.count() > 0) ctl.deadline = start + options.time_limit;

  Solver root(index, options, ctl);
  if (!load_initial(root, initial)) {
    out.status = SearchStatus::ExhaustedSpace;
    return finish(std::move(out), start);
  }

  if (options.threads <= 1) {
    Solver& s = root;
    const Solver snapshot = root;
    for (std::int64_t k = 0;; ++k) {
      s.reseed(mix_seed(options.seed, static_cast<std::uint64_t>(k)));
      const std::int64_t cap = options.restart_nodes > 0 ? (options.restart_nodes << std::min<std::int64_t>(k, 40)) : 0;
      const Result r = s.run(cap);
      if (r == Result::Found) {
        out.status = SearchStatus::Found;
        out.map = s.to_map();
        break;
      }
      if (r == Result::Exhausted) {
        out.status = SearchStatus::ExhaustedSpace;
        break;
      }
      if (!s.capped()) {
        out.status = SearchStatus::BudgetExceeded;
        break;
      }
      SearchStats kept = s.stats;
      ++kept.restarts;
      s = snapshot;
      s.stats = kept;
    }
    out.stats = s.stats;
    return finish(std::move(out), start);
  }

  // Parallel: split the root cell's values round-robin over workers.
  root.reseed(mix_seed(options.seed, 0));
  auto [cell, vals] = root.branch();
  if (cell < 0) {
    out.status = SearchStatus::Found;
    out.map = root.to_map();
    return finish(std::move(out), start);
  }
  const int workers = std::max(1, std::min<int>(options.threads, static_cast<int>(vals.size())));
  std::mutex mu;
  bool found = false;
  bool budget = false;
  std::vector<std::thread> pool;
  for (int wkr = 0; wkr < workers; ++wkr) {
    pool.emplace_back([&, wkr] {
      Solver s = root;
      s.stats = {};
      s.reseed(mix_seed(options.seed, 1000 + static_cast<std::uint64_t>(wkr)));
      bool stopped = false;
      for (std::size_t i = static_cast<std::size_t>(wkr); i < vals.size(); i += static_cast<std::size_t>(workers)) {
        const Result r = s.try_value(cell, vals[i]);
        if (r == Result::Found) {
          std::lock_guard lock(mu);
          if (!found) {
            found = true;
            out.map = s.to_map();
          }
          ctl.stop = true;
          break;
        }
        if (r == Result::Stopped) {
          stopped = true;
          break;
        }
      }
      std::lock_guard lock(mu);
      accumulate(out.stats, s.stats);
      if (stopped) budget = true;
    });
  }
  for (auto& t : pool) t.join();
  if (found) {
    out.status = SearchStatus::Found;
  } else if (budget || ctl.budget_hit) {
    out.status = SearchStatus::BudgetExceeded;
  } else {
    out.status = SearchStatus::ExhaustedSpace;
  }
  return finish(std::move(out), start);
}

}  // namespace steinhaus
