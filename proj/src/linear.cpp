#include "steinhaus/linear.hpp"

#include <random>
#include <set>

namespace steinhaus {

void GFpLinearSystem::add_row(std::vector<std::int64_t> row, std::int64_t constant) {
  if (static_cast<std::int64_t>(row.size()) != num_vars) {
    throw Error(ErrorCode::InvalidArgument, "row length must equal num_vars");
  }
  for (auto& c : row) c = mod_floor(c, p.value());
  coeffs.push_back(std::move(row));
  rhs.push_back(mod_floor(constant, p.value()));
}

bool GFpLinearSystem::satisfied_by(const std::vector<std::int64_t>& values) const {
  const std::int64_t q = p.value();
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    std::int64_t acc = 0;
    for (std::int64_t j = 0; j < num_vars; ++j) {
      acc = (acc + coeffs[r][static_cast<std::size_t>(j)] * mod_floor(values[static_cast<std::size_t>(j)], q)) % q;
    }
    if (acc != rhs[r]) return false;
  }
  return true;
}

AffineAnsatz::AffineAnsatz(Prime p, std::vector<std::int64_t> slopes)
    : p_(p), slopes_(std::move(slopes)) {
  const std::int64_t q = p.value();
  if (static_cast<std::int64_t>(slopes_.size()) != (q + 1) * q * q) {
    throw Error(ErrorCode::InvalidArgument, "ansatz needs (p+1)p^2 slopes");
  }
  for (auto& c : slopes_) {
    c = mod_floor(c, q);
    if (c == 0) throw Error(ErrorCode::InvalidArgument, "slopes must be nonzero mod p");
  }
}

AffineAnsatz AffineAnsatz::unit(Prime p) {
  const std::int64_t q = p.value();
  return AffineAnsatz(p, std::vector<std::int64_t>(static_cast<std::size_t>((q + 1) * q * q), 1));
}

AffineAnsatz AffineAnsatz::random(Prime p, std::uint64_t seed) {
  const std::int64_t q = p.value();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> slope(1, q - 1);
  std::vector<std::int64_t> slopes(static_cast<std::size_t>((q + 1) * q * q));
  for (auto& c : slopes) c = slope(rng);
  return AffineAnsatz(p, std::move(slopes));
}

GFpLinearSystem build_system(const AffineAnsatz& ansatz) {
  const Prime p = ansatz.prime();
  const std::int64_t q = p.value();
  GFpLinearSystem sys{p, 3 * q * q * q, {}, {}, {}};
  std::size_t table = 0;
  for (const auto& lambda : build_w(p)) {
    const IntVec3 l = lambda.lambda();
    const std::int64_t half_d = lambda.d_value() * half(p) % q;
    for (const auto& x : complement_plane(lambda).points) {
      const std::int64_t c = ansatz.slopes()[table++];
      for (std::int64_t t = 0; t + 1 < q; ++t) {
        const Decomposition cur = decompose(x.coords() + t * l, q);
        const Decomposition nxt = decompose(x.coords() + (t + 1) * l, q);
        // l.L(y_{t+1}) - l.L(y_t) = c - d/2 + l.eps_{t+1} - l.eps_t
        std::vector<std::int64_t> row(static_cast<std::size_t>(sys.num_vars), 0);
        for (int k = 0; k < 3; ++k) {
          row[static_cast<std::size_t>(variable_index(nxt.y.index(), k))] += l[k];
          row[static_cast<std::size_t>(variable_index(cur.y.index(), k))] -= l[k];
        }
        sys.add_row(std::move(row), c - half_d + dot(l, nxt.eps) - dot(l, cur.eps));
        sys.tags.push_back({l, x.coords(), t});
      }
    }
  }
  return sys;
}

SolutionSpace solve(const GFpLinearSystem& system) {
  const std::int64_t q = system.p.value();
  const std::int64_t n = system.num_vars;
  auto a = system.coeffs;
  auto b = system.rhs;
  const std::size_t rows = a.size();

  std::vector<std::int64_t> pivot_col;
  std::size_t r = 0;
  for (std::int64_t col = 0; col < n && r < rows; ++col) {
    const auto c = static_cast<std::size_t>(col);
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const std::int64_t inv = mod_inv(FpElement(a[r][c], system.p)).value();
    for (auto& v : a[r]) v = v * inv % q;
    b[r] = b[r] * inv % q;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::int64_t f = a[i][c];
      for (std::size_t j = c; j < static_cast<std::size_t>(n); ++j) {
        a[i][j] = mod_floor(a[i][j] - f * a[r][j], q);
      }
      b[i] = mod_floor(b[i] - f * b[r], q);
    }
    pivot_col.push_back(col);
    ++r;
  }

  SolutionSpace space;
  space.rank = static_cast<std::int64_t>(r);
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return space;
  }
  space.consistent = true;

  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  space.particular.assign(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < r; ++i) {
    space.particular[static_cast<std::size_t>(pivot_col[i])] = b[i];
  }
  for (std::int64_t f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<std::int64_t> k(static_cast<std::size_t>(n), 0);
    k[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < r; ++i) {
      k[static_cast<std::size_t>(pivot_col[i])] = mod_floor(-a[i][static_cast<std::size_t>(f)], q);
    }
    space.kernel.push_back(std::move(k));
  }
  return space;
}

std::vector<std::vector<std::int64_t>> sample_solutions(const SolutionSpace& space, Prime p,
                                                        std::int64_t max_samples,
                                                        std::uint64_t seed) {
  std::vector<std::vector<std::int64_t>> out;
  if (!space.consistent || max_samples <= 0) return out;
  const std::int64_t q = p.value();
  const std::size_t dim = space.kernel.size();

  auto combine = [&](const std::vector<std::int64_t>& coeffs) {
    auto v = space.particular;
    for (std::size_t i = 0; i < dim; ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + coeffs[i] * space.kernel[i][j]) % q;
    }
    return v;
  };

  // Size of the solution set, capped just above max_samples.
  std::int64_t total = 1;
  for (std::size_t i = 0; i < dim && total <= max_samples; ++i) total *= q;

  if (total <= max_samples) {
    std::vector<std::int64_t> coeffs(dim, 0);
    for (std::int64_t n = 0; n < total; ++n) {
      out.push_back(combine(coeffs));
      for (std::size_t i = 0; i < dim; ++i) {
        if (++coeffs[i] < q) break;
        coeffs[i] = 0;
      }
    }
    return out;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coef(0, q - 1);
  std::set<std::vector<std::int64_t>> seen;
  seen.insert(space.particular);
  out.push_back(space.particular);
  while (static_cast<std::int64_t>(out.size()) < max_samples) {
    std::vector<std::int64_t> coeffs(dim);
    for (auto& c : coeffs) c = coef(rng);
    auto v = combine(coeffs);
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

PartialMap assemble_map(Prime p, const std::vector<std::int64_t>& values) {
  const std::int64_t q = p.value();
  PartialMap L(q);
  if (static_cast<std::int64_t>(values.size()) != 3 * L.size()) {
    throw Error(ErrorCode::InvalidArgument, "solution vector must have 3p^3 entries");
  }
  for (std::int64_t cell = 0; cell < L.size(); ++cell) {
    IntVec3 v;
    for (int k = 0; k < 3; ++k) v[k] = mod_floor(values[static_cast<std::size_t>(variable_index(cell, k))], q);
    L.set(cell, v);
  }
  return L;
}

std::vector<std::int64_t> map_variables(const PartialMap& L) {
  std::vector<std::int64_t> values(static_cast<std::size_t>(3 * L.size()));
  for (std::int64_t cell = 0; cell < L.size(); ++cell) {
    const IntVec3 v = L.value(cell);
    for (int k = 0; k < 3; ++k) values[static_cast<std::size_t>(variable_index(cell, k))] = v[k];
  }
  return values;
}

std::vector<PartialMap> solve_and_sample(const GFpLinearSystem& system, std::int64_t max_samples,
                                         std::uint64_t seed) {
  std::vector<PartialMap> maps;
  for (const auto& v : sample_solutions(solve(system), system.p, max_samples, seed)) {
    maps.push_back(assemble_map(system.p, v));
  }
  return maps;
}

}  // namespace steinhaus
