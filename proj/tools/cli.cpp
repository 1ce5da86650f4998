#include "cli.hpp"

#include <chrono>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "steinhaus/core.hpp"
#include "steinhaus/csp.hpp"
#include "steinhaus/descent.hpp"
#include "steinhaus/fixture.hpp"
#include "steinhaus/heuristic.hpp"
#include "steinhaus/linear.hpp"
#include "steinhaus/map_io.hpp"

namespace steinhaus::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Input problem attributable to one named field; exits with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Prime prime_arg(std::int64_t p, const std::string& field) {
  try {
    return Prime(p);
  } catch (const Error&) {
    throw UsageError(field + ": " + std::to_string(p) + " is not an odd prime");
  }
}

Json vec_json(IntVec3 v) { return Json::array({v.x, v.y, v.z}); }

std::string vec_text(IntVec3 v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string point_text(const RationalPoint& p) {
  std::ostringstream os;
  os << '(' << p.num.x << '/' << p.den << ',' << p.num.y << '/' << p.den << ',' << p.num.z << '/'
     << p.den << ')';
  return os.str();
}

Json witness_json(const Verdict& v) {
  return std::visit(
      [](const auto& w) -> Json {
        using W = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<W, PairWitness>) {
          return {{"kind", "pair"}, {"x", vec_json(w.x)}, {"z", vec_json(w.z)},
                  {"squared_distance", w.squared_distance}};
        } else if constexpr (std::is_same_v<W, PointPairWitness>) {
          return {{"kind", "points"}, {"a", point_text(w.a)}, {"b", point_text(w.b)},
                  {"squared_distance", w.squared_distance}};
        } else if constexpr (std::is_same_v<W, PermutationWitness>) {
          return {{"kind", "collision"}, {"lambda", vec_json(w.lambda)}, {"x", vec_json(w.x)},
                  {"t", w.t}, {"s", w.s}, {"value", w.value}};
        } else {
          return nullptr;
        }
      },
      v.witness);
}

std::string witness_text(const Verdict& v) {
  return std::visit(
      [](const auto& w) -> std::string {
        using W = std::decay_t<decltype(w)>;
        std::ostringstream os;
        if constexpr (std::is_same_v<W, PairWitness>) {
          os << "witness x=" << w.x << " z=" << w.z << " squared distance " << w.squared_distance;
        } else if constexpr (std::is_same_v<W, PointPairWitness>) {
          os << "witness " << point_text(w.a) << " " << point_text(w.b) << " squared distance "
             << w.squared_distance;
        } else if constexpr (std::is_same_v<W, PermutationWitness>) {
          os << "collision lambda=" << w.lambda << " x=" << w.x << " t=" << w.t << " s=" << w.s
             << " value " << w.value;
        }
        return os.str();
      },
      v.witness);
}

class Command {
 public:
  Command(bool json, std::ostream& out) : json_(json), out_(out) {
    doc_["schema_version"] = kSchemaVersion;
  }

  Json& doc() { return doc_; }
  bool json() const { return json_; }
  /// Human-readable line; suppressed in structured mode.
  void line(const std::string& s) {
    if (!json_) out_ << s << '\n';
  }
  int finish(int code) {
    if (json_) {
      doc_["exit_code"] = code;
      out_ << doc_.dump() << '\n';
    }
    return code;
  }

 private:
  bool json_;
  std::ostream& out_;
  Json doc_;
};

int report_verdict(Command& cmd, const std::string& key, const Verdict& v) {
  cmd.doc()[key] = {{"valid", v.valid}, {"checks", v.checks}, {"witness", witness_json(v)}};
  cmd.line(key + ": " + (v.valid ? "Valid" : "Invalid"));
  if (!v.valid) cmd.line("  " + witness_text(v));
  return v.valid ? kSuccess : kNegative;
}

int cmd_verify_map(Command& cmd, const std::string& path) {
  const PartialMap L = load_map(path);
  if (!L.complete()) throw UsageError("entries: map has unassigned cells");
  cmd.doc()["command"] = "verify-map";
  cmd.doc()["m"] = L.modulus();
  int code = report_verdict(cmd, "bruteforce", verify_bruteforce(L));
  if (L.modulus() > 2 && is_prime(L.modulus())) {
    const int perm = report_verdict(cmd, "permutations", verify_perms(L));
    if (perm != code) throw std::logic_error("verifiers disagree");
  }
  cmd.line(code == kSuccess ? "Valid" : "Invalid");
  return code;
}

int cmd_verify_set(Command& cmd, const std::string& path, std::int64_t m) {
  if (m <= 1) throw UsageError("--m: must exceed 1");
  const auto pts = load_point_set(path);
  cmd.doc()["command"] = "verify-set";
  cmd.doc()["m"] = m;
  cmd.doc()["points"] = pts.size();
  try {
    const Verdict v = verify_point_set(pts, m);
    report_verdict(cmd, "point_set", v);
    cmd.line(v.valid ? "Valid" : "Invalid");
    return v.valid ? kSuccess : kNegative;
  } catch (const CosetCoverageError& e) {
    Json missing = Json::array(), duplicated = Json::array();
    for (auto c : e.missing()) missing.push_back(vec_json(c));
    for (auto c : e.duplicated()) duplicated.push_back(vec_json(c));
    cmd.doc()["coverage_error"] = {{"missing", missing}, {"duplicated", duplicated},
                                   {"stray_points", e.stray().size()}};
    cmd.line(std::string("CosetCoverageError: ") + e.what());
    cmd.line("Invalid");
    return kNegative;
  }
}

int cmd_pi(Command& cmd, const std::string& path, const std::vector<std::int64_t>& lam,
           const std::vector<std::int64_t>& x) {
  const PartialMap L = load_map(path);
  const Prime p = prime_arg(L.modulus(), "m");
  std::optional<IsoVector> lambda;
  try {
    lambda.emplace(IntVec3{lam[0], lam[1], lam[2]}, p);
  } catch (const Error& e) {
    throw UsageError(std::string("--lambda: ") + e.what());
  }
  std::optional<CubePoint> pt;
  try {
    pt.emplace(IntVec3{x[0], x[1], x[2]}, p.value());
  } catch (const Error& e) {
    throw UsageError(std::string("--x: ") + e.what());
  }
  const PiTable table = pi_table(L, *lambda, *pt);
  cmd.doc()["command"] = "pi";
  cmd.doc()["lambda"] = vec_json(lambda->lambda());
  cmd.doc()["d"] = lambda->d_value();
  cmd.doc()["x"] = vec_json(pt->coords());
  cmd.doc()["values"] = table.values;
  cmd.doc()["permutation"] = table.is_permutation();
  std::ostringstream os;
  for (std::size_t t = 0; t < table.values.size(); ++t) os << (t ? " " : "") << table.values[t];
  cmd.line("values: " + os.str());
  cmd.line(table.is_permutation() ? "permutation" : "not a permutation");
  return table.is_permutation() ? kSuccess : kNegative;
}

int cmd_lambda(Command& cmd, Prime p, bool w_only) {
  const auto vs = w_only ? build_w(p) : enumerate_lambda(p);
  cmd.doc()["command"] = w_only ? "w" : "lambda";
  cmd.doc()["p"] = p.value();
  Json arr = Json::array();
  for (const auto& v : vs) {
    arr.push_back({{"lambda", vec_json(v.lambda())}, {"d", v.d_value()}});
    cmd.line(vec_text(v.lambda()) + " d=" + std::to_string(v.d_value()));
  }
  cmd.doc()["count"] = vs.size();
  cmd.doc()["vectors"] = std::move(arr);
  cmd.line("count " + std::to_string(vs.size()));
  return kSuccess;
}

int cmd_conic(Command& cmd, Prime p) {
  const auto pts = conic_points(p);
  cmd.doc()["command"] = "conic";
  cmd.doc()["p"] = p.value();
  cmd.doc()["base_point"] = vec_json(conic_base_point(p));
  Json arr = Json::array();
  for (const auto& pt : pts) {
    arr.push_back(vec_json(pt.coords()));
    cmd.line(vec_text(pt.coords()));
  }
  cmd.doc()["count"] = pts.size();
  cmd.doc()["points"] = std::move(arr);
  cmd.line("count " + std::to_string(pts.size()));
  return kSuccess;
}

int cmd_search_linear(Command& cmd, Prime p, const std::string& slopes, std::uint64_t seed,
                      std::int64_t samples, const std::string& out_path) {
  AffineAnsatz ansatz = slopes == "unit" ? AffineAnsatz::unit(p) : AffineAnsatz::random(p, seed);
  const GFpLinearSystem sys = build_system(ansatz);
  const SolutionSpace space = solve(sys);
  const auto sols = sample_solutions(space, p, samples, seed);
  std::int64_t valid = 0;
  for (const auto& s : sols) valid += verify_perms(assemble_map(p, s)).valid ? 1 : 0;
  cmd.doc()["command"] = "search-linear";
  cmd.doc()["p"] = p.value();
  cmd.doc()["slopes"] = slopes;
  cmd.doc()["rows"] = sys.rows();
  cmd.doc()["variables"] = sys.num_vars;
  cmd.doc()["consistent"] = space.consistent;
  cmd.doc()["rank"] = space.rank;
  cmd.doc()["kernel_dimension"] = space.kernel_dimension();
  cmd.doc()["samples"] = sols.size();
  cmd.doc()["samples_valid"] = valid;
  cmd.line("rows " + std::to_string(sys.rows()) + ", variables " + std::to_string(sys.num_vars));
  cmd.line(std::string("consistent ") + (space.consistent ? "yes" : "no") + ", rank " +
           std::to_string(space.rank) + ", kernel dimension " +
           std::to_string(space.kernel_dimension()));
  cmd.line("samples " + std::to_string(sols.size()) + ", valid " + std::to_string(valid));
  if (sols.empty()) return kNegative;
  if (!out_path.empty()) {
    save_map(out_path, assemble_map(p, sols.front()));
    cmd.doc()["output"] = out_path;
  }
  return valid == static_cast<std::int64_t>(sols.size()) ? kSuccess : kNegative;
}

int cmd_search_csp(Command& cmd, Prime p, const std::string& initial_path,
                   const SearchOptions& opts, const std::string& out_path) {
  PartialMap initial(p.value());
  if (!initial_path.empty()) {
    initial = load_map(initial_path);
    if (initial.modulus() != p.value()) throw UsageError("--initial: map modulus differs from --p");
  }
  const SearchOutcome res = search(p, initial, opts);
  cmd.doc()["command"] = "search-csp";
  cmd.doc()["p"] = p.value();
  cmd.doc()["status"] = to_string(res.status);
  cmd.doc()["stats"] = {{"nodes", res.stats.nodes},
                        {"backtracks", res.stats.backtracks},
                        {"prunings", res.stats.prunings},
                        {"restarts", res.stats.restarts},
                        {"wall_seconds", res.stats.wall_seconds}};
  cmd.line(std::string("status ") + to_string(res.status));
  std::ostringstream stats;
  stats << "nodes " << res.stats.nodes << " backtracks " << res.stats.backtracks << " prunings "
        << res.stats.prunings << " restarts " << res.stats.restarts << " wall " << res.stats.wall_seconds
        << "s";
  cmd.line(stats.str());
  if (res.conflict) {
    Verdict v{false, *res.conflict, 0};
    cmd.doc()["conflict"] = witness_json(v);
    cmd.line("  " + witness_text(v));
  }
  if (res.status != SearchStatus::Found) return kNegative;
  if (!out_path.empty()) {
    save_map(out_path, *res.map);
    cmd.doc()["output"] = out_path;
  } else if (!cmd.json()) {
    cmd.line(format_map(*res.map));
  }
  if (cmd.json()) cmd.doc()["map"] = Json::parse(format_map(*res.map));
  return kSuccess;
}

int cmd_heuristic(Command& cmd, std::optional<std::int64_t> p, std::int64_t from, std::int64_t to) {
  std::vector<std::int64_t> primes;
  if (p) {
    primes.push_back(prime_arg(*p, "--p").value());
  } else {
    if (from > to) throw UsageError("--from: must not exceed --to");
    for (std::int64_t q = std::max<std::int64_t>(from, 3); q <= to; ++q) {
      if (is_prime(q)) primes.push_back(q);
    }
  }
  cmd.doc()["command"] = "heuristic";
  Json rows = Json::array();
  for (auto q : primes) {
    const LogMagnitude lm = log_m_p(q);
    rows.push_back({{"p", q}, {"M_p", lm.display()}, {"log10", lm.log10_value.str(30)}});
    cmd.line(std::to_string(q) + " " + lm.display());
  }
  cmd.doc()["rows"] = std::move(rows);
  return kSuccess;
}

int cmd_descent(Command& cmd, const std::vector<std::int64_t>& values, std::uint64_t seed) {
  if (values.size() != 1 && values.size() != 5) {
    throw UsageError("descent: expected N or N a b c m");
  }
  const std::int64_t n = values[0];
  if (n < 0) throw UsageError("N: must be non-negative");
  cmd.doc()["command"] = "descent";
  cmd.doc()["N"] = n;
  SphereRationalPoint start;
  if (values.size() == 5) {
    if (values[4] <= 0) throw UsageError("m: must be positive");
    try {
      start = SphereRationalPoint::from({{values[1], values[2], values[3]}, values[4]}, n);
    } catch (const Error& e) {
      throw UsageError(std::string("a b c m: ") + e.what());
    }
  } else {
    if (!is_sum_of_three_squares(n)) {
      cmd.doc()["representable"] = false;
      cmd.line(std::to_string(n) + " is not a sum of three squares");
      return kNegative;
    }
    start = random_sphere_rational(n, seed);
  }
  const DescentResult r = descend_traced(start);
  Json dens = Json::array();
  for (const auto& s : r.steps) dens.push_back(s.den.str());
  cmd.doc()["representable"] = true;
  cmd.doc()["start"] = {{"num", {start.num[0].str(), start.num[1].str(), start.num[2].str()}},
                        {"den", start.den.str()}};
  cmd.doc()["denominators"] = std::move(dens);
  cmd.doc()["witness"] = vec_json(r.vector);
  cmd.line("start (" + start.num[0].str() + "," + start.num[1].str() + "," + start.num[2].str() +
           ")/" + start.den.str());
  cmd.line("steps " + std::to_string(r.steps.size()));
  cmd.line("witness " + vec_text(r.vector));
  return kSuccess;
}

int cmd_restrict(Command& cmd, const std::string& path, std::int64_t m_prime,
                 const std::string& out_path) {
  const PartialMap L = load_map(path);
  PartialMap R(1);
  try {
    R = restrict_map(L, m_prime);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidDivisor) throw UsageError(std::string("--m-prime: ") + e.what());
    throw;
  }
  const Verdict v = verify_bruteforce(R);
  cmd.doc()["command"] = "restrict";
  cmd.doc()["m"] = L.modulus();
  cmd.doc()["m_prime"] = m_prime;
  cmd.doc()["map"] = Json::parse(format_map(R));
  if (!out_path.empty()) save_map(out_path, R);
  cmd.line(format_map(R).substr(0, format_map(R).find_last_not_of('\n') + 1));
  return report_verdict(cmd, "bruteforce", v);
}

int cmd_fixture(Command& cmd, const std::string& emit, const std::string& map_out) {
  const auto pts = fixture_points();
  cmd.doc()["command"] = "fixture";
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_text(p));
  cmd.doc()["points"] = std::move(arr);
  if (!emit.empty()) {
    save_point_set(emit, pts);
    cmd.doc()["emitted"] = emit;
  }
  if (!map_out.empty()) {
    save_map(map_out, fixture_map());
    cmd.doc()["map_output"] = map_out;
  }
  if (emit.empty() && map_out.empty()) {
    for (const auto& p : pts) cmd.line(point_text(p));
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial Steinhaus sets in dimension 3: verification, construction and search"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit one machine-readable JSON document");

  std::string map_path, set_path, out_path, initial_path, emit_path, map_out, slopes = "unit";
  std::int64_t m = 0, p = 0, m_prime = 0, samples = 4, from = 3, to = 13, nodes = 0,
               restart = 0;
  std::optional<std::int64_t> hp;
  double seconds = 0;
  std::uint64_t seed = 1;
  int threads = 1;
  bool fix_origin = false;
  std::vector<std::int64_t> lam, x, values;

  auto* verify_map = app.add_subcommand("verify-map", "Check condition (+) for a map file");
  verify_map->add_option("map", map_path, "Map file")->required();
  verify_map->add_flag("--json", json);

  auto* verify_set = app.add_subcommand("verify-set", "Check a rational point-set file");
  verify_set->add_option("points", set_path, "Point-set file")->required();
  verify_set->add_option("--m", m, "Coset modulus")->required();
  verify_set->add_flag("--json", json);

  auto* pi = app.add_subcommand("pi", "Value table of one pi map");
  pi->add_option("--map", map_path)->required();
  pi->add_option("--lambda", lam)->required()->expected(3);
  pi->add_option("--x", x)->required()->expected(3);
  pi->add_flag("--json", json);

  auto* lambda = app.add_subcommand("lambda", "Isotropic vectors of X_p with d");
  auto* conic = app.add_subcommand("conic", "Projective points of x^2+y^2+z^2 = 0");
  auto* w = app.add_subcommand("w", "One representative per conic point");
  for (auto* sub : {lambda, conic, w}) {
    sub->add_option("--p", p, "Odd prime")->required();
    sub->add_flag("--json", json);
  }

  auto* linear = app.add_subcommand("search-linear", "Solve the affine-permutation linear system");
  linear->add_option("--p", p)->required();
  linear->add_option("--slopes", slopes)->check(CLI::IsMember({"unit", "random"}));
  linear->add_option("--seed", seed);
  linear->add_option("--samples", samples)->check(CLI::PositiveNumber);
  linear->add_option("--out", out_path);
  linear->add_flag("--json", json);

  auto* csp = app.add_subcommand("search-csp", "Backtracking search for a p-partial Steinhaus function");
  csp->add_option("--p", p)->required();
  csp->add_option("--initial", initial_path, "Partial map file (null entries are unassigned)");
  csp->add_option("--nodes", nodes, "Node budget, 0 = unlimited")->check(CLI::NonNegativeNumber);
  csp->add_option("--time", seconds, "Wall-clock budget in seconds, 0 = unlimited")
      ->check(CLI::NonNegativeNumber);
  csp->add_option("--seed", seed);
  csp->add_option("--threads", threads)->check(CLI::Range(1, 256));
  csp->add_option("--restart", restart, "Restart threshold in nodes, 0 = off")
      ->check(CLI::NonNegativeNumber);
  csp->add_flag("--fix-origin", fix_origin, "Pin L(0,0,0) = (0,0,0)");
  csp->add_option("--out", out_path);
  csp->add_flag("--json", json);

  auto* heuristic = app.add_subcommand("heuristic", "Tabulate the heuristic count M_p");
  heuristic->add_option("--p", hp);
  heuristic->add_option("--from", from);
  heuristic->add_option("--to", to);
  heuristic->add_flag("--json", json);

  auto* descent = app.add_subcommand("descent", "Integer representation of N by rational descent");
  descent->add_option("values", values, "N [a b c m]")->required();
  descent->add_option("--seed", seed);
  descent->add_flag("--json", json);

  auto* restrict = app.add_subcommand("restrict", "Restrict a map to a divisor m'");
  restrict->add_option("--map", map_path)->required();
  restrict->add_option("--m-prime", m_prime)->required();
  restrict->add_option("--out", out_path);
  restrict->add_flag("--json", json);

  auto* fixture = app.add_subcommand("fixture", "The built-in 27-point 3-partial Steinhaus set");
  fixture->add_option("--emit", emit_path, "Write the point-set file here");
  fixture->add_option("--map-out", map_out, "Write the map file here");
  fixture->add_flag("--json", json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  Command cmd(json, out);
  try {
    if (verify_map->parsed()) return cmd.finish(cmd_verify_map(cmd, map_path));
    if (verify_set->parsed()) return cmd.finish(cmd_verify_set(cmd, set_path, m));
    if (pi->parsed()) return cmd.finish(cmd_pi(cmd, map_path, lam, x));
    if (lambda->parsed()) return cmd.finish(cmd_lambda(cmd, prime_arg(p, "--p"), false));
    if (w->parsed()) return cmd.finish(cmd_lambda(cmd, prime_arg(p, "--p"), true));
    if (conic->parsed()) return cmd.finish(cmd_conic(cmd, prime_arg(p, "--p")));
    if (linear->parsed()) {
      return cmd.finish(cmd_search_linear(cmd, prime_arg(p, "--p"), slopes, seed, samples, out_path));
    }
    if (csp->parsed()) {
      SearchOptions opts;
      opts.node_limit = nodes;
      opts.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000));
      opts.seed = seed;
      opts.threads = threads;
      opts.fix_origin = fix_origin;
      opts.restart_nodes = restart;
      return cmd.finish(cmd_search_csp(cmd, prime_arg(p, "--p"), initial_path, opts, out_path));
    }
    if (heuristic->parsed()) return cmd.finish(cmd_heuristic(cmd, hp, from, to));
    if (descent->parsed()) return cmd.finish(cmd_descent(cmd, values, seed));
    if (restrict->parsed()) return cmd.finish(cmd_restrict(cmd, map_path, m_prime, out_path));
    if (fixture->parsed()) return cmd.finish(cmd_fixture(cmd, emit_path, map_out));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace steinhaus::cli
