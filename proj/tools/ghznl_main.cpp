// ghznl command-line tool: parameter sweeps, figure-data tables,
// Monte-Carlo game runs and dense-oracle cross-checks for noisy GHZ states.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghznl/ghznl.hpp"

using namespace ghznl;
using nlohmann::json;

namespace {

constexpr int kExitBadArguments = 1;
constexpr int kExitConsistencyFailure = 2;

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// shortest round-trip decimal form
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // NaN = not defined for this row

  void emit_csv(std::ostream& os) const {
    os << "# command: " << command << '\n';
    for (const auto& [key, value] : params)
      os << "# " << key << ": " << value << '\n';
    for (const std::string& note : notes) os << "# " << note << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c)
      os << columns[c] << (c + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (!std::isnan(row[c])) os << format_double(row[c]);
        os << (c + 1 < row.size() ? "," : "\n");
      }
    }
  }

  void emit_json(std::ostream& os) const {
    json doc;
    doc["command"] = command;
    doc["params"] = json::object();
    for (const auto& [key, value] : params) doc["params"][key] = value;
    doc["notes"] = notes;
    doc["columns"] = columns;
    doc["rows"] = json::array();
    for (const auto& row : rows) {
      json jrow = json::array();
      for (double v : row) jrow.push_back(std::isnan(v) ? json{} : json(v));
      doc["rows"].push_back(std::move(jrow));
    }
    os << doc.dump(2) << '\n';
  }
};

struct OutputConfig {
  std::string format = "csv";
  std::string out_path;

  std::ostream& open(std::ofstream& file) const {
    if (out_path.empty()) return std::cout;
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open " + out_path);
    return file;
  }

  void write(const Table& table) const {
    std::ofstream file;
    std::ostream& os = open(file);
    if (format == "json")
      table.emit_json(os);
    else
      table.emit_csv(os);
  }

  void write_json(const json& doc) const {
    std::ofstream file;
    open(file) << doc.dump(2) << '\n';
  }
};

NoiseKind parse_kind(const std::string& kind) {
  if (kind == "d") return NoiseKind::Depolarizing;
  if (kind == "pd") return NoiseKind::PhaseDamping;
  throw std::invalid_argument("--kind must be d or pd");
}

// "a:b:step" inclusive of both ends (within step/2 slack)
std::vector<double> parse_p_grid(const std::string& text) {
  double a = 0.0, b = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
      step <= 0.0 || b < a)
    throw std::invalid_argument("--p-grid expects a:b:step");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double p = a + i * step;
    if (p > b + 0.5 * step) break;
    grid.push_back(std::min(p, b));
  }
  if (grid.empty()) throw std::invalid_argument("--p-grid is empty");
  for (double p : grid)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("--p-grid values must lie in [0,1]");
  return grid;
}

// "a..b" inclusive
std::vector<int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("--n-range expects a..b");
  const int a = std::stoi(text.substr(0, dots));
  const int b = std::stoi(text.substr(dots + 2));
  if (a < 2 || b < a) throw std::invalid_argument("--n-range needs 2 <= a <= b");
  std::vector<int> range;
  for (int i = a; i <= b; ++i) range.push_back(i);
  return range;
}

json state_to_json(const GhzDiagonalState& s) {
  return json{{"n", s.n},
              {"diag_profile", s.diag_profile},
              {"coherence", s.coherence}};
}

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

Observable random_unit_observable(CounterRng& rng) {
  double v[3];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = 2.0 * rng.next_unit() - 1.0;
      norm += x * x;
    }
  } while (norm < 1e-4);
  norm = std::sqrt(norm);
  return {v[0] / norm, v[1] / norm, v[2] / norm};
}

// --------------------------------------------------------------------------
// subcommands
// --------------------------------------------------------------------------

int run_fig1(const std::vector<double>& p_grid, bool oracle_check,
             const OutputConfig& output) {
  Table table;
  table.command = "fig1";
  table.notes = {
      "two-qubit comparison: phase damping at strength p versus depolarization "
      "at p/2",
      "entanglement columns are concurrences; negativity = concurrence / 2 for "
      "these states",
      "chsh columns are maximal CHSH values; values above chsh_local_bound = 2 "
      "violate the inequality"};
  table.columns = {"p",       "concurrence_pd", "concurrence_d_half",
                   "chsh_pd", "chsh_d_half",    "chsh_local_bound"};
  double oracle_dev = 0.0;
  for (const double p : p_grid) {
    const GhzDiagonalState pd =
        apply_channel(make_ghz(2), NoiseKind::PhaseDamping, p);
    const GhzDiagonalState d =
        apply_channel(make_ghz(2), NoiseKind::Depolarizing, 0.5 * p);
    const double chsh_pd = chsh_max(pd);
    const double chsh_d = chsh_max(d);
    if (chsh_pd < chsh_d - 1e-12)
      throw ConsistencyError(
          "fig1: dephased CHSH fell below depolarized at p = " +
          format_double(p));
    table.rows.push_back({p, concurrence_two_qubit(pd),
                          concurrence_two_qubit(d), chsh_pd, chsh_d, 2.0});
    if (oracle_check)
      for (const GhzDiagonalState* s : {&pd, &d})
        oracle_dev = std::max(oracle_dev,
                              std::abs(concurrence_two_qubit(*s) -
                                       wootters_concurrence(make_dense(*s))));
  }
  if (oracle_check) {
    table.params.emplace_back("oracle_max_deviation", format_double(oracle_dev));
    if (oracle_dev > 1e-10)
      throw ConsistencyError("fig1: oracle deviation above 1e-10");
  }
  output.write(table);
  return 0;
}

int run_fig2(const std::vector<int>& n_range, const OutputConfig& output) {
  Table table;
  table.command = "fig2";
  table.notes = {
      "depolarizing channel: critical strengths versus party count",
      "p_violation_critical: Mermin threshold for n >= 3; the n = 2 row carries "
      "the CHSH threshold (informational)",
      "p_separability: strength where the half-versus-half negativity vanishes "
      "(bisection)",
      "p_distillability: out of scope, column left empty"};
  table.columns = {"n", "p_violation_critical", "p_separability",
                   "p_distillability"};
  for (const int n : n_range) {
    const double p_violation = (n == 2) ? chsh_critical_noise_depolarizing()
                                        : mermin_report(n, 0.0).p_c;
    const double p_sep =
        separability_threshold(n, NoiseKind::Depolarizing).p_star;
    if (!(p_violation < p_sep))
      throw ConsistencyError(
          "fig2: violation threshold not inside the entangled region at n = " +
          std::to_string(n));
    table.rows.push_back(
        {static_cast<double>(n), p_violation, p_sep, nan_value()});
  }
  output.write(table);
  return 0;
}

int run_fig4(double p, const std::vector<int>& n_range, NoiseKind kind,
             const OutputConfig& output) {
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("fig4: --p must lie in [0,1)");
  Table table;
  table.command = "fig4";
  table.params.emplace_back("p", format_double(p));
  table.params.emplace_back("kind", noise_name(kind));
  table.notes = {
      "odd-n profile of the CCP gain, nonlocal-content bounds and half-half "
      "negativity",
      "negativity is unnormalized (1/2 for the pure state); the envelope check "
      "against nonlocal_upper uses 2 x negativity",
      "all columns converge onto nonlocal_upper = (1-p)^n for large n"};
  table.columns = {"n", "gain", "nonlocal_lower", "nonlocal_upper",
                   "negativity_half_half"};
  std::vector<double> gains;
  std::vector<int> ns;
  for (const int n : n_range) {
    if (n % 2 == 0) {
      std::cerr << "fig4: skipping even n = " << n << '\n';
      continue;
    }
    const NonlocalContentBounds bounds = mermin_content_bounds(n, p);
    const double gain = quantum_gain(n, p).gain;
    const double neg =
        negativity(apply_channel(make_ghz(n), kind, p), half_half_cut(n));
    if (gain > bounds.upper + 1e-9 || bounds.lower > bounds.upper + 1e-9 ||
        2.0 * neg > bounds.upper + 1e-9)
      throw ConsistencyError(
          "fig4: a column exceeded the (1-p)^n envelope at n = " +
          std::to_string(n));
    table.rows.push_back(
        {static_cast<double>(n), gain, bounds.lower, bounds.upper, neg});
    gains.push_back(gain);
    ns.push_back(n);
  }
  if (std::abs(p - 0.1) < 1e-12) {
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
      const bool growing = gains[i + 1] > gains[i];
      if (ns[i + 1] <= 7 && !growing)
        throw ConsistencyError("fig4: expected gain growth up to n = 7");
      if (ns[i] >= 7 && growing)
        throw ConsistencyError("fig4: expected gain decay beyond n = 7");
    }
  }
  output.write(table);
  return 0;
}

int run_sweep(NoiseKind kind, const std::vector<double>& p_grid,
              const std::vector<int>& n_range, bool oracle_check,
              bool dump_state, const OutputConfig& output) {
  if (dump_state) {
    json states = json::array();
    for (const int n : n_range)
      for (const double p : p_grid)
        states.push_back(state_to_json(apply_channel(make_ghz(n), kind, p)));
    output.write_json(json{{"command", "sweep"},
                           {"kind", noise_name(kind)},
                           {"states", states}});
    return 0;
  }

  Table table;
  table.command = "sweep";
  table.params.emplace_back("kind", noise_name(kind));
  table.notes = {
      "visibility: chsh_max / 2 at n = 2, Mermin value / local bound for n >= 3 "
      "(even n uses the 2^{n/2} bound)",
      "negativity_half_half is unnormalized (1/2 for the pure state)",
      "ccp columns hold the Mermin-game success probabilities (n >= 3, even n "
      "flagged variant); nonlocal-content bounds are stated for odd n only",
      "empty fields mark quantities that are not defined for the row"};
  table.columns = {"n",
                   "p",
                   "coherence",
                   "negativity_half_half",
                   "visibility",
                   "p_s_quantum",
                   "p_s_local",
                   "gain",
                   "nonlocal_lower",
                   "nonlocal_upper"};
  double oracle_dev = 0.0;
  for (const int n : n_range) {
    for (const double p : p_grid) {
      const GhzDiagonalState s = apply_channel(make_ghz(n), kind, p);
      const double neg = negativity(s, half_half_cut(n));
      const double visibility =
          (n == 2) ? chsh_max(s) / 2.0 : mermin_report(n, p).visibility;
      double p_s_quantum = nan_value(), p_s_local = nan_value(),
             gain = nan_value();
      if (n >= 3) {
        const CcpOutcome out = quantum_gain(n, p);
        p_s_quantum = out.p_s_quantum;
        p_s_local = out.p_s_local;
        gain = out.gain;
      }
      double lower = nan_value(), upper = nan_value();
      if (n >= 3 && n % 2 == 1) {
        const NonlocalContentBounds bounds = mermin_content_bounds(n, p);
        lower = bounds.lower;
        upper = bounds.upper;
      }
      table.rows.push_back({static_cast<double>(n), p, s.coherence, neg,
                            visibility, p_s_quantum, p_s_local, gain, lower,
                            upper});
      if (oracle_check && n <= 6) {
        const DenseState structured = make_dense(s);
        const DenseState kraus =
            apply_channel_dense(make_ghz_dense(n), kind, p);
        for (std::size_t i = 0; i < structured.rho.size(); ++i)
          oracle_dev = std::max(
              oracle_dev, std::abs(structured.rho[i] - kraus.rho[i]));
        oracle_dev =
            std::max(oracle_dev,
                     std::abs(neg - negativity_dense(
                                        structured,
                                        (1u << half_half_cut(n).size_a) - 1u)));
      }
    }
  }
  if (oracle_check) {
    table.params.emplace_back("oracle_max_deviation", format_double(oracle_dev));
    if (oracle_dev > 1e-10)
      throw ConsistencyError("sweep: oracle deviation above 1e-10");
  }
  output.write(table);
  return 0;
}

int run_game(int n, double p, NoiseKind kind, std::uint64_t trials,
             std::uint64_t seed, bool dump_state, const OutputConfig& output) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("game: --n must be odd and >= 3");
  if (trials < 1) throw std::invalid_argument("game: --trials must be >= 1");
  const CcpInstance inst = make_mermin_ccp(n);
  const GhzDiagonalState s = apply_channel(make_ghz(n), kind, p);
  if (dump_state) {
    output.write_json(json{{"command", "game"},
                           {"kind", noise_name(kind)},
                           {"states", json::array({state_to_json(s)})}});
    return 0;
  }
  const double closed = closed_form_success(inst, s);
  const double rate = simulate_game(inst, s, trials, seed);
  const double sigma =
      std::sqrt(closed * (1.0 - closed) / static_cast<double>(trials));
  const double z = sigma > 0.0
                       ? (rate - closed) / sigma
                       : (rate == closed ? 0.0
                                         : std::numeric_limits<double>::infinity());

  Table table;
  table.command = "game";
  table.params.emplace_back("kind", noise_name(kind));
  table.notes = {
      "single-broadcast parity protocol, settings drawn from |g|/sum|g|",
      "z_score compares the empirical rate with the closed form under the "
      "binomial sigma"};
  table.columns = {"n",      "p",
                   "trials", "seed",
                   "empirical_rate", "closed_form_rate",
                   "z_score"};
  table.rows.push_back({static_cast<double>(n), p, static_cast<double>(trials),
                        static_cast<double>(seed), rate, closed, z});
  output.write(table);
  if (std::abs(z) > 4.0)
    throw ConsistencyError(
        "game: empirical rate more than 4 sigma from the closed form");
  return 0;
}

int run_check(int n_max, const OutputConfig& output) {
  if (n_max < 2) throw std::invalid_argument("check: --n must be >= 2");
  if (n_max > kDenseQubitCap)
    throw std::length_error("check: --n above the dense qubit cap");

  struct Suite {
    std::string name;
    double max_deviation = 0.0;
  };
  CounterRng rng(31);

  Suite channel{"structured channel output vs per-qubit Kraus"};
  Suite neg{"negativity block formula vs PT spectrum"};
  Suite corr{"correlation closed form vs dense trace"};
  Suite conc{"two-qubit concurrence vs Wootters"};
  Suite mermin{"Mermin value enumeration vs dense"};
  Suite outcome{"outcome distribution vs projector probabilities"};

  for (int n = 2; n <= n_max; ++n) {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::PhaseDamping}) {
      for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        const GhzDiagonalState s = apply_channel(make_ghz(n), kind, p);
        const DenseState structured = make_dense(s);
        const DenseState kraus =
            apply_channel_dense(make_ghz_dense(n), kind, p);
        for (std::size_t k = 0; k < structured.rho.size(); ++k)
          channel.max_deviation =
              std::max(channel.max_deviation,
                       std::abs(structured.rho[k] - kraus.rho[k]));
        if (n <= 6) {
          for (int a = 1; a < n; ++a)
            neg.max_deviation = std::max(
                neg.max_deviation,
                std::abs(negativity(s, {a}) -
                         negativity_dense(structured, (1u << a) - 1u)));
          std::vector<Observable> obs(n);
          for (Observable& o : obs) o = random_unit_observable(rng);
          corr.max_deviation =
              std::max(corr.max_deviation,
                       std::abs(correlation(s, obs) -
                                correlation_dense(structured, obs)));
        }
        if (n == 2)
          conc.max_deviation =
              std::max(conc.max_deviation,
                       std::abs(concurrence_two_qubit(s) -
                                wootters_concurrence(structured)));
        if (n == 3 || n == 5) {
          const BellFunctional f = mermin_functional(n);
          const auto settings = xy_settings(n);
          mermin.max_deviation =
              std::max(mermin.max_deviation,
                       std::abs(bell_value(f, s, settings) -
                                bell_value_dense(f, structured, settings)));
        }
      }
    }
  }
  {
    const CcpInstance inst = make_mermin_ccp(3);
    const GhzDiagonalState s =
        apply_channel(make_ghz(3), NoiseKind::Depolarizing, 0.2);
    const DenseState dense = make_dense(s);
    std::vector<Observable> obs(3);
    for (std::uint32_t x = 0; x < 8; ++x) {
      if (inst.q[x] == 0.0) continue;
      for (int i = 0; i < 3; ++i) obs[i] = inst.settings[i][(x >> i) & 1];
      for (std::uint32_t a = 0; a < 8; ++a) {
        std::vector<int> outcomes(3);
        for (int i = 0; i < 3; ++i) outcomes[i] = ((a >> i) & 1) ? -1 : 1;
        outcome.max_deviation = std::max(
            outcome.max_deviation,
            std::abs(conditional_outcome_probability(s, obs, outcomes) -
                     conditional_outcome_probability_dense(dense, obs,
                                                           outcomes)));
      }
    }
  }
  const std::vector<Suite> suites{channel, neg, corr, conc, mermin, outcome};

  bool all_ok = true;
  for (const Suite& suite : suites) all_ok &= suite.max_deviation < 1e-10;

  if (output.format == "json") {
    json doc;
    doc["command"] = "check";
    doc["n_max"] = n_max;
    doc["suites"] = json::array();
    for (const Suite& suite : suites)
      doc["suites"].push_back(json{{"name", suite.name},
                                   {"max_deviation", suite.max_deviation},
                                   {"pass", suite.max_deviation < 1e-10}});
    output.write_json(doc);
  } else {
    std::ofstream file;
    std::ostream& os = output.open(file);
    for (const Suite& suite : suites)
      os << (suite.max_deviation < 1e-10 ? "[PASS] " : "[FAIL] ") << suite.name
         << ": max deviation " << format_double(suite.max_deviation) << '\n';
  }
  if (!all_ok) throw ConsistencyError("check: a suite exceeded 1e-10");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonlocality and entanglement of noisy GHZ states"};
  app.require_subcommand(1);

  std::string kind_str = "d";
  std::string p_grid_str = "0:1:0.01";
  std::string n_range_str;
  std::string format = "csv";
  std::string out_path;
  double p = 0.1;
  int n = 3;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 12345;
  bool oracle_check = false;
  bool dump_state = false;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out_path, "write output to PATH instead of stdout");
  };

  CLI::App* fig1 = app.add_subcommand(
      "fig1", "two-qubit CHSH/entanglement ordering anomaly table");
  fig1->add_option("--p-grid", p_grid_str, "noise grid a:b:step");
  fig1->add_flag("--oracle-check", oracle_check,
                 "cross-check rows against the dense oracle");
  add_output(fig1);

  CLI::App* fig2 = app.add_subcommand(
      "fig2", "depolarizing critical-strength curves versus party count");
  fig2->add_option("--n-range", n_range_str, "party counts a..b (default 2..50)");
  add_output(fig2);

  CLI::App* fig4 = app.add_subcommand(
      "fig4", "gain, nonlocal-content bounds and negativity over odd n");
  fig4->add_option("--p", p, "noise strength (default 0.1)");
  fig4->add_option("--n-range", n_range_str, "party counts a..b (default 3..41)");
  fig4->add_option("--kind", kind_str, "noise channel d|pd")
      ->check(CLI::IsMember({"d", "pd"}));
  add_output(fig4);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "full quantifier table over a (kind, p, n) grid");
  sweep->add_option("--kind", kind_str, "noise channel d|pd")
      ->check(CLI::IsMember({"d", "pd"}));
  sweep->add_option("--p-grid", p_grid_str, "noise grid a:b:step");
  sweep->add_option("--p", p, "single noise strength (overrides --p-grid)");
  sweep->add_option("--n-range", n_range_str, "party counts a..b (default 2..8)");
  sweep->add_option("--n", n, "single party count (overrides --n-range)");
  sweep->add_flag("--oracle-check", oracle_check,
                  "cross-check rows against the dense oracle (n <= 6)");
  sweep->add_flag("--dump-state", dump_state,
                  "emit the grid states as JSON instead of the table");
  add_output(sweep);

  CLI::App* game = app.add_subcommand(
      "game", "Monte-Carlo run of the Mermin communication game");
  game->add_option("--n", n, "odd party count (default 3)");
  game->add_option("--p", p, "noise strength (default 0.1)");
  game->add_option("--kind", kind_str, "noise channel d|pd")
      ->check(CLI::IsMember({"d", "pd"}));
  game->add_option("--trials", trials, "Monte-Carlo trials (default 1e5)");
  game->add_option("--seed", seed, "RNG seed");
  game->add_flag("--dump-state", dump_state, "emit the game state as JSON");
  add_output(game);

  CLI::App* check = app.add_subcommand(
      "check", "structured-versus-dense oracle cross-validation");
  check->add_option("--n", n, "largest party count to verify (default 6)")
      ->default_val(6);
  add_output(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadArguments;
  }

  try {
    const OutputConfig output{format, out_path};
    const NoiseKind kind = parse_kind(kind_str);
    if (fig1->parsed())
      return run_fig1(parse_p_grid(p_grid_str), oracle_check, output);
    if (fig2->parsed())
      return run_fig2(
          parse_n_range(n_range_str.empty() ? "2..50" : n_range_str), output);
    if (fig4->parsed())
      return run_fig4(fig4->count("--p") ? p : 0.1,
                      parse_n_range(n_range_str.empty() ? "3..41" : n_range_str),
                      kind, output);
    if (sweep->parsed()) {
      const std::vector<double> grid = sweep->count("--p")
                                           ? std::vector<double>{p}
                                           : parse_p_grid(p_grid_str);
      const std::vector<int> range =
          sweep->count("--n")
              ? std::vector<int>{n}
              : parse_n_range(n_range_str.empty() ? "2..8" : n_range_str);
      return run_sweep(kind, grid, range, oracle_check, dump_state, output);
    }
    if (game->parsed())
      return run_game(n, game->count("--p") ? p : 0.1, kind, trials, seed,
                      dump_state, output);
    if (check->parsed()) return run_check(n, output);
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return kExitConsistencyFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArguments;
  }
  return kExitBadArguments;
}
