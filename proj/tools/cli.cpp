#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <variant>

#include "schurcomp/cloning.hpp"
#include "schurcomp/infobounds.hpp"
#include "schurcomp/oracle.hpp"
#include "schurcomp/protocols.hpp"

#ifndef SCHURCOMP_VERSION
#define SCHURCOMP_VERSION "0.0.0"
#endif

namespace schurcomp::cli {

namespace {

constexpr std::array<std::pair<Command, const char*>, 7> kCommands{{
    {Command::qjscan, "qjscan"},
    {Command::lemma1, "lemma1"},
    {Command::known, "known"},
    {Command::full, "full"},
    {Command::fig3, "fig3"},
    {Command::holevo, "holevo"},
    {Command::oracle_check, "oracle-check"},
}};

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  explicit Table(std::vector<std::string> header) : columns(std::move(header)) {}

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool failed = false;  // oracle mismatch somewhere in the rows

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
    rows.push_back(std::move(row));
  }
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = command_name(c.command);
  j["n"] = c.n_list;
  j["p"] = c.p_list;
  j["r"] = c.r ? nlohmann::ordered_json(*c.r) : nlohmann::ordered_json("auto");
  j["s"] = c.s;
  j["tail_tol"] = c.tol.tail_tol;
  j["window_tol"] = c.tol.window_tol;
  j["twoj"] = c.two_j_list;
  j["delta"] = c.delta_list;
  j["mc_samples"] = c.mc_samples;
  j["seed"] = c.seed ? nlohmann::ordered_json(*c.seed) : nlohmann::ordered_json(nullptr);
  j["full_model"] = c.full_model;
  return j;
}

std::string to_json(const Table& t, const RunConfig& c) {
  nlohmann::ordered_json doc;
  doc["version"] = SCHURCOMP_VERSION;
  doc["config"] = config_echo(c);
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

double resolve_r(const RunConfig& c, int n) { return c.r ? *c.r : auto_r(n); }

double distribution_defect(int n, double p) {
  const auto logq = log_spectral_distribution(n, p);
  return std::abs(std::expm1(logsumexp(std::span<const double>(logq))));
}

// --- commands -------------------------------------------------------------------

Table cmd_qjscan(const RunConfig& c) {
  Table t({"n", "p", "twoJ", "q_J", "tail_mass"});
  for (const int n : c.n_list) {
    for (const double p : c.p_list) {
      const BlockDiagState state = block_state_of(n, p, c.tol);
      for (const auto& e : state.entries) t.add({n, p, e.spin.two_j, e.weight, state.tail_mass});
    }
  }
  return t;
}

Table cmd_lemma1(const RunConfig& c) {
  Table t({"p", "twoJ", "twoK", "delta", "clone_error", "slack", "lemma1_bound"});
  for (const double p : c.p_list) {
    for (const int two_j : c.two_j_list) {
      for (const double delta : c.delta_list) {
        const SpinLabel from{two_j};
        const SpinLabel to{two_j + static_cast<int>(std::lround(two_j * delta))};
        const BoundedValue err = clone_error(p, from, to, c.tol.window_tol);
        const double exact_delta = CloneSpec{from, to}.delta();
        t.add({p, two_j, to.two_j, exact_delta, err.value, err.slack, lemma1_bound(exact_delta, c.s)});
      }
    }
  }
  return t;
}

Table cmd_known(const RunConfig& c) {
  Table t({"n", "p", "twoJ0g", "epsilon", "slack", "qubits", "cbits", "chi_bits", "bound_rhs"});
  for (const int n : c.n_list) {
    for (const double p : c.p_list) {
      const ErrorReport err = known_protocol_error(n, p, c.tol);
      const MemoryLedger mem = known_memory(n, p);
      const HolevoReport chi = holevo_fixed_spectrum(n, p);
      const double rhs = err.epsilon < 1.0
                             ? holevo_bound_rhs(chi.chi_bits, err.epsilon, std::log2(static_cast<double>(sufficient_dim(n))))
                             : std::numeric_limits<double>::quiet_NaN();
      t.add({n, p, known_target_spin(n, p).two_j, err.epsilon, err.slack, mem.qubits, mem.cbits, chi.chi_bits, rhs});
    }
  }
  return t;
}

Table cmd_full(const RunConfig& c) {
  Table t({"n", "p", "r", "width", "intervals", "epsilon", "eps1", "eps2", "eps3", "slack", "qubits", "cbits"});
  for (const int n : c.n_list) {
    for (const double p : c.p_list) {
      const double r = resolve_r(c, n);
      const Partition part = build_partition(n, r);
      const ErrorDecomposition d = full_error_decomposition(n, p, r, c.tol);
      const MemoryLedger mem = full_memory(n, part);
      t.add({n, p, r, part.width(), static_cast<long long>(part.size()), d.epsilon, d.eps1, d.eps2, d.eps3, d.slack,
             mem.qubits, mem.cbits});
    }
  }
  return t;
}

double weight_at(const SpectralDistribution& d, SpinLabel spin) {
  const auto it = std::lower_bound(d.points.begin(), d.points.end(), spin,
                                   [](const SpectralPoint& pt, SpinLabel s) { return pt.spin < s; });
  return it != d.points.end() && it->spin == spin ? it->weight : 0.0;
}

Table cmd_fig3(const RunConfig& c) {
  Table t({"n", "p", "r", "twoJ", "q_J", "sampling", "nosampling"});
  if (c.mc_samples > 0) t.columns.push_back("sampling_mc");
  for (const int n : c.n_list) {
    for (const double p : c.p_list) {
      const double r = resolve_r(c, n);
      const BlockDiagState state = block_state_of(n, p, c.tol);
      const Partition part = build_partition(n, r);
      const FullEncoding code = full_encode(state, part, c.tol.window_tol);
      const auto sampled = output_spectral_distribution(full_decode(code, part, c.tol.window_tol));
      const auto medians = output_spectral_distribution(nosampling_decode(code, part));
      const auto input = output_spectral_distribution(state);
      SpectralDistribution mc;  // stays empty without --mc-samples
      if (c.mc_samples > 0) mc = sample_decoder_spectrum(state, part, c.mc_samples, c.seed.value_or(0));

      std::vector<SpinLabel> support;
      for (const auto* d : std::array<const SpectralDistribution*, 4>{&input, &sampled, &medians, &mc}) {
        for (const auto& pt : d->points) support.push_back(pt.spin);
      }
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());
      for (const SpinLabel s : support) {
        std::vector<Cell> row{n, p, r, s.two_j, weight_at(input, s), weight_at(sampled, s), weight_at(medians, s)};
        if (c.mc_samples > 0) row.emplace_back(weight_at(mc, s));
        t.add(std::move(row));
      }
    }
  }
  return t;
}

Table cmd_holevo(const RunConfig& c) {
  Table t({"model", "n", "p", "chi_bits", "spectral_entropy_bits", "mean_log_dim_bits", "mean_log_mult_bits",
           "per_state_entropy_bits", "slack", "sufficient_dim"});
  for (const int n : c.n_list) {
    for (const double p : c.p_list) {
      const HolevoReport h = holevo_fixed_spectrum(n, p);
      t.add({"fixed", n, p, h.chi_bits, h.spectral_entropy_bits, h.mean_log_dim_bits, h.mean_log_mult_bits,
             h.per_state_entropy_bits, distribution_defect(n, p), static_cast<long long>(sufficient_dim(n))});
    }
    if (c.full_model && n >= 2) {
      const PriorGrid grid = make_prior_grid(default_prior_panels(n));
      const HolevoReport h = holevo_full_model(n, grid);
      double total = 0.0;
      for (std::size_t k = 0; k < grid.nodes.size(); ++k) total += grid.weights[k];
      t.add({"full", n, std::monostate{}, h.chi_bits, h.spectral_entropy_bits, h.mean_log_dim_bits,
             h.mean_log_mult_bits, h.per_state_entropy_bits, std::abs(total - 1.0),
             static_cast<long long>(sufficient_dim(n))});
    }
  }
  return t;
}

Table cmd_oracle_check() {
  Table t({"check", "case", "max_abs_err", "tolerance", "status"});
  std::vector<oracle::Certification> all;
  const std::array<double, 3> ps{0.6, 0.75, 0.9};
  for (auto&& batch : {oracle::certify_cloning(8), oracle::certify_spectral_weights(10, ps),
                       oracle::certify_eigenspace_dims(8), oracle::certify_symmetric_block(14, 0.8)}) {
    all.insert(all.end(), batch.begin(), batch.end());
  }
  for (const auto& cert : all) {
    t.add({cert.check, cert.label, cert.max_abs_err, cert.tolerance, cert.pass() ? "PASS" : "FAIL"});
    t.failed = t.failed || !cert.pass();
  }
  return t;
}

Table build_table(const RunConfig& c) {
  switch (c.command) {
    case Command::qjscan: return cmd_qjscan(c);
    case Command::lemma1: return cmd_lemma1(c);
    case Command::known: return cmd_known(c);
    case Command::full: return cmd_full(c);
    case Command::fig3: return cmd_fig3(c);
    case Command::holevo: return cmd_holevo(c);
    case Command::oracle_check: return cmd_oracle_check();
  }
  throw std::logic_error("unknown command");
}

std::string render_table(const Table& t, const RunConfig& c) {
  return c.format == Format::csv ? to_csv(t) : to_json(t, c);
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [cmd, label] : kCommands) {
    if (name == label) return cmd;
  }
  return std::nullopt;
}

RunConfig validated(RunConfig c) {
  const Command cmd = c.command;
  if (cmd == Command::lemma1) {
    if (c.p_list.empty()) c.p_list = {0.7, 0.9};
    if (c.two_j_list.empty()) c.two_j_list = {400, 1600, 6400};
    if (c.delta_list.empty()) c.delta_list = {0.05, 0.025, 0.0125};
  } else if (cmd != Command::oracle_check) {
    if (c.p_list.empty()) c.p_list = {0.8};
    require(!c.n_list.empty(), "--n is required for this command");
  }
  sort_unique(c.n_list);
  sort_unique(c.p_list);
  sort_unique(c.two_j_list);
  sort_unique(c.delta_list);

  const bool protocol = cmd == Command::known || cmd == Command::full || cmd == Command::fig3;
  for (const int n : c.n_list) {
    require(n >= 1, "--n values must be positive");
    require(!protocol || n >= 2, "protocol commands need n >= 2");
  }
  for (const double p : c.p_list) {
    require(p >= 0.5 && p <= 1.0, "--p values must lie in [1/2, 1]");
    require(!(protocol || cmd == Command::lemma1) || p > 0.5, "this command needs p > 1/2");
  }
  for (const int two_j : c.two_j_list) require(two_j >= 1, "--twoj values must be >= 1");
  for (const double d : c.delta_list) require(d > 0.0 && d < 1.0, "--delta values must lie in (0, 1)");
  require(c.s > 0.0 && c.s < 1.0, "--s must lie in (0, 1)");
  require(c.tol.tail_tol > 0.0 && c.tol.tail_tol < 1e-3, "--tail-tol must lie in (0, 1e-3)");
  require(c.tol.window_tol > 0.0 && c.tol.window_tol < 1e-3, "--window-tol must lie in (0, 1e-3)");
  if (c.r) require(*c.r > 0.0 && std::isfinite(*c.r), "--r must be positive or 'auto'");
  if (cmd == Command::full || cmd == Command::fig3) {
    for (const int n : c.n_list) {
      require(resolve_r(c, n) * std::sqrt(static_cast<double>(n)) >= 1.0,
              "r sqrt(n) < 1 at n = " + std::to_string(n) + ": intervals would be empty");
    }
  }
  require(c.mc_samples == 0 || cmd == Command::fig3, "--mc-samples applies to fig3 only");
  require(!c.seed || c.mc_samples > 0, "--seed needs --mc-samples");
  return c;
}

std::string render(const RunConfig& config) { return render_table(build_table(config), config); }

int run(const RunConfig& config) {
  const Table table = build_table(config);
  const std::string doc = render_table(table, config);
  if (config.out == "-") {
    std::cout << doc << std::flush;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + config.out);
    file << doc;
  }
  if (table.failed) {
    std::cerr << "schurcomp: oracle mismatch beyond tolerance\n";
    return 1;
  }
  return 0;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Schur-Weyl block compression: sweeps, bounds and oracle checks"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string r_text = "auto";
  std::string format_text = "csv";
  std::uint64_t seed = 0;

  for (const auto& [cmd, name] : kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--n", config.n_list, "qubit counts")->delimiter(',');
    sub->add_option("--p", config.p_list, "larger eigenvalue of the single-qubit state")->delimiter(',');
    sub->add_option("--r", r_text, "interval scale, a number or 'auto' (1/ln n)");
    sub->add_option("--s", config.s, "exponent s of the delta^s bound (lemma1)");
    sub->add_option("--tail-tol", config.tol.tail_tol, "spectral mass discarded outside the J-window");
    sub->add_option("--window-tol", config.tol.window_tol, "mass truncated below each block window");
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", config.out, "output path, '-' for stdout");
    sub->add_option("--seed", seed, "Monte Carlo seed (fig3 --mc-samples)");
    sub->add_option("--twoj", config.two_j_list, "source spins 2J for lemma1")->delimiter(',');
    sub->add_option("--delta", config.delta_list, "relative spin changes for lemma1")->delimiter(',');
    sub->add_option("--mc-samples", config.mc_samples, "Monte Carlo decoder samples for fig3");
    sub->add_flag("--full-model", config.full_model, "holevo: also report chi(U)");
    sub->callback([&config, cmd = cmd] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (const auto* sub : app.get_subcommands()) {
      if (sub->count("--seed") > 0) config.seed = seed;
    }
    if (r_text != "auto") {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(r_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != r_text.size()) throw ConfigError("--r must be a number or 'auto'");
      config.r = value;
    }
    config.format = format_text == "json" ? Format::json : Format::csv;
    return run(validated(config));
  } catch (const ConfigError& e) {
    std::cerr << "schurcomp: invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "schurcomp: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace schurcomp::cli
