#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurcomp/blocks.hpp"

namespace schurcomp::cli {

enum class Command { qjscan, lemma1, known, full, fig3, holevo, oracle_check };
enum class Format { csv, json };

/// Thrown for configurations rejected before any computation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::qjscan;
  std::vector<int> n_list;
  std::vector<double> p_list;
  std::optional<double> r;  // empty means auto, 1/ln n per n
  double s = 0.5;
  Tolerances tol;
  Format format = Format::csv;
  std::string out = "-";
  std::optional<std::uint64_t> seed;

  // lemma1
  std::vector<int> two_j_list;
  std::vector<double> delta_list;
  // fig3 Monte Carlo column; 0 disables it
  std::size_t mc_samples = 0;
  // holevo: also report chi(U) of the full model
  bool full_model = false;
};

const char* command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

/// Checks ranges, fills per-command defaults and sorts the sweep lists.
/// Throws ConfigError.
RunConfig validated(RunConfig config);

/// The complete output document for a validated config.
std::string render(const RunConfig& config);

/// Renders and writes to config.out ("-" is stdout). Returns the process
/// exit status: 0 on success, 1 when oracle-check finds a mismatch.
int run(const RunConfig& config);

/// Full command line entry point; parse failures return 2.
int main_entry(int argc, char** argv);

}  // namespace schurcomp::cli
