#pragma once

// `anyonrg` command line: run configuration, table assembly and rendering.
// Kept in a library so the tests drive it in-process.

#include "anyonrg/majorana.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace anyonrg::cli {

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  int k = 2;
  int scale_N = 0;
  int depth_M = 10;
  int half_length = 8;  // L in units of eps_0
  std::vector<long> separations{1, 2, 4};
  majorana::Direction attachment = majorana::Direction::right;
  majorana::BraidSign braid = majorana::BraidSign::over;
  double kauffman_A = 0.375;  // A = exp(i pi kauffman_A)
  Format format = Format::csv;
  std::string out = "-";
  std::uint64_t seed = 1;
  std::optional<double> delta;  // verify: replaces the loop value

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const RunConfig& c);
/// Throws std::invalid_argument on unknown enum values or missing keys.
RunConfig config_from_json(const nlohmann::json& j);

/// Throws std::invalid_argument with a user-facing message.
void validate(const RunConfig& c);

using Cell = std::variant<std::monostate, long, double, std::string>;  // monostate = NA

struct Table {
  std::vector<std::string> notes;  // extra `#` lines after the config
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool passed = true;              // verify only
};

Table cmd_verify(const RunConfig& c);
Table cmd_flow(const RunConfig& c);
Table cmd_chirality(const RunConfig& c);
Table cmd_correlator(const RunConfig& c);
Table cmd_gs(const RunConfig& c);

/// Dispatches on c.command.
Table run(const RunConfig& c);

std::string render(const RunConfig& c, const Table& t);

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Full entry point: parse, validate, run, write. Returns the exit code.
int main(int argc, char** argv);

}  // namespace anyonrg::cli
