#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gosszeta/json_io.hpp"

namespace gosszeta {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,   // verification failed or verdict false
  kExitConfig = 2,     // usage / configuration / precondition errors
  kExitResource = 3,   // a resource cap was hit
};

/// One fully resolved run: every default is explicit so the config echo in
/// the output round-trips unchanged.
struct RunConfig {
  std::int64_t p = 2;
  int n = 1;
  std::optional<std::vector<std::int64_t>> modulus;
  std::uint64_t z = 0;
  std::optional<std::string> m_decimal;               // finite exponent, base 10
  std::optional<std::vector<std::uint32_t>> m_digits;  // finite exponent, base-p digits
  std::optional<std::string> m_stream;                 // "prefix:..;repeat:.." spec
  int d_max = -1;          // -1: choose from the degree bound (streams: 4)
  std::int64_t precision = 0;  // 0: max(64, 4 * max slope + 16)
  std::string format = "json";
  int unit_cap = kDefaultUnitCap;
  int stream_depth = 32;
  int jobs = 1;
  std::string method = "combinatorial";  // powersum: combinatorial | enumeration
  std::optional<std::vector<std::int64_t>> synthetic_valuations;  // polygon/roots input
  // sweep grid
  std::vector<std::int64_t> q_list;
  std::string z_spec = "all";
  long m_min = 1;
  long m_max = 20;

  Json to_json() const;
  static RunConfig from_json(const Json& j);

  FqContextPtr context() const;
  ExponentY exponent(const FqContextPtr& ctx) const;
  bool has_stream() const { return m_stream.has_value(); }
};

StreamSpec parse_stream_spec(const std::string& text);

struct CommandResult {
  std::string output;  // the full document (JSON or CSV), newline terminated
  int exit_code = kExitOk;
};

CommandResult cmd_valuation(const RunConfig& config);
CommandResult cmd_greedy(const RunConfig& config);
CommandResult cmd_powersum(const RunConfig& config);
CommandResult cmd_polygon(const RunConfig& config);
CommandResult cmd_roots(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_sweep(const RunConfig& config);

/// Dispatch by subcommand name; maps Error codes onto exit codes.
CommandResult run_command(const std::string& command, const RunConfig& config);

}  // namespace gosszeta
