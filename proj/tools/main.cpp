#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gosszeta/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Goss t-adic zeta toolkit over F_q[t]: valuations, Newton polygons, zero lifting"};
  app.require_subcommand(1);

  gosszeta::RunConfig config;
  std::vector<std::int64_t> modulus;
  std::string m_decimal;
  std::vector<std::uint32_t> m_digits;
  std::string m_stream;
  std::vector<std::int64_t> synthetic;
  std::string out_path;

  const char* names[] = {"valuation", "greedy", "powersum", "polygon",
                         "roots",     "verify", "sweep"};
  for (const char* name : names) {
    auto* cmd = app.add_subcommand(name);
    cmd->add_option("--p", config.p, "characteristic (prime)");
    cmd->add_option("--n", config.n, "extension degree, q = p^n");
    cmd->add_option("--modulus", modulus, "modulus coefficients c_0,...,c_n (monic)")
        ->delimiter(',');
    cmd->add_option("--z", config.z, "residue class z mod (q-1)");
    cmd->add_option("--m", m_decimal, "finite p-adic exponent, decimal");
    cmd->add_option("--m-digits", m_digits, "finite exponent as base-p digits, lowest first")
        ->delimiter(',');
    cmd->add_option("--m-stream", m_stream,
                    "digit stream spec, e.g. repeat:2 or prefix:1,0;repeat:2");
    cmd->add_option("--d-max", config.d_max, "largest coefficient index (default: automatic)");
    cmd->add_option("--precision", config.precision, "t-adic target precision (default: auto)");
    cmd->add_option("--format", config.format, "output format: json or csv");
    cmd->add_option("--out", out_path, "write the document to a file instead of stdout");
    cmd->add_option("--unit-cap", config.unit_cap, "digit-unit cap for exact evaluation");
    cmd->add_option("--stream-depth", config.stream_depth, "stabilization depth bound");
    cmd->add_option("--jobs", config.jobs, "parallel workers for sweeps");
    if (std::string(name) == "powersum")
      cmd->add_option("--method", config.method, "combinatorial or enumeration");
    if (std::string(name) == "polygon" || std::string(name) == "roots")
      cmd->add_option("--synthetic-valuations", synthetic,
                      "build the polynomial sum t^(v_d) x^d from these valuations")
          ->delimiter(',');
    if (std::string(name) == "sweep") {
      cmd->add_option("--q-list", config.q_list, "prime powers to sweep")->delimiter(',');
      cmd->add_option("--z-list", config.z_spec, "z values: 'all' or a comma list");
      cmd->add_option("--m-min", config.m_min, "first exponent");
      cmd->add_option("--m-max", config.m_max, "last exponent");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : gosszeta::kExitConfig;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--modulus")) config.modulus = modulus;
  if (sub->count("--m")) config.m_decimal = m_decimal;
  if (sub->count("--m-digits")) config.m_digits = m_digits;
  if (sub->count("--m-stream")) config.m_stream = m_stream;
  if ((sub->get_name() == "polygon" || sub->get_name() == "roots") &&
      sub->count("--synthetic-valuations"))
    config.synthetic_valuations = synthetic;

  auto result = gosszeta::run_command(sub->get_name(), config);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return gosszeta::kExitConfig;
    }
    out << result.output;
  } else {
    std::cout << result.output;
  }
  return result.exit_code;
}
