#include "gosszeta/runner.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace gosszeta {

namespace {

std::pair<std::int64_t, int> factor_prime_power(std::int64_t q) {
  if (q < 2) fail(Errc::BadConfig, "q must be >= 2");
  std::int64_t p = q;
  for (std::int64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  int n = 0;
  std::int64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) fail(Errc::BadConfig, "q = " + std::to_string(q) + " is not a prime power");
  return {p, n};
}

mpz_class parse_decimal(const std::string& text) {
  if (text.empty()) fail(Errc::BadConfig, "empty integer literal");
  for (char c : text)
    if (c < '0' || c > '9') fail(Errc::BadConfig, "bad integer literal: " + text);
  return mpz_class(text, 10);
}

std::vector<std::uint32_t> parse_digit_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<std::uint32_t>(parse_decimal(item).get_ui()));
  return out;
}

Json error_json(const RunConfig& config, const Error& e) {
  return Json{{"config", config.to_json()},
              {"error", Json{{"code", errc_name(e.code())}, {"message", e.what()}}}};
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::CapExceeded:
      return kExitResource;
    case Errc::HenselConditionFailed:
    case Errc::NotStabilized:
      return kExitMismatch;
    default:
      return kExitConfig;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_escape(const std::string& cell) {
  std::string out = cell;
  std::replace(out.begin(), out.end(), ',', ';');
  return out;
}

int default_d_max(const RunConfig& config, const FqContextPtr& ctx, const ExponentY& y) {
  if (config.d_max >= 0) return config.d_max;
  if (!y.is_finite()) return 4;
  auto lq = digit_sum(y.m(), static_cast<std::uint32_t>(ctx->q()));
  return static_cast<int>(lq / static_cast<std::uint64_t>(ctx->unit_order())) + 1;
}

RhOptions rh_options(const RunConfig& config) {
  RhOptions opts;
  opts.d_max = config.d_max >= 0 ? config.d_max : 4;
  opts.precision = config.precision;
  opts.unit_cap = config.unit_cap;
  opts.max_stream_depth = config.stream_depth;
  return opts;
}

/// Consistency of the per-strategy valuations for one row of cmd_valuation.
bool row_agrees(const std::optional<mpz_class>& greedy,
                const std::optional<std::optional<mpz_class>>& closed,
                const std::optional<ValuationResult>& comb,
                const std::optional<ValuationResult>& enumerated) {
  if (comb) {
    if (comb->kind == ValuationResult::Kind::Finite &&
        (!greedy || *greedy != comb->value))
      return false;
    if (comb->kind == ValuationResult::Kind::ExactZero && greedy) return false;
  }
  if (closed && (*closed ? (!greedy || **closed != *greedy) : greedy.has_value())) return false;
  if (enumerated) {
    if (enumerated->kind == ValuationResult::Kind::Finite &&
        (!greedy || *greedy != enumerated->value))
      return false;
    if (enumerated->kind == ValuationResult::Kind::AtLeast && greedy &&
        *greedy < enumerated->value)
      return false;
  }
  return true;
}

double enum_work(const FqContextPtr& ctx, int d, const mpz_class& m, std::int64_t N) {
  double tuples = static_cast<double>(ctx->q() - 1);
  for (int i = 1; i < d; ++i) tuples *= static_cast<double>(ctx->q());
  double bits = static_cast<double>(std::max<std::size_t>(1, mpz_sizeinbase(m.get_mpz_t(), 2)));
  return tuples * bits * static_cast<double>(N) * static_cast<double>(N);
}

ZetaPolynomial synthetic_zeta(const FqContextPtr& ctx,
                              const std::vector<std::int64_t>& valuations) {
  if (valuations.empty() || valuations[0] != 0)
    fail(Errc::BadConfig, "synthetic valuations must start with 0");
  ZetaPolynomial zp;
  zp.ctx = ctx;
  zp.degree_bound = static_cast<std::int64_t>(valuations.size()) - 1;
  for (std::int64_t v : valuations) {
    zp.coeffs.push_back(SparsePoly{{{mpz_class(v), 1}}});
    zp.valuations.emplace_back(v);
  }
  zp.enumeration_checked.assign(valuations.size(), false);
  return zp;
}

}  // namespace

StreamSpec parse_stream_spec(const std::string& text) {
  StreamSpec spec;
  std::stringstream ss(text);
  std::string part;
  bool have_repeat = false;
  while (std::getline(ss, part, ';')) {
    if (part.rfind("prefix:", 0) == 0) {
      spec.prefix = parse_digit_list(part.substr(7));
    } else if (part.rfind("repeat:", 0) == 0) {
      spec.pattern = parse_digit_list(part.substr(7));
      have_repeat = true;
    } else {
      fail(Errc::BadConfig, "bad stream spec component: " + part);
    }
  }
  if (!have_repeat || spec.pattern.empty())
    fail(Errc::BadConfig, "stream spec needs a repeat: component");
  return spec;
}

Json RunConfig::to_json() const {
  Json j;
  j["p"] = p;
  j["n"] = n;
  j["modulus"] = modulus ? Json(*modulus) : Json(nullptr);
  j["z"] = z;
  j["m"] = m_decimal ? Json(*m_decimal) : Json(nullptr);
  j["m_digits"] = m_digits ? Json(*m_digits) : Json(nullptr);
  j["m_stream"] = m_stream ? Json(*m_stream) : Json(nullptr);
  j["d_max"] = d_max;
  j["precision"] = precision;
  j["format"] = format;
  j["unit_cap"] = unit_cap;
  j["stream_depth"] = stream_depth;
  j["jobs"] = jobs;
  j["method"] = method;
  j["synthetic_valuations"] =
      synthetic_valuations ? Json(*synthetic_valuations) : Json(nullptr);
  j["q_list"] = q_list;
  j["z_spec"] = z_spec;
  j["m_min"] = m_min;
  j["m_max"] = m_max;
  return j;
}

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  c.p = j.at("p").get<std::int64_t>();
  c.n = j.at("n").get<int>();
  if (!j.at("modulus").is_null()) c.modulus = j.at("modulus").get<std::vector<std::int64_t>>();
  c.z = j.at("z").get<std::uint64_t>();
  if (!j.at("m").is_null()) c.m_decimal = j.at("m").get<std::string>();
  if (!j.at("m_digits").is_null())
    c.m_digits = j.at("m_digits").get<std::vector<std::uint32_t>>();
  if (!j.at("m_stream").is_null()) c.m_stream = j.at("m_stream").get<std::string>();
  c.d_max = j.at("d_max").get<int>();
  c.precision = j.at("precision").get<std::int64_t>();
  c.format = j.at("format").get<std::string>();
  c.unit_cap = j.at("unit_cap").get<int>();
  c.stream_depth = j.at("stream_depth").get<int>();
  c.jobs = j.at("jobs").get<int>();
  c.method = j.at("method").get<std::string>();
  if (!j.at("synthetic_valuations").is_null())
    c.synthetic_valuations = j.at("synthetic_valuations").get<std::vector<std::int64_t>>();
  c.q_list = j.at("q_list").get<std::vector<std::int64_t>>();
  c.z_spec = j.at("z_spec").get<std::string>();
  c.m_min = j.at("m_min").get<long>();
  c.m_max = j.at("m_max").get<long>();
  return c;
}

FqContextPtr RunConfig::context() const { return FqContext::make(p, n, modulus); }

ExponentY RunConfig::exponent(const FqContextPtr& ctx) const {
  if (z >= static_cast<std::uint64_t>(ctx->unit_order()))
    fail(Errc::BadConfig, "z must lie in [0, q-1)");
  int sources = (m_decimal ? 1 : 0) + (m_digits ? 1 : 0) + (m_stream ? 1 : 0);
  if (sources != 1)
    fail(Errc::BadConfig, "give the exponent exactly one way: --m, --m-digits or --m-stream");
  if (m_stream) {
    auto spec = parse_stream_spec(*m_stream);
    for (std::size_t i = 0; i < spec.prefix.size() + spec.pattern.size(); ++i)
      if (spec.digit(i) >= static_cast<std::uint64_t>(ctx->p()))
        fail(Errc::BadConfig, "stream digit >= p");
    return ExponentY::stream(z, std::move(spec));
  }
  if (m_digits) {
    for (auto dgt : *m_digits)
      if (dgt >= static_cast<std::uint64_t>(ctx->p())) fail(Errc::BadConfig, "digit >= p");
    return ExponentY::finite(z, from_digits(*m_digits, static_cast<std::uint32_t>(ctx->p())));
  }
  return ExponentY::finite(z, parse_decimal(*m_decimal));
}

CommandResult cmd_valuation(const RunConfig& config) {
  auto ctx = config.context();
  auto y = config.exponent(ctx);
  int d_max = default_d_max(config, ctx, y);
  Json rows = Json::array();
  bool all_agree = true;

  if (!y.is_finite()) {
    auto svs = stabilized_valuations(ctx, y.z(), y.stream_spec(), d_max, config.stream_depth);
    for (const auto& sv : svs) {
      all_agree = all_agree && sv.stabilized;
      Json row = to_json(sv);
      row["agree"] = sv.stabilized;
      rows.push_back(std::move(row));
    }
  } else {
    for (int d = 0; d <= d_max; ++d) {
      auto greedy = greedy_decomposition(y, d, ctx);
      std::optional<mpz_class> gw;
      if (greedy) gw = greedy->weight;

      std::optional<std::optional<mpz_class>> closed;
      if (ctx->n() == 1) closed = closed_form_valuation(y, d, ctx);

      std::optional<ValuationResult> comb;
      try {
        comb = valuation_of_power_sum(ctx, d, y, ValuationStrategy::Combinatorial, 256,
                                      config.unit_cap);
      } catch (const Error& e) {
        if (e.code() != Errc::CapExceeded) throw;
      }

      std::optional<ValuationResult> enumerated;
      std::int64_t n_max = 256;
      if (enum_work(ctx, d, y.m(), n_max) <= 5e7 &&
          enumeration_tuple_count(ctx, d).fits_ulong_p())
        enumerated = valuation_of_power_sum(ctx, d, y, ValuationStrategy::Enumeration, n_max,
                                            config.unit_cap);

      bool agree = row_agrees(gw, closed, comb, enumerated);
      all_agree = all_agree && agree;

      Json row;
      row["d"] = d;
      row["greedy"] = gw ? mpz_json(*gw) : Json(nullptr);
      row["closed_form"] =
          closed ? (*closed ? mpz_json(**closed) : Json("infinite")) : Json(nullptr);
      row["combinatorial"] = comb ? to_json(*comb) : Json(nullptr);
      row["enumeration"] = enumerated ? to_json(*enumerated) : Json(nullptr);
      row["agree"] = agree;
      rows.push_back(std::move(row));
    }
  }

  if (config.format == "csv") {
    std::ostringstream out;
    out << "d,greedy,closed_form,enumeration,combinatorial,agree\n";
    for (const auto& row : rows) {
      auto cell = [&](const char* key) {
        const auto& v = row.contains(key) ? row[key] : Json(nullptr);
        return csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
      };
      out << row["d"] << ',' << cell("greedy") << ',' << cell("closed_form") << ','
          << cell("enumeration") << ',' << cell("combinatorial") << ',' << cell("agree")
          << '\n';
    }
    return CommandResult{out.str(), all_agree ? kExitOk : kExitMismatch};
  }
  Json doc{{"config", config.to_json()}, {"rows", std::move(rows)}, {"all_agree", all_agree}};
  return CommandResult{dump(doc), all_agree ? kExitOk : kExitMismatch};
}

CommandResult cmd_greedy(const RunConfig& config) {
  auto ctx = config.context();
  auto y = config.exponent(ctx);
  if (!y.is_finite())
    fail(Errc::BadConfig, "greedy decompositions need a finite exponent; see valuation/verify");
  int d_max = default_d_max(config, ctx, y);
  Json rows = Json::array();
  for (int d = 0; d <= d_max; ++d)
    rows.push_back(decomposition_json(d, greedy_decomposition(y, d, ctx)));
  Json doc{{"config", config.to_json()}, {"decompositions", std::move(rows)}};
  return CommandResult{dump(doc), kExitOk};
}

CommandResult cmd_powersum(const RunConfig& config) {
  auto ctx = config.context();
  auto y = config.exponent(ctx);
  if (!y.is_finite()) fail(Errc::BadConfig, "power sums need a finite exponent");
  int d_max = default_d_max(config, ctx, y);
  Json rows = Json::array();
  for (int d = 0; d <= d_max; ++d) {
    Json row;
    row["q"] = ctx->q();
    row["d"] = d;
    row["z"] = y.z();
    row["m"] = mpz_json(y.m());
    row["method"] = config.method;
    if (config.method == "enumeration") {
      std::int64_t N = config.precision > 0 ? config.precision : 64;
      auto res = power_sum_enumeration(ctx, d, y, N);
      auto v = res.series.valuation();
      row["valuation"] = to_json(v.exact ? ValuationResult::finite(v.value)
                                         : ValuationResult::at_least(v.value));
      row["series"] = to_json(res.series);
    } else if (config.method == "combinatorial") {
      auto poly = power_sum_combinatorial(ctx, d, y, config.unit_cap);
      row["valuation"] = to_json(poly.zero() ? ValuationResult::exact_zero()
                                             : ValuationResult::finite(poly.min_exponent()));
      std::int64_t N =
          config.precision > 0 ? config.precision : TruncatedSeries::kExact;
      row["series"] = to_json(sparse_to_series(ctx, poly, N));
    } else {
      fail(Errc::BadConfig, "method must be combinatorial or enumeration");
    }
    rows.push_back(std::move(row));
  }
  Json doc{{"config", config.to_json()}, {"power_sums", std::move(rows)}};
  return CommandResult{dump(doc), kExitOk};
}

namespace {

NewtonPolygon polygon_for(const RunConfig& config, const FqContextPtr& ctx) {
  if (config.synthetic_valuations) {
    std::vector<PolygonPoint> pts;
    std::int64_t x = 0;
    for (std::int64_t v : *config.synthetic_valuations)
      pts.push_back(PolygonPoint{x++, mpz_class(v)});
    return lower_hull(std::move(pts));
  }
  auto y = config.exponent(ctx);
  if (y.is_finite()) {
    ZetaOptions zopts;
    zopts.unit_cap = config.unit_cap;
    return polygon_of(zeta_polynomial(ctx, y, zopts));
  }
  auto svs = stabilized_valuations(ctx, y.z(), y.stream_spec(),
                                   config.d_max >= 0 ? config.d_max : 4, config.stream_depth);
  std::vector<PolygonPoint> pts;
  for (const auto& sv : svs) {
    if (!sv.stabilized)
      fail(Errc::NotStabilized,
           "valuations did not stabilize within " + std::to_string(config.stream_depth) +
               " digits (d=" + std::to_string(sv.d) + ")");
    if (!sv.value) break;
    pts.push_back(PolygonPoint{sv.d, *sv.value});
  }
  return lower_hull(std::move(pts));
}

}  // namespace

CommandResult cmd_polygon(const RunConfig& config) {
  auto ctx = config.context();
  auto np = polygon_for(config, ctx);
  Json doc{{"config", config.to_json()}, {"polygon", to_json(np)}};
  return CommandResult{dump(doc), kExitOk};
}

CommandResult cmd_roots(const RunConfig& config) {
  auto ctx = config.context();
  ZetaPolynomial zp;
  if (config.synthetic_valuations) {
    zp = synthetic_zeta(ctx, *config.synthetic_valuations);
  } else {
    auto y = config.exponent(ctx);
    if (!y.is_finite())
      fail(Errc::BadConfig, "root lifting for streams runs through verify");
    ZetaOptions zopts;
    zopts.unit_cap = config.unit_cap;
    zp = zeta_polynomial(ctx, y, zopts);
  }
  std::int64_t lambda_max = 0;
  for (std::size_t d = 1; d < zp.valuations.size(); ++d) {
    mpz_class diff = zp.valuations[d] - zp.valuations[d - 1];
    if (!diff.fits_slong_p()) fail(Errc::CapExceeded, "slopes too large for dense lifting");
    lambda_max = std::max(lambda_max, diff.get_si());
  }
  std::int64_t precision =
      config.precision > 0 ? config.precision : std::max<std::int64_t>(64, 4 * lambda_max + 16);
  auto report = find_roots(zp, precision);
  Json doc{{"config", config.to_json()}, {"zeros", to_json(report)}};
  return CommandResult{dump(doc), kExitOk};
}

CommandResult cmd_verify(const RunConfig& config) {
  auto ctx = config.context();
  auto y = config.exponent(ctx);
  auto report = verify_rh(ctx, y, rh_options(config));
  Json doc{{"config", config.to_json()}, {"report", to_json(report)}};
  int code = report.verdict ? kExitOk : (report.capped ? kExitResource : kExitMismatch);
  return CommandResult{dump(doc), code};
}

namespace {

struct SweepRow {
  std::int64_t q;
  std::uint64_t z;
  long m;
};

std::string run_sweep_row(const RunConfig& config, const SweepRow& row) {
  auto [p, n] = factor_prime_power(row.q);
  std::ostringstream out;
  out << row.q << ',' << p << ',' << n << ',' << row.z << ',' << row.m << ',';
  try {
    auto ctx = FqContext::make(p, n);
    auto y = ExponentY::finite(row.z, row.m);

    RhOptions opts = rh_options(config);
    opts.enum_check_budget = 1e6;  // rows cross-check valuations separately
    auto rep = verify_rh(ctx, y, opts);

    bool agree = true;
    if (rep.zeta && rep.zeta->certified)
      for (int d = 0; d <= rep.zeta->degree(); ++d) {
        auto g = greedy_decomposition(y, d, ctx);
        agree = agree && g && g->weight == rep.zeta->valuations[static_cast<std::size_t>(d)];
      }

    std::ostringstream vals;
    if (rep.zeta && rep.zeta->certified)
      for (std::size_t i = 0; i < rep.zeta->valuations.size(); ++i)
        vals << (i ? ";" : "") << rep.zeta->valuations[i].get_str();
    std::ostringstream slopes;
    if (rep.polygon)
      for (std::size_t i = 0; i < rep.polygon->segments.size(); ++i)
        slopes << (i ? ";" : "") << rep.polygon->segments[i].slope.get_str();

    std::string status = rep.capped    ? "cap:" + rep.failing_stage
                         : !agree       ? "fail:valuation-agreement"
                         : !rep.verdict ? "fail:" + rep.failing_stage
                                        : "ok";
    out << csv_escape(status) << ',' << (rep.zeta ? rep.zeta->degree() : -1) << ','
        << vals.str() << ',' << slopes.str() << ',' << (rep.simplicity.simple ? 1 : 0) << ','
        << (rep.zeros ? rep.zeros->roots.size() : 0) << ',' << (rep.verdict ? 1 : 0);
  } catch (const Error& e) {
    if (e.code() == Errc::CapExceeded)
      out << "cap:" << csv_escape(e.what()) << ",,,,,";
    else
      out << "fail:" << csv_escape(e.what()) << ",,,,,";
  }
  return out.str();
}

}  // namespace

CommandResult cmd_sweep(const RunConfig& config) {
  if (config.m_min < 0) fail(Errc::BadConfig, "bad m range");
  // an empty grid (no q values, or an empty m range) is an empty report
  std::vector<SweepRow> rows;
  for (std::int64_t q : config.q_list) {
    auto [p, n] = factor_prime_power(q);
    (void)p;
    (void)n;
    std::vector<std::uint64_t> zs;
    if (config.z_spec == "all") {
      for (std::uint64_t z = 0; z + 1 < static_cast<std::uint64_t>(q); ++z) zs.push_back(z);
    } else {
      for (auto zd : parse_digit_list(config.z_spec)) zs.push_back(zd);
    }
    for (auto z : zs)
      for (long m = config.m_min; m <= config.m_max; ++m)
        rows.push_back(SweepRow{q, z, m});
  }

  std::vector<std::string> lines(rows.size());
  int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) lines[i] = run_sweep_row(config, rows[i]);
  } else {
    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= rows.size()) return;
          lines[i] = run_sweep_row(config, rows[i]);
        }
      });
    for (auto& worker : workers) worker.join();
  }

  long pass = 0, failed = 0, capped = 0;
  std::ostringstream out;
  out << "q,p,n,z,m,status,degree,valuations,slopes,simple,roots,verdict\n";
  for (const auto& line : lines) {
    out << line << '\n';
    if (line.find(",ok,") != std::string::npos)
      ++pass;
    else if (line.find(",cap:") != std::string::npos)
      ++capped;
    else
      ++failed;
  }
  out << "# pass=" << pass << " fail=" << failed << " cap=" << capped << "\n";
  int code = failed > 0 ? kExitMismatch : kExitOk;

  if (config.format == "json") {
    Json doc{{"config", config.to_json()},
             {"csv", out.str()},
             {"summary", Json{{"pass", pass}, {"fail", failed}, {"cap", capped}}}};
    return CommandResult{dump(doc), code};
  }
  return CommandResult{out.str(), code};
}

CommandResult run_command(const std::string& command, const RunConfig& config) {
  try {
    if (command == "valuation") return cmd_valuation(config);
    if (command == "greedy") return cmd_greedy(config);
    if (command == "powersum") return cmd_powersum(config);
    if (command == "polygon") return cmd_polygon(config);
    if (command == "roots") return cmd_roots(config);
    if (command == "verify") return cmd_verify(config);
    if (command == "sweep") return cmd_sweep(config);
    fail(Errc::BadConfig, "unknown command: " + command);
  } catch (const Error& e) {
    return CommandResult{dump(error_json(config, e)), exit_code_for(e.code())};
  }
}

}  // namespace gosszeta
