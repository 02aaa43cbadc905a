#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "gosszeta/runner.hpp"

namespace py = pybind11;
using namespace gosszeta;

namespace {

py::object mpz_to_py(const mpz_class& v) {
  return py::reinterpret_steal<py::object>(
      PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

mpz_class py_to_mpz(const py::object& obj) {
  return mpz_class(std::string(py::str(obj)), 10);
}

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

Json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<std::int64_t>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
    Json arr = Json::array();
    for (const auto& item : obj) arr.push_back(py_to_json(item));
    return arr;
  }
  if (py::isinstance<py::dict>(obj)) {
    Json out = Json::object();
    for (auto item : obj.cast<py::dict>())
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    return out;
  }
  throw py::type_error("unsupported config value");
}

/// Thin handle so python sees one object per field.
struct Field {
  FqContextPtr ctx;
};

ExponentY make_exponent(const Field& field, std::uint64_t z, const py::object& m,
                        const std::optional<std::string>& stream) {
  if (stream) {
    auto spec = parse_stream_spec(*stream);
    return ExponentY::stream(z, std::move(spec));
  }
  return ExponentY::finite(z, py_to_mpz(m));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic for Goss t-adic zeta functions over F_q[t]";

  py::register_exception<Error>(m, "GossZetaError");

  py::class_<Field>(m, "Field")
      .def(py::init([](std::int64_t p, int n, std::optional<std::vector<std::int64_t>> modulus) {
             return Field{FqContext::make(p, n, std::move(modulus))};
           }),
           py::arg("p"), py::arg("n") = 1, py::arg("modulus") = std::nullopt)
      .def_property_readonly("p", [](const Field& f) { return f.ctx->p(); })
      .def_property_readonly("n", [](const Field& f) { return f.ctx->n(); })
      .def_property_readonly("q", [](const Field& f) { return f.ctx->q(); })
      .def_property_readonly("modulus", [](const Field& f) { return f.ctx->modulus(); })
      .def("add", [](const Field& f, Fq a, Fq b) { return f.ctx->add(a, b); })
      .def("sub", [](const Field& f, Fq a, Fq b) { return f.ctx->sub(a, b); })
      .def("mul", [](const Field& f, Fq a, Fq b) { return f.ctx->mul(a, b); })
      .def("inv", [](const Field& f, Fq a) { return f.ctx->inv(a); })
      .def("pow",
           [](const Field& f, Fq base, const py::object& e) {
             return f.ctx->pow(base, py_to_mpz(e));
           })
      .def("coeffs", [](const Field& f, Fq a) { return f.ctx->coeffs(a); })
      .def("from_coeffs",
           [](const Field& f, const std::vector<std::int64_t>& c) { return f.ctx->from_coeffs(c); })
      .def("power_sum", [](const Field& f, const py::object& h, bool nonzero_only) {
        return f.ctx->power_sum(py_to_mpz(h), nonzero_only);
      });

  m.def("base_digits", [](const py::object& k, std::uint32_t b) {
    return base_digits(py_to_mpz(k), b);
  });
  m.def("digit_sum",
        [](const py::object& k, std::uint32_t b) { return digit_sum(py_to_mpz(k), b); });
  m.def("carry_free", [](const py::list& parts, std::uint32_t p) {
    std::vector<mpz_class> v;
    for (const auto& part : parts) v.push_back(py_to_mpz(py::reinterpret_borrow<py::object>(part)));
    return carry_free(v, p);
  });
  m.def("multinomial_mod_p", [](const py::object& mm, const py::list& parts, std::uint32_t p) {
    std::vector<mpz_class> v;
    for (const auto& part : parts) v.push_back(py_to_mpz(py::reinterpret_borrow<py::object>(part)));
    return multinomial_mod_p(py_to_mpz(mm), v, p);
  });

  m.def(
      "greedy_decomposition",
      [](const Field& f, std::uint64_t z, const py::object& mm, int d) {
        auto dec = greedy_decomposition(ExponentY::finite(z, py_to_mpz(mm)), d, f.ctx);
        return json_to_py(decomposition_json(d, dec));
      },
      py::arg("field"), py::arg("z"), py::arg("m"), py::arg("d"));
  m.def(
      "exhaustive_min_decomposition",
      [](const Field& f, std::uint64_t z, const py::object& mm, int d, int unit_cap) {
        auto dec =
            exhaustive_min_decomposition(ExponentY::finite(z, py_to_mpz(mm)), d, f.ctx, unit_cap);
        return json_to_py(decomposition_json(d, dec));
      },
      py::arg("field"), py::arg("z"), py::arg("m"), py::arg("d"),
      py::arg("unit_cap") = kDefaultUnitCap);
  m.def("closed_form_valuation",
        [](const Field& f, std::uint64_t z, const py::object& mm, int d) -> py::object {
          auto v = closed_form_valuation(ExponentY::finite(z, py_to_mpz(mm)), d, f.ctx);
          return v ? mpz_to_py(*v) : py::none();
        });
  m.def("slope_prediction",
        [](const Field& f, std::uint64_t z, const py::object& mm, int d) -> py::object {
          auto v = slope_prediction(ExponentY::finite(z, py_to_mpz(mm)), d, f.ctx);
          return v ? mpz_to_py(*v) : py::none();
        });

  m.def(
      "power_sum",
      [](const Field& f, std::uint64_t z, const py::object& mm, int d, const std::string& method,
         std::int64_t precision) {
        auto y = ExponentY::finite(z, py_to_mpz(mm));
        Json row;
        if (method == "enumeration") {
          auto res = power_sum_enumeration(f.ctx, d, y, precision > 0 ? precision : 64);
          auto v = res.series.valuation();
          row["valuation"] = to_json(v.exact ? ValuationResult::finite(v.value)
                                             : ValuationResult::at_least(v.value));
          row["series"] = to_json(res.series);
        } else {
          auto poly = power_sum_combinatorial(f.ctx, d, y);
          row["valuation"] = to_json(poly.zero() ? ValuationResult::exact_zero()
                                                 : ValuationResult::finite(poly.min_exponent()));
          row["series"] = to_json(
              sparse_to_series(f.ctx, poly, precision > 0 ? precision : TruncatedSeries::kExact));
        }
        return json_to_py(row);
      },
      py::arg("field"), py::arg("z"), py::arg("m"), py::arg("d"),
      py::arg("method") = "combinatorial", py::arg("precision") = 0);

  m.def("newton_polygon", [](const std::vector<std::pair<std::int64_t, py::object>>& points) {
    std::vector<PolygonPoint> pts;
    for (const auto& [x, yv] : points) pts.push_back(PolygonPoint{x, py_to_mpz(yv)});
    return json_to_py(to_json(lower_hull(std::move(pts))));
  });

  m.def(
      "verify",
      [](const Field& f, std::uint64_t z, const py::object& mm,
         const std::optional<std::string>& stream, int d_max, std::int64_t precision) {
        RhOptions opts;
        if (d_max >= 0) opts.d_max = d_max;
        opts.precision = precision;
        auto rep = verify_rh(f.ctx, make_exponent(f, z, mm, stream), opts);
        return json_to_py(to_json(rep));
      },
      py::arg("field"), py::arg("z") = 0, py::arg("m") = py::none(),
      py::arg("stream") = std::nullopt, py::arg("d_max") = -1, py::arg("precision") = 0);

  m.def(
      "run",
      [](const std::string& command, const py::dict& overrides) {
        RunConfig defaults;
        Json merged = defaults.to_json();
        for (auto item : overrides)
          merged[item.first.cast<std::string>()] = py_to_json(item.second);
        auto config = RunConfig::from_json(merged);
        auto result = run_command(command, config);
        return py::make_tuple(py::str(result.output), result.exit_code);
      },
      py::arg("command"), py::arg("config") = py::dict());
}
