#pragma once

#include <optional>

#include "json.hpp"

#include "gosszeta/polygon.hpp"
#include "gosszeta/powersum.hpp"
#include "gosszeta/series.hpp"
#include "gosszeta/zeta.hpp"

namespace gosszeta {

using Json = nlohmann::ordered_json;

/// Big integers serialize as JSON numbers when they fit 64 bits and as
/// decimal strings otherwise.
Json mpz_json(const mpz_class& v);

Json to_json(const TruncatedSeries& s);
Json to_json(const SeriesValuation& v);
Json to_json(const ValuationResult& v);
Json to_json(const Decomposition& d);
Json decomposition_json(int d, const std::optional<Decomposition>& dec);
Json to_json(const NewtonPolygon& np);
Json to_json(const LiftedRoot& root);
Json to_json(const ZeroReport& report);
Json to_json(const StreamValuationResult& sv);
Json to_json(const RhReport& report);

}  // namespace gosszeta
