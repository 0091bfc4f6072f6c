#pragma once

#include <string>
#include <vector>

#include "mrleq/comparative.hpp"
#include "mrleq/distribution.hpp"
#include "mrleq/equilibrium.hpp"
#include "mrleq/oracle.hpp"
#include "mrleq/orders.hpp"
#include "mrleq/reliability.hpp"

namespace mrleq {

inline constexpr int kSchemaVersion = 1;

json to_json(const Moments& m);
json to_json(const PropertyVerdict& v);
json to_json(const OrderVerdict& v);
json to_json(const EquilibriumResult& r);
json to_json(const MarketOutcome& o);
json to_json(const ReliabilityProfile& p);
json to_json(const OracleReport& r);
json to_json(const McEstimates& m);
json to_json(const ExpectedProfits& p);
json to_json(const DeviationReport& d);
json to_json(const ExperimentReport& r);
json to_json(const CounterexampleResult& r);

// JSON text with every double printed at 17 significant digits and
// non-finite doubles as null. Object keys come out sorted.
std::string dump_json(const json& value, int indent = 2);

// Locale-independent CSV: '.' decimal separator, '\n' line endings, 17 digits.
std::string format_double(double v);
std::string to_csv(const std::vector<std::string>& header,
                   const std::vector<std::vector<double>>& rows);
std::string profit_curve_csv(const std::vector<ProfitPoint>& curve);

// Writes to a temporary file in the target directory, then renames it into
// place. Throws std::runtime_error on I/O failure.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace mrleq
