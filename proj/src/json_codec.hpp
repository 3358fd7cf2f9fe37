#pragma once

// JSON mapping of the domain types; private to the library.

#include "json.hpp"
#include "vscan/baseline.hpp"
#include "vscan/engine.hpp"
#include "vscan/metrics.hpp"

namespace vscan::json_codec {

using nlohmann::json;

json to_json(const Finding& f);
Finding finding_from_json(const json& j);

json to_json(const SourceFile& f);
json to_json(const LanguageTotals& t);
json to_json(const DensityMetric& d);
json to_json(const SeverityHistogram& h);
json to_json(const std::vector<LanguageShare>& shares);

json scan_to_json(const ScanResult& r, LineKind kind);
ScanResult scan_from_json(const json& j);

json metrics_to_json(const ScanResult& r, LineKind kind);
json diff_to_json(const DiffResult& d);

}  // namespace vscan::json_codec
