#pragma once

#include <string>

#include <json.hpp>

#include "genericlab/birkhoff.hpp"
#include "genericlab/measure.hpp"
#include "genericlab/oxtoby.hpp"
#include "genericlab/point.hpp"
#include "genericlab/psi_reduction.hpp"
#include "genericlab/specification.hpp"
#include "genericlab/tracing.hpp"
#include "genericlab/tree_reduction.hpp"

namespace genericlab {

using Json = nlohmann::ordered_json;

// Points: {"kind":"ep","pre":[...],"per":[...]} or
//         {"kind":"recipe","name":...,"params":...} with optional "shift".
Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

// Measures: {"support":[Point...],"weights":["p/q",...],"horizon":h}.
Json measure_to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j, std::uint64_t default_horizon);

// Specifications: [[Point, length], ...].
Json specification_to_json(const Specification& xi);
Specification specification_from_json(const Json& j);

// Observables: {"window":m,"table":{"0,1":"1/2",...},"default":"0"}.
Json observable_to_json(const LocalObservable& phi);
LocalObservable observable_from_json(const Json& j);

// Trees: [[0,1],[0],[]].
Json tree_to_json(const TreeOnOmega& t);
TreeOnOmega tree_from_json(const Json& j);

Json trace_report_to_json(const TraceReport& r);
Json oxtoby_machine_to_json(const OxtobyMachine& m);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// CSV emission: comma-separated, header row, LF endings, rationals as "p/q"
// plus a 12-digit decimal column.
std::string vset_csv(const VsetDiagnostics& d);
std::string certificate_csv(const std::vector<StageCertificate>& rows);
std::string psi_checkpoints_csv(const PsiReductionResult& r);
std::string series_csv(const std::vector<std::pair<std::uint64_t, Rat>>& series,
                       const std::string& key_name, const std::string& value_name);
std::string oxtoby_stats_csv(const OxtobyMachine& m);
std::string oxtoby_reduce_csv(const OxtobyReduceResult& r);

} // namespace genericlab
