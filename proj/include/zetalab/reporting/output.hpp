#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "zetalab/chain.hpp"
#include "zetalab/functionals.hpp"
#include "zetalab/ladder.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/reporting/config.hpp"

namespace zetalab::reporting {

using Json = nlohmann::ordered_json;

struct Table {
  /// Run summary written as "# key = value" lines after the config.
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Cell text: shortest round-trip decimal, "nan" for non-finite values.
std::string cell(double v);

/// Config and meta as "# key = value" comment lines, then the header row and the rows.
std::string csv_document(const RunConfig& cfg, const Table& table);

/// {"config": ..., "results": ..., "errors": [...]} with two-space indent.
std::string json_document(const RunConfig& cfg, const Json& results, const Json& errors);

Json config_json(const RunConfig& cfg);
/// Finite doubles as numbers, everything else as null.
Json number(double v);
Json to_json(const MomentRecord& rec);
Json to_json(const FunctionalSample& sample);
Json to_json(const LadderSequence& seq);
Json to_json(const PartitionReport& report);
Json to_json(const CoeffFit& fit);
Json to_json(const LimitFit& fit);
Json to_json(const ChainReport& report);
Json error_json(const std::string& kind, const std::string& message);

/// Log-log line chart of |ratio - 1| against 1/ln τ, one polyline per member.
std::string chain_svg(const ChainReport& report);

}  // namespace zetalab::reporting
