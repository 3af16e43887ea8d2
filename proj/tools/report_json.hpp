#pragma once

#include <string>

#include <json.hpp>

#include "mwk/engine.hpp"
#include "mwk/types.hpp"

namespace mwk::cli {

nlohmann::json report_to_json(const RunReport& report);

/// Best run plus a per-restart summary. See README for the schema.
nlohmann::json restarts_to_json(const RestartResult& result, const MwkConfig& config,
                                const Dataset& data);

}  // namespace mwk::cli
