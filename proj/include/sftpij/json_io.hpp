#pragma once

#include <json.hpp>

#include "sftpij/battery.hpp"
#include "sftpij/indconfig.hpp"
#include "sftpij/joining.hpp"

namespace sftpij {

// Interchange formats. Rationals are serialized as "num/den" strings so no
// precision is ever lost; object keys come out sorted (nlohmann), so equal
// values serialize to identical bytes.

nlohmann::json matrix_to_json(const AdjacencyMatrix& m);
AdjacencyMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json perron_to_json(const PerronData& pd);
PerronData perron_from_json(const nlohmann::json& j);

/// {"matrix": ..., "perron": ..., "stationary": [...], "transition": [[...]]}
/// stationary/transition are rational strings in the exact case and decimal
/// numbers otherwise; loading reconstructs the measure from matrix + perron.
nlohmann::json measure_to_json(const MarkovMeasure& mu);
MarkovMeasure measure_from_json(const nlohmann::json& j);

/// {"matrix": ..., "p": int, "table": [{"x": ..., "xp": ..., "out": ...}]}
nlohmann::json rule_to_json(const LocalRule& rule);
LocalRule rule_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const JoiningVerdict& v);
nlohmann::json report_to_json(const PijReport& rep);

/// {"F": int, "Fp": int, "C": [[i, j], ...]}
nlohmann::json config_to_json(const IndependenceConfig& cfg);
IndependenceConfig config_from_json(const nlohmann::json& j);
nlohmann::json solution_to_json(const ConfigSolution& sol);

/// Reads a whole file; throws InputError when unreadable.
std::string read_file(const std::string& path);
nlohmann::json load_json_file(const std::string& path);

}  // namespace sftpij
