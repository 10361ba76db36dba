#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gplus/fingerprint.hpp"

namespace gplus {

enum class ReportFormat { Json, Csv };

/// One decimal place, round half up. Reporting layer only; the values next
/// to these strings stay unrounded.
std::string display_one_decimal(double value);

/// {"value": <unrounded>, "display": "<one decimal>"}
nlohmann::ordered_json scored_json(double value);

std::string timestamp_utc_now();  // ISO-8601, seconds, UTC

/// A serialized analysis result plus the configuration that produced it.
struct ReportBundle {
    ReportFormat format = ReportFormat::Json;
    std::string kind;  // subcommand name
    nlohmann::ordered_json payload;
    std::vector<std::vector<std::string>> csv_rows;  // header row first; used when format == Csv
    std::optional<std::string> generated_at;         // absent when suppressed
    GPlusConfig config_echo;

    std::string serialize() const;
};

nlohmann::ordered_json config_json(const GPlusConfig& config);

/// CSV field quoting per RFC 4180 (quotes doubled, fields with separators quoted).
std::string csv_escape(const std::string& field);

/// Deterministic shortest text for a double, matching JSON number output.
std::string number_text(double value);

}  // namespace gplus
