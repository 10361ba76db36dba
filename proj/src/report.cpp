#include "gplus/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace gplus {

std::string display_one_decimal(double value) {
    const double scaled = value * 10.0;
    const double magnitude = std::floor(std::abs(scaled) + 0.5);
    const double rounded = (scaled < 0.0 ? -magnitude : magnitude) / 10.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", rounded);
    // Normalize "-0.0" away.
    if (std::string_view(buf) == "-0.0") return "0.0";
    return buf;
}

nlohmann::ordered_json scored_json(double value) {
    return {{"value", value}, {"display", display_one_decimal(value)}};
}

std::string timestamp_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string number_text(double value) {
    return nlohmann::json(value).dump();
}

nlohmann::ordered_json config_json(const GPlusConfig& config) {
    return {{"norm_constant", config.norm_constant},
            {"norm_mode", std::string(to_string(config.norm_mode))},
            {"comparison", std::string(to_string(config.comparison))},
            {"epsilon", config.epsilon}};
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string ReportBundle::serialize() const {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json doc;
        doc["report"] = kind;
        if (generated_at) doc["generated_at"] = *generated_at;
        doc["config"] = config_json(config_echo);
        doc["payload"] = payload;
        return doc.dump(2) + "\n";
    }

    std::string out;
    out += "# report=" + kind + "\n";
    if (generated_at) out += "# generated_at=" + *generated_at + "\n";
    out += "# norm_constant=" + number_text(config_echo.norm_constant) + "\n";
    out += "# norm_mode=" + std::string(to_string(config_echo.norm_mode)) + "\n";
    out += "# comparison=" + std::string(to_string(config_echo.comparison)) + "\n";
    out += "# epsilon=" + number_text(config_echo.epsilon) + "\n";
    for (const auto& row : csv_rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) out += ',';
            out += csv_escape(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace gplus
