#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gplus/bounds.hpp"
#include "gplus/dates.hpp"
#include "gplus/errors.hpp"
#include "gplus/fingerprint.hpp"
#include "gplus/ingest.hpp"
#include "gplus/portfolio.hpp"
#include "gplus/report.hpp"
#include "gplus/svg_plot.hpp"

namespace {

using nlohmann::ordered_json;

/// Bad flag values and missing required flags; exits 2.
struct UsageError {
    std::string message;
};

struct Options {
    std::string data_dir;
    std::string ledger;
    std::string config_file;
    std::string mode;
    std::string as_of;
    std::string norm;
    std::string comparison;
    std::string format = "json";
    std::string out;
    bool no_timestamp = false;

    std::string occupation;
    std::vector<std::string> occupations;
    std::int64_t task_id = 0;
    std::string target_occupation;
    std::string subject = "occupations";
    double target = 0.0;
    bool target_set = false;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--data", opt.data_dir,
                    "Directory with the dataset files (default: $GPLUS_DATA_DIR)");
    cmd->add_option("--ledger", opt.ledger, "Subtask ledger file");
    cmd->add_option("--config", opt.config_file, "key=value file mirroring the scoring config");
    cmd->add_option("--mode", opt.mode, "Control mode filter")
        ->check(CLI::IsMember({"teleop", "autonomous"}));
    cmd->add_option("--as-of", opt.as_of, "Only count records dated at or before this date");
    cmd->add_option("--norm", opt.norm, "Normalization: pinned[:<value>] or derived");
    cmd->add_option("--comparison", opt.comparison, "Dominance comparison policy")
        ->check(CLI::IsMember({"meets", "strict"}));
    cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out, "Write the report to this path instead of stdout");
    cmd->add_flag("--no-timestamp", opt.no_timestamp, "Omit generated_at for byte-stable output");
}

void apply_config_file(gplus::GPlusConfig& config, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gplus::ParseError("cannot open config file " + path);
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        const auto end = s.find_last_not_of(" \t\r");
        if (begin == std::string::npos) return std::string();
        return s.substr(begin, end - begin + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw gplus::ParseError("expected key=value (" + path + ":" +
                                    std::to_string(line_no) + ")");
        }
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        const auto parse_double = [&](double& target_field) {
            const char* first = value.data();
            const char* last = value.data() + value.size();
            auto [ptr, ec] = std::from_chars(first, last, target_field);
            if (ec != std::errc() || ptr != last) {
                throw gplus::ParseError("bad numeric value '" + value + "' for " + key + " (" +
                                        path + ":" + std::to_string(line_no) + ")");
            }
        };
        if (key == "norm_constant") {
            parse_double(config.norm_constant);
        } else if (key == "epsilon") {
            parse_double(config.epsilon);
        } else if (key == "norm_mode") {
            if (value == "pinned") {
                config.norm_mode = gplus::NormMode::Pinned;
            } else if (value == "derived") {
                config.norm_mode = gplus::NormMode::DerivedFromOccupations;
            } else {
                throw gplus::ParseError("bad norm_mode '" + value + "' (" + path + ":" +
                                        std::to_string(line_no) + ")");
            }
        } else if (key == "comparison") {
            if (value == "meets") {
                config.comparison = gplus::ComparisonPolicy::MeetsMinimum;
            } else if (value == "strict") {
                config.comparison = gplus::ComparisonPolicy::StrictlyGreater;
            } else {
                throw gplus::ParseError("bad comparison '" + value + "' (" + path + ":" +
                                        std::to_string(line_no) + ")");
            }
        } else {
            throw gplus::ParseError("unknown config key '" + key + "' (" + path + ":" +
                                    std::to_string(line_no) + ")");
        }
    }
}

void apply_flag_overrides(gplus::GPlusConfig& config, const Options& opt) {
    if (!opt.norm.empty()) {
        if (opt.norm == "derived") {
            config.norm_mode = gplus::NormMode::DerivedFromOccupations;
        } else if (opt.norm == "pinned") {
            config.norm_mode = gplus::NormMode::Pinned;
        } else if (opt.norm.rfind("pinned:", 0) == 0) {
            const std::string value = opt.norm.substr(7);
            double parsed = 0.0;
            const char* first = value.data();
            const char* last = value.data() + value.size();
            auto [ptr, ec] = std::from_chars(first, last, parsed);
            if (ec != std::errc() || ptr != last || !(parsed > 0.0)) {
                throw UsageError{"--norm: bad pinned value '" + value + "'"};
            }
            config.norm_mode = gplus::NormMode::Pinned;
            config.norm_constant = parsed;
        } else {
            throw UsageError{"--norm must be pinned[:<value>] or derived"};
        }
    }
    if (!opt.comparison.empty()) {
        config.comparison = opt.comparison == "strict" ? gplus::ComparisonPolicy::StrictlyGreater
                                                       : gplus::ComparisonPolicy::MeetsMinimum;
    }
}

std::optional<gplus::ControlMode> mode_filter(const Options& opt) {
    if (opt.mode.empty()) return std::nullopt;
    if (opt.mode == "autonomous") return gplus::ControlMode::Autonomous;
    return gplus::ControlMode::AnalogousTeleop;
}

std::string mode_name(std::optional<gplus::ControlMode> mode) {
    if (!mode) return "all";
    return *mode == gplus::ControlMode::Autonomous ? "autonomous" : "teleop";
}

std::optional<gplus::Date> as_of_date(const Options& opt) {
    if (opt.as_of.empty()) return std::nullopt;
    try {
        return gplus::Date::parse(opt.as_of);
    } catch (const gplus::BadDate& e) {
        throw UsageError{"--as-of: " + std::string(e.what())};
    }
}

/// Lazily loaded inputs shared by the subcommands.
class Session {
public:
    explicit Session(Options& opt) : opt_(opt) {
        if (!opt_.config_file.empty()) apply_config_file(config_, opt_.config_file);
        apply_flag_overrides(config_, opt_);
    }

    const gplus::Dataset& dataset() {
        if (!dataset_) {
            if (opt_.data_dir.empty()) {
                if (const char* env = std::getenv("GPLUS_DATA_DIR")) opt_.data_dir = env;
            }
            if (opt_.data_dir.empty()) {
                throw UsageError{"--data is required (or set GPLUS_DATA_DIR)"};
            }
            dataset_.emplace(
                gplus::load_dataset(gplus::DatasetPaths::in_dir(opt_.data_dir), config_));
            if (config_.norm_mode == gplus::NormMode::DerivedFromOccupations) {
                std::vector<gplus::Fingerprint> fps;
                fps.reserve(dataset_->occupations().size());
                for (const auto& [soc, occ] : dataset_->occupations()) {
                    fps.push_back(occ.fingerprint);
                }
                config_.norm_constant = gplus::derive_norm_constant(fps);
            }
        }
        return *dataset_;
    }

    const std::vector<gplus::SubtaskRecord>& records() {
        if (!records_loaded_) {
            if (opt_.ledger.empty()) throw UsageError{"--ledger is required"};
            records_ = gplus::load_subtask_ledger(opt_.ledger, dataset());
            records_loaded_ = true;
        }
        return records_;
    }

    const gplus::DwaBoundSet& dwa_bounds() {
        if (!dwa_bounds_) dwa_bounds_ = gplus::derive_dwa_bounds(dataset());
        return *dwa_bounds_;
    }

    const gplus::TaskBoundSet& task_bounds() {
        if (!task_bounds_) task_bounds_ = gplus::derive_task_bounds(dataset(), dwa_bounds());
        return *task_bounds_;
    }

    /// Valid once dataset() has resolved any derived normalization.
    const gplus::GPlusConfig& config() const { return config_; }

private:
    Options& opt_;
    gplus::GPlusConfig config_;
    std::optional<gplus::Dataset> dataset_;
    std::optional<gplus::DwaBoundSet> dwa_bounds_;
    std::optional<gplus::TaskBoundSet> task_bounds_;
    std::vector<gplus::SubtaskRecord> records_;
    bool records_loaded_ = false;
};

ordered_json levels_json(const gplus::Fingerprint& fp) {
    ordered_json arr = ordered_json::array();
    for (double v : fp.levels()) arr.push_back(v);
    return arr;
}

std::string levels_packed(const gplus::Fingerprint& fp) {
    std::string out;
    for (std::size_t d = 0; d < fp.dimension(); ++d) {
        if (d != 0) out += ';';
        out += gplus::number_text(fp[d]);
    }
    return out;
}

struct Subject {
    gplus::Fingerprint fp;
    ordered_json describe;
};

/// Work fingerprint source: one occupation, a merged occupation set, or the
/// evaluated subtask ledger.
Subject resolve_subject(Session& session, const Options& opt) {
    int sources = 0;
    if (!opt.occupation.empty()) ++sources;
    if (!opt.occupations.empty()) ++sources;
    if (!opt.ledger.empty()) ++sources;
    if (sources == 0) {
        throw UsageError{"one of --occupation, --occupations, --ledger is required"};
    }
    if (sources > 1) {
        throw UsageError{"choose exactly one of --occupation, --occupations, --ledger"};
    }

    if (!opt.occupation.empty()) {
        const auto& occupations = session.dataset().occupations();
        auto it = occupations.find(opt.occupation);
        if (it == occupations.end()) {
            throw gplus::IntegrityError("unknown soc code " + opt.occupation);
        }
        return {it->second.fingerprint,
                {{"kind", "occupation"},
                 {"soc_code", it->second.soc_code},
                 {"title", it->second.title}}};
    }
    if (!opt.occupations.empty()) {
        std::vector<gplus::Fingerprint> fps;
        ordered_json codes = ordered_json::array();
        for (const auto& soc : opt.occupations) {
            const auto& occupations = session.dataset().occupations();
            auto it = occupations.find(soc);
            if (it == occupations.end()) {
                throw gplus::IntegrityError("unknown soc code " + soc);
            }
            fps.push_back(it->second.fingerprint);
            codes.push_back(soc);
        }
        return {gplus::merge(fps), {{"kind", "merged_occupations"}, {"soc_codes", codes}}};
    }

    const auto mode = mode_filter(opt);
    const auto as_of = as_of_date(opt);
    const auto eval = gplus::evaluate_portfolio(session.records(), mode, as_of, session.config(),
                                                session.dataset().dimension());
    ordered_json describe = {{"kind", "portfolio"},
                             {"mode", mode_name(mode)},
                             {"as_of", as_of ? ordered_json(as_of->to_string()) : nullptr},
                             {"contributing_count", eval.contributing.size()}};
    return {eval.work_fingerprint, std::move(describe)};
}

void write_report(const Options& opt, gplus::ReportBundle bundle) {
    bundle.format = opt.format == "csv" ? gplus::ReportFormat::Csv : gplus::ReportFormat::Json;
    if (!opt.no_timestamp) bundle.generated_at = gplus::timestamp_utc_now();
    const std::string text = bundle.serialize();
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw gplus::Error("WriteError", "cannot open " + opt.out + " for writing");
    out << text;
    out.flush();
    if (!out) throw gplus::Error("WriteError", "failed writing " + opt.out);
}

void require_json_format(const Options& opt, const std::string& command) {
    if (opt.format == "csv") {
        throw UsageError{"--format csv is not available for '" + command +
                         "' (only bounds, stats, timeline)"};
    }
}

int cmd_validate(Session& session, Options& opt) {
    require_json_format(opt, "validate");
    const auto& dataset = session.dataset();

    ordered_json by_level;
    for (gplus::LabelLevel level :
         {gplus::LabelLevel::TopLevel, gplus::LabelLevel::MajorDivision,
          gplus::LabelLevel::MidDivision, gplus::LabelLevel::PrimitiveLeaf,
          gplus::LabelLevel::GeneralActivity, gplus::LabelLevel::Intermediate,
          gplus::LabelLevel::Detailed}) {
        by_level[std::string(gplus::to_string(level))] = dataset.count_activities(level);
    }
    std::size_t mappings = 0;
    for (const auto& [task_id, labels] : dataset.task_to_dwa()) mappings += labels.size();

    ordered_json payload;
    payload["data_dir"] = opt.data_dir;
    payload["dimension"] = dataset.dimension();
    payload["primitives"] = {
        {"total", dataset.primitives().size()},
        {"skills", dataset.count_primitives(gplus::PrimitiveKind::Skill)},
        {"abilities", dataset.count_primitives(gplus::PrimitiveKind::Ability)},
        {"knowledge", dataset.count_primitives(gplus::PrimitiveKind::Knowledge)}};
    payload["occupations"] = dataset.occupations().size();
    payload["tasks"] = dataset.tasks().size();
    payload["activities"] = {{"total", dataset.activities().size()}, {"by_level", by_level}};
    payload["task_dwa_mappings"] = mappings;
    payload["dwa_with_contributors"] = dataset.dwa_to_occupations().size();
    if (!opt.ledger.empty()) payload["subtask_records"] = session.records().size();
    payload["warnings"] = dataset.warnings();

    gplus::ReportBundle bundle;
    bundle.kind = "validate";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_fingerprint(Session& session, Options& opt) {
    require_json_format(opt, "fingerprint");
    const Subject subject = resolve_subject(session, opt);

    ordered_json payload;
    payload["subject"] = subject.describe;
    payload["dimension"] = subject.fp.dimension();
    payload["levels"] = levels_json(subject.fp);
    payload["sum"] = subject.fp.sum();
    payload["score"] = gplus::scored_json(gplus::gplus(subject.fp, session.config()));

    gplus::ReportBundle bundle;
    bundle.kind = "fingerprint";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_gplus(Session& session, Options& opt) {
    require_json_format(opt, "gplus");
    const Subject subject = resolve_subject(session, opt);

    ordered_json payload;
    payload["subject"] = subject.describe;
    payload["sum"] = subject.fp.sum();
    payload["score"] = gplus::scored_json(gplus::gplus(subject.fp, session.config()));

    gplus::ReportBundle bundle;
    bundle.kind = "gplus";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_evaluate(Session& session, Options& opt) {
    require_json_format(opt, "evaluate");
    const auto mode = mode_filter(opt);
    const auto as_of = as_of_date(opt);
    const auto eval = gplus::evaluate_portfolio(session.records(), mode, as_of, session.config(),
                                                session.dataset().dimension());

    ordered_json payload;
    payload["mode"] = mode_name(mode);
    payload["as_of"] = as_of ? ordered_json(as_of->to_string()) : nullptr;
    payload["contributing"] = eval.contributing;
    payload["contributing_count"] = eval.contributing.size();
    payload["work_fingerprint"] = {{"levels", levels_json(eval.work_fingerprint)},
                                   {"sum", eval.work_fingerprint.sum()}};
    payload["score"] = gplus::scored_json(eval.gplus_score);

    gplus::ReportBundle bundle;
    bundle.kind = "evaluate";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    write_report(opt, std::move(bundle));
    return 0;
}

ordered_json deficits_json(const gplus::ShortfallReport& report, const gplus::Dataset& dataset) {
    ordered_json arr = ordered_json::array();
    for (const auto& deficit : report.deficits) {
        const auto& primitive = dataset.primitives()[deficit.index];
        arr.push_back({{"index", deficit.index},
                       {"element_id", primitive.element_id},
                       {"name", primitive.name},
                       {"kind", std::string(gplus::to_string(primitive.kind))},
                       {"required", deficit.required},
                       {"available", deficit.available},
                       {"deficit", deficit.deficit}});
    }
    return arr;
}

int cmd_performable(Session& session, Options& opt) {
    require_json_format(opt, "performable");
    if (opt.task_id != 0 && !opt.target_occupation.empty()) {
        throw UsageError{"choose one of --task, --target-occupation"};
    }

    const Subject work = resolve_subject(session, opt);
    const auto& dataset = session.dataset();

    ordered_json payload;
    payload["work"] = work.describe;
    payload["work_score"] = gplus::scored_json(gplus::gplus(work.fp, session.config()));

    if (opt.task_id != 0) {
        auto task = dataset.tasks().find(opt.task_id);
        if (task == dataset.tasks().end()) {
            throw gplus::IntegrityError("unknown task id " + std::to_string(opt.task_id));
        }
        const auto& bounds = session.task_bounds();
        auto bound = bounds.bounds.find(opt.task_id);
        if (bound == bounds.bounds.end()) {
            throw gplus::InsufficientData("no bound fingerprint derivable for task " +
                                          std::to_string(opt.task_id));
        }
        const auto report = gplus::performable(work.fp, bound->second, session.config());
        payload["target"] = {{"kind", "task"},
                             {"task_id", opt.task_id},
                             {"text", task->second.text},
                             {"bound_sum", bound->second.sum()}};
        payload["performable"] = report.performable;
        payload["deficits"] = deficits_json(report, dataset);
    } else if (!opt.target_occupation.empty()) {
        auto occ = dataset.occupations().find(opt.target_occupation);
        if (occ == dataset.occupations().end()) {
            throw gplus::IntegrityError("unknown soc code " + opt.target_occupation);
        }
        const auto report =
            gplus::performable(work.fp, occ->second.fingerprint, session.config());
        payload["target"] = {{"kind", "occupation"},
                             {"soc_code", occ->second.soc_code},
                             {"title", occ->second.title}};
        payload["performable"] = report.performable;
        payload["deficits"] = deficits_json(report, dataset);
    } else {
        const auto& bounds = session.task_bounds();
        const auto ids = gplus::count_performable(work.fp, bounds.bounds, session.config());
        payload["task_count"] = bounds.bounds.size();
        payload["performable_count"] = ids.size();
        payload["performable_task_ids"] = ids;
        payload["excluded_task_ids"] = bounds.excluded;
    }

    gplus::ReportBundle bundle;
    bundle.kind = "performable";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_bounds(Session& session, Options& opt) {
    const auto& dataset = session.dataset();
    const auto& dwa = session.dwa_bounds();
    const auto& task = session.task_bounds();
    const auto& config = session.config();

    ordered_json dwa_entries = ordered_json::array();
    for (const auto& [label, fp] : dwa.bounds) {
        dwa_entries.push_back({{"label", label},
                               {"title", dataset.activities().at(label).title},
                               {"sum", fp.sum()},
                               {"score", gplus::scored_json(gplus::gplus(fp, config))},
                               {"levels", levels_json(fp)}});
    }
    ordered_json task_entries = ordered_json::array();
    for (const auto& [task_id, fp] : task.bounds) {
        task_entries.push_back({{"task_id", task_id},
                                {"text", dataset.tasks().at(task_id).text},
                                {"sum", fp.sum()},
                                {"score", gplus::scored_json(gplus::gplus(fp, config))},
                                {"levels", levels_json(fp)}});
    }

    ordered_json payload;
    payload["dwa"] = {{"count", dwa.bounds.size()},
                      {"excluded", dwa.excluded},
                      {"entries", std::move(dwa_entries)}};
    payload["task"] = {{"count", task.bounds.size()},
                       {"excluded", task.excluded},
                       {"entries", std::move(task_entries)}};

    gplus::ReportBundle bundle;
    bundle.kind = "bounds";
    bundle.payload = std::move(payload);
    bundle.config_echo = config;
    if (opt.format == "csv") {
        bundle.csv_rows.push_back({"kind", "key", "name", "sum", "score", "display", "levels"});
        for (const auto& [label, fp] : dwa.bounds) {
            const double score = gplus::gplus(fp, config);
            bundle.csv_rows.push_back({"dwa", label, dataset.activities().at(label).title,
                                       gplus::number_text(fp.sum()), gplus::number_text(score),
                                       gplus::display_one_decimal(score), levels_packed(fp)});
        }
        for (const auto& [task_id, fp] : task.bounds) {
            const double score = gplus::gplus(fp, config);
            bundle.csv_rows.push_back({"task", std::to_string(task_id),
                                       dataset.tasks().at(task_id).text,
                                       gplus::number_text(fp.sum()), gplus::number_text(score),
                                       gplus::display_one_decimal(score), levels_packed(fp)});
        }
        for (const auto& label : dwa.excluded) {
            bundle.csv_rows.push_back({"dwa_excluded", label, "", "", "", "", ""});
        }
        for (const auto& task_id : task.excluded) {
            bundle.csv_rows.push_back(
                {"task_excluded", std::to_string(task_id), "", "", "", "", ""});
        }
    }
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_stats(Session& session, Options& opt) {
    const auto& dataset = session.dataset();
    const auto& config = session.config();

    gplus::DistributionStats result;
    std::string min_name;
    std::string max_name;
    if (opt.subject == "occupations") {
        std::map<std::string, gplus::Fingerprint> fps;
        for (const auto& [soc, occ] : dataset.occupations()) fps.emplace(soc, occ.fingerprint);
        result = gplus::stats(fps, config);
        min_name = dataset.occupations().at(result.min_key).title;
        max_name = dataset.occupations().at(result.max_key).title;
    } else if (opt.subject == "dwa") {
        result = gplus::stats(session.dwa_bounds().bounds, config);
        min_name = dataset.activities().at(result.min_key).title;
        max_name = dataset.activities().at(result.max_key).title;
    } else {
        result = gplus::stats(session.task_bounds().bounds, config);
        min_name = dataset.tasks().at(std::stoll(result.min_key)).text;
        max_name = dataset.tasks().at(std::stoll(result.max_key)).text;
    }

    ordered_json payload;
    payload["subject"] = opt.subject;
    payload["count"] = result.count;
    payload["mean"] = gplus::scored_json(result.mean);
    payload["stddev"] = gplus::scored_json(result.stddev);
    payload["min"] = {{"key", result.min_key},
                      {"name", min_name},
                      {"score", gplus::scored_json(result.min_score)}};
    payload["max"] = {{"key", result.max_key},
                      {"name", max_name},
                      {"score", gplus::scored_json(result.max_score)}};

    gplus::ReportBundle bundle;
    bundle.kind = "stats";
    bundle.payload = std::move(payload);
    bundle.config_echo = config;
    if (opt.format == "csv") {
        bundle.csv_rows = {
            {"metric", "value", "display"},
            {"subject", opt.subject, ""},
            {"count", std::to_string(result.count), ""},
            {"mean", gplus::number_text(result.mean), gplus::display_one_decimal(result.mean)},
            {"stddev", gplus::number_text(result.stddev),
             gplus::display_one_decimal(result.stddev)},
            {"min_key", result.min_key, ""},
            {"min_name", min_name, ""},
            {"min_score", gplus::number_text(result.min_score),
             gplus::display_one_decimal(result.min_score)},
            {"max_key", result.max_key, ""},
            {"max_name", max_name, ""},
            {"max_score", gplus::number_text(result.max_score),
             gplus::display_one_decimal(result.max_score)},
        };
    }
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_timeline(Session& session, Options& opt) {
    const auto mode = mode_filter(opt);
    const auto timeline = gplus::build_timeline(session.records(), mode,
                                                session.task_bounds().bounds, session.config(),
                                                session.dataset().dimension());

    ordered_json points = ordered_json::array();
    for (const auto& point : timeline) {
        points.push_back({{"date", point.date.to_string()},
                          {"score", gplus::scored_json(point.gplus_score)},
                          {"performable_tasks", point.performable_task_count}});
    }
    ordered_json payload;
    payload["mode"] = mode_name(mode);
    payload["points"] = std::move(points);

    gplus::ReportBundle bundle;
    bundle.kind = "timeline";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    if (opt.format == "csv") {
        bundle.csv_rows.push_back({"date", "score", "display", "performable_tasks"});
        for (const auto& point : timeline) {
            bundle.csv_rows.push_back({point.date.to_string(),
                                       gplus::number_text(point.gplus_score),
                                       gplus::display_one_decimal(point.gplus_score),
                                       std::to_string(point.performable_task_count)});
        }
    }
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_forecast(Session& session, Options& opt) {
    require_json_format(opt, "forecast");
    const auto mode = mode_filter(opt);
    const auto timeline = gplus::build_timeline(session.records(), mode, {}, session.config(),
                                                session.dataset().dimension());
    const double ceiling = gplus::gplus(
        gplus::Fingerprint::filled(session.dataset().dimension(), gplus::kMaxLevel),
        session.config());
    const double target = opt.target_set ? opt.target : ceiling;
    const auto fc = gplus::forecast(timeline, target);

    ordered_json payload;
    payload["mode"] = mode_name(mode);
    payload["points_used"] = timeline.size();
    payload["slope_per_month"] = gplus::scored_json(fc.slope);
    payload["intercept"] = gplus::scored_json(fc.intercept);
    payload["current_score"] = gplus::scored_json(fc.current_score);
    payload["saturation_target"] = gplus::scored_json(fc.saturation_target);
    payload["months_to_saturation"] =
        fc.months_to_saturation ? ordered_json(gplus::scored_json(*fc.months_to_saturation))
                                : ordered_json(nullptr);

    gplus::ReportBundle bundle;
    bundle.kind = "forecast";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    write_report(opt, std::move(bundle));
    return 0;
}

int cmd_plot(Session& session, Options& opt) {
    require_json_format(opt, "plot");
    if (opt.out.empty()) throw UsageError{"--out is required for plot"};

    std::vector<gplus::TimelineSeries> series;
    const auto& bounds = session.task_bounds().bounds;
    const auto dimension = session.dataset().dimension();
    if (!opt.mode.empty()) {
        series.push_back({opt.mode, gplus::build_timeline(session.records(), mode_filter(opt),
                                                          bounds, session.config(), dimension)});
    } else {
        series.push_back({"teleop",
                          gplus::build_timeline(session.records(),
                                                gplus::ControlMode::AnalogousTeleop, bounds,
                                                session.config(), dimension)});
        series.push_back({"autonomous",
                          gplus::build_timeline(session.records(), gplus::ControlMode::Autonomous,
                                                bounds, session.config(), dimension)});
    }
    gplus::emit_timeline_plot(series, opt.out);

    ordered_json summary = ordered_json::array();
    for (const auto& s : series) {
        summary.push_back({{"name", s.name}, {"points", s.points.size()}});
    }
    ordered_json payload;
    payload["out"] = opt.out;
    payload["series"] = std::move(summary);

    gplus::ReportBundle bundle;
    bundle.kind = "plot";
    bundle.payload = std::move(payload);
    bundle.config_echo = session.config();
    Options stdout_opt = opt;
    stdout_opt.out.clear();
    write_report(stdout_opt, std::move(bundle));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Work-fingerprint analysis and g+ scoring over occupational data"};
    app.require_subcommand(1);

    Options opt;
    auto* validate = app.add_subcommand("validate", "Load and cross-check the dataset");
    auto* fingerprint = app.add_subcommand("fingerprint", "Show a work fingerprint");
    auto* gplus_cmd = app.add_subcommand("gplus", "Score a fingerprint");
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate the subtask portfolio");
    auto* performable =
        app.add_subcommand("performable", "Check which tasks a work fingerprint can perform");
    auto* bounds = app.add_subcommand("bounds", "Derive DWA and task bound fingerprints");
    auto* stats = app.add_subcommand("stats", "Score distribution statistics");
    auto* timeline = app.add_subcommand("timeline", "Cumulative g+ timeline from the ledger");
    auto* forecast = app.add_subcommand("forecast", "Least-squares trend and saturation estimate");
    auto* plot = app.add_subcommand("plot", "Render the timeline as an SVG");

    for (CLI::App* cmd : {validate, fingerprint, gplus_cmd, evaluate, performable, bounds, stats,
                          timeline, forecast, plot}) {
        add_common_flags(cmd, opt);
    }
    for (CLI::App* cmd : {fingerprint, gplus_cmd, performable}) {
        cmd->add_option("--occupation", opt.occupation, "Subject occupation SOC code");
        cmd->add_option("--occupations", opt.occupations,
                        "Merge these occupations into one work fingerprint")
            ->delimiter(',');
    }
    performable->add_option("--task", opt.task_id, "Target task id");
    performable->add_option("--target-occupation", opt.target_occupation,
                            "Target occupation SOC code");
    stats->add_option("--subject", opt.subject, "Collection to summarize")
        ->check(CLI::IsMember({"occupations", "dwa", "tasks"}));
    forecast->add_option("--target", opt.target, "Saturation target score")
        ->each([&opt](const std::string&) { opt.target_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Session session(opt);
        if (app.got_subcommand(validate)) return cmd_validate(session, opt);
        if (app.got_subcommand(fingerprint)) return cmd_fingerprint(session, opt);
        if (app.got_subcommand(gplus_cmd)) return cmd_gplus(session, opt);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(session, opt);
        if (app.got_subcommand(performable)) return cmd_performable(session, opt);
        if (app.got_subcommand(bounds)) return cmd_bounds(session, opt);
        if (app.got_subcommand(stats)) return cmd_stats(session, opt);
        if (app.got_subcommand(timeline)) return cmd_timeline(session, opt);
        if (app.got_subcommand(forecast)) return cmd_forecast(session, opt);
        if (app.got_subcommand(plot)) return cmd_plot(session, opt);
        std::cerr << "usage error: unknown subcommand\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.message << "\n";
        return 2;
    } catch (const gplus::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Error: " << e.what() << "\n";
        return 1;
    }
}
