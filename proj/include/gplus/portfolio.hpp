#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gplus/dataset.hpp"
#include "gplus/dates.hpp"
#include "gplus/fingerprint.hpp"

namespace gplus {

/// Result of evaluating a subtask portfolio: the inferred work fingerprint
/// (componentwise max over contributing records) and its g+ score.
struct PortfolioEvaluation {
    Fingerprint work_fingerprint;
    double gplus_score = 0.0;
    std::vector<std::string> contributing;  // subtask ids, in record order
    std::optional<Date> as_of;
    std::optional<ControlMode> mode;  // filter applied, if any
};

struct TimelinePoint {
    Date date;
    double gplus_score = 0.0;
    std::size_t performable_task_count = 0;
};

struct TrendForecast {
    double slope = 0.0;  // g+ per month
    double intercept = 0.0;
    double current_score = 0.0;
    double saturation_target = 0.0;
    std::optional<double> months_to_saturation;  // absent when slope <= 0
};

/// Does a record count toward the given mode? Autonomous success implies
/// teleoperated capability, so a teleop filter admits both modes; an
/// autonomous filter admits only autonomous records. No filter admits all.
bool mode_matches(ControlMode record_mode, std::optional<ControlMode> filter);

/// Merges the fingerprints of succeeded, mode-matching records dated at or
/// before `as_of` (all dates when absent). An empty selection yields the
/// all-zeros fingerprint and score 0.
PortfolioEvaluation evaluate_portfolio(std::span<const SubtaskRecord> records,
                                       std::optional<ControlMode> mode,
                                       std::optional<Date> as_of, const GPlusConfig& config,
                                       std::size_t dimension);

/// Task ids whose bound fingerprint is performable from work_fp, ascending.
std::vector<std::int64_t> count_performable(const Fingerprint& work_fp,
                                            const std::map<std::int64_t, Fingerprint>& task_bounds,
                                            const GPlusConfig& config);

/// One point per distinct first_success_date among matching succeeded
/// records, evaluated cumulatively; scores are nondecreasing by
/// construction.
std::vector<TimelinePoint> build_timeline(std::span<const SubtaskRecord> records,
                                          std::optional<ControlMode> mode,
                                          const std::map<std::int64_t, Fingerprint>& task_bounds,
                                          const GPlusConfig& config, std::size_t dimension);

inline constexpr double kDaysPerMonth = 30.4375;  // mean Gregorian month

/// Ordinary least-squares fit of score against months since the first
/// point. Throws InsufficientData with fewer than two distinct dates.
TrendForecast forecast(std::span<const TimelinePoint> timeline, double target);

}  // namespace gplus
