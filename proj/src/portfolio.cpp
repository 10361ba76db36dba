#include "gplus/portfolio.hpp"

#include <algorithm>

#include "gplus/errors.hpp"

namespace gplus {

bool mode_matches(ControlMode record_mode, std::optional<ControlMode> filter) {
    if (!filter) return true;
    if (*filter == ControlMode::AnalogousTeleop) return true;
    return record_mode == ControlMode::Autonomous;
}

PortfolioEvaluation evaluate_portfolio(std::span<const SubtaskRecord> records,
                                       std::optional<ControlMode> mode,
                                       std::optional<Date> as_of, const GPlusConfig& config,
                                       std::size_t dimension) {
    config.validate();
    PortfolioEvaluation eval;
    eval.as_of = as_of;
    eval.mode = mode;

    std::vector<double> levels(dimension, 0.0);
    for (const auto& rec : records) {
        if (!rec.succeeded) continue;
        if (!mode_matches(rec.control_mode, mode)) continue;
        if (as_of && rec.first_success_date > *as_of) continue;
        if (rec.fingerprint.dimension() != dimension) {
            throw DimensionMismatch("subtask " + rec.subtask_id + " has dimension " +
                                    std::to_string(rec.fingerprint.dimension()) + ", expected " +
                                    std::to_string(dimension));
        }
        const auto rl = rec.fingerprint.levels();
        for (std::size_t d = 0; d < dimension; ++d) levels[d] = std::max(levels[d], rl[d]);
        eval.contributing.push_back(rec.subtask_id);
    }
    eval.work_fingerprint = Fingerprint(std::move(levels));
    eval.gplus_score = gplus(eval.work_fingerprint, config);
    return eval;
}

std::vector<std::int64_t> count_performable(const Fingerprint& work_fp,
                                            const std::map<std::int64_t, Fingerprint>& task_bounds,
                                            const GPlusConfig& config) {
    std::vector<std::int64_t> performable_ids;
    for (const auto& [task_id, bound] : task_bounds) {
        if (performable(work_fp, bound, config).performable) {
            performable_ids.push_back(task_id);
        }
    }
    return performable_ids;  // ascending: map iteration order
}

std::vector<TimelinePoint> build_timeline(std::span<const SubtaskRecord> records,
                                          std::optional<ControlMode> mode,
                                          const std::map<std::int64_t, Fingerprint>& task_bounds,
                                          const GPlusConfig& config, std::size_t dimension) {
    config.validate();

    std::vector<const SubtaskRecord*> selected;
    for (const auto& rec : records) {
        if (!rec.succeeded || !mode_matches(rec.control_mode, mode)) continue;
        if (rec.fingerprint.dimension() != dimension) {
            throw DimensionMismatch("subtask " + rec.subtask_id + " has dimension " +
                                    std::to_string(rec.fingerprint.dimension()) + ", expected " +
                                    std::to_string(dimension));
        }
        selected.push_back(&rec);
    }
    std::sort(selected.begin(), selected.end(), [](const SubtaskRecord* a, const SubtaskRecord* b) {
        if (a->first_success_date != b->first_success_date) {
            return a->first_success_date < b->first_success_date;
        }
        return a->subtask_id < b->subtask_id;
    });

    std::vector<TimelinePoint> timeline;
    std::vector<double> levels(dimension, 0.0);
    // The cumulative fingerprint only grows, so a task found performable at
    // one date stays performable at every later date.
    std::vector<std::int64_t> pending;
    pending.reserve(task_bounds.size());
    for (const auto& [task_id, bound] : task_bounds) pending.push_back(task_id);
    std::size_t performable_count = 0;

    std::size_t i = 0;
    while (i < selected.size()) {
        const Date date = selected[i]->first_success_date;
        for (; i < selected.size() && selected[i]->first_success_date == date; ++i) {
            const auto rl = selected[i]->fingerprint.levels();
            for (std::size_t d = 0; d < dimension; ++d) levels[d] = std::max(levels[d], rl[d]);
        }
        const Fingerprint work(levels);
        std::vector<std::int64_t> still_pending;
        still_pending.reserve(pending.size());
        for (std::int64_t task_id : pending) {
            if (performable(work, task_bounds.at(task_id), config).performable) {
                ++performable_count;
            } else {
                still_pending.push_back(task_id);
            }
        }
        pending = std::move(still_pending);
        timeline.push_back({date, gplus(work, config), performable_count});
    }
    return timeline;
}

TrendForecast forecast(std::span<const TimelinePoint> timeline, double target) {
    std::vector<Date> distinct;
    for (const auto& point : timeline) {
        if (std::find(distinct.begin(), distinct.end(), point.date) == distinct.end()) {
            distinct.push_back(point.date);
        }
    }
    if (distinct.size() < 2) {
        throw InsufficientData("forecast requires at least 2 points with distinct dates, got " +
                               std::to_string(distinct.size()));
    }

    const Date origin = timeline.front().date;
    double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
    const double n = static_cast<double>(timeline.size());
    for (const auto& point : timeline) {
        const double x = static_cast<double>(point.date.days_since(origin)) / kDaysPerMonth;
        const double y = point.gplus_score;
        sum_x += x;
        sum_y += y;
        sum_xx += x * x;
        sum_xy += x * y;
    }
    const double denom = n * sum_xx - sum_x * sum_x;
    TrendForecast fc;
    fc.slope = (n * sum_xy - sum_x * sum_y) / denom;
    fc.intercept = (sum_y - fc.slope * sum_x) / n;
    fc.current_score = timeline.back().gplus_score;
    fc.saturation_target = target;
    if (fc.slope > 0.0) {
        fc.months_to_saturation = (target - fc.current_score) / fc.slope;
    }
    return fc;
}

}  // namespace gplus
