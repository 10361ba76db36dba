#include "gplus/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "gplus/errors.hpp"

namespace gplus {

namespace {

void min_into(std::vector<double>& acc, const Fingerprint& fp) {
    const auto levels = fp.levels();
    for (std::size_t d = 0; d < acc.size(); ++d) acc[d] = std::min(acc[d], levels[d]);
}

template <typename Key>
DistributionStats stats_impl(const std::map<Key, Fingerprint>& fps, const GPlusConfig& config) {
    if (fps.empty()) throw EmptyInput("stats requires a nonempty fingerprint collection");
    config.validate();

    const auto key_string = [](const Key& key) {
        if constexpr (std::is_same_v<Key, std::string>) {
            return key;
        } else {
            return std::to_string(key);
        }
    };

    DistributionStats out;
    out.count = fps.size();
    std::vector<double> scores;
    scores.reserve(fps.size());
    bool first = true;
    for (const auto& [key, fp] : fps) {
        const double score = gplus(fp, config);
        scores.push_back(score);
        if (first || score < out.min_score) {
            out.min_score = score;
            out.min_key = key_string(key);
        }
        if (first || score > out.max_score) {
            out.max_score = score;
            out.max_key = key_string(key);
        }
        first = false;
    }
    double total = 0.0;
    for (double s : scores) total += s;
    out.mean = total / static_cast<double>(scores.size());
    double ssd = 0.0;
    for (double s : scores) ssd += (s - out.mean) * (s - out.mean);
    out.stddev = std::sqrt(ssd / static_cast<double>(scores.size()));
    return out;
}

}  // namespace

DwaBoundSet derive_dwa_bounds(const Dataset& dataset) {
    DwaBoundSet out;
    const auto& reverse = dataset.dwa_to_occupations();
    for (const auto& [raw, activity] : dataset.activities()) {
        if (activity.level != LabelLevel::Detailed) continue;
        auto contrib = reverse.find(raw);
        if (contrib == reverse.end() || contrib->second.empty()) {
            out.excluded.push_back(raw);
            continue;
        }
        std::vector<double> acc(dataset.dimension(), kMaxLevel);
        for (const auto& soc : contrib->second) {
            min_into(acc, dataset.occupations().at(soc).fingerprint);
        }
        out.bounds.emplace(raw, Fingerprint(std::move(acc)));
    }
    return out;
}

TaskBoundSet derive_task_bounds(const Dataset& dataset, const DwaBoundSet& dwa_bounds) {
    TaskBoundSet out;
    for (const auto& [task_id, task] : dataset.tasks()) {
        std::vector<double> acc;
        for (const auto& label : task.dwa_labels) {
            auto bound = dwa_bounds.bounds.find(label.raw);
            if (bound == dwa_bounds.bounds.end()) continue;
            if (acc.empty()) {
                acc.assign(dataset.dimension(), kMaxLevel);
            }
            min_into(acc, bound->second);
        }
        if (acc.empty()) {
            out.excluded.push_back(task_id);
        } else {
            out.bounds.emplace(task_id, Fingerprint(std::move(acc)));
        }
    }
    return out;
}

DistributionStats stats(const std::map<std::string, Fingerprint>& fps, const GPlusConfig& config) {
    return stats_impl(fps, config);
}

DistributionStats stats(const std::map<std::int64_t, Fingerprint>& fps, const GPlusConfig& config) {
    return stats_impl(fps, config);
}

}  // namespace gplus
