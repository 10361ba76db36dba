#include "gplus/fingerprint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gplus/errors.hpp"

namespace gplus {

Fingerprint::Fingerprint(std::vector<double> levels) : levels_(std::move(levels)) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const double v = levels_[i];
        if (!std::isfinite(v) || v < 0.0 || v > kMaxLevel) {
            throw std::invalid_argument("fingerprint level at index " + std::to_string(i) +
                                        " out of range [0, 7]: " + std::to_string(v));
        }
    }
}

Fingerprint Fingerprint::zeros(std::size_t dimension) {
    return Fingerprint(std::vector<double>(dimension, 0.0));
}

Fingerprint Fingerprint::filled(std::size_t dimension, double level) {
    return Fingerprint(std::vector<double>(dimension, level));
}

double Fingerprint::sum() const noexcept {
    double total = 0.0;
    for (double v : levels_) total += v;
    return total;
}

std::string_view to_string(NormMode mode) {
    return mode == NormMode::Pinned ? "pinned" : "derived";
}

std::string_view to_string(ComparisonPolicy policy) {
    return policy == ComparisonPolicy::MeetsMinimum ? "meets" : "strict";
}

void GPlusConfig::validate() const {
    if (!(norm_constant > 0.0) || !std::isfinite(norm_constant)) {
        throw std::invalid_argument("norm_constant must be positive");
    }
    if (epsilon < 0.0 || !std::isfinite(epsilon)) {
        throw std::invalid_argument("epsilon must be nonnegative");
    }
}

Fingerprint merge(std::span<const Fingerprint> fps) {
    if (fps.empty()) throw EmptyInput("merge requires at least one fingerprint");
    const std::size_t dim = fps.front().dimension();
    std::vector<double> out(fps.front().levels().begin(), fps.front().levels().end());
    for (std::size_t k = 1; k < fps.size(); ++k) {
        if (fps[k].dimension() != dim) {
            throw DimensionMismatch("merge input " + std::to_string(k) + " has dimension " +
                                    std::to_string(fps[k].dimension()) + ", expected " +
                                    std::to_string(dim));
        }
        const auto levels = fps[k].levels();
        for (std::size_t d = 0; d < dim; ++d) out[d] = std::max(out[d], levels[d]);
    }
    return Fingerprint(std::move(out));
}

Fingerprint merge(const Fingerprint& a, const Fingerprint& b) {
    const Fingerprint pair[2] = {a, b};
    return merge(std::span<const Fingerprint>(pair, 2));
}

double gplus(const Fingerprint& fp, const GPlusConfig& config) {
    config.validate();
    return fp.sum() * 100.0 / config.norm_constant;
}

double derive_norm_constant(std::span<const Fingerprint> occupation_fps) {
    if (occupation_fps.empty()) {
        throw EmptyInput("norm constant derivation requires at least one occupation fingerprint");
    }
    double total = 0.0;
    for (const auto& fp : occupation_fps) total += fp.sum();
    return total / static_cast<double>(occupation_fps.size());
}

ShortfallReport performable(const Fingerprint& work_fp, const Fingerprint& subtask_fp,
                            const GPlusConfig& config) {
    config.validate();
    if (work_fp.dimension() != subtask_fp.dimension()) {
        throw DimensionMismatch("work fingerprint has dimension " +
                                std::to_string(work_fp.dimension()) + ", subtask has " +
                                std::to_string(subtask_fp.dimension()));
    }
    ShortfallReport report;
    for (std::size_t d = 0; d < work_fp.dimension(); ++d) {
        const double required = subtask_fp[d];
        const double available = work_fp[d];
        const bool satisfied = config.comparison == ComparisonPolicy::MeetsMinimum
                                   ? required <= available + config.epsilon
                                   : required < available - config.epsilon;
        if (!satisfied) {
            report.deficits.push_back({d, required, available, required - available});
        }
    }
    report.performable = report.deficits.empty();
    return report;
}

}  // namespace gplus
