#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gplus {

inline constexpr double kMaxLevel = 7.0;

/// Level vector over the dataset's work primitives. The same type carries
/// both meanings used throughout: minimum requirements (subtask fingerprint)
/// and demonstrated capability (work fingerprint).
class Fingerprint {
public:
    Fingerprint() = default;

    /// Validates every level is finite and within [0, 7].
    explicit Fingerprint(std::vector<double> levels);

    static Fingerprint zeros(std::size_t dimension);
    static Fingerprint filled(std::size_t dimension, double level);

    std::size_t dimension() const noexcept { return levels_.size(); }
    double operator[](std::size_t i) const { return levels_[i]; }
    std::span<const double> levels() const noexcept { return levels_; }

    double sum() const noexcept;

    bool operator==(const Fingerprint&) const = default;

private:
    std::vector<double> levels_;
};

enum class NormMode { Pinned, DerivedFromOccupations };
enum class ComparisonPolicy { MeetsMinimum, StrictlyGreater };

std::string_view to_string(NormMode mode);
std::string_view to_string(ComparisonPolicy policy);

/// Scoring and comparison settings shared by every operation.
struct GPlusConfig {
    double norm_constant = 267.3;
    NormMode norm_mode = NormMode::Pinned;
    ComparisonPolicy comparison = ComparisonPolicy::MeetsMinimum;
    double epsilon = 1e-9;

    /// Throws EmptyInput-style invariant errors via std::invalid_argument.
    void validate() const;
};

/// One unsatisfied dimension of a performability check.
struct Deficit {
    std::size_t index = 0;   // canonical primitive index
    double required = 0.0;   // subtask fingerprint level
    double available = 0.0;  // work fingerprint level
    double deficit = 0.0;    // required - available
};

struct ShortfallReport {
    bool performable = false;
    std::vector<Deficit> deficits;  // ascending primitive index
};

/// Componentwise max over a nonempty set of same-dimension fingerprints.
/// Throws EmptyInput / DimensionMismatch.
Fingerprint merge(std::span<const Fingerprint> fps);
Fingerprint merge(const Fingerprint& a, const Fingerprint& b);

/// (sum of levels) * 100 / norm_constant; unrounded.
double gplus(const Fingerprint& fp, const GPlusConfig& config);

/// Mean of level sums across occupation fingerprints. Throws EmptyInput.
double derive_norm_constant(std::span<const Fingerprint> occupation_fps);

/// Dominance check of a subtask fingerprint against a work fingerprint,
/// with per-dimension shortfall reporting. Throws DimensionMismatch.
ShortfallReport performable(const Fingerprint& work_fp, const Fingerprint& subtask_fp,
                            const GPlusConfig& config);

}  // namespace gplus
