#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gplus/dataset.hpp"
#include "gplus/fingerprint.hpp"

namespace gplus {

/// Upper-bound fingerprints keyed by DWA label or task id. Keys with no
/// contributing parents are reported in `excluded`, never silently dropped.
template <typename Key>
struct BoundSet {
    std::map<Key, Fingerprint> bounds;
    std::vector<Key> excluded;  // ascending
};

using DwaBoundSet = BoundSet<std::string>;
using TaskBoundSet = BoundSet<std::int64_t>;

struct DistributionStats {
    double mean = 0.0;
    double stddev = 0.0;  // population
    std::string min_key;
    double min_score = 0.0;
    std::string max_key;
    double max_score = 0.0;
    std::size_t count = 0;
};

/// For each detailed work activity, the componentwise min over the
/// fingerprints of every occupation owning at least one task mapped to it.
DwaBoundSet derive_dwa_bounds(const Dataset& dataset);

/// For each task, the componentwise min over its DWAs' bound fingerprints.
/// Tasks whose every DWA is excluded (or that map to no DWA) are excluded.
TaskBoundSet derive_task_bounds(const Dataset& dataset, const DwaBoundSet& dwa_bounds);

/// Per-entry g+ distribution: population mean/std and extremes with their
/// keys (ties broken by key order). Throws EmptyInput.
DistributionStats stats(const std::map<std::string, Fingerprint>& fps, const GPlusConfig& config);
DistributionStats stats(const std::map<std::int64_t, Fingerprint>& fps, const GPlusConfig& config);

}  // namespace gplus
