#pragma once

#include <filesystem>
#include <vector>

#include "gplus/dataset.hpp"
#include "gplus/fingerprint.hpp"

namespace gplus {

/// Locations of the tab-separated input files. All are required.
struct DatasetPaths {
    std::filesystem::path primitives;
    std::filesystem::path occupations;
    std::filesystem::path ratings;
    std::filesystem::path tasks;
    std::filesystem::path task_dwa;
    std::filesystem::path activities;

    /// Conventional layout: <dir>/primitives.tsv, <dir>/occupations.tsv, ...
    static DatasetPaths in_dir(const std::filesystem::path& dir);
};

/// Parses, validates, and cross-links the data files into an immutable
/// Dataset. Throws ParseError (malformed row, with file and line),
/// IntegrityError (dangling reference or duplicate key), or DimensionError
/// (occupation fingerprint missing a primitive level).
Dataset load_dataset(const DatasetPaths& paths, const GPlusConfig& config);

/// Loads the subtask portfolio ledger. Records come back sorted by
/// first_success_date ascending, ties broken by subtask_id. Throws
/// ParseError, DimensionError, or BadDate.
std::vector<SubtaskRecord> load_subtask_ledger(const std::filesystem::path& path,
                                               const Dataset& dataset);

}  // namespace gplus
