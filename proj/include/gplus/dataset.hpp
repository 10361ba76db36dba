#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gplus/content_model.hpp"
#include "gplus/dates.hpp"
#include "gplus/fingerprint.hpp"

namespace gplus {

enum class PrimitiveKind { Skill, Ability, Knowledge };
enum class TaskCategory { Core, Supplemental };
enum class ControlMode { AnalogousTeleop, Autonomous };

std::string_view to_string(PrimitiveKind kind);
std::string_view to_string(TaskCategory category);
std::string_view to_string(ControlMode mode);

/// One latent worker dimension (skill, ability, or knowledge category).
/// `index` is the position in the canonical ordering: skills first, then
/// abilities, then knowledge.
struct WorkPrimitive {
    std::string element_id;
    PrimitiveKind kind = PrimitiveKind::Skill;
    std::string name;
    std::size_t index = 0;
};

struct Occupation {
    std::string soc_code;  // NN-NNNN.NN
    std::string title;
    Fingerprint fingerprint;
    std::vector<std::int64_t> task_ids;  // ascending
};

struct TaskStatement {
    std::int64_t task_id = 0;
    std::string text;
    std::string occupation_code;
    double importance = 0.0;  // [0, 100]
    TaskCategory category = TaskCategory::Core;
    std::vector<ContentModelLabel> dwa_labels;  // Detailed level, ascending by raw
};

struct WorkActivity {
    ContentModelLabel label;
    std::string title;
    LabelLevel level = LabelLevel::Detailed;
    std::optional<ContentModelLabel> parent_label;  // set when the parent is in the dataset
};

/// One subtask portfolio entry. The fingerprint holds the minimum levels
/// required to perform the subtask.
struct SubtaskRecord {
    std::string subtask_id;
    std::string description;
    Fingerprint fingerprint;
    std::string type_tag;  // TRL-1, EOY-22, LLM-1, UAT, or any other tag
    Date first_success_date;
    ControlMode control_mode = ControlMode::AnalogousTeleop;
    bool succeeded = true;
};

/// Validated, cross-linked collection of occupations, tasks, work activities,
/// and primitives. Immutable once constructed; safe for concurrent readers.
class Dataset {
public:
    struct Data {
        std::vector<WorkPrimitive> primitives;
        std::map<std::string, Occupation> occupations;
        std::map<std::int64_t, TaskStatement> tasks;
        std::map<std::string, WorkActivity> activities;
        std::map<std::int64_t, std::vector<std::string>> task_to_dwa;
        std::map<std::string, std::vector<std::string>> dwa_to_occupations;
        std::vector<std::string> warnings;
    };

    explicit Dataset(Data data) : data_(std::move(data)) {}

    std::size_t dimension() const { return data_.primitives.size(); }

    const std::vector<WorkPrimitive>& primitives() const { return data_.primitives; }
    const std::map<std::string, Occupation>& occupations() const { return data_.occupations; }
    const std::map<std::int64_t, TaskStatement>& tasks() const { return data_.tasks; }
    const std::map<std::string, WorkActivity>& activities() const { return data_.activities; }

    /// task_id -> detailed work activity labels (raw), ascending.
    const std::map<std::int64_t, std::vector<std::string>>& task_to_dwa() const {
        return data_.task_to_dwa;
    }

    /// Detailed work activity label -> soc codes of occupations owning at
    /// least one task mapped to it. Only labels with contributors appear.
    const std::map<std::string, std::vector<std::string>>& dwa_to_occupations() const {
        return data_.dwa_to_occupations;
    }

    const std::vector<std::string>& warnings() const { return data_.warnings; }

    std::optional<std::size_t> primitive_index(std::string_view element_id) const;
    std::size_t count_primitives(PrimitiveKind kind) const;
    std::size_t count_activities(LabelLevel level) const;

private:
    Data data_;
};

}  // namespace gplus
