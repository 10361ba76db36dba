#include "gplus/dataset.hpp"

namespace gplus {

std::string_view to_string(PrimitiveKind kind) {
    switch (kind) {
        case PrimitiveKind::Skill: return "Skill";
        case PrimitiveKind::Ability: return "Ability";
        case PrimitiveKind::Knowledge: return "Knowledge";
    }
    return "unknown";
}

std::string_view to_string(TaskCategory category) {
    return category == TaskCategory::Core ? "Core" : "Supplemental";
}

std::string_view to_string(ControlMode mode) {
    return mode == ControlMode::AnalogousTeleop ? "AnalogousTeleop" : "Autonomous";
}

std::optional<std::size_t> Dataset::primitive_index(std::string_view element_id) const {
    for (const auto& p : data_.primitives) {
        if (p.element_id == element_id) return p.index;
    }
    return std::nullopt;
}

std::size_t Dataset::count_primitives(PrimitiveKind kind) const {
    std::size_t n = 0;
    for (const auto& p : data_.primitives) {
        if (p.kind == kind) ++n;
    }
    return n;
}

std::size_t Dataset::count_activities(LabelLevel level) const {
    std::size_t n = 0;
    for (const auto& [raw, activity] : data_.activities) {
        if (activity.level == level) ++n;
    }
    return n;
}

}  // namespace gplus
