#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gplus {

/// Structural depth of a content-model label. Depth is the number of
/// dot-separated segments: 4 -> TopLevel, 4.A -> MajorDivision,
/// 4.A.1 -> MidDivision, 2.A.1.a -> PrimitiveLeaf, 4.A.1.a.1 -> GeneralActivity,
/// 4.A.1.a.1.I14 -> Intermediate, 4.A.1.a.1.I14.D02 -> Detailed.
enum class LabelLevel {
    TopLevel,
    MajorDivision,
    MidDivision,
    PrimitiveLeaf,
    GeneralActivity,
    Intermediate,
    Detailed,
};

std::string_view to_string(LabelLevel level);

/// A parsed hierarchical identifier in the O*NET content-model convention.
/// Joining `path` with '.' reproduces `raw` exactly.
struct ContentModelLabel {
    std::string raw;
    std::vector<std::string> path;
    LabelLevel level = LabelLevel::TopLevel;

    std::string serialize() const;

    /// Label with the last segment dropped; empty for TopLevel labels.
    std::optional<ContentModelLabel> parent() const;

    bool operator==(const ContentModelLabel& other) const { return raw == other.raw; }
    bool operator<(const ContentModelLabel& other) const { return raw < other.raw; }
};

/// Parses a label such as "4.A.1.a.1.I14.D02". Throws MalformedLabel on
/// bad segment shape, wrong segment order, or an I/D segment whose number
/// is not exactly two digits.
ContentModelLabel parse_content_model_label(std::string_view raw);

}  // namespace gplus
