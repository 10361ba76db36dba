#include "gplus/content_model.hpp"

#include <cctype>

#include "gplus/errors.hpp"

namespace gplus {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool is_upper_letters(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isupper(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool is_lower_letters(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::islower(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// 'I' or 'D' followed by exactly two digits.
bool is_suffix_segment(std::string_view s, char prefix) {
    return s.size() == 3 && s[0] == prefix && is_digits(s.substr(1));
}

[[noreturn]] void fail(std::string_view raw, std::string_view why) {
    throw MalformedLabel("label '" + std::string(raw) + "': " + std::string(why));
}

}  // namespace

std::string_view to_string(LabelLevel level) {
    switch (level) {
        case LabelLevel::TopLevel: return "top_level";
        case LabelLevel::MajorDivision: return "major_division";
        case LabelLevel::MidDivision: return "mid_division";
        case LabelLevel::PrimitiveLeaf: return "primitive_leaf";
        case LabelLevel::GeneralActivity: return "general_activity";
        case LabelLevel::Intermediate: return "intermediate";
        case LabelLevel::Detailed: return "detailed";
    }
    return "unknown";
}

std::string ContentModelLabel::serialize() const {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i != 0) out += '.';
        out += path[i];
    }
    return out;
}

std::optional<ContentModelLabel> ContentModelLabel::parent() const {
    if (path.size() <= 1) return std::nullopt;
    std::string raw_parent = raw.substr(0, raw.rfind('.'));
    return parse_content_model_label(raw_parent);
}

ContentModelLabel parse_content_model_label(std::string_view raw) {
    if (raw.empty()) fail(raw, "empty");
    for (char c : raw) {
        if (static_cast<unsigned char>(c) > 0x7f) fail(raw, "non-ASCII character");
    }

    std::vector<std::string> segments;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = raw.find('.', start);
        std::string_view seg =
            dot == std::string_view::npos ? raw.substr(start) : raw.substr(start, dot - start);
        if (seg.empty()) fail(raw, "empty segment");
        segments.emplace_back(seg);
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    if (segments.size() > 7) fail(raw, "too many segments");

    // Base segments alternate digits and letters: N.A.N.a.N
    static constexpr bool (*base_check[5])(std::string_view) = {
        is_digits, is_upper_letters, is_digits, is_lower_letters, is_digits};
    const std::size_t base_count = std::min<std::size_t>(segments.size(), 5);
    for (std::size_t i = 0; i < base_count; ++i) {
        if (!base_check[i](segments[i])) {
            fail(raw, "segment " + std::to_string(i + 1) + " ('" + segments[i] +
                          "') has the wrong shape");
        }
    }
    if (segments.size() >= 6 && !is_suffix_segment(segments[5], 'I')) {
        fail(raw, "segment 6 ('" + segments[5] + "') must be 'I' plus two digits");
    }
    if (segments.size() == 7 && !is_suffix_segment(segments[6], 'D')) {
        fail(raw, "segment 7 ('" + segments[6] + "') must be 'D' plus two digits");
    }

    static constexpr LabelLevel level_by_depth[7] = {
        LabelLevel::TopLevel,      LabelLevel::MajorDivision, LabelLevel::MidDivision,
        LabelLevel::PrimitiveLeaf, LabelLevel::GeneralActivity, LabelLevel::Intermediate,
        LabelLevel::Detailed};

    ContentModelLabel label;
    label.raw = std::string(raw);
    label.path = std::move(segments);
    label.level = level_by_depth[label.path.size() - 1];
    return label;
}

}  // namespace gplus
