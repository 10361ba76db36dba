#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gplus {

// Base for all library errors. what() is always "<Kind>: <message>" so the
// CLI can surface error kinds verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string_view kind, std::string_view message)
        : std::runtime_error(std::string(kind) + ": " + std::string(message)),
          kind_(kind),
          message_(message) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string kind_;
    std::string message_;
};

#define GPLUS_DEFINE_ERROR(Name)                                    \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(std::string_view message)                     \
            : Error(#Name, message) {}                              \
    }

GPLUS_DEFINE_ERROR(MalformedLabel);
GPLUS_DEFINE_ERROR(ParseError);
GPLUS_DEFINE_ERROR(IntegrityError);
GPLUS_DEFINE_ERROR(DimensionError);
GPLUS_DEFINE_ERROR(BadDate);
GPLUS_DEFINE_ERROR(DimensionMismatch);
GPLUS_DEFINE_ERROR(EmptyInput);
GPLUS_DEFINE_ERROR(InsufficientData);

#undef GPLUS_DEFINE_ERROR

}  // namespace gplus
