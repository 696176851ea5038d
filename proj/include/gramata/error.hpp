#pragma once

#include <stdexcept>
#include <string>

namespace gramata {

/// Failure raised by every library operation. `code()` is a stable
/// kebab-case identifier ("zero-denominator", "element-group-mismatch", ...)
/// that the CLI and tests match on; `what()` carries a human message.
class Error : public std::runtime_error
{
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)), message_(message)
    {
    }

    const std::string& code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string code_;
    std::string message_;
};

} // namespace gramata
