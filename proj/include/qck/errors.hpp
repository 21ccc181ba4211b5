#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qck {

/// Byte offsets [begin, end) into an input text.
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceSpan span)
        : std::runtime_error(message + " at " + std::to_string(span.begin) + ".." + std::to_string(span.end)),
          span_(span) {}

    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

} // namespace qck
