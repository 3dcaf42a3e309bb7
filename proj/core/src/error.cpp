#include "repagg/error.hpp"

namespace repagg {

ParseError::ParseError(std::size_t line, std::string text, const std::string& what)
    : DataError("line " + std::to_string(line) + ": " + what + ": '" + text + "'"),
      line_(line),
      text_(std::move(text)) {}

}  // namespace repagg
