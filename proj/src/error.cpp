#include "fuzzmap/error.hpp"

namespace fuzzmap {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

FormatError::FormatError(std::uint64_t offset, const std::string& what)
    : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

}  // namespace fuzzmap
