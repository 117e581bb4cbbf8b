#pragma once

#include <stdexcept>
#include <string>

namespace sbpm {

/// Error type thrown by every operation in this library on contract
/// violations (bad arguments, malformed input files, schema mismatches).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace sbpm
