#pragma once

#include <stdexcept>
#include <string>

namespace parallax {

enum class error_kind {
    input,        // malformed arguments, files, or configuration
    precondition, // caller violated a documented precondition
    structural,   // internal structure broken (unsorted complex, bad correspondence)
    oracle,       // membership oracle failed (protocol violation, dead process)
    unsupported,  // operation undefined in this setting (e.g. disks in dim 1)
};

class error : public std::runtime_error {
public:
    error(error_kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    error_kind kind() const { return kind_; }

private:
    error_kind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) { throw error(error_kind::input, msg); }
[[noreturn]] inline void throw_precondition(const std::string& msg) { throw error(error_kind::precondition, msg); }
[[noreturn]] inline void throw_structural(const std::string& msg) { throw error(error_kind::structural, msg); }
[[noreturn]] inline void throw_oracle(const std::string& msg) { throw error(error_kind::oracle, msg); }
[[noreturn]] inline void throw_unsupported(const std::string& msg) { throw error(error_kind::unsupported, msg); }

} // namespace parallax
