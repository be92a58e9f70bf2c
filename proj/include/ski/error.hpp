#pragma once

#include <stdexcept>
#include <string>

namespace ski {

// Domain errors: structurally valid input outside an operation's domain
// (inadmissible holonomy, invalid complex, violated arithmetic hypothesis...).
// CLI maps these to exit code 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse errors: malformed files, flags, literals. CLI exit code 2.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A zero/nonzero or leading-term decision on a truncated Novikov element
// could not be certified at the current inversion depth.
class floor_exhaustion : public domain_error {
public:
    explicit floor_exhaustion(const std::string& msg) : domain_error(msg) {}
};

} // namespace ski
