#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avgroups {

// Malformed text input (polynomial / group / exponent grammars). Carries the
// byte offset in the input string that made the parse fail.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_ = 0;
};

// Work refused because it exceeds a configured cap (enumeration order,
// lattice search depth, factorization range).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace avgroups
