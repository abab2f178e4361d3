#pragma once

#include <stdexcept>
#include <string>

namespace tsbreak {

// Library-wide error type. Precondition violations, degenerate numerics and
// I/O failures all surface as tsbreak::Error so callers (notably the ensemble
// and the CLI) can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tsbreak
