#pragma once

#include <stdexcept>
#include <string>

namespace rowmosaic {

enum class ErrorCode {
    config,
    io,
    bounds,
    too_few_points,
    degenerate_geometry,
    empty_input,
    no_overlap,
    chain_break,
    assembly,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace rowmosaic
