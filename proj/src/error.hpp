#pragma once

#include <stdexcept>
#include <string>

namespace dmimo {

// Error categories, mirrored one-to-one by the C API status codes.
enum class ErrorCode {
    invalid_argument,  // malformed input: bad key, bad count, null-ish parameter
    domain,            // parameter outside the supported mathematical domain
    singular,          // geometric or algebraic singularity (user on the ring, degenerate Gram)
    numeric,           // numerical failure: quadrature stall, resampling cap reached
    io,                // file read/write failure
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

} // namespace dmimo
