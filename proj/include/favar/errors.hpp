#pragma once

#include <stdexcept>
#include <string>

namespace favar {

enum class ErrorKind {
  Format,      // malformed file contents
  Date,        // non-quarterly or unordered dates
  Code,        // unknown transformation code
  Domain,      // value outside a transform's domain (e.g. log of nonpositive)
  Metadata,    // missing/duplicate series metadata
  Degenerate,  // zero-variance series or volatility panel
  Dimension,   // incompatible matrix dimensions / rank constraints
  Parameter,   // invalid user-supplied parameter
  Sampler,     // MCMC failure (non-PD posterior, divergent variance)
  Identification,
  Divergence,  // non-finite training loss
  Alignment,   // mismatched forecast origins or zero-variance factor
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace favar
