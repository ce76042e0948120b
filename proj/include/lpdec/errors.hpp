#pragma once

#include <stdexcept>
#include <string>

namespace lpdec {

// Typed failures so callers (and the CLI exit-code mapping) never have to
// string-match. Everything derives from lpdec::Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitianSpectrum : Error { using Error::Error; };
struct NotZeroMean : Error { using Error::Error; };
struct BisectionStall : Error { using Error::Error; };
struct ScaleOutOfRange : Error { using Error::Error; };
struct BadDirectionIndex : Error { using Error::Error; };
struct FrequencyOutOfRange : Error { using Error::Error; };
struct SpecOutOfRange : Error { using Error::Error; };
struct CutoffOutOfRange : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace lpdec
