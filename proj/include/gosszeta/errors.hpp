#pragma once

#include <stdexcept>
#include <string>

namespace gosszeta {

enum class Errc {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  DivisionByZero,
  InvertZero,
  NotOneUnit,
  PartsSumMismatch,
  CapExceeded,
  NotPrimeField,
  PadicStreamNotFinite,
  EmptyInput,
  WidthNotOne,
  HenselConditionFailed,
  NotStabilized,
  BadConfig,
};

const char* errc_name(Errc c);

/// Library error carrying a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace gosszeta
