#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hmatch {

// Error categories used across the library. The CLI maps these onto
// process exit codes (validation -> 1, I/O -> 2, self-check -> 3).
enum class Errc {
  duplicate_in_preference,
  priority_not_permutation,
  id_out_of_range,
  dimension_mismatch,
  box_too_large,
  instance_too_large,
  invalid_range,
  invalid_config,
  parse_error,
  inconsistent,
  io_error,
  self_check_failed,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_in_preference: return "DuplicateInPreference";
    case Errc::priority_not_permutation: return "PriorityNotPermutation";
    case Errc::id_out_of_range: return "IdOutOfRange";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::box_too_large: return "BoxTooLarge";
    case Errc::instance_too_large: return "InstanceTooLarge";
    case Errc::invalid_range: return "InvalidRange";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::parse_error: return "ParseError";
    case Errc::inconsistent: return "Inconsistent";
    case Errc::io_error: return "IoError";
    case Errc::self_check_failed: return "SelfCheckFailed";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, Errc code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace hmatch
