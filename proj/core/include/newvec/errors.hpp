#pragma once

#include <stdexcept>
#include <string>

namespace newvec {

/// Failure conditions surfaced by the library.  Every throwing operation
/// documents which of these it can raise.
enum class errc {
  invalid_argument,
  parse_error,
  division_by_zero,
  degenerate_ideal,
  not_s_integral,
  not_rational_place,
  level_out_of_range,
  unsupported_basis,
  conductor_exceeds_level,
  conductor_does_not_divide,
  missing_level,
  central_identity,
  not_s_unit,
  singular_matrix,
  not_integral_at_p,
  central_element,
  not_semisimple,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  errc code() const noexcept { return code_; }
  /// The message without the error-name prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace newvec
