#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scpa {

// Every failure raised by the library carries one of these codes so callers
// (the CLI in particular) can map them onto exit statuses without parsing text.
enum class Errc {
  malformed_header,
  unsupported_maxval,
  truncated_data,
  malformed_data,
  io_failure,
  invalid_argument,
  unsupported_input,
  dimension_mismatch,
  unknown_matrix,
  malformed_table,
  not_initialized,
  worker_failure,
  results_consumed,
  run_incomplete,
  empty_report,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  // For file parsing errors: the byte offset at which parsing stopped.
  Error(Errc code, const std::string& what, std::size_t offset);

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  Errc code_;
  std::optional<std::size_t> offset_;
};

}  // namespace scpa
