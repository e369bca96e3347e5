#include "scpa/error.hpp"

namespace scpa {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_header: return "malformed-header";
    case Errc::unsupported_maxval: return "unsupported-maxval";
    case Errc::truncated_data: return "truncated-data";
    case Errc::malformed_data: return "malformed-data";
    case Errc::io_failure: return "io-failure";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unsupported_input: return "unsupported-input";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::unknown_matrix: return "unknown-matrix";
    case Errc::malformed_table: return "malformed-table";
    case Errc::not_initialized: return "not-initialized";
    case Errc::worker_failure: return "worker-failure";
    case Errc::results_consumed: return "results-consumed";
    case Errc::run_incomplete: return "run-incomplete";
    case Errc::empty_report: return "empty-report";
  }
  return "unknown";
}

namespace {

std::string format(Errc code, const std::string& what) {
  std::string s(to_string(code));
  s += ": ";
  s += what;
  return s;
}

}  // namespace

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(format(code, what)), code_(code) {}

Error::Error(Errc code, const std::string& what, std::size_t offset)
    : std::runtime_error(format(code, what) + " (at byte " +
                         std::to_string(offset) + ")"),
      code_(code),
      offset_(offset) {}

}  // namespace scpa
