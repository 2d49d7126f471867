#pragma once

#include <stdexcept>

namespace qnash {

// Shared error taxonomy. The CLI maps config/validation failures to exit
// code 2 and I/O failures to exit code 3; nothing else escapes as a code.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct domain_error : error { using error::error; };
struct out_of_range_error : error { using error::error; };
struct stepped_terminal_error : error { using error::error; };
struct no_valid_steps_error : error { using error::error; };
struct too_short_error : error { using error::error; };
struct empty_grid_error : error { using error::error; };
struct degenerate_range_error : error { using error::error; };
struct not_sorted_error : error { using error::error; };
struct zero_vector_error : error { using error::error; };
struct empty_vector_error : error { using error::error; };
struct empty_input_error : error { using error::error; };
struct config_error : error { using error::error; };
struct io_error : error { using error::error; };

}  // namespace qnash
