#pragma once

#include <stdexcept>
#include <string>

namespace ofq {

// Failure kinds surfaced by the library. The CLI maps validation-type codes
// to exit code 2 and convergence_failure to exit code 3.
enum class errc {
    not_square,
    not_invertible,
    relation_violated,
    decomposition_failed,
    kac_degenerate,
    index_out_of_range,
    not_admissible,
    too_large,
    length_mismatch,
    not_homogeneous,
    index_out_of_family,
    result_not_admissible,
    not_in_s,
    mixed_degrees,
    convergence_failure,
    negative_coefficient,
    bad_exponent,
    kac_context,
    invalid_argument,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace ofq
