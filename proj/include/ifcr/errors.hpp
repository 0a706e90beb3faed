#pragma once

#include <stdexcept>
#include <string>

namespace ifcr {

/// Error categories raised by validation and evaluation routines.
/// `input` class errors indicate malformed user data; everything else
/// signals an internal invariant violation.
enum class errc {
    negative_magnitude,
    nonfinite,
    not_normalized,
    negative_probability,
    shape_mismatch,
    missing_field,
    bad_value,
    empty_family,
    empty_grid,
    negative_snr,
    invalid_beta,
    unknown_expression,
    optimizer_failure,
    not_symmetric,
    variable_not_present,
    overlapping_sets,
    bad_sequence_shape,
    unknown_kind,
    factorization_violated,
};

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

    /// True when the error stems from malformed input rather than an internal bug.
    bool is_input_error() const noexcept {
        switch (code_) {
            case errc::unknown_expression:
            case errc::optimizer_failure:
                return false;
            default:
                return true;
        }
    }

  private:
    errc code_;
};

const char* errc_name(errc code) noexcept;

[[noreturn]] inline void raise(errc code, const std::string& msg) {
    throw Error(code, std::string(errc_name(code)) + ": " + msg);
}

}  // namespace ifcr
