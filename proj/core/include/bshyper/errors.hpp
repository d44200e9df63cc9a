#pragma once

#include <stdexcept>
#include <string>

namespace bshyper {

// Library error codes. The CLI maps these onto its exit-code contract:
// input/consistency problems exit 2, infeasible constructions exit 3.
enum class errc {
  unknown_vertex,
  mixed_surd_base,
  too_large,
  signature_mismatch,
  not_in_kalpha,
  overlap_outside_base,
  rational_input,
  no_solution,
  not_coherent_irrational,
  b_too_small,
  covering_infeasible,
  mode_mismatch,
  base_not_strong,
  epsilon_too_large,
  no_irrational_symbol,
  not_essential_pair,
  phi_member_strong,
  not_coherent,
  b_star_infeasible,
  budget_infeasible,
  incoherent_atomic_mode,
  internal_inconsistency,
  invalid_argument,
  parse_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

  // Infeasibility (as opposed to bad input) per the CLI exit-code contract.
  bool construction_infeasible() const {
    switch (code_) {
      case errc::covering_infeasible:
      case errc::epsilon_too_large:
      case errc::no_irrational_symbol:
      case errc::budget_infeasible:
      case errc::b_star_infeasible:
      case errc::no_solution:
        return true;
      default:
        return false;
    }
  }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bshyper
