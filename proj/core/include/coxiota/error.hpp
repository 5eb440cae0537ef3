#ifndef COXIOTA_ERROR_HPP
#define COXIOTA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace coxiota {

enum class errc {
  malformed_matrix,
  non_crystallographic,
  backend_mismatch,
  infinite_group,
  infinite_parabolic,
  budget_exceeded,
  subword_budget,
  chain_budget,
  not_twisted_involution,
  truncation_too_small,
  infinite_dihedral_pair,
  theta_not_conjugation_by_w0,
  inconsistent_ranks,
  not_comparable,
  not_a_complex,
  hypothesis_failed,
  no_partition,
  k_budget,
  infinite_fix,
  unsupported_infinite_pair,
  bad_input,
};

/// Error type thrown by all coxiota operations. `code()` identifies the
/// failed precondition or exhausted budget; `what()` carries context.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace coxiota

#endif  // COXIOTA_ERROR_HPP
