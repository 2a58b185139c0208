#pragma once

#include <stdexcept>
#include <string>

namespace k3genus {

enum class Errc {
  invalid_input,
  off_lattice,
  not_invertible,
  order_exceeded,
  singular_basis,
  invariant_violation,
  cutoff_too_large,
  identity_violation,
  holomorphy_failure,
  unsupported_dimension,
  tolerance_exceeded,
  precision_loss,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace k3genus
