#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cvqt {

// Invalid physical parameter (e.g. TPS resource at r=0, gamma outside (0,1)).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A supplied value object violates a structural invariant (e.g. non-normalized
// Schmidt coefficients).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An integrand or state functional produced a non-finite value; carries the
// offending phase-space node.
struct EvaluationError : std::runtime_error {
  EvaluationError(const std::string& what, std::complex<double> node)
      : std::runtime_error(what + " at node (" + std::to_string(node.real()) +
                           ", " + std::to_string(node.imag()) + ")"),
        node_(node) {}
  std::complex<double> node() const { return node_; }

 private:
  std::complex<double> node_;
};

// Two routes that must agree do not (e.g. a characteristic function whose
// Wigner transform has a large imaginary residue).
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fock-space truncation cannot satisfy the tail-mass requirement at the
// maximum admissible cutoff.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to converge (quadrature escalation exhausted,
// eigensolver failure, optimizer bracket failure, vanishing herald probability).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cvqt
