#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "nbts/twotime/tensor.hpp"

namespace nbts::twotime {

using CMatrix = Eigen::MatrixXcd;

struct Wire {
  std::string name;
  std::size_t dim = 2;
};

/// Pre-selected (raised) vector with entries rho[k][b]. Multi-wire operators
/// use row-major order over the listed wires. Throws NotPositive unless rho is
/// Hermitian positive semidefinite within tol.
LabeledTensor state(const CMatrix& rho, const std::vector<Wire>& wires, double tol = kDefaultTol);

/// Post-selection (lowered) vector for the operator e; stored entries are e^T so
/// that effect . state = tr(e rho).
LabeledTensor effect(const CMatrix& e, const std::vector<Wire>& wires, double tol = kDefaultTol);

/// Sum_i |i><i| on one wire; Down is the lowered 𝕀_w, Up the raised 𝕀^w.
LabeledTensor identity_vector(const std::string& wire, std::size_t dim, Variance var = Variance::Down);

/// Channel sum_k K rho K^dagger. Kraus rows index the output tuple, columns
/// the input tuple (row-major over the wire lists).
LabeledTensor channel_from_kraus(const std::vector<CMatrix>& kraus, const std::vector<Wire>& in,
                                 const std::vector<Wire>& out);

LabeledTensor unitary_channel(const CMatrix& u, const Wire& in, const Wire& out);

LabeledTensor identity_channel(const std::string& in_wire, const std::string& out_wire, std::size_t dim);

/// (1/d_out) 𝕀^{out} ⊗ 𝕀_{in}.
LabeledTensor throw_away_replace(const std::string& in_wire, const std::string& out_wire, std::size_t in_dim,
                                 std::size_t out_dim);

struct Measurement {
  std::string name;
  std::vector<LabeledTensor> elements;  // indexed by outcome

  LabeledTensor total() const;
};

/// Projects onto the columns of `basis` (an orthonormal basis of the input).
/// With `reprepare` the system is then replaced by that computational state of
/// the output wire; without it the projected state is passed on (requires
/// equal dimensions).
Measurement basis_measurement(std::string name, const CMatrix& basis, const Wire& in, const Wire& out,
                              std::optional<std::size_t> reprepare);

Measurement computational_measurement(const Wire& in, const Wire& out, std::optional<std::size_t> reprepare);

/// Computational basis except |r>,|s> replaced by (|r> +- |s>)/sqrt2, or by
/// (|r> +- i|s>)/sqrt2 when `imaginary`.
Measurement superposition_measurement(std::size_t r, std::size_t s, bool imaginary, const Wire& in,
                                      const Wire& out, std::optional<std::size_t> reprepare);

/// Discards the input and outputs |a> with probability 1/d_out.
Measurement discard_and_randomize(const Wire& in, const Wire& out);

struct NamedUnitary {
  std::string name;
  CMatrix u;
};

/// Identity, X^k, Z^k, Fourier, and completions of |0> -> (|r> +- |s>)/sqrt2
/// and (|r> +- i|s>)/sqrt2 for every r < s.
std::vector<NamedUnitary> unitary_family(std::size_t d);

/// "I", "X", "Z", "F", "H" (d = 2), "X^k", "Z^k".
CMatrix named_unitary(const std::string& name, std::size_t d);

/// Completes the unit vector v to a unitary with first column v.
CMatrix complete_to_unitary(const Eigen::VectorXcd& v);

/// 𝕀_out . c == 𝕀_in within tol. Throws WrongWireSet unless c carries exactly
/// the channel indices of the listed wires.
bool is_trace_preserving(const LabeledTensor& c, const std::vector<Wire>& in, const std::vector<Wire>& out,
                         double tol = kDefaultTol);
bool is_trace_preserving(const LabeledTensor& c, const std::string& in_wire, const std::string& out_wire,
                         double tol = kDefaultTol);

struct PositivityReport {
  double hermiticity_error = 0;
  double min_eigenvalue = 0;
  bool positive = false;  // Hermitian and min eigenvalue >= -tol
};

/// Groups each ket index against the bra index of the same wire and opposite
/// variance and checks the resulting operator.
PositivityReport check_positivity(const LabeledTensor& t, double tol = kDefaultTol);

}  // namespace nbts::twotime
