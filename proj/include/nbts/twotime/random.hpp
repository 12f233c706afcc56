#pragma once

#include <random>

#include "nbts/twotime/analysis.hpp"

namespace nbts::twotime::random {

using Rng = std::mt19937_64;

CMatrix ginibre(long rows, long cols, Rng& rng);
CMatrix density(long d, Rng& rng);  // trace one
CMatrix unitary(long d, Rng& rng);  // Haar via QR with phase fix
/// Kraus operators of a random channel din -> dout with an environment of
/// dimension env.
std::vector<CMatrix> kraus(long din, long dout, long env, Rng& rng);

LabeledTensor channel(const std::vector<Wire>& in, const std::vector<Wire>& out, long env, Rng& rng);

/// Random instrument in -> out with the given outcome count.
Measurement instrument(const Wire& in, const Wire& out, std::size_t outcomes, long env, Rng& rng);

/// Two-time vector whose ket-versus-bra operator is m (kets of `raised` then
/// `lowered` wires, row-major).
LabeledTensor from_operator(const CMatrix& m, const std::vector<Wire>& raised, const std::vector<Wire>& lowered);

enum class SingleKind { Product, ProductEffect, Generic };

/// Single-party eta on A1, A3: rho ⊗ c𝕀 (Product), rho ⊗ E (ProductEffect), or
/// a random positive operator (Generic).
LabeledTensor single_party_state(SingleKind kind, std::size_t d, Rng& rng);

enum class LinearKind { Parallel, AThenB, BThenA, Mixture };

/// Normalized linear two-party state on A1, A3, B1, B3 built from ordered
/// channel circuits with a dimension-2 memory wire.
LabeledTensor linear_state(LinearKind kind, std::size_t d, Rng& rng);

/// Random instrument (d outcomes) followed by m random channels.
PartyStrategy strategy(char party, std::size_t d, std::size_t outcomes, std::size_t inputs, Rng& rng);

}  // namespace nbts::twotime::random
