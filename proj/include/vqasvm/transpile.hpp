#pragma once

#include <map>

#include "vqasvm/circuit.hpp"

namespace vqasvm {

/// Rewrites H, X, SX, CZ, SWAP, CSWAP and DIAGONAL into {RX, RY, RZ, CNOT}
/// using fixed identities; the result equals the input up to global phase.
Circuit decompose_to_basis(const Circuit& circuit);

/// Longest chain under per-qubit scheduling: a gate occupies all its qubits
/// for one layer. With decompose_to_basis the depth is counted over the
/// {RX, RY, RZ, CNOT} rewrite.
int circuit_depth(const Circuit& circuit, bool decompose_to_basis_first = false);

std::map<GateKind, std::size_t> gate_counts(const Circuit& circuit);

} // namespace vqasvm
