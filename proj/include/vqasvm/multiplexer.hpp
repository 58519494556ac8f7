#pragma once

#include <vector>

#include "vqasvm/circuit.hpp"
#include "vqasvm/gates.hpp"

namespace vqasvm {

/// Solves A theta = t for the Gray-code rotation cascade, where
/// A[i][k] = (-1)^(b(i).g(k)) and g is the binary-reflected Gray code.
/// Equivalent to a scaled Walsh-Hadamard transform followed by the Gray
/// permutation. angles.size() must be a power of two.
std::vector<double> multiplexed_rotation_angles(const std::vector<double>& angles);

/// Appends a uniformly controlled rotation: on control basis state |i> the
/// target receives R_axis(angles[i]). controls[0] is the least significant
/// bit of i. Emits exactly M = 2^m rotations, M-1 CZ entanglers along the
/// Gray-code walk, and at most one DIAGONAL gate that absorbs the trailing
/// entangler (and, for axis Z, the per-branch residual phases). The overall
/// action equals the block-diagonal multiplexer exactly.
void append_multiplexed_rotation(Circuit& circuit, const std::vector<double>& angles, Axis axis,
                                 const std::vector<int>& controls, int target);

/// Standalone circuit over max(controls, target) + 1 qubits.
Circuit uniformly_controlled_rotation(const std::vector<double>& angles, Axis axis,
                                      const std::vector<int>& controls, int target);

} // namespace vqasvm
