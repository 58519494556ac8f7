#pragma once

#include <complex>
#include <string>
#include <vector>

namespace vqasvm {

using cdouble = std::complex<double>;

enum class GateKind { RX, RY, RZ, H, X, SX, CNOT, CZ, SWAP, CSWAP, DIAGONAL };

enum class Axis { X, Y, Z };

std::string to_string(GateKind kind);

/// A gate instance bound to concrete qubits. The meaning of `qubits` depends
/// on the kind: single-qubit kinds take one target; CNOT is {control, target};
/// CZ and SWAP are symmetric pairs; CSWAP is {control, target, target};
/// DIAGONAL applies `diag_entries[k]` where bit j of k is read from qubits[j]
/// (qubits[0] is the least significant bit of the local index).
struct Gate {
    GateKind kind;
    double parameter = 0.0;
    std::vector<int> qubits;
    std::vector<cdouble> diag_entries;

    static Gate rx(double angle, int target);
    static Gate ry(double angle, int target);
    static Gate rz(double angle, int target);
    static Gate rotation(Axis axis, double angle, int target);
    static Gate h(int target);
    static Gate x(int target);
    static Gate sx(int target);
    static Gate cnot(int control, int target);
    static Gate cz(int a, int b);
    static Gate swap(int a, int b);
    static Gate cswap(int control, int target_a, int target_b);
    static Gate diagonal(std::vector<int> qubits, std::vector<cdouble> entries);

    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
    }
};

} // namespace vqasvm
