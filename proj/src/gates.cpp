#include "vqasvm/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace vqasvm {

namespace {

void require_finite(double angle) {
    if (!std::isfinite(angle)) throw std::invalid_argument("rotation angle must be finite");
}

} // namespace

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::SX: return "SX";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CSWAP: return "CSWAP";
        case GateKind::DIAGONAL: return "DIAGONAL";
    }
    return "?";
}

Gate Gate::rx(double angle, int target) {
    require_finite(angle);
    return Gate{GateKind::RX, angle, {target}, {}};
}

Gate Gate::ry(double angle, int target) {
    require_finite(angle);
    return Gate{GateKind::RY, angle, {target}, {}};
}

Gate Gate::rz(double angle, int target) {
    require_finite(angle);
    return Gate{GateKind::RZ, angle, {target}, {}};
}

Gate Gate::rotation(Axis axis, double angle, int target) {
    switch (axis) {
        case Axis::X: return rx(angle, target);
        case Axis::Y: return ry(angle, target);
        case Axis::Z: return rz(angle, target);
    }
    throw std::invalid_argument("unknown axis");
}

Gate Gate::h(int target) { return Gate{GateKind::H, 0.0, {target}, {}}; }
Gate Gate::x(int target) { return Gate{GateKind::X, 0.0, {target}, {}}; }
Gate Gate::sx(int target) { return Gate{GateKind::SX, 0.0, {target}, {}}; }
Gate Gate::cnot(int control, int target) { return Gate{GateKind::CNOT, 0.0, {control, target}, {}}; }
Gate Gate::cz(int a, int b) { return Gate{GateKind::CZ, 0.0, {a, b}, {}}; }
Gate Gate::swap(int a, int b) { return Gate{GateKind::SWAP, 0.0, {a, b}, {}}; }

Gate Gate::cswap(int control, int target_a, int target_b) {
    return Gate{GateKind::CSWAP, 0.0, {control, target_a, target_b}, {}};
}

Gate Gate::diagonal(std::vector<int> qubits, std::vector<cdouble> entries) {
    if (qubits.empty()) throw std::invalid_argument("DIAGONAL needs at least one qubit");
    if (entries.size() != (std::size_t{1} << qubits.size()))
        throw std::invalid_argument("DIAGONAL entry count must be 2^(#qubits)");
    for (const auto& e : entries) {
        if (std::abs(std::abs(e) - 1.0) > 1e-12)
            throw std::invalid_argument("DIAGONAL entries must have unit modulus");
    }
    return Gate{GateKind::DIAGONAL, 0.0, std::move(qubits), std::move(entries)};
}

} // namespace vqasvm
