#include "vqasvm/multiplexer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace vqasvm {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::uint64_t gray(std::uint64_t k) { return k ^ (k >> 1); }

} // namespace

std::vector<double> multiplexed_rotation_angles(const std::vector<double>& angles) {
    const std::size_t m_size = angles.size();
    if (!is_power_of_two(m_size)) throw std::invalid_argument("angle count must be a power of two");

    // Unnormalized Walsh-Hadamard butterfly, then scale and permute into
    // Gray order: theta[k] = (1/M) sum_i (-1)^(b(i).g(k)) t[i].
    std::vector<double> wht = angles;
    for (std::size_t h = 1; h < m_size; h <<= 1) {
        for (std::size_t base = 0; base < m_size; base += h << 1) {
            for (std::size_t j = base; j < base + h; ++j) {
                const double u = wht[j];
                const double v = wht[j + h];
                wht[j] = u + v;
                wht[j + h] = u - v;
            }
        }
    }
    std::vector<double> theta(m_size);
    const double scale = 1.0 / static_cast<double>(m_size);
    for (std::size_t k = 0; k < m_size; ++k) theta[k] = scale * wht[gray(k)];
    return theta;
}

void append_multiplexed_rotation(Circuit& circuit, const std::vector<double>& angles, Axis axis,
                                 const std::vector<int>& controls, int target) {
    const std::size_t m_size = angles.size();
    if (!is_power_of_two(m_size)) throw std::invalid_argument("angle count must be a power of two");
    if (m_size != (std::size_t{1} << controls.size()))
        throw std::invalid_argument("angle count must be 2^(#controls)");

    if (controls.empty()) {
        circuit.append(Gate::rotation(axis, angles[0], target));
        return;
    }
    const std::size_t num_controls = controls.size();

    const std::vector<double> theta = multiplexed_rotation_angles(angles);
    for (std::size_t k = 0; k < m_size; ++k) {
        circuit.append(Gate::rotation(axis, theta[k], target));
        if (k + 1 < m_size) {
            // Gray-code transition bit: position of the lowest set bit of k+1.
            const int ctrl = std::countr_zero(k + 1);
            circuit.append(Gate::cz(controls[static_cast<std::size_t>(ctrl)], target));
        }
    }

    // Correction for the dropped wrap entangler. A CZ conjugation negates
    // R_x and R_y, so for those axes the cascade above already realizes the
    // Walsh sign pattern and the missing wrap CZ (control = top Gray bit) is
    // itself diagonal. R_z commutes with CZ: the cascade collapses to a
    // branch-independent R_z(t_0) plus the entanglers' own pi-phases, and the
    // diagonal supplies the per-branch residual R_z(t_i - t_0).
    std::vector<int> diag_qubits = controls;
    diag_qubits.push_back(target);
    std::vector<cdouble> entries(m_size << 1);
    const std::uint64_t top_bit = std::uint64_t{1} << (num_controls - 1);
    if (axis == Axis::Z) {
        const double t0 = std::accumulate(theta.begin(), theta.end(), 0.0);
        for (std::uint64_t i = 0; i < m_size; ++i) {
            const double residual = angles[i] - t0;
            for (std::uint64_t b = 0; b < 2; ++b) {
                cdouble e = std::polar(1.0, (b ? 0.5 : -0.5) * residual);
                if ((i & top_bit) && b) e = -e;
                entries[i | (b << num_controls)] = e;
            }
        }
    } else {
        for (std::uint64_t i = 0; i < m_size; ++i) {
            for (std::uint64_t b = 0; b < 2; ++b) {
                const bool flip = (i & top_bit) && b;
                entries[i | (b << num_controls)] = flip ? cdouble{-1.0, 0.0} : cdouble{1.0, 0.0};
            }
        }
    }
    circuit.append(Gate::diagonal(std::move(diag_qubits), std::move(entries)));
}

Circuit uniformly_controlled_rotation(const std::vector<double>& angles, Axis axis,
                                      const std::vector<int>& controls, int target) {
    int width = target;
    for (int c : controls) width = std::max(width, c);
    Circuit circuit(width + 1);
    append_multiplexed_rotation(circuit, angles, axis, controls, target);
    return circuit;
}

} // namespace vqasvm
