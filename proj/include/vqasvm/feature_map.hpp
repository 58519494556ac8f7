#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vqasvm/circuit.hpp"
#include "vqasvm/gates.hpp"
#include "vqasvm/statevector.hpp"

namespace vqasvm {

enum class FeatureMapKind { BLOCH, ZZ };

std::string to_string(FeatureMapKind kind);
FeatureMapKind feature_map_kind_from_string(const std::string& name);

/// Which data-embedding circuit to use and how wide it is.
///   BLOCH: one qubit, two features (polar and azimuthal angle).
///   ZZ:    n qubits, n features, `reps` repetitions, nearest-neighbor
///          entanglement.
struct FeatureMapSpec {
    FeatureMapKind kind = FeatureMapKind::BLOCH;
    int n = 1;
    int reps = 2;
    int feature_dim = 2;

    static FeatureMapSpec bloch();
    static FeatureMapSpec zz(int n, int reps = 2);

    void validate() const;
};

/// One slot of the embedding template: either a fixed gate or a data-driven
/// rotation whose angle is a function of the feature vector. The dataset
/// oracle turns each rotation slot into a uniformly controlled rotation.
struct TemplateOp {
    enum class Type { FIXED, ROTATION };
    Type type = Type::FIXED;
    Gate fixed = Gate::h(0);
    Axis axis = Axis::Z;
    int target = 0;
    std::function<double(std::span<const double>)> angle;

    static TemplateOp fixed_gate(Gate g);
    static TemplateOp rotation(Axis axis, int target,
                               std::function<double(std::span<const double>)> angle);
};

std::vector<TemplateOp> feature_map_template(const FeatureMapSpec& spec);

Circuit bloch_feature_map(double x0, double x1);
Circuit zz_feature_map(const std::vector<double>& x, int reps);

/// Instantiates the template for a concrete feature vector.
Circuit feature_map_circuit(const FeatureMapSpec& spec, std::span<const double> x);

/// U_phi(x)|0...0>.
StateVector feature_state(const FeatureMapSpec& spec, std::span<const double> x);

/// Squared fidelity |<phi(x)|phi(z)>|^2.
double quantum_kernel(const FeatureMapSpec& spec, std::span<const double> x,
                      std::span<const double> z);

} // namespace vqasvm
