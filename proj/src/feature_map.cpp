#include "vqasvm/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqasvm {

namespace {

constexpr double kPi = std::numbers::pi;

void check_features(const FeatureMapSpec& spec, std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(spec.feature_dim))
        throw std::invalid_argument("feature vector dimension mismatch");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature");
    if (spec.kind == FeatureMapKind::ZZ) {
        for (double v : x)
            if (std::abs(v) > kPi + 1e-9)
                throw std::invalid_argument("ZZ map expects features in [-pi, pi]");
    }
}

} // namespace

std::string to_string(FeatureMapKind kind) {
    return kind == FeatureMapKind::BLOCH ? "BLOCH" : "ZZ";
}

FeatureMapKind feature_map_kind_from_string(const std::string& name) {
    if (name == "BLOCH" || name == "bloch") return FeatureMapKind::BLOCH;
    if (name == "ZZ" || name == "zz") return FeatureMapKind::ZZ;
    throw std::invalid_argument("unknown feature map '" + name + "'");
}

FeatureMapSpec FeatureMapSpec::bloch() { return FeatureMapSpec{FeatureMapKind::BLOCH, 1, 1, 2}; }

FeatureMapSpec FeatureMapSpec::zz(int n, int reps) {
    return FeatureMapSpec{FeatureMapKind::ZZ, n, reps, n};
}

void FeatureMapSpec::validate() const {
    if (kind == FeatureMapKind::BLOCH) {
        if (n != 1 || feature_dim != 2)
            throw std::invalid_argument("BLOCH map requires n = 1 and two features");
    } else {
        if (n < 2) throw std::invalid_argument("ZZ map requires n >= 2");
        if (n != feature_dim) throw std::invalid_argument("ZZ map requires n = feature_dim");
        if (reps < 1) throw std::invalid_argument("ZZ map requires reps >= 1");
    }
}

TemplateOp TemplateOp::fixed_gate(Gate g) {
    TemplateOp op;
    op.type = Type::FIXED;
    op.fixed = std::move(g);
    return op;
}

TemplateOp TemplateOp::rotation(Axis axis, int target,
                                std::function<double(std::span<const double>)> angle) {
    TemplateOp op;
    op.type = Type::ROTATION;
    op.axis = axis;
    op.target = target;
    op.angle = std::move(angle);
    return op;
}

std::vector<TemplateOp> feature_map_template(const FeatureMapSpec& spec) {
    spec.validate();
    std::vector<TemplateOp> ops;
    if (spec.kind == FeatureMapKind::BLOCH) {
        ops.push_back(TemplateOp::rotation(Axis::Y, 0, [](std::span<const double> x) { return x[0]; }));
        ops.push_back(TemplateOp::rotation(Axis::Z, 0, [](std::span<const double> x) { return x[1]; }));
        return ops;
    }
    const int n = spec.n;
    for (int rep = 0; rep < spec.reps; ++rep) {
        for (int q = 0; q < n; ++q) ops.push_back(TemplateOp::fixed_gate(Gate::h(q)));
        for (int q = 0; q < n; ++q) {
            ops.push_back(TemplateOp::rotation(
                Axis::Z, q, [q](std::span<const double> x) { return 2.0 * x[static_cast<std::size_t>(q)]; }));
        }
        for (int q = 0; q + 1 < n; ++q) {
            ops.push_back(TemplateOp::fixed_gate(Gate::cnot(q, q + 1)));
            ops.push_back(TemplateOp::rotation(Axis::Z, q + 1, [q](std::span<const double> x) {
                const auto i = static_cast<std::size_t>(q);
                return 2.0 * (kPi - x[i]) * (kPi - x[i + 1]);
            }));
            ops.push_back(TemplateOp::fixed_gate(Gate::cnot(q, q + 1)));
        }
    }
    return ops;
}

Circuit bloch_feature_map(double x0, double x1) {
    Circuit c(1);
    c.append(Gate::ry(x0, 0));
    c.append(Gate::rz(x1, 0));
    return c;
}

Circuit zz_feature_map(const std::vector<double>& x, int reps) {
    const FeatureMapSpec spec = FeatureMapSpec::zz(static_cast<int>(x.size()), reps);
    return feature_map_circuit(spec, x);
}

Circuit feature_map_circuit(const FeatureMapSpec& spec, std::span<const double> x) {
    check_features(spec, x);
    Circuit c(spec.n);
    for (const TemplateOp& op : feature_map_template(spec)) {
        if (op.type == TemplateOp::Type::FIXED) {
            c.append(op.fixed);
        } else {
            c.append(Gate::rotation(op.axis, op.angle(x), op.target));
        }
    }
    return c;
}

StateVector feature_state(const FeatureMapSpec& spec, std::span<const double> x) {
    return run_circuit(feature_map_circuit(spec, x), StateVector(spec.n));
}

double quantum_kernel(const FeatureMapSpec& spec, std::span<const double> x,
                      std::span<const double> z) {
    const StateVector a = feature_state(spec, x);
    const StateVector b = feature_state(spec, z);
    return std::norm(a.inner_product(b));
}

} // namespace vqasvm
