#include "vqasvm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace vqasvm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json c_to_json(double C) {
    if (std::isinf(C)) return "inf";
    return C;
}

double c_from_json(const ordered_json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("C must be a number or \"inf\"");
    }
    return j.get<double>();
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t k = w; k < count; k += workers) body(k);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

void Model::validate() const {
    ansatz.validate();
    fmap.validate();
    hp.validate();
    training_set.validate_for_training();
    if (theta_star.size() != ansatz.num_params())
        throw std::invalid_argument("theta_star length must be layers * m");
    if (alpha_star.size() != training_set.size())
        throw std::invalid_argument("alpha_star length must be M");
    double sum = 0.0;
    for (double a : alpha_star) {
        if (a < -1e-10) throw std::invalid_argument("alpha_star must be nonnegative");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("alpha_star must sum to one");
}

std::string Model::to_json() const {
    ordered_json j;
    j["theta_star"] = theta_star;
    j["ansatz"] = {{"m", ansatz.m}, {"layers", ansatz.layers}};
    j["fmap"] = {{"kind", to_string(fmap.kind)}, {"n", fmap.n}, {"reps", fmap.reps}};
    j["lambda"] = hp.lambda;
    j["C"] = c_to_json(hp.C);
    j["training_set"] = {{"points", training_set.points}, {"labels", training_set.labels}};
    j["trace_summary"] = {{"iterations", trace.iterations_run},
                          {"evaluations", trace.evaluations},
                          {"records", trace.records.size()},
                          {"initial_objective", trace.initial_objective},
                          {"final_objective", trace.recorded_losses.empty()
                                                  ? trace.initial_objective
                                                  : trace.recorded_losses.back()},
                          {"sigma", trace.sigma},
                          {"early_stopped", trace.early_stopped}};
    return j.dump(2);
}

Model Model::from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    Model model;
    model.theta_star = j.at("theta_star").get<std::vector<double>>();
    model.ansatz.m = j.at("ansatz").at("m").get<int>();
    model.ansatz.layers = j.at("ansatz").at("layers").get<int>();
    model.fmap.kind = feature_map_kind_from_string(j.at("fmap").at("kind").get<std::string>());
    model.fmap.n = j.at("fmap").at("n").get<int>();
    model.fmap.reps = j.at("fmap").at("reps").get<int>();
    model.fmap.feature_dim = model.fmap.kind == FeatureMapKind::BLOCH ? 2 : model.fmap.n;
    model.hp.lambda = j.at("lambda").get<double>();
    model.hp.C = c_from_json(j.at("C"));
    model.training_set.points =
        j.at("training_set").at("points").get<std::vector<std::vector<double>>>();
    model.training_set.labels = j.at("training_set").at("labels").get<std::vector<int>>();
    if (j.contains("trace_summary")) {
        const auto& summary = j.at("trace_summary");
        model.trace.iterations_run = summary.value("iterations", std::size_t{0});
        model.trace.evaluations = summary.value("evaluations", std::uint64_t{0});
        model.trace.initial_objective = summary.value("initial_objective", 0.0);
        model.trace.sigma = summary.value("sigma", 0.0);
        model.trace.early_stopped = summary.value("early_stopped", false);
    }
    model.alpha_star = alpha_distribution(model.ansatz, model.theta_star);
    model.validate();
    return model;
}

Model train(const TrainingSet& set, const FeatureMapSpec& fmap, const AnsatzSpec& ansatz,
            const Hyperparams& hp, const EstimatorConfig& est, const SPSAConfig& spsa,
            EvalStats* stats) {
    set.validate_for_training();
    fmap.validate();
    ansatz.validate();
    hp.validate();
    if (set.size() != ansatz.num_states())
        throw std::invalid_argument("ansatz width must satisfy M = 2^m");

    const Objective objective = [&](const ParameterVector& theta, std::uint64_t eval_index) {
        return estimate_objective(theta, set, fmap, ansatz, hp, est, eval_index, stats);
    };
    const ParameterVector theta0(ansatz.num_params(), 0.0);
    SPSAResult result = spsa_minimize(objective, theta0, spsa);

    Model model;
    model.theta_star = std::move(result.theta_star);
    model.ansatz = ansatz;
    model.fmap = fmap;
    model.hp = hp;
    model.training_set = set;
    model.trace = std::move(result.trace);
    model.alpha_star = alpha_distribution(ansatz, model.theta_star);
    return model;
}

InferenceResult infer(const Model& model, const std::vector<std::vector<double>>& points,
                      const EstimatorConfig& est, int threads, EvalStats* stats) {
    model.validate();
    for (const auto& p : points)
        if (p.size() != static_cast<std::size_t>(model.fmap.feature_dim))
            throw std::invalid_argument("feature dimension mismatch");

    InferenceResult out;
    out.labels.assign(points.size(), -1);
    out.decision_values.assign(points.size(), 0.0);
    std::vector<EvalStats> local(points.size());
    parallel_for(points.size(), threads, [&](std::size_t k) {
        const double value =
            estimate_decision(points[k], model.theta_star, model.training_set, model.fmap,
                              model.ansatz, model.hp.lambda, est, k, &local[k]);
        out.decision_values[k] = value;
        out.labels[k] = value > 0.0 ? 1 : -1;
    });
    if (stats)
        for (const auto& s : local) stats->decision_evals += s.decision_evals;
    return out;
}

double residual_loss(const Model& model, const TrainingSet& set, const Hyperparams& hp) {
    const EstimatorConfig exact = EstimatorConfig::exact();
    const double objective = estimate_objective(model.theta_star, set, model.fmap, model.ansatz,
                                                hp, exact);
    const KernelMatrix kernel = kernel_matrix(set, model.fmap);
    const SolverResult reference = solve_probability_simplex_qp(kernel, set.labels, hp);
    return objective - reference.objective;
}

double accuracy(const Model& model, const TrainingSet& test_set, const EstimatorConfig& est,
                int threads) {
    test_set.validate();
    const InferenceResult result = infer(model, test_set.points, est, threads);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < test_set.size(); ++k)
        if (result.labels[k] == test_set.labels[k]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(test_set.size());
}

} // namespace vqasvm
