#include "vqasvm/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <algorithm>

#include <CLI11.hpp>
#include <json.hpp>

#include "vqasvm/dataset.hpp"
#include "vqasvm/engine.hpp"
#include "vqasvm/numerics.hpp"
#include "vqasvm/transpile.hpp"
#include "vqasvm/vqasvm_circuits.hpp"

namespace vqasvm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << content;
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

double parse_c_value(const std::string& text) {
    if (text == "inf" || text == "INF" || text == "infinity")
        return std::numeric_limits<double>::infinity();
    return std::stod(text);
}

int default_threads() {
    if (const char* env = std::getenv("VQASVM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

struct DatasetOptions {
    std::string path;
    std::string label_column = "label";
    std::string positive_labels; // comma-separated value set
    std::size_t train_size = 0;  // 0: take the file as-is
    std::uint64_t seed = 0;
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& opts) {
    cmd->add_option("--dataset", opts.path, "dataset file (.csv or .json)")->required();
    cmd->add_option("--label-column", opts.label_column, "CSV label column name");
    cmd->add_option("--positive-labels", opts.positive_labels,
                    "comma-separated label values mapped to +1");
    cmd->add_option("--M", opts.train_size,
                    "subsample this many rows (power of two) as the training split");
}

std::set<std::string> split_set(const std::string& csv) {
    std::set<std::string> out;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.insert(item);
    }
    return out;
}

// Loads the training split (and optionally the held-out split) described by
// the options. JSON dumps are taken verbatim; CSVs are preprocessed when a
// subsample size is given.
std::pair<TrainingSet, TrainingSet> load_dataset(const DatasetOptions& opts, bool want_test) {
    const std::filesystem::path path(opts.path);
    if (path.extension() == ".json") {
        if (want_test) throw std::runtime_error("JSON datasets hold a single split");
        return {dataset_from_json(read_file(opts.path)), TrainingSet{}};
    }
    if (opts.train_size == 0) {
        if (want_test) throw std::runtime_error("--M is required to derive a test split");
        TrainingSet set = training_set_from_csv_text(read_file(opts.path));
        return {std::move(set), TrainingSet{}};
    }
    PreprocessRules rules;
    rules.label_column = opts.label_column;
    rules.positive_labels = split_set(opts.positive_labels);
    rules.train_size = opts.train_size;
    rules.seed = opts.seed;
    PreprocessResult result = preprocess(load_csv(opts.path, opts.label_column), rules);
    return {std::move(result.train), std::move(result.test)};
}

FeatureMapSpec make_fmap(const std::string& kind, int n, int reps) {
    if (feature_map_kind_from_string(kind) == FeatureMapKind::BLOCH)
        return FeatureMapSpec::bloch();
    return FeatureMapSpec::zz(n, reps);
}

int ansatz_width_for(std::size_t m_points) {
    int m = 0;
    while ((std::size_t{1} << m) < m_points) ++m;
    return std::max(m, 1);
}

std::string trace_to_csv(const OptimizationTrace& trace) {
    std::string out = "iteration,objective,accepted,theta_hash\n";
    for (const TraceRecord& r : trace.records) {
        out += std::to_string(r.iteration) + "," + format_double(r.objective) + "," +
               (r.accepted ? "1" : "0") + "," + std::to_string(r.theta_hash) + "\n";
    }
    return out;
}

int cmd_generate_toy(const std::string& out_prefix, const ToyDatasetConfig& config,
                     const std::string& balance_name) {
    const ToyDataset data = generate_bloch_toy(config);
    write_file(out_prefix + "_train.csv", training_set_to_csv(data.train));
    write_file(out_prefix + "_test.csv", training_set_to_csv(data.test));
    ordered_json manifest;
    manifest["schema_version"] = 1;
    manifest["seed"] = config.seed;
    manifest["balance"] = balance_name;
    manifest["num_test"] = config.num_test;
    manifest["cluster_spread"] = config.cluster_spread;
    manifest["meridian_longitude"] = data.meridian_longitude;
    manifest["center_positive"] = data.center_positive;
    manifest["center_negative"] = data.center_negative;
    write_file(out_prefix + "_manifest.json", manifest.dump(2) + "\n");
    ordered_json report;
    report["train_rows"] = data.train.size();
    report["test_rows"] = data.test.size();
    std::cout << report.dump() << "\n";
    return 0;
}

} // namespace

int cli_run(const std::vector<std::string>& argv) {
    CLI::App app{"variational quantum approximate SVM toolkit"};
    app.set_config("--config", "", "key=value file whose keys mirror the flags; flags win");
    app.require_subcommand(1);

    // generate-toy ---------------------------------------------------------
    auto* gen = app.add_subcommand("generate-toy", "emit the Bloch-sphere toy dataset");
    ToyDatasetConfig toy_config;
    std::string toy_balance = "unbalanced";
    std::string toy_out = "toy";
    gen->add_option("--seed", toy_config.seed, "master seed");
    gen->add_option("--balance", toy_balance, "balanced (2/2) or unbalanced (3/1)")
        ->check(CLI::IsMember({"balanced", "unbalanced"}));
    gen->add_option("--num-test", toy_config.num_test, "number of test points");
    gen->add_option("--spread", toy_config.cluster_spread, "training cluster spread (radians)");
    gen->add_option("--out", toy_out, "output path prefix");

    // train ------------------------------------------------------------
    auto* tr = app.add_subcommand("train", "optimize the ansatz on a dataset");
    DatasetOptions tr_data;
    add_dataset_options(tr, tr_data);
    std::string tr_fmap = "bloch";
    int tr_reps = 2;
    int tr_layers = 2;
    double tr_lambda = 1e4;
    std::string tr_c = "1e4";
    bool tr_exact = false;
    std::uint64_t tr_shots = 8192;
    std::uint64_t tr_seed = 0;
    std::size_t tr_max_iter = 1024;
    double tr_a = 0.0;
    double tr_c_gain = 0.0;
    double tr_A = -1.0;
    bool tr_no_blocking = false;
    int tr_sigma_samples = 25;
    std::size_t tr_warm_start = 0;
    std::string tr_path = "direct";
    std::string tr_out = "model.json";
    std::string tr_trace = "";
    tr->add_option("--fmap", tr_fmap, "feature map: bloch or zz")
        ->check(CLI::IsMember({"bloch", "zz"}));
    tr->add_option("--reps", tr_reps, "ZZ map repetitions");
    tr->add_option("--layers", tr_layers, "ansatz layers");
    tr->add_option("--lambda", tr_lambda, "bias regularization hyperparameter");
    tr->add_option("--C", tr_c, "margin hyperparameter (number or 'inf')");
    tr->add_flag("--exact", tr_exact, "exact expectation values instead of sampling");
    tr->add_option("--shots", tr_shots, "measurement repetitions per estimate");
    tr->add_option("--seed", tr_seed, "master seed");
    tr->add_option("--spsa-max-iter", tr_max_iter, "SPSA iteration budget");
    tr->add_option("--spsa-a", tr_a, "gain a (0: calibrate automatically)");
    tr->add_option("--spsa-c", tr_c_gain, "gain c (0: use the sigma estimate)");
    tr->add_option("--spsa-A", tr_A, "gain offset A (negative: max_iter/10)");
    tr->add_flag("--no-blocking", tr_no_blocking, "disable the blocking rule");
    tr->add_option("--sigma-samples", tr_sigma_samples, "objective samples for the sigma estimate");
    tr->add_option("--warm-start", tr_warm_start,
                   "run this many initial iterations on the exact objective before sampling");
    tr->add_option("--path", tr_path, "oracle realization: gates or direct")
        ->check(CLI::IsMember({"gates", "direct"}));
    tr->add_option("--out", tr_out, "model output file");
    tr->add_option("--trace", tr_trace, "optimization trace CSV output");

    // classify ---------------------------------------------------------
    auto* cl = app.add_subcommand("classify", "label points with a trained model");
    std::string cl_model = "model.json";
    std::string cl_test;
    std::string cl_out = "predictions.csv";
    bool cl_exact = false;
    std::uint64_t cl_shots = 8192;
    std::uint64_t cl_seed = 0;
    std::string cl_path = "direct";
    int cl_threads = default_threads();
    cl->add_option("--model", cl_model, "trained model JSON")->required();
    cl->add_option("--test", cl_test, "CSV of points to classify")->required();
    cl->add_option("--out", cl_out, "predictions CSV output");
    cl->add_flag("--exact", cl_exact, "exact expectation values instead of sampling");
    cl->add_option("--shots", cl_shots, "measurement repetitions per estimate");
    cl->add_option("--seed", cl_seed, "master seed");
    cl->add_option("--path", cl_path, "oracle realization: gates or direct")
        ->check(CLI::IsMember({"gates", "direct"}));
    cl->add_option("--threads", cl_threads, "worker threads for the batch");

    // reference-solve ----------------------------------------------------
    auto* ref = app.add_subcommand("reference-solve", "run the convex reference solvers");
    DatasetOptions ref_data;
    add_dataset_options(ref, ref_data);
    std::string ref_fmap = "bloch";
    int ref_reps = 2;
    double ref_lambda = 1e4;
    std::string ref_c = "1e4";
    std::string ref_sweep;
    std::string ref_out = "reference.json";
    ref->add_option("--fmap", ref_fmap, "feature map: bloch or zz")
        ->check(CLI::IsMember({"bloch", "zz"}));
    ref->add_option("--reps", ref_reps, "ZZ map repetitions");
    ref->add_option("--lambda", ref_lambda, "bias regularization hyperparameter");
    ref->add_option("--C", ref_c, "margin hyperparameter (number or 'inf')");
    ref->add_option("--lambda-sweep", ref_sweep, "comma-separated lambdas, one result row each");
    ref->add_option("--out", ref_out, "solution JSON output");

    // scaling-bench ------------------------------------------------------
    auto* bench = app.add_subcommand("scaling-bench", "depth and gate counts over M");
    std::string bench_mlist = "4,8,16,32,64";
    std::string bench_fmap = "bloch";
    int bench_reps = 2;
    int bench_layers = 2;
    std::uint64_t bench_seed = 0;
    std::string bench_out = "scaling.csv";
    bench->add_option("--M-list", bench_mlist, "comma-separated training sizes");
    bench->add_option("--fmap", bench_fmap, "feature map: bloch or zz")
        ->check(CLI::IsMember({"bloch", "zz"}));
    bench->add_option("--reps", bench_reps, "ZZ map repetitions");
    bench->add_option("--layers", bench_layers, "ansatz layers");
    bench->add_option("--seed", bench_seed, "synthetic data seed");
    bench->add_option("--out", bench_out, "bench CSV output");

    std::vector<std::string> args = argv;
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            return 0;
        }
        std::cerr << ordered_json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }

    try {
        if (gen->parsed()) {
            toy_config.balance =
                toy_balance == "balanced" ? ToyBalance::BALANCED : ToyBalance::UNBALANCED;
            return cmd_generate_toy(toy_out, toy_config, toy_balance);
        }

        if (tr->parsed()) {
            tr_data.seed = tr_seed;
            auto [train_set, held_out] = load_dataset(tr_data, false);
            train_set.validate_for_training();
            const FeatureMapSpec fmap =
                make_fmap(tr_fmap, static_cast<int>(train_set.feature_dim()), tr_reps);
            const AnsatzSpec ansatz{ansatz_width_for(train_set.size()), tr_layers};
            Hyperparams hp{tr_lambda, parse_c_value(tr_c)};

            const OraclePath path = tr_path == "gates" ? OraclePath::GATES : OraclePath::DIRECT;
            EstimatorConfig est = tr_exact ? EstimatorConfig::exact(path)
                                           : EstimatorConfig::with_shots(tr_shots, tr_seed, path);
            SPSAConfig spsa;
            spsa.a = tr_a;
            spsa.c = tr_c_gain;
            spsa.A = tr_A;
            spsa.max_iter = tr_max_iter;
            spsa.blocking = !tr_no_blocking;
            spsa.sigma_estimation_samples = tr_sigma_samples;
            spsa.seed = tr_seed;

            EvalStats stats;
            const auto start = std::chrono::steady_clock::now();
            Model model;
            if (tr_warm_start > 0 && !tr_exact) {
                const EstimatorConfig exact_est = EstimatorConfig::exact(path);
                const Objective cheap = [&](const ParameterVector& theta, std::uint64_t idx) {
                    return estimate_objective(theta, train_set, fmap, ansatz, hp, exact_est, idx,
                                              &stats);
                };
                const Objective expensive = [&](const ParameterVector& theta, std::uint64_t idx) {
                    return estimate_objective(theta, train_set, fmap, ansatz, hp, est, idx, &stats);
                };
                SPSAResult result = warm_start(cheap, expensive,
                                               ParameterVector(ansatz.num_params(), 0.0), spsa,
                                               tr_warm_start);
                model.theta_star = std::move(result.theta_star);
                model.ansatz = ansatz;
                model.fmap = fmap;
                model.hp = hp;
                model.training_set = train_set;
                model.trace = std::move(result.trace);
                model.alpha_star = alpha_distribution(ansatz, model.theta_star);
            } else {
                model = train(train_set, fmap, ansatz, hp, est, spsa, &stats);
            }
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

            const double residual = residual_loss(model, train_set, hp);
            write_file(tr_out, model.to_json() + "\n");
            if (!tr_trace.empty()) write_file(tr_trace, trace_to_csv(model.trace));

            ordered_json report;
            report["final_objective"] = model.trace.recorded_losses.empty()
                                            ? model.trace.initial_objective
                                            : model.trace.recorded_losses.back();
            report["residual_vs_oracle"] = residual;
            report["iterations"] = model.trace.iterations_run;
            report["early_stopped"] = model.trace.early_stopped;
            report["loss_evaluations"] = stats.loss_evals;
            report["regularizer_evaluations"] = stats.regularizer_evals;
            report["wall_time_seconds"] = seconds;
            std::cout << report.dump() << "\n";
            return 0;
        }

        if (cl->parsed()) {
            const Model model = Model::from_json(read_file(cl_model));
            const std::string test_text = read_file(cl_test);
            const Table table = parse_csv(test_text);
            if (table.rows.empty()) throw std::runtime_error("test file has no rows");

            const bool labeled =
                std::find(table.header.begin(), table.header.end(), "label") != table.header.end();
            std::vector<std::vector<double>> points;
            std::vector<int> truth;
            if (labeled) {
                const TrainingSet test_set = training_set_from_csv_text(test_text);
                points = test_set.points;
                truth = test_set.labels;
            } else {
                for (const auto& row : table.rows) {
                    std::vector<double> features;
                    for (const auto& cell : row) features.push_back(std::stod(cell));
                    points.push_back(std::move(features));
                }
            }
            if (points.front().size() != static_cast<std::size_t>(model.fmap.feature_dim))
                throw std::runtime_error("test feature dimension does not match the model");

            const OraclePath path = cl_path == "gates" ? OraclePath::GATES : OraclePath::DIRECT;
            const EstimatorConfig est = cl_exact
                                            ? EstimatorConfig::exact(path)
                                            : EstimatorConfig::with_shots(cl_shots, cl_seed, path);
            const InferenceResult result = infer(model, points, est, cl_threads);

            std::string csv = "id,decision_value,label\n";
            for (std::size_t k = 0; k < points.size(); ++k)
                csv += std::to_string(k) + "," + format_double(result.decision_values[k]) + "," +
                       std::to_string(result.labels[k]) + "\n";
            write_file(cl_out, csv);

            ordered_json report;
            report["points"] = points.size();
            if (labeled) {
                std::size_t hits = 0;
                for (std::size_t k = 0; k < truth.size(); ++k)
                    if (result.labels[k] == truth[k]) ++hits;
                report["accuracy"] = static_cast<double>(hits) / static_cast<double>(truth.size());
            }
            std::cout << report.dump() << "\n";
            return 0;
        }

        if (ref->parsed()) {
            auto [train_set, held_out] = load_dataset(ref_data, false);
            train_set.validate_for_training();
            const FeatureMapSpec fmap =
                make_fmap(ref_fmap, static_cast<int>(train_set.feature_dim()), ref_reps);
            const KernelMatrix kernel = kernel_matrix(train_set, fmap);

            std::vector<double> lambdas;
            if (ref_sweep.empty()) {
                lambdas.push_back(ref_lambda);
            } else {
                std::stringstream stream(ref_sweep);
                std::string item;
                while (std::getline(stream, item, ','))
                    if (!item.empty()) lambdas.push_back(std::stod(item));
            }

            ordered_json results = ordered_json::array();
            for (double lambda : lambdas) {
                const Hyperparams hp{lambda, parse_c_value(ref_c)};
                const SolverResult primal = solve_probability_simplex_qp(kernel, train_set.labels, hp);
                const DualResult dual = solve_dual_svm(kernel, train_set.labels, hp);
                ordered_json row;
                row["lambda"] = lambda;
                row["C"] = std::isinf(hp.C) ? ordered_json("inf") : ordered_json(hp.C);
                row["alpha_star"] = primal.alpha;
                row["beta_star"] = primal.beta;
                row["d_tilde_star"] = primal.objective;
                row["B"] = primal.B;
                row["b_star"] = primal.bias;
                row["dual_beta"] = dual.beta;
                row["d_star"] = dual.objective;
                row["duality_bridge"] = dual.objective * 2.0 * primal.objective;
                row["primal_converged"] = primal.converged;
                row["dual_converged"] = dual.converged;
                row["primal_iterations"] = primal.iterations;
                row["dual_iterations"] = dual.iterations;
                results.push_back(std::move(row));
            }
            ordered_json out;
            out["schema_version"] = 1;
            out["results"] = results;
            write_file(ref_out, out.dump(2) + "\n");
            std::cout << ordered_json{{"rows", results.size()}}.dump() << "\n";
            return 0;
        }

        if (bench->parsed()) {
            std::vector<std::size_t> sizes;
            std::stringstream stream(bench_mlist);
            std::string item;
            while (std::getline(stream, item, ','))
                if (!item.empty()) sizes.push_back(static_cast<std::size_t>(std::stoull(item)));
            if (sizes.empty()) throw std::runtime_error("empty --M-list");

            const FeatureMapSpec fmap = bench_fmap == "bloch"
                                            ? FeatureMapSpec::bloch()
                                            : FeatureMapSpec::zz(2, bench_reps);
            std::string csv = "M,depth_basis,cnot_count,total_gates,loss_eval_seconds\n";
            std::vector<double> xs;
            std::vector<double> depths;
            for (std::size_t m_points : sizes) {
                KeyedRng rng(bench_seed, m_points);
                TrainingSet set;
                for (std::size_t k = 0; k < m_points; ++k) {
                    std::vector<double> point(static_cast<std::size_t>(fmap.feature_dim));
                    for (auto& v : point) v = rng.next_double(-3.0, 3.0);
                    set.points.push_back(std::move(point));
                    set.labels.push_back(k % 2 == 0 ? 1 : -1);
                }
                const AnsatzSpec ansatz{ansatz_width_for(m_points), bench_layers};
                const ParameterVector theta(ansatz.num_params(), 0.0);
                const Circuit loss = build_loss_circuit(set, fmap, ansatz, theta);
                const Circuit basis = decompose_to_basis(loss);
                const int depth = circuit_depth(basis);
                const auto counts = gate_counts(basis);
                const std::size_t cnots =
                    counts.count(GateKind::CNOT) ? counts.at(GateKind::CNOT) : 0;

                const Hyperparams hp{1e4, std::numeric_limits<double>::infinity()};
                const EstimatorConfig est = EstimatorConfig::exact(OraclePath::GATES);
                const auto start = std::chrono::steady_clock::now();
                (void)estimate_loss(theta, set, fmap, ansatz, hp, est);
                const double seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

                csv += std::to_string(m_points) + "," + std::to_string(depth) + "," +
                       std::to_string(cnots) + "," + std::to_string(basis.size()) + "," +
                       format_double(seconds) + "\n";
                xs.push_back(static_cast<double>(m_points));
                depths.push_back(static_cast<double>(depth));
            }
            write_file(bench_out, csv);
            ordered_json report;
            if (xs.size() >= 2) {
                const LinearFit fit = linear_fit(xs, depths);
                report["depth_fit_slope"] = fit.slope;
                report["depth_fit_intercept"] = fit.intercept;
                report["depth_fit_r_squared"] = fit.r_squared;
            }
            std::cout << report.dump() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << ordered_json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}

} // namespace vqasvm
