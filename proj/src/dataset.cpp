#include "vqasvm/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vqasvm/rng.hpp"

namespace vqasvm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using ordered_json = nlohmann::ordered_json;

double wrap_angle(double angle) {
    // into (-pi, pi]
    angle = std::fmod(angle, kTwoPi);
    if (angle <= -kPi) angle += kTwoPi;
    if (angle > kPi) angle -= kTwoPi;
    return angle;
}

double circle_distance(double t1, double t2) { return std::abs(wrap_angle(t1 - t2)); }

// Position t in [0, 2pi) along the meridian circle -> (x0, x1) features.
std::vector<double> circle_point(double t, double longitude) {
    t = std::fmod(t, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t <= kPi) return {t, longitude};
    return {kTwoPi - t, wrap_angle(longitude + kPi)};
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

double parse_double(const std::string& cell) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(cell, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("non-numeric cell '" + cell + "'");
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) throw std::invalid_argument("non-numeric cell '" + cell + "'");
    return value;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream stream(line);
    while (std::getline(stream, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace

ToyDataset generate_bloch_toy(const ToyDatasetConfig& config) {
    if (config.num_test < 1) throw std::invalid_argument("num_test must be at least 1");
    if (!(config.cluster_spread > 0.0)) throw std::invalid_argument("spread must be positive");

    KeyedRng rng(config.seed, 0);
    ToyDataset out;
    out.meridian_longitude = rng.next_double(-kPi, kPi);
    const double center_t = rng.next_double(0.0, kTwoPi);

    // Evenly spaced test positions, re-offset until none sits on the
    // decision boundary (a measure-zero event).
    const double spacing = kTwoPi / config.num_test;
    std::vector<double> test_t(static_cast<std::size_t>(config.num_test));
    for (int attempt = 0;; ++attempt) {
        const double offset = rng.next_double(0.0, kTwoPi);
        bool boundary = false;
        for (int k = 0; k < config.num_test; ++k) {
            test_t[static_cast<std::size_t>(k)] = std::fmod(offset + spacing * k, kTwoPi);
            if (std::abs(std::cos(test_t[static_cast<std::size_t>(k)] - center_t)) < 1e-9)
                boundary = true;
        }
        if (!boundary) break;
        if (attempt > 100) throw std::runtime_error("could not place test points off-boundary");
    }
    for (double t : test_t) {
        out.test.points.push_back(circle_point(t, out.meridian_longitude));
        out.test.labels.push_back(std::cos(t - center_t) > 0.0 ? 1 : -1);
    }

    const int positives = config.balance == ToyBalance::BALANCED ? 2 : 3;
    std::vector<double> train_t;
    auto place = [&](double center, int label) {
        for (int attempt = 0; attempt < 10000; ++attempt) {
            const double t = center + rng.next_double(-config.cluster_spread, config.cluster_spread);
            bool clear = true;
            for (double other : test_t)
                if (circle_distance(t, other) < config.min_separation) clear = false;
            for (double other : train_t)
                if (circle_distance(t, other) < config.min_separation) clear = false;
            if (!clear) continue;
            train_t.push_back(t);
            out.train.points.push_back(circle_point(t, out.meridian_longitude));
            out.train.labels.push_back(label);
            return;
        }
        throw std::runtime_error("could not place a training point clear of the test set");
    };
    for (int k = 0; k < positives; ++k) place(center_t, 1);
    for (int k = 0; k < 4 - positives; ++k) place(center_t + kPi, -1);

    out.center_positive = circle_point(center_t, out.meridian_longitude);
    out.center_negative = circle_point(center_t + kPi, out.meridian_longitude);
    return out;
}

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return k;
    throw std::invalid_argument("column '" + name + "' not found");
}

Table parse_csv(const std::string& text) {
    Table table;
    std::stringstream stream(text);
    std::string line;
    bool first = true;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (first) {
            table.header = std::move(cells);
            first = false;
            continue;
        }
        if (cells.size() != table.header.size())
            throw std::invalid_argument("ragged CSV row");
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) throw std::invalid_argument("CSV is missing a header row");
    return table;
}

Table load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    Table table = parse_csv(buffer.str());
    table.column_index(label_column);
    return table;
}

PreprocessResult preprocess(const Table& table, const PreprocessRules& rules) {
    const std::size_t rows = table.rows.size();
    if (rules.train_size == 0 || (rules.train_size & (rules.train_size - 1)) != 0)
        throw std::invalid_argument("train size must be a power of two");
    if (rules.train_size > rows)
        throw std::invalid_argument("train size exceeds the row count");

    const std::size_t label_col = table.column_index(rules.label_column);
    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < table.header.size(); ++c)
        if (c != label_col) feature_cols.push_back(c);
    if (feature_cols.empty()) throw std::invalid_argument("no feature columns");

    auto label_of = [&](const std::string& cell) {
        if (!rules.positive_labels.empty()) return rules.positive_labels.count(cell) ? 1 : -1;
        return parse_double(cell) > 0.0 ? 1 : -1;
    };

    // Seeded Fisher-Yates; the first train_size slots become the train split.
    std::vector<std::size_t> order(rows);
    for (std::size_t k = 0; k < rows; ++k) order[k] = k;
    KeyedRng rng(rules.seed, 1);
    for (std::size_t k = rows - 1; k > 0; --k)
        std::swap(order[k], order[rng.next_index(k + 1)]);
    std::vector<std::size_t> train_rows(order.begin(),
                                        order.begin() + static_cast<std::ptrdiff_t>(rules.train_size));
    std::vector<std::size_t> test_rows(order.begin() + static_cast<std::ptrdiff_t>(rules.train_size),
                                       order.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());

    auto read_row = [&](std::size_t r) {
        std::vector<double> features;
        features.reserve(feature_cols.size());
        for (std::size_t c : feature_cols) features.push_back(parse_double(table.rows[r][c]));
        return features;
    };

    PreprocessResult out;
    out.scaling.min.assign(feature_cols.size(), std::numeric_limits<double>::infinity());
    out.scaling.max.assign(feature_cols.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t r : train_rows) {
        const auto features = read_row(r);
        for (std::size_t f = 0; f < features.size(); ++f) {
            out.scaling.min[f] = std::min(out.scaling.min[f], features[f]);
            out.scaling.max[f] = std::max(out.scaling.max[f], features[f]);
        }
    }

    auto transform = [&](std::vector<double> features) {
        for (std::size_t f = 0; f < features.size(); ++f) {
            const double lo = out.scaling.min[f];
            const double hi = out.scaling.max[f];
            if (hi == lo) {
                features[f] = 0.0; // midpoint convention for constant columns
                continue;
            }
            const double scaled = -kPi + kTwoPi * (features[f] - lo) / (hi - lo);
            features[f] = std::clamp(scaled, -kPi, kPi);
        }
        return features;
    };

    for (std::size_t r : train_rows) {
        out.train.points.push_back(transform(read_row(r)));
        out.train.labels.push_back(label_of(table.rows[r][label_col]));
    }
    for (std::size_t r : test_rows) {
        out.test.points.push_back(transform(read_row(r)));
        out.test.labels.push_back(label_of(table.rows[r][label_col]));
    }
    return out;
}

std::string dataset_to_json(const TrainingSet& set, const FeatureScaling& scaling) {
    ordered_json j;
    j["schema_version"] = 1;
    j["points"] = set.points;
    j["labels"] = set.labels;
    j["scaling"] = {{"min", scaling.min}, {"max", scaling.max}};
    return j.dump(2);
}

TrainingSet dataset_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    TrainingSet set;
    set.points = j.at("points").get<std::vector<std::vector<double>>>();
    set.labels = j.at("labels").get<std::vector<int>>();
    set.validate();
    return set;
}

std::string training_set_to_csv(const TrainingSet& set) {
    set.validate();
    std::string out;
    for (std::size_t f = 0; f < set.feature_dim(); ++f) out += "x" + std::to_string(f) + ",";
    out += "label\n";
    for (std::size_t r = 0; r < set.size(); ++r) {
        for (double v : set.points[r]) out += format_double(v) + ",";
        out += std::to_string(set.labels[r]) + "\n";
    }
    return out;
}

TrainingSet training_set_from_csv_text(const std::string& text) {
    const Table table = parse_csv(text);
    const std::size_t label_col = table.column_index("label");
    TrainingSet set;
    for (const auto& row : table.rows) {
        std::vector<double> features;
        for (std::size_t c = 0; c < row.size(); ++c)
            if (c != label_col) features.push_back(parse_double(row[c]));
        set.points.push_back(std::move(features));
        set.labels.push_back(parse_double(row[label_col]) > 0.0 ? 1 : -1);
    }
    set.validate();
    return set;
}

} // namespace vqasvm
