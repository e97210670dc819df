#include "trustcf/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <string>
#include <thread>

#include "trustcf/errors.hpp"

namespace trustcf {

namespace {

struct Cell {
    MethodConfig cfg;
    std::size_t k;
};

struct TrustKey {
    TrustSource source;
    std::optional<TrustFormula> formula;

    auto operator<=>(const TrustKey&) const = default;
};

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (auto t = next++; t < count; t = next++) fn(t);
    };
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
}

EvalReport run_cells(const RatingMatrix& m, const TrustAssets& trust, const std::vector<Cell>& cells,
                     const SplitPlan& plan, const SimilarityOptions& similarity, unsigned jobs) {
    std::size_t kmax = 0;
    std::vector<TrustKey> keys;
    for (const auto& c : cells) {
        if (c.k == 0) throw ConfigError("K must be at least 1");
        kmax = std::max(kmax, c.k);
        TrustKey key{c.cfg.source, c.cfg.formula};
        if (c.cfg.source != TrustSource::None && std::find(keys.begin(), keys.end(), key) == keys.end()) {
            keys.push_back(key);
        }
    }
    std::vector<std::size_t> key_of(cells.size(), 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
        TrustKey key{cells[c].cfg.source, cells[c].cfg.formula};
        key_of[c] = static_cast<std::size_t>(std::find(keys.begin(), keys.end(), key) - keys.begin());
    }

    EvalReport report;
    std::vector<std::vector<RoundResult>> per_cell(cells.size());
    for (std::size_t r = 0; r < plan.splits.size(); ++r) {
        const auto& split = plan.splits[r];
        auto train = m.subset(split.train);
        SimilarityModel model(train, similarity);
        const auto n_tests = split.test.size();

        // errors[c * n_tests + t], fallback flags likewise.
        std::vector<double> errors(cells.size() * n_tests, 0.0);
        std::vector<char> fell_back(cells.size() * n_tests, 0);

        parallel_for(n_tests, jobs, [&](std::size_t t) {
            const auto& truth = m.entries()[split.test[t]];
            auto neighbors = select_neighbors(model, truth.user, truth.item, kmax);
            std::vector<std::vector<double>> trust_values;
            trust_values.reserve(keys.size());
            for (const auto& key : keys) {
                MethodConfig probe;
                probe.source = key.source;
                probe.formula = key.formula;
                trust_values.push_back(trust.trust_for(probe, truth.user, neighbors));
            }
            for (std::size_t c = 0; c < cells.size(); ++c) {
                const auto& cell = cells[c];
                auto size = std::min(cell.k, neighbors.size());
                std::span<const Neighbor> prefix(neighbors.data(), size);
                Prediction p;
                if (cell.cfg.fusion == Fusion::None) {
                    p = predict_cf(train, prefix, truth.user, truth.item);
                } else {
                    std::span<const double> tv(trust_values[key_of[c]].data(), size);
                    p = predict_tacf(train, prefix, tv, cell.cfg, truth.user, truth.item);
                }
                errors[c * n_tests + t] = std::abs(p.value - truth.value);
                fell_back[c * n_tests + t] = p.status != PredictionStatus::Predicted;
            }
        });

        for (std::size_t c = 0; c < cells.size(); ++c) {
            RoundResult row;
            row.method = cells[c].cfg.id;
            row.k = cells[c].k;
            if (cells[c].cfg.uses_alpha()) row.alpha = cells[c].cfg.alpha;
            row.round = r;
            std::span<const double> errs(errors.data() + c * n_tests, n_tests);
            row.mae = n_tests == 0 ? 0.0 : compensated_sum(errs) / static_cast<double>(n_tests);
            for (std::size_t t = 0; t < n_tests; ++t) {
                if (fell_back[c * n_tests + t]) {
                    ++row.n_fallback;
                } else {
                    ++row.n_predicted;
                }
            }
            per_cell[c].push_back(row);
        }
    }
    for (auto& rows : per_cell) {
        for (auto& row : rows) report.add(row);
    }
    return report;
}

}  // namespace

EvalReport sweep(const RatingMatrix& m, const TrustAssets& trust, const SweepOptions& options,
                 const SplitPlan& plan) {
    if (options.methods.empty()) throw ConfigError("no methods to evaluate");
    if (options.ks.empty()) throw ConfigError("no K values to evaluate");
    std::vector<Cell> cells;
    for (auto id : options.methods) {
        auto base = MethodConfig::make(id, options.alpha);
        std::vector<double> alphas{options.alpha};
        if (base.uses_alpha() && !options.alphas.empty()) alphas = options.alphas;
        if (!base.uses_alpha()) alphas.resize(1);
        for (double a : alphas) {
            auto cfg = MethodConfig::make(id, a);
            for (auto k : options.ks) cells.push_back({cfg, k});
        }
    }
    return run_cells(m, trust, cells, plan, options.similarity, options.jobs);
}

EvalReport evaluate(const RatingMatrix& m, const TrustAssets& trust, const MethodConfig& cfg, std::size_t k,
                    const SplitPlan& plan, SimilarityOptions similarity, unsigned jobs) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    return run_cells(m, trust, {Cell{cfg, k}}, plan, similarity, jobs);
}

std::vector<double> evaluate_predictor(const RatingMatrix& m, const SplitPlan& plan, const PredictFn& predict) {
    std::vector<double> maes;
    for (const auto& split : plan.splits) {
        auto train = m.subset(split.train);
        std::vector<double> predicted;
        std::vector<double> actual;
        for (auto pos : split.test) {
            const auto& r = m.entries()[pos];
            predicted.push_back(predict(train, r.user, r.item));
            actual.push_back(r.value);
        }
        maes.push_back(mean_absolute_error(predicted, actual));
    }
    return maes;
}

double mean_absolute_error(std::span<const double> predicted, std::span<const double> actual) {
    if (predicted.size() != actual.size()) throw ConfigError("prediction and truth lengths differ");
    if (predicted.empty()) return 0.0;
    std::vector<double> errs(predicted.size());
    for (std::size_t k = 0; k < errs.size(); ++k) errs[k] = std::abs(predicted[k] - actual[k]);
    return compensated_sum(errs) / static_cast<double>(errs.size());
}

}  // namespace trustcf
