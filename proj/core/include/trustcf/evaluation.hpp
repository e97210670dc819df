#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "trustcf/method.hpp"
#include "trustcf/predictor.hpp"
#include "trustcf/rating_matrix.hpp"
#include "trustcf/similarity.hpp"

namespace trustcf {

enum class SplitMode {
    Resample,  ///< a fresh random train/test partition every round
    KFold,     ///< disjoint test folds; train fraction is 1 - 1/rounds
};

std::string_view to_string(SplitMode m);
SplitMode parse_split_mode(std::string_view name);

struct SplitRound {
    std::vector<std::size_t> train;  ///< positions into RatingMatrix::entries(), ascending
    std::vector<std::size_t> test;
};

struct SplitPlan {
    std::uint64_t seed = 0;
    std::size_t rounds = 5;
    double train_fraction = 0.8;
    SplitMode mode = SplitMode::Resample;
    std::vector<SplitRound> splits;
};

/// Random partitions of the rating entries, deterministic in `seed`.
/// Throws ConfigError for an empty matrix, zero rounds, or a fraction outside (0, 1).
SplitPlan make_splits(const RatingMatrix& m, std::uint64_t seed, std::size_t rounds = 5,
                      double train_fraction = 0.8, SplitMode mode = SplitMode::Resample);

/// One (method, K, alpha, round) cell.
struct RoundResult {
    MethodId method = MethodId::CF;
    std::size_t k = 0;
    std::optional<double> alpha;  ///< LW methods only
    std::size_t round = 0;
    double mae = 0.0;
    std::size_t n_predicted = 0;
    std::size_t n_fallback = 0;
};

/// Round-averaged (method, K, alpha) cell.
struct SummaryRow {
    MethodId method = MethodId::CF;
    std::size_t k = 0;
    std::optional<double> alpha;
    std::size_t rounds = 0;
    double mae = 0.0;
    std::size_t n_predicted = 0;
    std::size_t n_fallback = 0;

    double coverage() const noexcept {
        auto total = n_predicted + n_fallback;
        return total == 0 ? 0.0 : static_cast<double>(n_predicted) / static_cast<double>(total);
    }
};

class EvalReport {
public:
    void add(RoundResult r) { rows_.push_back(r); }
    const std::vector<RoundResult>& rounds() const noexcept { return rows_; }

    /// Cells in first-appearance order; MAE is the unweighted mean over rounds.
    std::vector<SummaryRow> summary() const;

    /// Round-averaged MAE of one cell, nullopt when absent.
    std::optional<double> mae(MethodId method, std::size_t k,
                              std::optional<double> alpha = std::nullopt) const;

    /// method,K,alpha,round,mae,n_predicted,n_fallback
    void write_rounds_csv(std::ostream& out) const;
    /// method,K,alpha,rounds,mae,coverage,n_predicted,n_fallback,note
    void write_summary_csv(std::ostream& out) const;

private:
    std::vector<RoundResult> rows_;
};

struct SweepOptions {
    std::vector<MethodId> methods;
    std::vector<std::size_t> ks;
    /// LW alpha values; each method's own alpha when empty.
    std::vector<double> alphas;
    double alpha = kDefaultAlpha;
    SimilarityOptions similarity;
    unsigned jobs = 1;
};

/// Full method x K (x alpha) grid over every round of `plan`. Similarity,
/// means and neighbours come from each round's training ratings only; every
/// test rating is scored, fallbacks included.
EvalReport sweep(const RatingMatrix& m, const TrustAssets& trust, const SweepOptions& options,
                 const SplitPlan& plan);

/// Single-cell convenience over sweep().
EvalReport evaluate(const RatingMatrix& m, const TrustAssets& trust, const MethodConfig& cfg,
                    std::size_t k, const SplitPlan& plan, SimilarityOptions similarity = {},
                    unsigned jobs = 1);

/// Predicts a rating from a round's training matrix.
using PredictFn = std::function<double(const RatingMatrix& train, UserId u, ItemId i)>;

/// Per-round MAE of an arbitrary predictor over `plan`.
std::vector<double> evaluate_predictor(const RatingMatrix& m, const SplitPlan& plan,
                                       const PredictFn& predict);

double mean_absolute_error(std::span<const double> predicted, std::span<const double> actual);

}  // namespace trustcf
