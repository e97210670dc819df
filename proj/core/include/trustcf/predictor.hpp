#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "trustcf/explicit_trust.hpp"
#include "trustcf/method.hpp"
#include "trustcf/rating_matrix.hpp"
#include "trustcf/similarity.hpp"
#include "trustcf/trust_graph.hpp"
#include "trustcf/trust_inference.hpp"

namespace trustcf {

class TrustStore;

enum class PredictionStatus {
    Predicted,
    FallbackUserMean,
    FallbackGlobalMean,
};

/// Which weights produced a Predicted value.
enum class WeightSource {
    None,
    Similarity,          ///< plain CF, or fused weights degenerated to CF
    Fused,
    FusedRedistributed,  ///< LW with one normalising sum equal to 0
};

std::string_view to_string(PredictionStatus s);
std::string_view to_string(WeightSource s);

struct Prediction {
    double value = 0.0;  ///< clamped to the rating scale
    PredictionStatus status = PredictionStatus::FallbackGlobalMean;
    std::size_t neighbors_used = 0;
    WeightSource weights = WeightSource::None;
};

struct FusionInput {
    double sim = 0.0;
    double trust = 0.0;
};

struct FusedWeights {
    std::vector<double> weights;
    bool redistributed = false;
};

/// f_v = sim_v t_v / Σ sim_j t_j. nullopt when the sum is 0 or the list is empty.
std::optional<FusedWeights> fuse_iw(std::span<const FusionInput> inputs);

/// f_v = alpha sim_v / Σ sim_j + (1 - alpha) t_v / Σ t_j. A term whose sum is 0
/// is dropped and its coefficient given to the other; nullopt when both are 0.
std::optional<FusedWeights> fuse_lw(std::span<const FusionInput> inputs, double alpha);

/// r̄_u + Σ sim (r_vi - r̄_v) / Σ |sim|, falling back to r̄_u, then the global mean.
Prediction predict_cf(const RatingMatrix& m, std::span<const Neighbor> neighbors, UserId u,
                      ItemId i);

/// r̄_u + Σ f (r_vi - r̄_v) / Σ |f| with f from `cfg.fusion`; `trust` is aligned
/// with `neighbors`. Degenerate fusion falls back to predict_cf.
Prediction predict_tacf(const RatingMatrix& m, std::span<const Neighbor> neighbors,
                        std::span<const double> trust, const MethodConfig& cfg, UserId u,
                        ItemId i);

/// Trust inputs for every method: the explicit statements plus inferencers
/// over the full and the explicit-only trust graphs. Depends on trust data
/// only, never on ratings.
class TrustAssets {
public:
    /// Supplied stores must match the trust data (and `users`, when given)
    /// or IntegrityError is thrown.
    explicit TrustAssets(ExplicitTrust trust, const IdIndex* users = nullptr,
                         std::shared_ptr<TrustStore> full_store = nullptr,
                         std::shared_ptr<TrustStore> explicit_only_store = nullptr);
    ~TrustAssets();

    TrustAssets(const TrustAssets&) = delete;
    TrustAssets& operator=(const TrustAssets&) = delete;

    const ExplicitTrust& explicit_trust() const noexcept { return trust_; }
    const TrustGraph& graph(GraphVariant v) const;
    const TrustInferencer& inferencer(GraphVariant v) const;

    /// t̂(u, v) for each neighbour under the method's trust source; empty for CF.
    std::vector<double> trust_for(const MethodConfig& cfg, UserId u,
                                  std::span<const Neighbor> neighbors) const;

private:
    ExplicitTrust trust_;
    TrustGraph full_graph_;
    TrustGraph explicit_graph_;
    std::unique_ptr<TrustInferencer> full_;
    std::unique_ptr<TrustInferencer> explicit_only_;
};

struct AuditRow {
    UserId user;
    double sim = 0.0;
    double trust = 0.0;   ///< 0 for CF
    double weight = 0.0;  ///< f actually used
    double deviation = 0.0;  ///< r_vi - r̄_v
};

struct PredictionAudit {
    Prediction prediction;
    std::vector<AuditRow> rows;
};

/// One method at one neighbourhood size over a similarity model.
class Predictor {
public:
    Predictor(const SimilarityModel& similarity, const TrustAssets* trust, MethodConfig cfg,
              std::size_t k);

    Prediction predict(UserId u, ItemId i) const;
    PredictionAudit explain(UserId u, ItemId i) const;

    const MethodConfig& config() const noexcept { return cfg_; }

private:
    const SimilarityModel* similarity_;
    const TrustAssets* trust_;
    MethodConfig cfg_;
    std::size_t k_;
};

}  // namespace trustcf
