#include "trustcf/predictor.hpp"

#include <cmath>
#include <string>

#include "trustcf/errors.hpp"
#include "trustcf/trust_store.hpp"

namespace trustcf {

std::string_view to_string(PredictionStatus s) {
    switch (s) {
        case PredictionStatus::Predicted: return "predicted";
        case PredictionStatus::FallbackUserMean: return "fallback-user-mean";
        case PredictionStatus::FallbackGlobalMean: return "fallback-global-mean";
    }
    return "?";
}

std::string_view to_string(WeightSource s) {
    switch (s) {
        case WeightSource::None: return "none";
        case WeightSource::Similarity: return "similarity";
        case WeightSource::Fused: return "fused";
        case WeightSource::FusedRedistributed: return "fused-redistributed";
    }
    return "?";
}

std::optional<FusedWeights> fuse_iw(std::span<const FusionInput> inputs) {
    if (inputs.empty()) return std::nullopt;
    double sum = 0.0;
    for (const auto& in : inputs) sum += in.sim * in.trust;
    if (sum == 0.0) return std::nullopt;
    FusedWeights out;
    out.weights.reserve(inputs.size());
    for (const auto& in : inputs) out.weights.push_back(in.sim * in.trust / sum);
    return out;
}

std::optional<FusedWeights> fuse_lw(std::span<const FusionInput> inputs, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    if (inputs.empty()) return std::nullopt;
    double sim_sum = 0.0;
    double trust_sum = 0.0;
    for (const auto& in : inputs) {
        sim_sum += in.sim;
        trust_sum += in.trust;
    }
    if (sim_sum == 0.0 && trust_sum == 0.0) return std::nullopt;

    FusedWeights out;
    out.weights.reserve(inputs.size());
    if (sim_sum == 0.0) {
        out.redistributed = alpha > 0.0;
        for (const auto& in : inputs) out.weights.push_back(in.trust / trust_sum);
    } else if (trust_sum == 0.0) {
        out.redistributed = alpha < 1.0;
        for (const auto& in : inputs) out.weights.push_back(in.sim / sim_sum);
    } else {
        for (const auto& in : inputs) {
            out.weights.push_back(alpha * in.sim / sim_sum + (1.0 - alpha) * in.trust / trust_sum);
        }
    }
    return out;
}

namespace {

Prediction fallback(const RatingMatrix& m, UserId u) {
    if (m.has_mean(u)) {
        return {m.scale().clamp(m.user_mean(u)), PredictionStatus::FallbackUserMean, 0, WeightSource::None};
    }
    // An empty training matrix has no global mean either; use the scale midpoint.
    double g = m.global_mean().value_or(m.scale().midpoint());
    return {m.scale().clamp(g), PredictionStatus::FallbackGlobalMean, 0, WeightSource::None};
}

double deviation(const RatingMatrix& m, UserId v, ItemId i) {
    auto r = m.rating(v, i);
    if (!r) {
        throw IntegrityError("neighbour " + std::to_string(v.value) + " did not rate item " +
                             std::to_string(i.value));
    }
    return *r - m.user_mean(v);
}

/// r̄_u + Σ w (r_vi - r̄_v) / Σ |w|, or nullopt when it is undefined.
std::optional<double> weighted_vote(const RatingMatrix& m, std::span<const Neighbor> neighbors,
                                    std::span<const double> weights, UserId u, ItemId i) {
    if (!m.has_mean(u) || neighbors.empty()) return std::nullopt;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < neighbors.size(); ++k) {
        num += weights[k] * deviation(m, neighbors[k].user, i);
        den += std::abs(weights[k]);
    }
    if (den == 0.0) return std::nullopt;
    return m.user_mean(u) + num / den;
}

std::optional<FusedWeights> fuse(const MethodConfig& cfg, std::span<const Neighbor> neighbors,
                                 std::span<const double> trust) {
    if (trust.size() != neighbors.size()) {
        throw IntegrityError("trust values are not aligned with the neighbour set");
    }
    std::vector<FusionInput> inputs;
    inputs.reserve(neighbors.size());
    for (std::size_t k = 0; k < neighbors.size(); ++k) inputs.push_back({neighbors[k].sim, trust[k]});
    return cfg.fusion == Fusion::IW ? fuse_iw(inputs) : fuse_lw(inputs, cfg.alpha);
}

}  // namespace

Prediction predict_cf(const RatingMatrix& m, std::span<const Neighbor> neighbors, UserId u, ItemId i) {
    std::vector<double> sims;
    sims.reserve(neighbors.size());
    for (const auto& n : neighbors) sims.push_back(n.sim);
    auto value = weighted_vote(m, neighbors, sims, u, i);
    if (!value) return fallback(m, u);
    return {m.scale().clamp(*value), PredictionStatus::Predicted, neighbors.size(), WeightSource::Similarity};
}

Prediction predict_tacf(const RatingMatrix& m, std::span<const Neighbor> neighbors,
                        std::span<const double> trust, const MethodConfig& cfg, UserId u, ItemId i) {
    if (cfg.fusion == Fusion::None) return predict_cf(m, neighbors, u, i);
    auto fused = fuse(cfg, neighbors, trust);
    if (!fused) return predict_cf(m, neighbors, u, i);
    auto value = weighted_vote(m, neighbors, fused->weights, u, i);
    if (!value) return predict_cf(m, neighbors, u, i);
    return {m.scale().clamp(*value), PredictionStatus::Predicted, neighbors.size(),
            fused->redistributed ? WeightSource::FusedRedistributed : WeightSource::Fused};
}

TrustAssets::TrustAssets(ExplicitTrust trust, const IdIndex* users, std::shared_ptr<TrustStore> full_store,
                         std::shared_ptr<TrustStore> explicit_only_store)
    : trust_(std::move(trust)),
      full_graph_(build_trust_graph(trust_, GraphVariant::WithCommonTrustee)),
      explicit_graph_(build_trust_graph(trust_, GraphVariant::ExplicitOnly)) {
    auto prepare = [this, users](std::shared_ptr<TrustStore> store, GraphVariant variant, TrustFormula formula) {
        auto provenance = trust_provenance(trust_, variant, users);
        if (!store) {
            return std::make_shared<TrustStore>(provenance, variant, formula, trust_.num_users());
        }
        if (store->variant() != variant) {
            throw IntegrityError("trust store was built for the " + std::string(to_string(store->variant())) +
                                 " graph, expected " + std::string(to_string(variant)));
        }
        store->require_provenance(provenance);
        return store;
    };
    full_ = std::make_unique<TrustInferencer>(
        full_graph_, prepare(std::move(full_store), GraphVariant::WithCommonTrustee, TrustFormula::Attenuated));
    explicit_only_ = std::make_unique<TrustInferencer>(
        explicit_graph_, prepare(std::move(explicit_only_store), GraphVariant::ExplicitOnly, TrustFormula::Plain));
}

TrustAssets::~TrustAssets() = default;

const TrustGraph& TrustAssets::graph(GraphVariant v) const {
    return v == GraphVariant::WithCommonTrustee ? full_graph_ : explicit_graph_;
}

const TrustInferencer& TrustAssets::inferencer(GraphVariant v) const {
    return v == GraphVariant::WithCommonTrustee ? *full_ : *explicit_only_;
}

std::vector<double> TrustAssets::trust_for(const MethodConfig& cfg, UserId u,
                                           std::span<const Neighbor> neighbors) const {
    std::vector<double> out;
    if (cfg.source == TrustSource::None) return out;
    out.assign(neighbors.size(), 0.0);
    const auto n = trust_.num_users();
    // Users outside the trust network have no trust links at all.
    if (u.value >= n) return out;

    if (cfg.source == TrustSource::ExplicitOnly) {
        for (std::size_t k = 0; k < neighbors.size(); ++k) {
            out[k] = trust_.trusts(u, neighbors[k].user) ? 1.0 : 0.0;
        }
        return out;
    }

    const auto& inf = cfg.source == TrustSource::Inferred ? *full_ : *explicit_only_;
    auto formula = cfg.formula.value_or(TrustFormula::Plain);
    std::vector<UserId> targets;
    std::vector<std::size_t> slots;
    for (std::size_t k = 0; k < neighbors.size(); ++k) {
        if (neighbors[k].user.value < n) {
            targets.push_back(neighbors[k].user);
            slots.push_back(k);
        }
    }
    auto estimates = inf.infer_all_from(u, targets, formula);
    for (std::size_t j = 0; j < slots.size(); ++j) out[slots[j]] = estimates[j].value;
    return out;
}

Predictor::Predictor(const SimilarityModel& similarity, const TrustAssets* trust, MethodConfig cfg,
                     std::size_t k)
    : similarity_(&similarity), trust_(trust), cfg_(cfg), k_(k) {
    if (k_ == 0) throw ConfigError("K must be at least 1");
    if (cfg_.source != TrustSource::None && !trust_) {
        throw ConfigError(std::string(to_string(cfg_.id)) + " needs trust data");
    }
}

Prediction Predictor::predict(UserId u, ItemId i) const {
    return explain(u, i).prediction;
}

PredictionAudit Predictor::explain(UserId u, ItemId i) const {
    const auto& m = similarity_->matrix();
    auto neighbors = select_neighbors(*similarity_, u, i, k_);
    std::vector<double> trust =
        trust_ ? trust_->trust_for(cfg_, u, neighbors) : std::vector<double>{};

    PredictionAudit audit;
    audit.prediction = cfg_.fusion == Fusion::None ? predict_cf(m, neighbors, u, i)
                                                   : predict_tacf(m, neighbors, trust, cfg_, u, i);

    std::vector<double> weights;
    if (audit.prediction.weights == WeightSource::Fused ||
        audit.prediction.weights == WeightSource::FusedRedistributed) {
        weights = fuse(cfg_, neighbors, trust)->weights;
    } else {
        for (const auto& n : neighbors) weights.push_back(n.sim);
    }
    for (std::size_t k = 0; k < neighbors.size(); ++k) {
        audit.rows.push_back({neighbors[k].user, neighbors[k].sim, trust.empty() ? 0.0 : trust[k], weights[k],
                              deviation(m, neighbors[k].user, i)});
    }
    return audit;
}

}  // namespace trustcf
