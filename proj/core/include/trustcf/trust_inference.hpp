#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "trustcf/trust_graph.hpp"

namespace trustcf {

/// How a propagated path is turned into a trust value.
enum class TrustFormula : std::uint8_t {
    Attenuated,  ///< 1 / (M * L), M = hops
    Plain,       ///< 1 / L
};

enum class TrustCategory : std::uint8_t {
    Explicit,       ///< t_e(u, v) = 1
    CommonTrustee,  ///< shortest path is the direct Jaccard edge
    Propagated,     ///< multi-hop shortest path
    Unreachable,
};

std::string_view to_string(TrustFormula f);
std::string_view to_string(TrustCategory c);
TrustFormula parse_trust_formula(std::string_view name);
TrustCategory parse_trust_category(std::string_view name);

struct TrustEstimate {
    double value = 0.0;  ///< in [0, 1]
    TrustCategory category = TrustCategory::Unreachable;
    double path_length = 0.0;  ///< L, 0 when unreachable
    std::uint32_t hops = 0;    ///< M, 0 when unreachable

    bool operator==(const TrustEstimate&) const = default;
};

/// Trust carried by a path of total reciprocal length L over M hops.
double path_trust(double length, std::uint32_t hops, TrustFormula formula);

/// Classifies the path to v found in `tree` and evaluates it under `formula`.
TrustEstimate estimate_from_tree(const ShortestPathTree& tree, UserId v, TrustFormula formula);

/// Re-evaluates an estimate under another formula. Only propagated values differ.
TrustEstimate with_formula(const TrustEstimate& e, TrustFormula formula);

class TrustStore;

/// Implicit trust estimator over a fixed trust graph. Single-source tables are
/// computed on demand and memoised in a TrustStore, which may be shared,
/// preloaded from disk, and queried from several threads.
class TrustInferencer {
public:
    /// `store` must describe the same graph; a private store is created when null.
    explicit TrustInferencer(const TrustGraph& g, std::shared_ptr<TrustStore> store = nullptr);
    ~TrustInferencer();

    TrustInferencer(const TrustInferencer&) = delete;
    TrustInferencer& operator=(const TrustInferencer&) = delete;

    /// t̂(u, v). Requires u != v.
    TrustEstimate infer(UserId u, UserId v, TrustFormula formula) const;

    /// t̂(u, v) for every v in `targets`, aligned with `targets`, from one
    /// single-source run.
    std::vector<TrustEstimate> infer_all_from(UserId u, std::span<const UserId> targets,
                                              TrustFormula formula) const;

    const TrustGraph& graph() const noexcept { return *graph_; }
    const ReciprocalGraph& reciprocal() const noexcept { return reciprocal_; }
    const std::shared_ptr<TrustStore>& store() const noexcept { return store_; }

    /// Fills the store for every source, using up to `jobs` threads.
    void precompute_all(unsigned jobs = 1) const;

private:
    const TrustGraph* graph_;
    ReciprocalGraph reciprocal_;
    std::shared_ptr<TrustStore> store_;
};

}  // namespace trustcf
