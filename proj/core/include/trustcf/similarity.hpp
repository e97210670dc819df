#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "trustcf/rating_matrix.hpp"

namespace trustcf {

/// Which mean is subtracted inside the Pearson sums.
enum class MeanConvention {
    Global,    ///< r̄_u over all of u's ratings (shared with the predictor)
    CoRated,   ///< mean over the co-rated items only
};

struct SimilarityOptions {
    MeanConvention mean = MeanConvention::Global;
    /// Fewer co-rated items than this leaves the similarity undefined.
    std::size_t min_corated = 2;
    /// Drop neighbours with sim <= 0.
    bool positive_only = false;
};

struct PearsonResult {
    std::optional<double> value;  ///< in [-1, 1] when defined
    std::size_t corated = 0;
};

/// Pearson correlation of u and v over their co-rated items.
/// Undefined when fewer than `min_corated` items are shared or either
/// centred vector has zero norm. Exactly symmetric in (u, v).
PearsonResult pearson(const RatingMatrix& m, UserId u, UserId v,
                      const SimilarityOptions& options = {});

/// Lazily memoised similarity rows. A row holds sim(u, v) for every v; rows
/// are computed once on first access and may be requested concurrently.
class SimilarityModel {
public:
    explicit SimilarityModel(const RatingMatrix& m, SimilarityOptions options = {});

    const RatingMatrix& matrix() const noexcept { return *matrix_; }
    const SimilarityOptions& options() const noexcept { return options_; }

    /// sim(u, ·) indexed by dense user id; entries for users sharing no item
    /// with u are undefined.
    std::span<const PearsonResult> row(UserId u) const;

    PearsonResult get(UserId u, UserId v) const;

private:
    const RatingMatrix* matrix_;
    SimilarityOptions options_;
    mutable std::vector<std::once_flag> once_;
    mutable std::vector<std::vector<PearsonResult>> rows_;
};

struct Neighbor {
    UserId user;
    double sim = 0.0;

    bool operator==(const Neighbor&) const = default;
};

/// Voting users of u for item i: at most K raters of i with defined
/// similarity, sim descending, ties by ascending user id, u excluded.
using NeighborSet = std::vector<Neighbor>;

NeighborSet select_neighbors(const SimilarityModel& s, UserId u, ItemId i, std::size_t k);

}  // namespace trustcf
