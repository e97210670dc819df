#include "trustcf/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace trustcf {

PearsonResult pearson(const RatingMatrix& m, UserId u, UserId v, const SimilarityOptions& options) {
    // Same accumulation order for (u, v) and (v, u).
    if (v < u) std::swap(u, v);
    auto a = m.user_ratings(u);
    auto b = m.user_ratings(v);

    struct Pair {
        double x;
        double y;
    };
    std::vector<Pair> common;
    for (std::size_t p = 0, q = 0; p < a.size() && q < b.size();) {
        if (a[p].item < b[q].item) {
            ++p;
        } else if (b[q].item < a[p].item) {
            ++q;
        } else {
            common.push_back({a[p].value, b[q].value});
            ++p;
            ++q;
        }
    }

    PearsonResult result;
    result.corated = common.size();
    if (common.empty() || common.size() < options.min_corated) return result;

    double mean_a = 0.0;
    double mean_b = 0.0;
    if (options.mean == MeanConvention::Global) {
        mean_a = m.user_mean(u);
        mean_b = m.user_mean(v);
    } else {
        for (const auto& c : common) {
            mean_a += c.x;
            mean_b += c.y;
        }
        mean_a /= static_cast<double>(common.size());
        mean_b /= static_cast<double>(common.size());
    }

    double num = 0.0;
    double da = 0.0;
    double db = 0.0;
    for (const auto& c : common) {
        double x = c.x - mean_a;
        double y = c.y - mean_b;
        num += x * y;
        da += x * x;
        db += y * y;
    }
    if (da == 0.0 || db == 0.0) return result;
    result.value = std::clamp(num / (std::sqrt(da) * std::sqrt(db)), -1.0, 1.0);
    return result;
}

SimilarityModel::SimilarityModel(const RatingMatrix& m, SimilarityOptions options)
    : matrix_(&m), options_(options), once_(m.num_users()), rows_(m.num_users()) {}

std::span<const PearsonResult> SimilarityModel::row(UserId u) const {
    std::call_once(once_.at(u.value), [this, u] {
        const auto& m = *matrix_;
        std::vector<PearsonResult> row(m.num_users());
        std::vector<std::uint32_t> candidates;
        std::vector<char> seen(m.num_users(), 0);
        for (const auto& r : m.user_ratings(u)) {
            for (const auto& rater : m.item_raters(r.item)) {
                if (rater.user != u && !seen[rater.user.value]) {
                    seen[rater.user.value] = 1;
                    candidates.push_back(rater.user.value);
                }
            }
        }
        for (auto v : candidates) {
            row[v] = pearson(m, u, UserId{v}, options_);
        }
        rows_[u.value] = std::move(row);
    });
    return rows_[u.value];
}

PearsonResult SimilarityModel::get(UserId u, UserId v) const {
    return row(u)[v.value];
}

NeighborSet select_neighbors(const SimilarityModel& s, UserId u, ItemId i, std::size_t k) {
    NeighborSet candidates;
    if (k == 0) return candidates;
    auto row = s.row(u);
    for (const auto& rater : s.matrix().item_raters(i)) {
        if (rater.user == u) continue;
        const auto& sim = row[rater.user.value];
        if (!sim.value) continue;
        if (s.options().positive_only && *sim.value <= 0.0) continue;
        candidates.push_back({rater.user, *sim.value});
    }
    auto better = [](const Neighbor& a, const Neighbor& b) {
        if (a.sim != b.sim) return a.sim > b.sim;
        return a.user < b.user;
    };
    if (candidates.size() > k) {
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                          candidates.end(), better);
        candidates.resize(k);
    } else {
        std::sort(candidates.begin(), candidates.end(), better);
    }
    return candidates;
}

}  // namespace trustcf
