#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "trustcf/ids.hpp"

namespace trustcf {

/// Closed interval of admissible rating values.
struct RatingScale {
    double lo = 0.5;
    double hi = 4.0;

    bool contains(double r) const noexcept { return lo <= r && r <= hi; }
    double clamp(double r) const noexcept { return r < lo ? lo : (r > hi ? hi : r); }
    double midpoint() const noexcept { return 0.5 * (lo + hi); }

    bool operator==(const RatingScale&) const = default;
};

/// One stored rating in input order.
struct Rating {
    UserId user;
    ItemId item;
    double value = 0.0;
};

struct ItemRating {
    ItemId item;
    double value = 0.0;
};

struct UserRating {
    UserId user;
    double value = 0.0;
};

/// Sparse N x M rating matrix with cached per-user means.
///
/// Ratings are kept in input order (`entries()`) and additionally indexed by
/// user (items ascending) and by item (users ascending). The user and item
/// indices are shared between a matrix and every subset taken from it, so
/// dense ids stay valid across train/test splits.
class RatingMatrix {
public:
    RatingMatrix() : RatingMatrix(std::make_shared<IdIndex>(), std::make_shared<IdIndex>(), {}, {}) {}

    /// Throws RangeError for out-of-scale values and IntegrityError for
    /// duplicate (user, item) pairs or ids outside the indices.
    RatingMatrix(std::shared_ptr<const IdIndex> users,
                 std::shared_ptr<const IdIndex> items,
                 std::vector<Rating> entries,
                 RatingScale scale);

    /// Matrix over the same indices holding only `entries()[k]` for k in `positions`.
    RatingMatrix subset(std::span<const std::size_t> positions) const;

    std::size_t num_users() const noexcept { return users_->size(); }
    std::size_t num_items() const noexcept { return items_->size(); }
    std::size_t num_ratings() const noexcept { return entries_.size(); }
    /// Users with at least one rating.
    std::size_t num_rating_users() const noexcept { return rating_users_; }

    const IdIndex& users() const noexcept { return *users_; }
    const IdIndex& items() const noexcept { return *items_; }
    std::shared_ptr<const IdIndex> shared_users() const noexcept { return users_; }
    std::shared_ptr<const IdIndex> shared_items() const noexcept { return items_; }

    const RatingScale& scale() const noexcept { return scale_; }
    std::span<const Rating> entries() const noexcept { return entries_; }

    /// u's ratings, items ascending.
    std::span<const ItemRating> user_ratings(UserId u) const;
    /// i's raters, users ascending.
    std::span<const UserRating> item_raters(ItemId i) const;

    std::optional<double> rating(UserId u, ItemId i) const;

    bool has_mean(UserId u) const { return !user_ratings(u).empty(); }
    /// Throws UndefinedMeanError when u has no ratings.
    double user_mean(UserId u) const;
    std::optional<double> global_mean() const noexcept { return global_mean_; }

private:
    std::shared_ptr<const IdIndex> users_;
    std::shared_ptr<const IdIndex> items_;
    RatingScale scale_;
    std::vector<Rating> entries_;

    std::vector<std::size_t> user_offsets_;
    std::vector<ItemRating> by_user_;
    std::vector<std::size_t> item_offsets_;
    std::vector<UserRating> by_item_;

    std::vector<double> means_;
    std::optional<double> global_mean_;
    std::size_t rating_users_ = 0;
};

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

}  // namespace trustcf
