#include "trustcf/rating_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trustcf/errors.hpp"

namespace trustcf {

double compensated_sum(std::span<const double> values) {
    double sum = 0.0;
    double c = 0.0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

RatingMatrix::RatingMatrix(std::shared_ptr<const IdIndex> users,
                           std::shared_ptr<const IdIndex> items,
                           std::vector<Rating> entries,
                           RatingScale scale)
    : users_(std::move(users)), items_(std::move(items)), scale_(scale), entries_(std::move(entries)) {
    const std::size_t n = users_->size();
    const std::size_t m = items_->size();

    user_offsets_.assign(n + 1, 0);
    item_offsets_.assign(m + 1, 0);
    for (const auto& r : entries_) {
        if (r.user.value >= n || r.item.value >= m) {
            throw IntegrityError("rating references an id outside the user/item index");
        }
        if (!scale_.contains(r.value) || std::isnan(r.value)) {
            throw RangeError("rating " + std::to_string(r.value) + " outside [" +
                             std::to_string(scale_.lo) + ", " + std::to_string(scale_.hi) + "]");
        }
        ++user_offsets_[r.user.value + 1];
        ++item_offsets_[r.item.value + 1];
    }
    for (std::size_t u = 0; u < n; ++u) user_offsets_[u + 1] += user_offsets_[u];
    for (std::size_t i = 0; i < m; ++i) item_offsets_[i + 1] += item_offsets_[i];

    by_user_.resize(entries_.size());
    by_item_.resize(entries_.size());
    {
        auto ucur = user_offsets_;
        auto icur = item_offsets_;
        for (const auto& r : entries_) {
            by_user_[ucur[r.user.value]++] = {r.item, r.value};
            by_item_[icur[r.item.value]++] = {r.user, r.value};
        }
    }

    for (std::size_t u = 0; u < n; ++u) {
        auto first = by_user_.begin() + static_cast<std::ptrdiff_t>(user_offsets_[u]);
        auto last = by_user_.begin() + static_cast<std::ptrdiff_t>(user_offsets_[u + 1]);
        std::sort(first, last, [](const ItemRating& a, const ItemRating& b) { return a.item < b.item; });
        auto dup = std::adjacent_find(first, last, [](const ItemRating& a, const ItemRating& b) {
            return a.item == b.item;
        });
        if (dup != last) {
            throw IntegrityError("duplicate rating for user '" + users_->external(static_cast<std::uint32_t>(u)) +
                                 "' and item '" + items_->external(dup->item.value) + "'");
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        auto first = by_item_.begin() + static_cast<std::ptrdiff_t>(item_offsets_[i]);
        auto last = by_item_.begin() + static_cast<std::ptrdiff_t>(item_offsets_[i + 1]);
        std::sort(first, last, [](const UserRating& a, const UserRating& b) { return a.user < b.user; });
    }

    means_.assign(n, 0.0);
    std::vector<double> buf;
    for (std::size_t u = 0; u < n; ++u) {
        auto row = user_ratings(UserId{static_cast<std::uint32_t>(u)});
        if (row.empty()) continue;
        ++rating_users_;
        buf.clear();
        for (const auto& r : row) buf.push_back(r.value);
        means_[u] = compensated_sum(buf) / static_cast<double>(buf.size());
    }
    if (!entries_.empty()) {
        buf.clear();
        for (const auto& r : entries_) buf.push_back(r.value);
        global_mean_ = compensated_sum(buf) / static_cast<double>(buf.size());
    }
}

RatingMatrix RatingMatrix::subset(std::span<const std::size_t> positions) const {
    std::vector<Rating> picked;
    picked.reserve(positions.size());
    for (auto p : positions) picked.push_back(entries_.at(p));
    return RatingMatrix(users_, items_, std::move(picked), scale_);
}

std::span<const ItemRating> RatingMatrix::user_ratings(UserId u) const {
    auto idx = static_cast<std::size_t>(u.value);
    if (idx + 1 >= user_offsets_.size()) return {};
    return std::span<const ItemRating>(by_user_).subspan(user_offsets_[idx],
                                                         user_offsets_[idx + 1] - user_offsets_[idx]);
}

std::span<const UserRating> RatingMatrix::item_raters(ItemId i) const {
    auto idx = static_cast<std::size_t>(i.value);
    if (idx + 1 >= item_offsets_.size()) return {};
    return std::span<const UserRating>(by_item_).subspan(item_offsets_[idx],
                                                         item_offsets_[idx + 1] - item_offsets_[idx]);
}

std::optional<double> RatingMatrix::rating(UserId u, ItemId i) const {
    auto row = user_ratings(u);
    auto it = std::lower_bound(row.begin(), row.end(), i,
                               [](const ItemRating& r, ItemId key) { return r.item < key; });
    if (it != row.end() && it->item == i) return it->value;
    return std::nullopt;
}

double RatingMatrix::user_mean(UserId u) const {
    if (!has_mean(u)) {
        throw UndefinedMeanError("user " + std::to_string(u.value) + " has no ratings");
    }
    return means_[u.value];
}

}  // namespace trustcf
