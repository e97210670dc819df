#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace trustcf {

/// Dense 0-based user index.
struct UserId {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const UserId&) const = default;
};

/// Dense 0-based item index.
struct ItemId {
    std::uint32_t value = 0;

    constexpr auto operator<=>(const ItemId&) const = default;
};

/// Bijection between external identifier strings and dense indices,
/// assigned in first-seen order.
class IdIndex {
public:
    /// Returns the dense index of `external`, assigning the next one if unseen.
    std::uint32_t intern(std::string_view external);

    std::optional<std::uint32_t> find(std::string_view external) const;

    const std::string& external(std::uint32_t dense) const { return names_.at(dense); }

    std::size_t size() const noexcept { return names_.size(); }

    const std::vector<std::string>& names() const noexcept { return names_; }

private:
    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> lookup_;
};

}  // namespace trustcf

template <>
struct std::hash<trustcf::UserId> {
    std::size_t operator()(trustcf::UserId id) const noexcept { return id.value; }
};
