#include "trustcf/ids.hpp"

namespace trustcf {

std::uint32_t IdIndex::intern(std::string_view external) {
    if (auto it = lookup_.find(external); it != lookup_.end()) {
        return it->second;
    }
    auto dense = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(external);
    lookup_.emplace(names_.back(), dense);
    return dense;
}

std::optional<std::uint32_t> IdIndex::find(std::string_view external) const {
    if (auto it = lookup_.find(external); it != lookup_.end()) {
        return it->second;
    }
    return std::nullopt;
}

}  // namespace trustcf
