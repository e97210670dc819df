#include "trustcf/explicit_trust.hpp"

#include <algorithm>
#include <string>

#include "trustcf/errors.hpp"

namespace trustcf {

namespace {

void build_csr(std::size_t n, const std::vector<TrustStatement>& statements, bool outgoing,
               std::vector<std::size_t>& offsets, std::vector<UserId>& targets) {
    offsets.assign(n + 1, 0);
    for (const auto& s : statements) {
        ++offsets[(outgoing ? s.trustor : s.trustee).value + 1];
    }
    for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
    targets.resize(statements.size());
    auto cursor = offsets;
    for (const auto& s : statements) {
        auto key = (outgoing ? s.trustor : s.trustee).value;
        targets[cursor[key]++] = outgoing ? s.trustee : s.trustor;
    }
    for (std::size_t u = 0; u < n; ++u) {
        std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                  targets.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]));
    }
}

}  // namespace

ExplicitTrust::ExplicitTrust(std::size_t num_users, std::vector<TrustStatement> statements)
    : num_users_(num_users), statements_(std::move(statements)) {
    for (const auto& s : statements_) {
        if (s.trustor.value >= num_users_ || s.trustee.value >= num_users_) {
            throw IntegrityError("trust statement references an id outside the user index");
        }
        if (s.trustor == s.trustee) {
            throw IntegrityError("self-trust statement for user " + std::to_string(s.trustor.value));
        }
    }
    std::sort(statements_.begin(), statements_.end());
    if (auto dup = std::adjacent_find(statements_.begin(), statements_.end()); dup != statements_.end()) {
        throw IntegrityError("duplicate trust statement " + std::to_string(dup->trustor.value) + " -> " +
                             std::to_string(dup->trustee.value));
    }
    build_csr(num_users_, statements_, true, out_offsets_, out_);
    build_csr(num_users_, statements_, false, in_offsets_, in_);
}

std::span<const UserId> ExplicitTrust::trustees(UserId u) const {
    if (u.value >= num_users_) return {};
    return std::span<const UserId>(out_).subspan(out_offsets_[u.value],
                                                 out_offsets_[u.value + 1] - out_offsets_[u.value]);
}

std::span<const UserId> ExplicitTrust::trustors(UserId v) const {
    if (v.value >= num_users_) return {};
    return std::span<const UserId>(in_).subspan(in_offsets_[v.value],
                                                in_offsets_[v.value + 1] - in_offsets_[v.value]);
}

bool ExplicitTrust::trusts(UserId u, UserId v) const {
    auto s = trustees(u);
    return std::binary_search(s.begin(), s.end(), v);
}

std::uint64_t ExplicitTrust::fingerprint() const noexcept {
    // FNV-1a over the little-endian bytes of 64-bit words.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t word) {
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(num_users_);
    mix(statements_.size());
    for (const auto& s : statements_) {
        mix((static_cast<std::uint64_t>(s.trustor.value) << 32) | s.trustee.value);
    }
    return h;
}

}  // namespace trustcf
