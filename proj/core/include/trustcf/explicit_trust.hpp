#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trustcf/ids.hpp"

namespace trustcf {

/// Directed trust statement "trustor trusts trustee" (value 1).
struct TrustStatement {
    UserId trustor;
    UserId trustee;

    constexpr auto operator<=>(const TrustStatement&) const = default;
};

/// Validated set of explicit trust statements over a user index of size N.
class ExplicitTrust {
public:
    ExplicitTrust() = default;

    /// Throws IntegrityError on self-trust, duplicates, or ids >= num_users.
    ExplicitTrust(std::size_t num_users, std::vector<TrustStatement> statements);

    std::size_t num_users() const noexcept { return num_users_; }
    std::size_t size() const noexcept { return statements_.size(); }
    bool empty() const noexcept { return statements_.empty(); }

    /// Statements sorted by (trustor, trustee).
    std::span<const TrustStatement> statements() const noexcept { return statements_; }

    /// S(u): u's explicit trustees, ascending.
    std::span<const UserId> trustees(UserId u) const;
    /// Users who explicitly trust v, ascending.
    std::span<const UserId> trustors(UserId v) const;

    bool trusts(UserId u, UserId v) const;

    /// Stable 64-bit fingerprint of the statement set and user count.
    std::uint64_t fingerprint() const noexcept;

private:
    std::size_t num_users_ = 0;
    std::vector<TrustStatement> statements_;
    std::vector<std::size_t> out_offsets_;
    std::vector<UserId> out_;
    std::vector<std::size_t> in_offsets_;
    std::vector<UserId> in_;
};

}  // namespace trustcf
