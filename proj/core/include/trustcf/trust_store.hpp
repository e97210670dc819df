#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "trustcf/trust_graph.hpp"
#include "trustcf/trust_inference.hpp"

namespace trustcf {

struct TrustStoreEntry {
    UserId target;
    TrustEstimate estimate;

    bool operator==(const TrustStoreEntry&) const = default;
};

/// Reachable targets of one source, sorted by target id.
using SourceTable = std::vector<TrustStoreEntry>;

/// Memoised single-source trust tables with the fingerprint of the explicit
/// trust they were derived from.
///
/// Text format, one record per line:
///
///     trustcf-trust-store 1
///     provenance <16 hex digits>
///     graph common-trustee|explicit-only
///     formula attenuated|plain
///     users <N>
///     sources all|<k> [id...]
///     <u> <v> <value> <category> <L> <M>
///
/// Rows are sorted by (u, v) and only reachable pairs are listed; a pair whose
/// source is complete but which has no row is unreachable.
class TrustStore {
public:
    TrustStore(std::uint64_t provenance, GraphVariant variant, TrustFormula formula,
               std::size_t num_users);

    std::uint64_t provenance() const noexcept { return provenance_; }
    GraphVariant variant() const noexcept { return variant_; }
    TrustFormula formula() const noexcept { return formula_; }
    std::size_t num_users() const noexcept { return tables_.size(); }

    /// Null when the source has not been computed yet.
    std::shared_ptr<const SourceTable> find(UserId source) const;

    /// Stores `table` unless another writer got there first; returns the kept table.
    std::shared_ptr<const SourceTable> insert(UserId source, SourceTable table);

    std::size_t complete_sources() const;
    std::size_t count(TrustCategory category) const;
    std::size_t nonzero_entries() const;

    /// Throws IntegrityError when the store was built from different trust data.
    void require_provenance(std::uint64_t expected) const;

    void write(std::ostream& out) const;
    /// Writes via a temporary file and rename.
    void save(const std::filesystem::path& path) const;

    static TrustStore read(std::istream& in, const std::string& source);
    static TrustStore load(const std::filesystem::path& path);

private:
    std::uint64_t provenance_;
    GraphVariant variant_;
    TrustFormula formula_;
    std::unique_ptr<std::mutex> mutex_;
    std::vector<std::shared_ptr<const SourceTable>> tables_;
};

/// Fingerprint of the explicit trust, the graph variant, and (when given) the
/// external user names behind the dense ids.
std::uint64_t trust_provenance(const ExplicitTrust& t, GraphVariant variant,
                               const IdIndex* users = nullptr);

std::string_view to_string(GraphVariant v);
GraphVariant parse_graph_variant(std::string_view name);

}  // namespace trustcf
