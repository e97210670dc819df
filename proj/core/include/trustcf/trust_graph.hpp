#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trustcf/explicit_trust.hpp"

namespace trustcf {

enum class EdgeKind : std::uint8_t {
    Explicit,       ///< t_e(i, j) = 1
    CommonTrustee,  ///< Jaccard overlap of explicit trustee sets
};

/// Which edges a trust graph is built from.
enum class GraphVariant : std::uint8_t {
    WithCommonTrustee,  ///< explicit edges plus Jaccard edges
    ExplicitOnly,
};

struct TrustEdge {
    UserId to;
    double weight = 0.0;  ///< in (0, 1]
    EdgeKind kind = EdgeKind::Explicit;
};

struct WeightedEdge {
    UserId from;
    UserId to;
    double weight = 0.0;
    EdgeKind kind = EdgeKind::Explicit;
};

/// Weighted directed trust graph in CSR form; out-edges sorted by target.
class TrustGraph {
public:
    TrustGraph() = default;

    /// Throws IntegrityError on self-loops, duplicate (from, to) pairs,
    /// weights outside (0, 1], explicit edges with weight != 1, or ids >= n.
    static TrustGraph from_edges(std::size_t num_nodes, std::vector<WeightedEdge> edges);

    std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    std::span<const TrustEdge> out_edges(UserId u) const;
    std::optional<TrustEdge> edge(UserId from, UserId to) const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<TrustEdge> edges_;
};

/// |S(u) ∩ S(v)| / |S(u) ∪ S(v)| over explicit trustee sets; 0 for an empty union.
double jaccard_trust(const ExplicitTrust& t, UserId u, UserId v);

/// One weight-1 edge per explicit statement. With `WithCommonTrustee`, every
/// ordered pair (i, j) whose trustee sets intersect and which has no explicit
/// i -> j statement also gets an edge weighted by their Jaccard overlap.
TrustGraph build_trust_graph(const ExplicitTrust& t,
                             GraphVariant variant = GraphVariant::WithCommonTrustee);

struct ReciprocalArc {
    UserId to;
    double length = 0.0;  ///< 1 / weight, always >= 1
    EdgeKind kind = EdgeKind::Explicit;
    double weight = 0.0;
};

/// Edge lengths 1/w over the same edge set as the source graph.
class ReciprocalGraph {
public:
    explicit ReciprocalGraph(const TrustGraph& g);

    std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_arcs() const noexcept { return arcs_.size(); }
    std::span<const ReciprocalArc> out_arcs(UserId u) const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<ReciprocalArc> arcs_;
};

/// Minimal-length path. Ties on length go to fewer hops, then to the
/// lexicographically smallest node sequence.
struct TrustPath {
    double length = 0.0;
    std::uint32_t hops = 0;  ///< edges on the path
    std::vector<UserId> nodes;
};

/// Single-source result over every node.
class ShortestPathTree {
public:
    static constexpr std::uint32_t kNoPredecessor = UINT32_MAX;

    UserId source() const noexcept { return source_; }
    bool reachable(UserId v) const { return v == source_ || pred_.at(v.value) != kNoPredecessor; }
    double length(UserId v) const { return length_.at(v.value); }
    std::uint32_t hops(UserId v) const { return hops_.at(v.value); }
    /// Kind and weight of the last edge on the path to v (v != source, reachable).
    const ReciprocalArc& last_arc(UserId v) const { return last_arc_.at(v.value); }
    std::optional<TrustPath> path_to(UserId v) const;

private:
    friend ShortestPathTree single_source_paths(const ReciprocalGraph&, UserId);

    UserId source_;
    std::vector<double> length_;
    std::vector<std::uint32_t> hops_;
    std::vector<std::uint32_t> pred_;
    std::vector<ReciprocalArc> last_arc_;
};

/// Dijkstra from `source` with (length, hops, node sequence) ordering.
ShortestPathTree single_source_paths(const ReciprocalGraph& g, UserId source);

/// Shortest path u -> v, or nullopt when v is unreachable. Requires u != v.
std::optional<TrustPath> shortest_trust_path(const ReciprocalGraph& g, UserId u, UserId v);

}  // namespace trustcf
