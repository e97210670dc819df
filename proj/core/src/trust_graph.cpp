#include "trustcf/trust_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "trustcf/errors.hpp"

namespace trustcf {

TrustGraph TrustGraph::from_edges(std::size_t num_nodes, std::vector<WeightedEdge> edges) {
    for (const auto& e : edges) {
        if (e.from.value >= num_nodes || e.to.value >= num_nodes) {
            throw IntegrityError("trust edge references a node outside the graph");
        }
        if (e.from == e.to) {
            throw IntegrityError("self-loop on node " + std::to_string(e.from.value));
        }
        if (!(e.weight > 0.0 && e.weight <= 1.0)) {
            throw IntegrityError("trust edge weight " + std::to_string(e.weight) + " outside (0, 1]");
        }
        if (e.kind == EdgeKind::Explicit && e.weight != 1.0) {
            throw IntegrityError("explicit trust edge must have weight 1");
        }
    }
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    auto dup = std::adjacent_find(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.from == b.from && a.to == b.to;
    });
    if (dup != edges.end()) {
        throw IntegrityError("duplicate trust edge " + std::to_string(dup->from.value) + " -> " +
                             std::to_string(dup->to.value));
    }

    TrustGraph g;
    g.offsets_.assign(num_nodes + 1, 0);
    g.edges_.reserve(edges.size());
    for (const auto& e : edges) {
        ++g.offsets_[e.from.value + 1];
        g.edges_.push_back({e.to, e.weight, e.kind});
    }
    for (std::size_t u = 0; u < num_nodes; ++u) g.offsets_[u + 1] += g.offsets_[u];
    return g;
}

std::span<const TrustEdge> TrustGraph::out_edges(UserId u) const {
    if (u.value + 1 >= offsets_.size()) return {};
    return std::span<const TrustEdge>(edges_).subspan(offsets_[u.value], offsets_[u.value + 1] - offsets_[u.value]);
}

std::optional<TrustEdge> TrustGraph::edge(UserId from, UserId to) const {
    auto out = out_edges(from);
    auto it = std::lower_bound(out.begin(), out.end(), to,
                               [](const TrustEdge& e, UserId key) { return e.to < key; });
    if (it != out.end() && it->to == to) return *it;
    return std::nullopt;
}

double jaccard_trust(const ExplicitTrust& t, UserId u, UserId v) {
    auto a = t.trustees(u);
    auto b = t.trustees(v);
    std::size_t common = 0;
    for (std::size_t p = 0, q = 0; p < a.size() && q < b.size();) {
        if (a[p] < b[q]) {
            ++p;
        } else if (b[q] < a[p]) {
            ++q;
        } else {
            ++common;
            ++p;
            ++q;
        }
    }
    std::size_t uni = a.size() + b.size() - common;
    return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

TrustGraph build_trust_graph(const ExplicitTrust& t, GraphVariant variant) {
    const std::size_t n = t.num_users();
    std::vector<WeightedEdge> edges;
    edges.reserve(t.size());
    for (const auto& s : t.statements()) {
        edges.push_back({s.trustor, s.trustee, 1.0, EdgeKind::Explicit});
    }

    if (variant == GraphVariant::WithCommonTrustee) {
        // Pairs sharing a trustee k are found through k's trustor list.
        std::vector<std::uint32_t> shared(n, 0);
        std::vector<std::uint32_t> touched;
        for (std::uint32_t i = 0; i < n; ++i) {
            UserId ui{i};
            auto mine = t.trustees(ui);
            if (mine.empty()) continue;
            for (auto k : mine) {
                for (auto j : t.trustors(k)) {
                    if (j == ui) continue;
                    if (shared[j.value]++ == 0) touched.push_back(j.value);
                }
            }
            std::sort(touched.begin(), touched.end());
            for (auto j : touched) {
                UserId uj{j};
                std::size_t common = shared[j];
                shared[j] = 0;
                if (t.trusts(ui, uj)) continue;
                std::size_t uni = mine.size() + t.trustees(uj).size() - common;
                edges.push_back({ui, uj, static_cast<double>(common) / static_cast<double>(uni),
                                 EdgeKind::CommonTrustee});
            }
            touched.clear();
        }
    }
    return TrustGraph::from_edges(n, std::move(edges));
}

ReciprocalGraph::ReciprocalGraph(const TrustGraph& g) {
    offsets_.assign(g.num_nodes() + 1, 0);
    arcs_.reserve(g.num_edges());
    for (std::uint32_t u = 0; u < g.num_nodes(); ++u) {
        for (const auto& e : g.out_edges(UserId{u})) {
            arcs_.push_back({e.to, 1.0 / e.weight, e.kind, e.weight});
        }
        offsets_[u + 1] = arcs_.size();
    }
}

std::span<const ReciprocalArc> ReciprocalGraph::out_arcs(UserId u) const {
    if (u.value + 1 >= offsets_.size()) return {};
    return std::span<const ReciprocalArc>(arcs_).subspan(offsets_[u.value], offsets_[u.value + 1] - offsets_[u.value]);
}

std::optional<TrustPath> ShortestPathTree::path_to(UserId v) const {
    if (!reachable(v)) return std::nullopt;
    TrustPath path;
    path.length = v == source_ ? 0.0 : length_[v.value];
    path.hops = v == source_ ? 0 : hops_[v.value];
    for (auto x = v.value; x != source_.value; x = pred_[x]) {
        path.nodes.push_back(UserId{x});
    }
    path.nodes.push_back(source_);
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
}

ShortestPathTree single_source_paths(const ReciprocalGraph& g, UserId source) {
    const std::size_t n = g.num_nodes();
    if (source.value >= n) throw IntegrityError("source outside the trust graph");

    ShortestPathTree t;
    t.source_ = source;
    t.length_.assign(n, std::numeric_limits<double>::infinity());
    t.hops_.assign(n, 0);
    t.pred_.assign(n, ShortestPathTree::kNoPredecessor);
    t.last_arc_.assign(n, ReciprocalArc{});
    t.length_[source.value] = 0.0;

    auto nodes_to = [&t](std::uint32_t x) {
        std::vector<std::uint32_t> seq;
        for (; x != t.source_.value; x = t.pred_[x]) seq.push_back(x);
        seq.push_back(t.source_.value);
        std::reverse(seq.begin(), seq.end());
        return seq;
    };

    using Key = std::tuple<double, std::uint32_t, std::uint32_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
    std::vector<char> settled(n, 0);
    heap.emplace(0.0, 0u, source.value);

    while (!heap.empty()) {
        auto [len, hops, x] = heap.top();
        heap.pop();
        if (settled[x]) continue;
        settled[x] = 1;
        for (const auto& arc : g.out_arcs(UserId{x})) {
            auto y = arc.to.value;
            if (settled[y] || y == source.value) continue;
            double nl = len + arc.length;
            std::uint32_t nh = hops + 1;
            bool better = false;
            if (nl != t.length_[y]) {
                better = nl < t.length_[y];
            } else if (nh != t.hops_[y]) {
                better = nh < t.hops_[y];
            } else {
                // Equal length and hops: keep the lexicographically smaller node sequence.
                better = nodes_to(x) < nodes_to(t.pred_[y]);
            }
            if (better) {
                t.length_[y] = nl;
                t.hops_[y] = nh;
                t.pred_[y] = x;
                t.last_arc_[y] = arc;
                heap.emplace(nl, nh, y);
            }
        }
    }
    return t;
}

std::optional<TrustPath> shortest_trust_path(const ReciprocalGraph& g, UserId u, UserId v) {
    if (u == v) throw IntegrityError("shortest_trust_path requires distinct endpoints");
    return single_source_paths(g, u).path_to(v);
}

}  // namespace trustcf
