#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "trustcf/errors.hpp"
#include "trustcf/trust_graph.hpp"

namespace trustcf {
namespace {

ExplicitTrust make_trust(std::size_t n, const std::set<std::pair<int, int>>& pairs) {
    std::vector<TrustStatement> s;
    for (auto [a, b] : pairs) {
        s.push_back({UserId{static_cast<std::uint32_t>(a)}, UserId{static_cast<std::uint32_t>(b)}});
    }
    return ExplicitTrust(n, std::move(s));
}

std::set<std::pair<int, int>> random_statements(std::mt19937_64& rng, int n, double density) {
    std::bernoulli_distribution coin(density);
    std::set<std::pair<int, int>> out;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a != b && coin(rng)) out.insert({a, b});
        }
    }
    return out;
}

TEST(Jaccard, TwoOfThreeSharedTrustees) {
    // u = 0, v = 1 trust {a, b} and {a, b, c} with a, b, c = 2, 3, 4.
    auto t = make_trust(5, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}});
    EXPECT_EQ(jaccard_trust(t, UserId{0}, UserId{1}), 2.0 / 3.0);
    auto g = build_trust_graph(t);
    auto e = g.edge(UserId{0}, UserId{1});
    ASSERT_TRUE(e);
    EXPECT_EQ(e->kind, EdgeKind::CommonTrustee);
    EXPECT_EQ(e->weight, 2.0 / 3.0);
    auto back = g.edge(UserId{1}, UserId{0});
    ASSERT_TRUE(back);
    EXPECT_EQ(back->weight, 2.0 / 3.0);
}

TEST(Jaccard, SetArithmeticCases) {
    // S(0) = {2, 3}, S(1) = {3, 4}, S(5) = {2, 3}, S(6) = {4}
    auto t = make_trust(7, {{0, 2}, {0, 3}, {1, 3}, {1, 4}, {5, 2}, {5, 3}, {6, 4}});
    EXPECT_EQ(jaccard_trust(t, UserId{0}, UserId{1}), 1.0 / 3.0);
    EXPECT_EQ(jaccard_trust(t, UserId{0}, UserId{5}), 1.0);
    EXPECT_EQ(jaccard_trust(t, UserId{0}, UserId{6}), 0.0);
    EXPECT_EQ(jaccard_trust(t, UserId{2}, UserId{3}), 0.0);
}

TEST(BuildTrustGraph, EmptyTrustGivesEmptyGraph) {
    auto g = build_trust_graph(ExplicitTrust(4, {}));
    EXPECT_EQ(g.num_nodes(), 4u);
    EXPECT_EQ(g.num_edges(), 0u);
}

TEST(BuildTrustGraph, ExplicitEdgeOverridesJaccardInItsDirection) {
    // 0 and 1 share trustee 2; 0 also trusts 1 explicitly.
    auto t = make_trust(3, {{0, 1}, {0, 2}, {1, 2}});
    auto g = build_trust_graph(t);
    auto fwd = g.edge(UserId{0}, UserId{1});
    ASSERT_TRUE(fwd);
    EXPECT_EQ(fwd->kind, EdgeKind::Explicit);
    EXPECT_EQ(fwd->weight, 1.0);
    auto back = g.edge(UserId{1}, UserId{0});
    ASSERT_TRUE(back);
    EXPECT_EQ(back->kind, EdgeKind::CommonTrustee);
    EXPECT_EQ(back->weight, 0.5);

    auto explicit_only = build_trust_graph(t, GraphVariant::ExplicitOnly);
    EXPECT_EQ(explicit_only.num_edges(), 3u);
    EXPECT_FALSE(explicit_only.edge(UserId{1}, UserId{0}));
}

TEST(BuildTrustGraph, MatchesBruteForceEnumeration) {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 20; ++round) {
        const int n = 20;
        auto pairs = random_statements(rng, n, 0.08);
        auto g = build_trust_graph(make_trust(n, pairs));
        auto expected = testing::brute_trust_edges(n, pairs);
        ASSERT_EQ(g.num_edges(), expected.size());
        for (const auto& e : expected) {
            auto got = g.edge(UserId{static_cast<std::uint32_t>(e.from)}, UserId{static_cast<std::uint32_t>(e.to)});
            ASSERT_TRUE(got) << e.from << "->" << e.to;
            EXPECT_EQ(got->weight, e.weight);
            EXPECT_EQ(got->kind == EdgeKind::Explicit, e.is_explicit);
        }
    }
}

TEST(TrustGraph, RejectsInvalidEdges) {
    using E = WeightedEdge;
    EXPECT_THROW(TrustGraph::from_edges(2, {E{UserId{0}, UserId{0}, 1.0}}), IntegrityError);
    EXPECT_THROW(TrustGraph::from_edges(2, {E{UserId{0}, UserId{1}, 0.0, EdgeKind::CommonTrustee}}), IntegrityError);
    EXPECT_THROW(TrustGraph::from_edges(2, {E{UserId{0}, UserId{1}, 1.5, EdgeKind::CommonTrustee}}), IntegrityError);
    EXPECT_THROW(TrustGraph::from_edges(2, {E{UserId{0}, UserId{1}, 0.5, EdgeKind::Explicit}}), IntegrityError);
    EXPECT_THROW(TrustGraph::from_edges(2, {E{UserId{0}, UserId{2}, 1.0}}), IntegrityError);
    EXPECT_THROW(TrustGraph::from_edges(2, {E{UserId{0}, UserId{1}, 1.0}, E{UserId{0}, UserId{1}, 1.0}}),
                 IntegrityError);
}

TEST(ReciprocalGraph, LengthsAreInverseWeights) {
    auto g = TrustGraph::from_edges(3, {{UserId{0}, UserId{1}, 0.25, EdgeKind::CommonTrustee},
                                        {UserId{1}, UserId{2}, 1.0, EdgeKind::Explicit}});
    ReciprocalGraph r(g);
    EXPECT_EQ(r.num_arcs(), 2u);
    ASSERT_EQ(r.out_arcs(UserId{0}).size(), 1u);
    EXPECT_EQ(r.out_arcs(UserId{0})[0].length, 4.0);
    EXPECT_EQ(r.out_arcs(UserId{1})[0].length, 1.0);
    EXPECT_TRUE(r.out_arcs(UserId{2}).empty());
}

// u = 0, k = 1, v = 2; both hops have reciprocal length 2.
TrustGraph two_hop_graph() {
    return TrustGraph::from_edges(3, {{UserId{0}, UserId{1}, 0.5, EdgeKind::CommonTrustee},
                                      {UserId{1}, UserId{2}, 0.5, EdgeKind::CommonTrustee}});
}

TEST(ShortestTrustPath, TwoHopPathOfLengthFour) {
    ReciprocalGraph r(two_hop_graph());
    auto p = shortest_trust_path(r, UserId{0}, UserId{2});
    ASSERT_TRUE(p);
    EXPECT_EQ(p->length, 4.0);
    EXPECT_EQ(p->hops, 2u);
    EXPECT_EQ(p->nodes, (std::vector<UserId>{UserId{0}, UserId{1}, UserId{2}}));
    EXPECT_FALSE(shortest_trust_path(r, UserId{2}, UserId{0}));
    EXPECT_THROW(shortest_trust_path(r, UserId{1}, UserId{1}), IntegrityError);
}

TEST(ShortestTrustPath, DirectExplicitEdge) {
    ReciprocalGraph r(build_trust_graph(make_trust(2, {{0, 1}})));
    auto p = shortest_trust_path(r, UserId{0}, UserId{1});
    ASSERT_TRUE(p);
    EXPECT_EQ(p->length, 1.0);
    EXPECT_EQ(p->hops, 1u);
}

TEST(ShortestTrustPath, TiesPreferFewerHopsThenSmallerNodeSequence) {
    // 0 -> 3 directly with length 2, or 0 -> 1 -> 3 and 0 -> 2 -> 3 with length 1 + 1.
    auto g = TrustGraph::from_edges(4, {{UserId{0}, UserId{3}, 0.5, EdgeKind::CommonTrustee},
                                        {UserId{0}, UserId{2}, 1.0, EdgeKind::Explicit},
                                        {UserId{2}, UserId{3}, 1.0, EdgeKind::Explicit},
                                        {UserId{0}, UserId{1}, 1.0, EdgeKind::Explicit},
                                        {UserId{1}, UserId{3}, 1.0, EdgeKind::Explicit}});
    auto p = shortest_trust_path(ReciprocalGraph(g), UserId{0}, UserId{3});
    ASSERT_TRUE(p);
    EXPECT_EQ(p->hops, 1u);

    auto h = TrustGraph::from_edges(5, {{UserId{0}, UserId{2}, 1.0, EdgeKind::Explicit},
                                        {UserId{2}, UserId{4}, 1.0, EdgeKind::Explicit},
                                        {UserId{0}, UserId{1}, 1.0, EdgeKind::Explicit},
                                        {UserId{1}, UserId{4}, 1.0, EdgeKind::Explicit},
                                        {UserId{0}, UserId{3}, 1.0, EdgeKind::Explicit},
                                        {UserId{3}, UserId{4}, 1.0, EdgeKind::Explicit}});
    auto q = shortest_trust_path(ReciprocalGraph(h), UserId{0}, UserId{4});
    ASSERT_TRUE(q);
    EXPECT_EQ(q->nodes, (std::vector<UserId>{UserId{0}, UserId{1}, UserId{4}}));
}

TEST(ShortestTrustPath, MatchesExhaustiveEnumerationOnRandomGraphs) {
    std::mt19937_64 rng(8);
    const double weights[] = {1.0, 0.5, 0.25, 1.0 / 3.0, 2.0 / 3.0};
    std::uniform_int_distribution<int> pick(0, 4);
    std::bernoulli_distribution coin(0.3);
    const int n = 8;
    for (int round = 0; round < 100; ++round) {
        std::vector<testing::RawEdge> raw;
        std::vector<WeightedEdge> edges;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b || !coin(rng)) continue;
                double w = weights[pick(rng)];
                bool is_explicit = w == 1.0;
                raw.push_back({a, b, w, is_explicit});
                edges.push_back({UserId{static_cast<std::uint32_t>(a)}, UserId{static_cast<std::uint32_t>(b)}, w,
                                 is_explicit ? EdgeKind::Explicit : EdgeKind::CommonTrustee});
            }
        }
        ReciprocalGraph r(TrustGraph::from_edges(n, edges));
        for (int u = 0; u < n; ++u) {
            auto tree = single_source_paths(r, UserId{static_cast<std::uint32_t>(u)});
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                auto expect = testing::brute_shortest_path(n, raw, u, v);
                auto got = tree.path_to(UserId{static_cast<std::uint32_t>(v)});
                ASSERT_EQ(got.has_value(), expect.has_value()) << round << ": " << u << "->" << v;
                if (!got) continue;
                EXPECT_EQ(got->length, expect->length);
                EXPECT_EQ(got->hops, static_cast<std::uint32_t>(expect->hops));
                std::vector<int> nodes;
                for (auto x : got->nodes) nodes.push_back(static_cast<int>(x.value));
                EXPECT_EQ(nodes, expect->nodes);
            }
        }
    }
}

}  // namespace
}  // namespace trustcf
