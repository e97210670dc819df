#include <benchmark/benchmark.h>

#include <random>

#include "trustcf/evaluation.hpp"
#include "trustcf/predictor.hpp"
#include "trustcf/trust_store.hpp"

using namespace trustcf;

namespace {

// Roughly FilmTrust-shaped: sparse ratings on a 0.5..4 scale and a thin
// directed trust graph.
struct World {
    RatingMatrix ratings;
    ExplicitTrust trust;
};

World make_world(std::uint32_t users, std::uint32_t items, std::uint32_t per_user, std::uint32_t trust_per_user) {
    std::mt19937_64 rng(12345);
    auto user_index = std::make_shared<IdIndex>();
    auto item_index = std::make_shared<IdIndex>();
    for (std::uint32_t u = 0; u < users; ++u) user_index->intern("u" + std::to_string(u));
    for (std::uint32_t i = 0; i < items; ++i) item_index->intern("i" + std::to_string(i));

    std::uniform_int_distribution<std::uint32_t> item(0, items - 1);
    std::uniform_int_distribution<std::uint32_t> user(0, users - 1);
    std::uniform_int_distribution<int> half(1, 8);
    std::vector<Rating> entries;
    std::vector<TrustStatement> statements;
    for (std::uint32_t u = 0; u < users; ++u) {
        std::vector<char> used(items, 0);
        for (std::uint32_t k = 0; k < per_user; ++k) {
            auto i = item(rng);
            if (used[i]) continue;
            used[i] = 1;
            entries.push_back({UserId{u}, ItemId{i}, 0.5 * half(rng)});
        }
        std::vector<char> trusted(users, 0);
        for (std::uint32_t k = 0; k < trust_per_user; ++k) {
            auto v = user(rng);
            if (v == u || trusted[v]) continue;
            trusted[v] = 1;
            statements.push_back({UserId{u}, UserId{v}});
        }
    }
    return {RatingMatrix(user_index, item_index, std::move(entries), {}), ExplicitTrust(users, std::move(statements))};
}

const World& world() {
    static const World w = make_world(1500, 2000, 24, 2);
    return w;
}

void BM_BuildTrustGraph(benchmark::State& state) {
    const auto& w = world();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_trust_graph(w.trust).num_edges());
    }
}
BENCHMARK(BM_BuildTrustGraph)->Unit(benchmark::kMillisecond);

void BM_SingleSourcePaths(benchmark::State& state) {
    const auto& w = world();
    static const auto graph = build_trust_graph(w.trust);
    static const ReciprocalGraph reciprocal(graph);
    std::uint32_t source = 0;
    for (auto _ : state) {
        auto tree = single_source_paths(reciprocal, UserId{source});
        benchmark::DoNotOptimize(tree.length(UserId{(source + 1) % 1500}));
        source = (source + 37) % 1500;
    }
}
BENCHMARK(BM_SingleSourcePaths)->Unit(benchmark::kMicrosecond);

void BM_PrecomputeAllSources(benchmark::State& state) {
    const auto& w = world();
    static const auto graph = build_trust_graph(w.trust);
    const auto jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto store = std::make_shared<TrustStore>(0, GraphVariant::WithCommonTrustee, TrustFormula::Attenuated,
                                                  graph.num_nodes());
        TrustInferencer(graph, store).precompute_all(jobs);
        benchmark::DoNotOptimize(store->nonzero_entries());
    }
}
BENCHMARK(BM_PrecomputeAllSources)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SimilarityRow(benchmark::State& state) {
    const auto& w = world();
    std::uint32_t u = 0;
    for (auto _ : state) {
        SimilarityModel model(w.ratings);
        benchmark::DoNotOptimize(model.row(UserId{u}).data());
        u = (u + 1) % 1500;
    }
}
BENCHMARK(BM_SimilarityRow)->Unit(benchmark::kMicrosecond);

void BM_SweepOneRound(benchmark::State& state) {
    const auto& w = world();
    TrustAssets assets(w.trust);
    auto plan = make_splits(w.ratings, 1, 1);
    SweepOptions opts;
    opts.methods.assign(kAllMethods.begin(), kAllMethods.end());
    opts.ks = {5, 10, 15, 20, 25, 30, 35, 40, 45};
    opts.jobs = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto report = sweep(w.ratings, assets, opts, plan);
        benchmark::DoNotOptimize(report.rounds().size());
    }
}
BENCHMARK(BM_SweepOneRound)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
