#include <gtest/gtest.h>

#include <sstream>

#include "synthetic.hpp"
#include "trustcf/errors.hpp"
#include "trustcf/trust_store.hpp"

namespace trustcf {
namespace {

struct Fixture {
    Dataset data;
    TrustGraph graph;
    std::uint64_t provenance;
};

Fixture make_fixture(std::uint64_t seed = 5) {
    testing::SyntheticSpec spec;
    spec.users = 40;
    spec.trust_per_user = 2;
    spec.seed = seed;
    auto data = testing::parse_synthetic(testing::make_synthetic(spec));
    auto graph = build_trust_graph(data.trust);
    auto prov = trust_provenance(data.trust, GraphVariant::WithCommonTrustee, &data.ratings.users());
    return {std::move(data), std::move(graph), prov};
}

std::shared_ptr<TrustStore> full_store(const Fixture& f, TrustFormula formula, unsigned jobs) {
    auto store = std::make_shared<TrustStore>(f.provenance, GraphVariant::WithCommonTrustee, formula,
                                              f.graph.num_nodes());
    TrustInferencer(f.graph, store).precompute_all(jobs);
    return store;
}

std::string serialise(const TrustStore& s) {
    std::ostringstream out;
    s.write(out);
    return out.str();
}

TEST(TrustStore, RoundTripsLosslessly) {
    auto f = make_fixture();
    auto store = full_store(f, TrustFormula::Attenuated, 1);
    auto text = serialise(*store);
    std::istringstream in(text);
    auto back = TrustStore::read(in, "mem");
    EXPECT_EQ(back.provenance(), store->provenance());
    EXPECT_EQ(back.variant(), store->variant());
    EXPECT_EQ(back.formula(), store->formula());
    EXPECT_EQ(back.complete_sources(), store->complete_sources());
    for (std::uint32_t u = 0; u < f.graph.num_nodes(); ++u) {
        EXPECT_EQ(*back.find(UserId{u}), *store->find(UserId{u}));
    }
    EXPECT_EQ(serialise(back), text);
}

TEST(TrustStore, FileRoundTripMatchesFreshComputation) {
    auto f = make_fixture();
    auto dir = testing::scratch_dir("store-roundtrip");
    full_store(f, TrustFormula::Plain, 2)->save(dir / "store.txt");
    auto loaded = std::make_shared<TrustStore>(TrustStore::load(dir / "store.txt"));
    loaded->require_provenance(f.provenance);
    TrustInferencer warm(f.graph, loaded);
    TrustInferencer cold(f.graph);
    for (std::uint32_t u = 0; u < f.graph.num_nodes(); ++u) {
        for (std::uint32_t v = 0; v < f.graph.num_nodes(); ++v) {
            if (u == v) continue;
            EXPECT_EQ(warm.infer(UserId{u}, UserId{v}, TrustFormula::Plain),
                      cold.infer(UserId{u}, UserId{v}, TrustFormula::Plain));
        }
    }
}

TEST(TrustStore, StaleProvenanceIsIntegrityError) {
    auto f = make_fixture(5);
    auto other = make_fixture(6);
    auto store = full_store(f, TrustFormula::Attenuated, 1);
    EXPECT_NO_THROW(store->require_provenance(f.provenance));
    EXPECT_THROW(store->require_provenance(other.provenance), IntegrityError);
    EXPECT_NE(f.provenance, trust_provenance(f.data.trust, GraphVariant::ExplicitOnly, &f.data.ratings.users()));
}

TEST(TrustStore, EmptyTrustHasNoNonzeroEntries) {
    ExplicitTrust empty(5, {});
    auto g = build_trust_graph(empty);
    auto store = std::make_shared<TrustStore>(trust_provenance(empty, GraphVariant::WithCommonTrustee),
                                              GraphVariant::WithCommonTrustee, TrustFormula::Attenuated, 5);
    TrustInferencer(g, store).precompute_all();
    EXPECT_EQ(store->complete_sources(), 5u);
    EXPECT_EQ(store->nonzero_entries(), 0u);
}

TEST(TrustStore, RerunsAreByteIdenticalAndParallelEqualsSerial) {
    auto f = make_fixture();
    auto a = serialise(*full_store(f, TrustFormula::Attenuated, 1));
    auto b = serialise(*full_store(f, TrustFormula::Attenuated, 1));
    auto c = serialise(*full_store(f, TrustFormula::Attenuated, 4));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, c);
}

TEST(TrustStore, CategoryCountsCoverEveryReachablePair) {
    auto f = make_fixture();
    auto store = full_store(f, TrustFormula::Attenuated, 1);
    auto reachable = store->count(TrustCategory::Explicit) + store->count(TrustCategory::CommonTrustee) +
                     store->count(TrustCategory::Propagated);
    EXPECT_EQ(reachable, store->nonzero_entries());
    EXPECT_EQ(store->count(TrustCategory::Explicit), f.data.trust.size());
}

TEST(TrustStore, MalformedFilesAreParseErrors) {
    std::istringstream bad_header("not-a-store 1\n");
    EXPECT_THROW(TrustStore::read(bad_header, "x"), ParseError);
    std::istringstream bad_row(
        "trustcf-trust-store 1\nprovenance 0000000000000001\ngraph common-trustee\nformula plain\nusers 2\n"
        "sources all\n0 1 banana explicit 1 1\n");
    EXPECT_THROW(TrustStore::read(bad_row, "x"), ParseError);
    EXPECT_THROW(TrustStore::load("/nonexistent/store.txt"), IoError);
}

}  // namespace
}  // namespace trustcf
