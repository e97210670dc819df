#include "trustcf/trust_inference.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "trustcf/errors.hpp"
#include "trustcf/trust_store.hpp"

namespace trustcf {

std::string_view to_string(TrustFormula f) {
    return f == TrustFormula::Attenuated ? "attenuated" : "plain";
}

std::string_view to_string(TrustCategory c) {
    switch (c) {
        case TrustCategory::Explicit: return "explicit";
        case TrustCategory::CommonTrustee: return "common-trustee";
        case TrustCategory::Propagated: return "propagated";
        case TrustCategory::Unreachable: return "unreachable";
    }
    return "?";
}

TrustFormula parse_trust_formula(std::string_view name) {
    if (name == "attenuated") return TrustFormula::Attenuated;
    if (name == "plain") return TrustFormula::Plain;
    throw ConfigError("unknown trust formula '" + std::string(name) + "'");
}

TrustCategory parse_trust_category(std::string_view name) {
    for (auto c : {TrustCategory::Explicit, TrustCategory::CommonTrustee, TrustCategory::Propagated,
                   TrustCategory::Unreachable}) {
        if (to_string(c) == name) return c;
    }
    throw ConfigError("unknown trust category '" + std::string(name) + "'");
}

double path_trust(double length, std::uint32_t hops, TrustFormula formula) {
    if (formula == TrustFormula::Attenuated) {
        return 1.0 / (static_cast<double>(hops) * length);
    }
    return 1.0 / length;
}

TrustEstimate estimate_from_tree(const ShortestPathTree& tree, UserId v, TrustFormula formula) {
    if (v == tree.source() || !tree.reachable(v)) return {};
    const double length = tree.length(v);
    const std::uint32_t hops = tree.hops(v);
    if (hops == 1) {
        const auto& arc = tree.last_arc(v);
        if (arc.kind == EdgeKind::Explicit) {
            return {1.0, TrustCategory::Explicit, length, 1};
        }
        // Direct Jaccard edge: the edge weight itself, not 1/(1/w).
        return {arc.weight, TrustCategory::CommonTrustee, length, 1};
    }
    return {path_trust(length, hops, formula), TrustCategory::Propagated, length, hops};
}

TrustEstimate with_formula(const TrustEstimate& e, TrustFormula formula) {
    if (e.category != TrustCategory::Propagated) return e;
    auto out = e;
    out.value = path_trust(e.path_length, e.hops, formula);
    return out;
}

TrustInferencer::TrustInferencer(const TrustGraph& g, std::shared_ptr<TrustStore> store)
    : graph_(&g), reciprocal_(g), store_(std::move(store)) {
    if (!store_) {
        store_ = std::make_shared<TrustStore>(0, GraphVariant::WithCommonTrustee, TrustFormula::Attenuated,
                                              g.num_nodes());
    }
    if (store_->num_users() != g.num_nodes()) {
        throw IntegrityError("trust store covers " + std::to_string(store_->num_users()) +
                             " users but the trust graph has " + std::to_string(g.num_nodes()));
    }
}

TrustInferencer::~TrustInferencer() = default;

namespace {

std::shared_ptr<const SourceTable> source_table(const ReciprocalGraph& g, TrustStore& store, UserId u) {
    if (auto hit = store.find(u)) return hit;
    auto tree = single_source_paths(g, u);
    SourceTable table;
    for (std::uint32_t v = 0; v < g.num_nodes(); ++v) {
        UserId target{v};
        if (target == u || !tree.reachable(target)) continue;
        table.push_back({target, estimate_from_tree(tree, target, store.formula())});
    }
    return store.insert(u, std::move(table));
}

TrustEstimate lookup(const SourceTable& table, UserId v, TrustFormula formula) {
    auto it = std::lower_bound(table.begin(), table.end(), v,
                               [](const TrustStoreEntry& e, UserId key) { return e.target < key; });
    if (it != table.end() && it->target == v) return with_formula(it->estimate, formula);
    return {};
}

}  // namespace

TrustEstimate TrustInferencer::infer(UserId u, UserId v, TrustFormula formula) const {
    if (u == v) throw IntegrityError("trust inference requires distinct users");
    if (u.value >= graph_->num_nodes() || v.value >= graph_->num_nodes()) {
        throw IntegrityError("user outside the trust graph");
    }
    return lookup(*source_table(reciprocal_, *store_, u), v, formula);
}

std::vector<TrustEstimate> TrustInferencer::infer_all_from(UserId u, std::span<const UserId> targets,
                                                           TrustFormula formula) const {
    std::vector<TrustEstimate> out;
    if (targets.empty()) return out;
    if (u.value >= graph_->num_nodes()) throw IntegrityError("user outside the trust graph");
    auto table = source_table(reciprocal_, *store_, u);
    out.reserve(targets.size());
    for (auto v : targets) {
        if (v == u) throw IntegrityError("trust inference requires distinct users");
        if (v.value >= graph_->num_nodes()) throw IntegrityError("user outside the trust graph");
        out.push_back(lookup(*table, v, formula));
    }
    return out;
}

void TrustInferencer::precompute_all(unsigned jobs) const {
    const auto n = static_cast<std::uint32_t>(graph_->num_nodes());
    std::atomic<std::uint32_t> next{0};
    auto work = [&] {
        for (auto u = next++; u < n; u = next++) {
            source_table(reciprocal_, *store_, UserId{u});
        }
    };
    jobs = std::max(1u, jobs);
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(work);
    work();
}

}  // namespace trustcf
