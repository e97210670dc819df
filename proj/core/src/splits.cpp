#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "trustcf/errors.hpp"
#include "trustcf/evaluation.hpp"

namespace trustcf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// std::uniform_int_distribution and std::shuffle are implementation-defined;
// these are not, so plans are identical across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
        std::uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t k = n; k > 1; --k) {
        std::swap(perm[k - 1], perm[bounded(rng, k)]);
    }
    return perm;
}

SplitRound make_round(const std::vector<std::size_t>& perm, std::size_t test_begin, std::size_t test_end) {
    SplitRound round;
    round.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(test_begin),
                      perm.begin() + static_cast<std::ptrdiff_t>(test_end));
    round.train.reserve(perm.size() - round.test.size());
    round.train.insert(round.train.end(), perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(test_begin));
    round.train.insert(round.train.end(), perm.begin() + static_cast<std::ptrdiff_t>(test_end), perm.end());
    std::sort(round.train.begin(), round.train.end());
    std::sort(round.test.begin(), round.test.end());
    return round;
}

}  // namespace

std::string_view to_string(SplitMode m) {
    return m == SplitMode::Resample ? "resample" : "kfold";
}

SplitMode parse_split_mode(std::string_view name) {
    if (name == "resample") return SplitMode::Resample;
    if (name == "kfold") return SplitMode::KFold;
    throw ConfigError("unknown split mode '" + std::string(name) + "'");
}

SplitPlan make_splits(const RatingMatrix& m, std::uint64_t seed, std::size_t rounds, double train_fraction,
                      SplitMode mode) {
    const std::size_t n = m.num_ratings();
    if (n == 0) throw ConfigError("cannot split an empty rating matrix");
    if (rounds == 0) throw ConfigError("at least one round is required");

    SplitPlan plan;
    plan.seed = seed;
    plan.rounds = rounds;
    plan.mode = mode;

    if (mode == SplitMode::KFold) {
        if (rounds < 2) throw ConfigError("k-fold splitting needs at least 2 folds");
        if (rounds > n) throw ConfigError("more folds than ratings");
        plan.train_fraction = 1.0 - 1.0 / static_cast<double>(rounds);
        auto perm = permutation(n, splitmix64(seed));
        for (std::size_t r = 0; r < rounds; ++r) {
            plan.splits.push_back(make_round(perm, r * n / rounds, (r + 1) * n / rounds));
        }
        return plan;
    }

    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("train fraction must lie in (0, 1), got " + std::to_string(train_fraction));
    }
    plan.train_fraction = train_fraction;
    auto n_train = std::min<std::size_t>(
        n, static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_fraction)));
    for (std::size_t r = 0; r < rounds; ++r) {
        auto perm = permutation(n, splitmix64(seed ^ splitmix64(r + 1)));
        plan.splits.push_back(make_round(perm, n_train, n));
    }
    return plan;
}

}  // namespace trustcf
