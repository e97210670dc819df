#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace trustcf::testing {

SyntheticData make_synthetic(const SyntheticSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> quality(static_cast<std::size_t>(spec.items));
    for (auto& q : quality) q = 2.25 + 0.5 * gauss(rng);
    std::vector<std::vector<double>> taste(static_cast<std::size_t>(spec.clusters),
                                           std::vector<double>(static_cast<std::size_t>(spec.items)));
    for (auto& row : taste) {
        for (auto& t : row) t = spec.taste_spread * gauss(rng);
    }
    std::vector<int> cluster(static_cast<std::size_t>(spec.users));
    std::vector<double> bias(static_cast<std::size_t>(spec.users));
    for (int u = 0; u < spec.users; ++u) {
        cluster[static_cast<std::size_t>(u)] = u % spec.clusters;
        bias[static_cast<std::size_t>(u)] = 0.3 * gauss(rng);
    }

    std::ostringstream ratings;
    std::vector<int> items(static_cast<std::size_t>(spec.items));
    for (int i = 0; i < spec.items; ++i) items[static_cast<std::size_t>(i)] = i;
    for (int u = 0; u < spec.users; ++u) {
        std::shuffle(items.begin(), items.end(), rng);
        int count = std::min(spec.ratings_per_user, spec.items);
        for (int k = 0; k < count; ++k) {
            int i = items[static_cast<std::size_t>(k)];
            double raw = quality[static_cast<std::size_t>(i)] +
                         taste[static_cast<std::size_t>(cluster[static_cast<std::size_t>(u)])][static_cast<std::size_t>(i)] +
                         bias[static_cast<std::size_t>(u)] + spec.noise * gauss(rng);
            double r = std::clamp(std::round(raw * 2.0) / 2.0, 0.5, 4.0);
            ratings << 'u' << u << " i" << i << ' ' << r << '\n';
        }
    }

    std::ostringstream trust;
    std::uniform_int_distribution<int> pick(0, spec.users - 1);
    for (int u = 0; u < spec.users; ++u) {
        std::set<int> chosen;
        int guard = 0;
        while (static_cast<int>(chosen.size()) < spec.trust_per_user && guard++ < 1000) {
            int v = pick(rng);
            if (v == u || chosen.count(v)) continue;
            bool same = cluster[static_cast<std::size_t>(v)] == cluster[static_cast<std::size_t>(u)];
            if (same != (unit(rng) < spec.same_cluster_trust)) continue;
            chosen.insert(v);
        }
        for (int v : chosen) trust << 'u' << u << " u" << v << " 1\n";
    }
    return {ratings.str(), trust.str()};
}

Dataset parse_synthetic(const SyntheticData& data) {
    std::istringstream r(data.ratings_text);
    std::istringstream t(data.trust_text);
    auto matrix = parse_ratings(r, "synthetic-ratings");
    IdIndex index = matrix.users();
    auto trust = parse_trust(t, "synthetic-trust", index);
    auto shared_users = std::make_shared<IdIndex>(index);
    std::vector<Rating> entries(matrix.entries().begin(), matrix.entries().end());
    RatingMatrix full(shared_users, matrix.shared_items(), std::move(entries), matrix.scale());
    return Dataset{std::move(full), std::move(trust)};
}

SyntheticFiles write_synthetic(const SyntheticData& data, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    SyntheticFiles files{dir / "ratings.txt", dir / "trust.txt"};
    std::ofstream(files.ratings) << data.ratings_text;
    std::ofstream(files.trust) << data.trust_text;
    return files;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("trustcf-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace trustcf::testing
