#include "cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "trustcf/errors.hpp"
#include "trustcf/io.hpp"

namespace trustcf::cli {

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) continue;
        out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

template <class T>
T parse_unsigned(const std::string& key, const std::string& text) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

double parse_real(const std::string& key, const std::string& text) {
    try {
        return parse_double(text);
    } catch (const ConfigError&) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) out += ',';
        out += parts[k];
    }
    return out;
}

std::string format_name(DatasetFormat f) {
    switch (f) {
        case DatasetFormat::Auto: return "auto";
        case DatasetFormat::Whitespace: return "whitespace";
        case DatasetFormat::Csv: return "csv";
    }
    return "auto";
}

}  // namespace

const std::vector<std::string>& manifest_keys() {
    static const std::vector<std::string> keys{
        "ratings", "trust",       "format",    "rating_lo",     "rating_hi",      "methods",
        "k_list",  "alpha",       "alpha_sweep", "seed",        "rounds",         "train_fraction",
        "split_mode", "min_corated", "positive_only", "trust_store", "out",        "jobs",
        "expect_filmtrust",
    };
    return keys;
}

void RunConfig::validate(bool check_files) const {
    if (!(scale.lo < scale.hi)) throw ConfigError("rating_lo must be below rating_hi");
    if (methods.empty()) throw ConfigError("methods: at least one method is required");
    if (ks.empty()) throw ConfigError("k_list: at least one K is required");
    for (auto k : ks) {
        if (k == 0) throw ConfigError("k_list: K must be at least 1");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1], got " + format_double(alpha));
    for (double a : alpha_sweep) {
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha_sweep: " + format_double(a) + " outside [0, 1]");
    }
    if (rounds == 0) throw ConfigError("rounds must be at least 1");
    if (split_mode == SplitMode::KFold && rounds < 2) throw ConfigError("kfold needs at least 2 rounds");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ConfigError("train_fraction must lie in (0, 1), got " + format_double(train_fraction));
    }
    if (jobs == 0) throw ConfigError("jobs must be at least 1");
    if (check_files) {
        if (ratings.empty()) throw ConfigError("ratings: no ratings file given");
        if (!std::filesystem::is_regular_file(ratings)) throw ConfigError("ratings: no such file " + ratings.string());
        if (!trust.empty() && !std::filesystem::is_regular_file(trust)) {
            throw ConfigError("trust: no such file " + trust.string());
        }
    }
}

Manifest RunConfig::to_manifest() const {
    Manifest m;
    m["ratings"] = ratings.string();
    m["trust"] = trust.string();
    m["format"] = format_name(format);
    m["rating_lo"] = format_double(scale.lo);
    m["rating_hi"] = format_double(scale.hi);
    std::vector<std::string> parts;
    for (auto id : methods) parts.emplace_back(to_string(id));
    m["methods"] = join(parts);
    parts.clear();
    for (auto k : ks) parts.push_back(std::to_string(k));
    m["k_list"] = join(parts);
    m["alpha"] = format_double(alpha);
    parts.clear();
    for (double a : alpha_sweep) parts.push_back(format_double(a));
    m["alpha_sweep"] = join(parts);
    m["seed"] = std::to_string(seed);
    m["rounds"] = std::to_string(rounds);
    m["train_fraction"] = format_double(train_fraction);
    m["split_mode"] = std::string(to_string(split_mode));
    m["min_corated"] = std::to_string(min_corated);
    m["positive_only"] = positive_only ? "true" : "false";
    m["trust_store"] = trust_store.string();
    m["out"] = out.string();
    m["jobs"] = std::to_string(jobs);
    m["expect_filmtrust"] = expect_filmtrust ? "true" : "false";
    return m;
}

RunConfig RunConfig::from_manifest(const Manifest& manifest, const std::filesystem::path& base_dir) {
    const auto& known = manifest_keys();
    for (const auto& [key, _] : manifest) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown manifest key '" + key + "'");
        }
    }
    auto resolve = [&base_dir](const std::string& p) -> std::filesystem::path {
        if (p.empty()) return {};
        std::filesystem::path path(p);
        if (path.is_relative() && !base_dir.empty()) return base_dir / path;
        return path;
    };

    RunConfig cfg;
    auto get = [&manifest](const char* key) -> const std::string* {
        auto it = manifest.find(key);
        return it == manifest.end() ? nullptr : &it->second;
    };
    if (auto v = get("ratings")) cfg.ratings = resolve(*v);
    if (auto v = get("trust")) cfg.trust = resolve(*v);
    if (auto v = get("format")) cfg.format = parse_dataset_format(*v);
    if (auto v = get("rating_lo")) cfg.scale.lo = parse_real("rating_lo", *v);
    if (auto v = get("rating_hi")) cfg.scale.hi = parse_real("rating_hi", *v);
    if (auto v = get("methods")) {
        cfg.methods.clear();
        for (const auto& name : split_list(*v)) cfg.methods.push_back(parse_method(name));
    }
    if (auto v = get("k_list")) {
        cfg.ks.clear();
        for (const auto& k : split_list(*v)) cfg.ks.push_back(parse_unsigned<std::size_t>("k_list", k));
    }
    if (auto v = get("alpha")) cfg.alpha = parse_real("alpha", *v);
    if (auto v = get("alpha_sweep")) {
        cfg.alpha_sweep.clear();
        for (const auto& a : split_list(*v)) cfg.alpha_sweep.push_back(parse_real("alpha_sweep", a));
    }
    if (auto v = get("seed")) cfg.seed = parse_unsigned<std::uint64_t>("seed", *v);
    if (auto v = get("rounds")) cfg.rounds = parse_unsigned<std::size_t>("rounds", *v);
    if (auto v = get("train_fraction")) cfg.train_fraction = parse_real("train_fraction", *v);
    if (auto v = get("split_mode")) cfg.split_mode = parse_split_mode(*v);
    if (auto v = get("min_corated")) cfg.min_corated = parse_unsigned<std::size_t>("min_corated", *v);
    if (auto v = get("positive_only")) cfg.positive_only = parse_bool("positive_only", *v);
    if (auto v = get("trust_store")) cfg.trust_store = resolve(*v);
    if (auto v = get("out")) cfg.out = resolve(*v);
    if (auto v = get("jobs")) cfg.jobs = parse_unsigned<unsigned>("jobs", *v);
    if (auto v = get("expect_filmtrust")) cfg.expect_filmtrust = parse_bool("expect_filmtrust", *v);
    cfg.validate(false);
    return cfg;
}

SimilarityOptions RunConfig::similarity() const {
    SimilarityOptions s;
    s.min_corated = min_corated;
    s.positive_only = positive_only;
    return s;
}

}  // namespace trustcf::cli
