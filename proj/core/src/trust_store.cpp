#include "trustcf/trust_store.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "trustcf/errors.hpp"
#include "trustcf/io.hpp"

namespace trustcf {

namespace {

constexpr std::string_view kMagic = "trustcf-trust-store";
constexpr int kVersion = 1;

std::string hex64(std::uint64_t v) {
    char buf[17];
    auto [end, ec] = std::to_chars(buf, buf + 16, v, 16);
    std::string s(buf, end);
    return std::string(16 - s.size(), '0') + s;
}

std::uint64_t parse_hex64(const std::string& text, const std::string& source, std::size_t line) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(source, line, "bad provenance '" + text + "'");
    }
    return v;
}

template <class T>
T parse_uint(const std::string& text, const std::string& source, std::size_t line) {
    T v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParseError(source, line, "expected an unsigned integer, got '" + text + "'");
    }
    return v;
}

}  // namespace

std::string_view to_string(GraphVariant v) {
    return v == GraphVariant::WithCommonTrustee ? "common-trustee" : "explicit-only";
}

GraphVariant parse_graph_variant(std::string_view name) {
    if (name == "common-trustee") return GraphVariant::WithCommonTrustee;
    if (name == "explicit-only") return GraphVariant::ExplicitOnly;
    throw ConfigError("unknown graph variant '" + std::string(name) + "'");
}

std::uint64_t trust_provenance(const ExplicitTrust& t, GraphVariant variant, const IdIndex* users) {
    std::uint64_t h = t.fingerprint();
    auto mix = [&h](unsigned char byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<unsigned char>(variant));
    if (users) {
        for (const auto& name : users->names()) {
            for (char c : name) mix(static_cast<unsigned char>(c));
            mix(0);
        }
    }
    return h;
}

TrustStore::TrustStore(std::uint64_t provenance, GraphVariant variant, TrustFormula formula,
                       std::size_t num_users)
    : provenance_(provenance),
      variant_(variant),
      formula_(formula),
      mutex_(std::make_unique<std::mutex>()),
      tables_(num_users) {}

std::shared_ptr<const SourceTable> TrustStore::find(UserId source) const {
    std::lock_guard lock(*mutex_);
    return tables_.at(source.value);
}

std::shared_ptr<const SourceTable> TrustStore::insert(UserId source, SourceTable table) {
    auto fresh = std::make_shared<const SourceTable>(std::move(table));
    std::lock_guard lock(*mutex_);
    auto& slot = tables_.at(source.value);
    if (!slot) slot = std::move(fresh);
    return slot;
}

std::size_t TrustStore::complete_sources() const {
    std::lock_guard lock(*mutex_);
    return static_cast<std::size_t>(std::count_if(tables_.begin(), tables_.end(),
                                                  [](const auto& t) { return t != nullptr; }));
}

std::size_t TrustStore::count(TrustCategory category) const {
    std::lock_guard lock(*mutex_);
    std::size_t n = 0;
    for (const auto& t : tables_) {
        if (!t) continue;
        for (const auto& e : *t) n += e.estimate.category == category ? 1 : 0;
    }
    return n;
}

std::size_t TrustStore::nonzero_entries() const {
    std::lock_guard lock(*mutex_);
    std::size_t n = 0;
    for (const auto& t : tables_) {
        if (!t) continue;
        for (const auto& e : *t) n += e.estimate.value > 0.0 ? 1 : 0;
    }
    return n;
}

void TrustStore::require_provenance(std::uint64_t expected) const {
    if (provenance_ != expected) {
        throw IntegrityError("stale trust store: built from trust data " + hex64(provenance_) +
                             ", current data is " + hex64(expected));
    }
}

void TrustStore::write(std::ostream& out) const {
    std::lock_guard lock(*mutex_);
    out << kMagic << ' ' << kVersion << '\n';
    out << "provenance " << hex64(provenance_) << '\n';
    out << "graph " << to_string(variant_) << '\n';
    out << "formula " << to_string(formula_) << '\n';
    out << "users " << tables_.size() << '\n';

    std::vector<std::size_t> complete;
    for (std::size_t u = 0; u < tables_.size(); ++u) {
        if (tables_[u]) complete.push_back(u);
    }
    if (complete.size() == tables_.size()) {
        out << "sources all\n";
    } else {
        out << "sources " << complete.size();
        for (auto u : complete) out << ' ' << u;
        out << '\n';
    }
    for (auto u : complete) {
        for (const auto& e : *tables_[u]) {
            out << u << ' ' << e.target.value << ' ' << format_double(e.estimate.value) << ' '
                << to_string(e.estimate.category) << ' ' << format_double(e.estimate.path_length) << ' '
                << e.estimate.hops << '\n';
        }
    }
}

void TrustStore::save(const std::filesystem::path& path) const {
    std::ostringstream out;
    write(out);
    write_file_atomic(path, out.str());
}

TrustStore TrustStore::read(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    auto header = [&](std::string_view key) {
        if (!std::getline(in, line)) throw ParseError(source, line_no + 1, "truncated header");
        ++line_no;
        std::istringstream fields(line);
        std::string k, v;
        fields >> k >> v;
        if (k != key || v.empty()) {
            throw ParseError(source, line_no, "expected '" + std::string(key) + " <value>'");
        }
        std::string rest;
        std::getline(fields, rest);
        return std::pair{v, rest};
    };

    auto [version, _] = header(kMagic);
    if (version != std::to_string(kVersion)) {
        throw ParseError(source, line_no, "unsupported trust store version " + version);
    }
    auto provenance = parse_hex64(header("provenance").first, source, line_no);
    GraphVariant variant;
    TrustFormula formula;
    try {
        variant = parse_graph_variant(header("graph").first);
        formula = parse_trust_formula(header("formula").first);
    } catch (const ConfigError& e) {
        throw ParseError(source, line_no, e.what());
    }
    auto users = parse_uint<std::size_t>(header("users").first, source, line_no);
    auto [sources_field, sources_rest] = header("sources");

    TrustStore store(provenance, variant, formula, users);
    std::vector<SourceTable> tables(users);
    std::vector<char> complete(users, 0);
    if (sources_field == "all") {
        std::fill(complete.begin(), complete.end(), 1);
    } else {
        auto k = parse_uint<std::size_t>(sources_field, source, line_no);
        std::istringstream ids(sources_rest);
        std::string id;
        std::size_t seen = 0;
        while (ids >> id) {
            auto u = parse_uint<std::size_t>(id, source, line_no);
            if (u >= users) throw ParseError(source, line_no, "source id out of range");
            complete[u] = 1;
            ++seen;
        }
        if (seen != k) throw ParseError(source, line_no, "source count does not match the id list");
    }

    std::optional<std::pair<std::uint32_t, std::uint32_t>> last;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string su, sv, value, category, length, hops, extra;
        if (!(fields >> su >> sv >> value >> category >> length >> hops) || (fields >> extra)) {
            throw ParseError(source, line_no, "expected 'u v value category L M'");
        }
        auto u = parse_uint<std::uint32_t>(su, source, line_no);
        auto v = parse_uint<std::uint32_t>(sv, source, line_no);
        if (u >= users || v >= users || u == v) throw ParseError(source, line_no, "bad user pair");
        if (!complete[u]) throw ParseError(source, line_no, "row for a source not listed as complete");
        if (last && std::pair{u, v} <= *last) throw ParseError(source, line_no, "rows out of order");
        last = std::pair{u, v};
        TrustEstimate e;
        try {
            e.value = parse_double(value);
            e.category = parse_trust_category(category);
            e.path_length = parse_double(length);
        } catch (const ConfigError& err) {
            throw ParseError(source, line_no, err.what());
        }
        e.hops = parse_uint<std::uint32_t>(hops, source, line_no);
        tables[u].push_back({UserId{v}, e});
    }
    for (std::uint32_t u = 0; u < users; ++u) {
        if (complete[u]) store.insert(UserId{u}, std::move(tables[u]));
    }
    return store;
}

TrustStore TrustStore::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return read(in, path.string());
}

}  // namespace trustcf
