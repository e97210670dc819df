#include "trustcf/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "trustcf/errors.hpp"
#include "trustcf/io.hpp"

namespace trustcf {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (is_blank(s.front()) || s.front() == '\n')) s.remove_prefix(1);
    while (!s.empty() && (is_blank(s.back()) || s.back() == '\n')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line, DatasetFormat format) {
    std::vector<std::string_view> fields;
    if (format == DatasetFormat::Csv) {
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            fields.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return fields;
    }
    auto is_sep = [format](char c) { return is_blank(c) || (format == DatasetFormat::Auto && c == ','); };
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && is_sep(line[pos])) ++pos;
        if (pos >= line.size()) break;
        auto end = pos;
        while (end < line.size() && !is_sep(line[end])) ++end;
        fields.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return fields;
}

bool skippable(std::string_view line) {
    auto t = trim(line);
    return t.empty() || t.front() == '#';
}

double parse_field(std::string_view field, const std::string& source, std::size_t line_no,
                   const char* what) {
    try {
        return parse_double(field);
    } catch (const ConfigError&) {
        throw ParseError(source, line_no, std::string("malformed ") + what + " '" + std::string(field) + "'");
    }
}

struct RawRatings {
    std::vector<Rating> entries;
};

RawRatings read_rating_triples(std::istream& in, const std::string& source, DatasetFormat format,
                               RatingScale scale, IdIndex& users, IdIndex& items) {
    RawRatings raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto fields = split_fields(line, format);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
            throw ParseError(source, line_no, "expected 'user item rating', got '" + line + "'");
        }
        double value = parse_field(fields[2], source, line_no, "rating");
        if (!scale.contains(value)) {
            throw RangeError(source + ":" + std::to_string(line_no) + ": rating " + std::string(fields[2]) +
                             " outside [" + format_double(scale.lo) + ", " + format_double(scale.hi) + "]");
        }
        raw.entries.push_back({UserId{users.intern(fields[0])}, ItemId{items.intern(fields[1])}, value});
    }
    if (in.bad()) throw IoError("read failed: " + source);
    return raw;
}

RatingMatrix make_matrix(std::shared_ptr<IdIndex> users, std::shared_ptr<IdIndex> items,
                         std::vector<Rating> entries, RatingScale scale, const std::string& source) {
    try {
        return RatingMatrix(std::move(users), std::move(items), std::move(entries), scale);
    } catch (const IntegrityError& e) {
        throw IntegrityError(source + ": " + e.what());
    }
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

}  // namespace

DatasetFormat parse_dataset_format(const std::string& name) {
    if (name == "auto") return DatasetFormat::Auto;
    if (name == "whitespace" || name == "ws") return DatasetFormat::Whitespace;
    if (name == "csv" || name == "comma") return DatasetFormat::Csv;
    throw ConfigError("unknown dataset format '" + name + "'");
}

RatingMatrix parse_ratings(std::istream& in, const std::string& source, DatasetFormat format,
                           RatingScale scale) {
    auto users = std::make_shared<IdIndex>();
    auto items = std::make_shared<IdIndex>();
    auto raw = read_rating_triples(in, source, format, scale, *users, *items);
    return make_matrix(std::move(users), std::move(items), std::move(raw.entries), scale, source);
}

RatingMatrix load_ratings(const std::filesystem::path& path, DatasetFormat format, RatingScale scale) {
    auto in = open_input(path);
    return parse_ratings(in, path.string(), format, scale);
}

ExplicitTrust parse_trust(std::istream& in, const std::string& source, IdIndex& users,
                          DatasetFormat format) {
    std::vector<TrustStatement> statements;
    std::vector<std::size_t> lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto fields = split_fields(line, format);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
            throw ParseError(source, line_no, "expected 'trustor trustee value', got '" + line + "'");
        }
        double value = parse_field(fields[2], source, line_no, "trust value");
        if (value != 1.0) {
            throw ParseError(source, line_no, "trust value must be 1, got '" + std::string(fields[2]) + "'");
        }
        if (fields[0] == fields[1]) {
            throw IntegrityError(source + ":" + std::to_string(line_no) + ": self-trust statement for '" +
                                 std::string(fields[0]) + "'");
        }
        statements.push_back({UserId{users.intern(fields[0])}, UserId{users.intern(fields[1])}});
        lines.push_back(line_no);
    }
    if (in.bad()) throw IoError("read failed: " + source);

    std::vector<std::size_t> order(statements.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return statements[a] < statements[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (statements[order[k]] == statements[order[k - 1]]) {
            const auto& s = statements[order[k]];
            throw IntegrityError(source + ":" + std::to_string(lines[order[k]]) + ": duplicate trust statement '" +
                                 users.external(s.trustor.value) + "' -> '" + users.external(s.trustee.value) +
                                 "' (first on line " + std::to_string(lines[order[k - 1]]) + ")");
        }
    }
    return ExplicitTrust(users.size(), std::move(statements));
}

ExplicitTrust load_trust(const std::filesystem::path& path, IdIndex& users, DatasetFormat format) {
    auto in = open_input(path);
    return parse_trust(in, path.string(), users, format);
}

Dataset load_dataset(const std::filesystem::path& ratings_path,
                     const std::optional<std::filesystem::path>& trust_path, DatasetFormat format,
                     RatingScale scale) {
    auto users = std::make_shared<IdIndex>();
    auto items = std::make_shared<IdIndex>();
    auto rin = open_input(ratings_path);
    auto raw = read_rating_triples(rin, ratings_path.string(), format, scale, *users, *items);

    // Trust-only users extend the index, so the matrix is built afterwards.
    auto trust = trust_path ? load_trust(*trust_path, *users, format) : ExplicitTrust(users->size(), {});
    auto matrix = make_matrix(std::move(users), std::move(items), std::move(raw.entries), scale,
                              ratings_path.string());
    return Dataset{std::move(matrix), std::move(trust)};
}

void write_ratings(std::ostream& out, const RatingMatrix& m) {
    for (const auto& r : m.entries()) {
        out << m.users().external(r.user.value) << ' ' << m.items().external(r.item.value) << ' '
            << format_double(r.value) << '\n';
    }
}

DatasetCounts count_dataset(const Dataset& d) {
    return {d.ratings.num_rating_users(), d.ratings.num_items(), d.ratings.num_ratings(), d.trust.size()};
}

void check_dataset_counts(const Dataset& d, const DatasetCounts& expected) {
    auto got = count_dataset(d);
    std::ostringstream diff;
    auto field = [&diff](const char* name, std::size_t want, std::size_t have) {
        if (want != have) diff << "\n  " << name << ": expected " << want << ", found " << have;
    };
    field("rating users", expected.rating_users, got.rating_users);
    field("items", expected.items, got.items);
    field("ratings", expected.ratings, got.ratings);
    field("trust statements", expected.trust_statements, got.trust_statements);
    if (!diff.str().empty()) {
        throw IntegrityError("dataset does not match the expected shape:" + diff.str());
    }
}

Manifest parse_manifest(std::istream& in, const std::string& source) {
    Manifest manifest;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(source, line_no, "expected 'key = value'");
        }
        auto key = std::string(trim(std::string_view(line).substr(0, eq)));
        auto value = std::string(trim(std::string_view(line).substr(eq + 1)));
        if (key.empty()) throw ParseError(source, line_no, "empty key");
        if (!manifest.emplace(key, value).second) {
            throw ParseError(source, line_no, "duplicate key '" + key + "'");
        }
    }
    return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_manifest(in, path.string());
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
    for (const auto& [key, value] : manifest) {
        out << key << " = " << value << '\n';
    }
}

}  // namespace trustcf
