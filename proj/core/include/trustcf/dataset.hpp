#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "trustcf/explicit_trust.hpp"
#include "trustcf/rating_matrix.hpp"

namespace trustcf {

/// Field separators accepted in dataset files.
enum class DatasetFormat {
    Auto,        ///< commas and/or whitespace
    Whitespace,  ///< spaces or tabs only
    Csv,         ///< commas only (surrounding blanks trimmed)
};

DatasetFormat parse_dataset_format(const std::string& name);

/// Reads "user item rating" triples. Blank lines and lines starting with '#'
/// are skipped. Users and items get dense ids in first-seen order.
RatingMatrix load_ratings(const std::filesystem::path& path,
                          DatasetFormat format = DatasetFormat::Auto,
                          RatingScale scale = {});
RatingMatrix parse_ratings(std::istream& in, const std::string& source,
                           DatasetFormat format = DatasetFormat::Auto,
                           RatingScale scale = {});

/// Reads "trustor trustee value" triples with value == 1. Unknown external ids
/// are appended to `users`.
ExplicitTrust load_trust(const std::filesystem::path& path, IdIndex& users,
                         DatasetFormat format = DatasetFormat::Auto);
ExplicitTrust parse_trust(std::istream& in, const std::string& source, IdIndex& users,
                          DatasetFormat format = DatasetFormat::Auto);

/// Ratings plus explicit trust over one shared user index. Users that only
/// appear in the trust file are part of the index but have no ratings.
struct Dataset {
    RatingMatrix ratings;
    ExplicitTrust trust;
};

Dataset load_dataset(const std::filesystem::path& ratings_path,
                     const std::optional<std::filesystem::path>& trust_path,
                     DatasetFormat format = DatasetFormat::Auto,
                     RatingScale scale = {});

/// Writes ratings as whitespace-separated external-id triples in input order.
void write_ratings(std::ostream& out, const RatingMatrix& m);

/// Expected dataset shape; any mismatch raises IntegrityError naming every
/// differing field.
struct DatasetCounts {
    std::size_t rating_users = 0;
    std::size_t items = 0;
    std::size_t ratings = 0;
    std::size_t trust_statements = 0;
};

DatasetCounts count_dataset(const Dataset& d);
void check_dataset_counts(const Dataset& d, const DatasetCounts& expected);

/// Published FilmTrust shape: 1508 rating users, 2071 items, 35416 ratings,
/// 1642 trust statements.
inline constexpr DatasetCounts kFilmTrustCounts{1508, 2071, 35416, 1642};

/// Ordered "key = value" text file. '#' starts a comment line.
using Manifest = std::map<std::string, std::string>;

Manifest parse_manifest(std::istream& in, const std::string& source);
Manifest load_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const Manifest& manifest);

}  // namespace trustcf
