#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "synthetic.hpp"
#include "trustcf/dataset.hpp"
#include "trustcf/errors.hpp"

namespace trustcf {
namespace {

RatingMatrix ratings_from(const std::string& text, DatasetFormat format = DatasetFormat::Auto) {
    std::istringstream in(text);
    return parse_ratings(in, "test", format);
}

TEST(LoadRatings, ThreeLineFileHasTwoUsersAndTwoItems) {
    auto m = ratings_from("A X 1\nA Y 3\nB X 2\n");
    EXPECT_EQ(m.num_users(), 2u);
    EXPECT_EQ(m.num_items(), 2u);
    EXPECT_EQ(m.num_ratings(), 3u);
    auto a = m.users().find("A");
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, 0u);
    EXPECT_DOUBLE_EQ(m.user_mean(UserId{*a}), 2.0);
    EXPECT_EQ(m.rating(UserId{1}, ItemId{0}), 2.0);
    EXPECT_FALSE(m.rating(UserId{1}, ItemId{1}));
}

TEST(LoadRatings, EmptyFileGivesEmptyMatrix) {
    auto m = ratings_from("");
    EXPECT_EQ(m.num_users(), 0u);
    EXPECT_EQ(m.num_ratings(), 0u);
    EXPECT_FALSE(m.global_mean());
}

TEST(LoadRatings, CommaSeparatedAndCommentsAccepted) {
    auto m = ratings_from("# header\nA,X,1.5\n\nB , X , 2\n", DatasetFormat::Csv);
    EXPECT_EQ(m.num_ratings(), 2u);
    EXPECT_DOUBLE_EQ(*m.global_mean(), 1.75);
}

TEST(LoadRatings, MalformedLineReportsLineNumber) {
    try {
        ratings_from("A X 1\nA Y\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(ratings_from("A X one\n"), ParseError);
}

TEST(LoadRatings, OutOfScaleRatingIsRangeError) {
    EXPECT_THROW(ratings_from("A X 4.5\n"), RangeError);
    EXPECT_THROW(ratings_from("A X 0\n"), RangeError);
    std::istringstream in("A X 5\n");
    EXPECT_NO_THROW(parse_ratings(in, "five-star", DatasetFormat::Auto, RatingScale{1.0, 5.0}));
}

TEST(LoadRatings, DuplicatePairIsIntegrityError) {
    EXPECT_THROW(ratings_from("A X 1\nB X 2\nA X 3\n"), IntegrityError);
}

TEST(UserMean, TwoPointAndSingleton) {
    auto m = ratings_from("A X 2\nA Y 4\nB X 3.5\n");
    EXPECT_DOUBLE_EQ(m.user_mean(UserId{0}), 3.0);
    EXPECT_DOUBLE_EQ(m.user_mean(UserId{1}), 3.5);
}

TEST(UserMean, MatchesDirectSummationOnRandomFixture) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> half_steps(1, 8);
    std::ostringstream text;
    double sum = 0.0;
    for (int k = 0; k < 10; ++k) {
        double r = 0.5 * half_steps(rng) + 0.001 * k;
        if (r > 4.0) r = 4.0;
        sum += r;
        text << "U I" << k << ' ' << r << '\n';
    }
    auto m = ratings_from(text.str());
    EXPECT_NEAR(m.user_mean(UserId{0}), sum / 10.0, 1e-12);
}

TEST(UserMean, UserWithoutRatingsIsUndefined) {
    std::istringstream r("A X 1\n");
    std::istringstream t("A B 1\n");
    auto m = parse_ratings(r, "r");
    IdIndex index = m.users();
    auto trust = parse_trust(t, "t", index);
    RatingMatrix full(std::make_shared<IdIndex>(index), m.shared_items(),
                      std::vector<Rating>(m.entries().begin(), m.entries().end()), m.scale());
    EXPECT_EQ(full.num_users(), 2u);
    EXPECT_EQ(full.num_rating_users(), 1u);
    EXPECT_FALSE(full.has_mean(UserId{1}));
    EXPECT_THROW(full.user_mean(UserId{1}), UndefinedMeanError);
}

TEST(LoadTrust, SelfTrustAndDuplicatesRejected) {
    IdIndex users;
    std::istringstream self("A A 1\n");
    EXPECT_THROW(parse_trust(self, "t", users), IntegrityError);
    std::istringstream dup("A B 1\nA B 1\n");
    EXPECT_THROW(parse_trust(dup, "t", users), IntegrityError);
    std::istringstream partial("A B 0.5\n");
    EXPECT_THROW(parse_trust(partial, "t", users), ParseError);
}

TEST(LoadTrust, TrustOnlyUsersJoinTheIndex) {
    auto dir = testing::scratch_dir("trust-only");
    std::ofstream(dir / "r.txt") << "A X 1\nB X 2\n";
    std::ofstream(dir / "t.txt") << "A B 1\nB C 1\nC A 1\n";
    auto d = load_dataset(dir / "r.txt", dir / "t.txt");
    EXPECT_EQ(d.ratings.num_users(), 3u);
    EXPECT_EQ(d.ratings.num_rating_users(), 2u);
    EXPECT_EQ(d.trust.size(), 3u);
    EXPECT_EQ(d.trust.num_users(), 3u);
    auto c = d.ratings.users().find("C");
    ASSERT_TRUE(c);
    EXPECT_TRUE(d.trust.trusts(UserId{*c}, UserId{0}));
    EXPECT_TRUE(d.ratings.user_ratings(UserId{*c}).empty());
}

TEST(LoadDataset, MissingFileIsIoError) {
    EXPECT_THROW(load_dataset("/nonexistent/ratings.txt", std::nullopt), IoError);
}

TEST(DatasetCounts, MismatchNamesEveryField) {
    testing::SyntheticSpec spec;
    spec.users = 10;
    auto d = testing::parse_synthetic(testing::make_synthetic(spec));
    try {
        check_dataset_counts(d, kFilmTrustCounts);
        FAIL();
    } catch (const IntegrityError& e) {
        std::string what = e.what();
        EXPECT_NE(what.find("rating users: expected 1508"), std::string::npos);
        EXPECT_NE(what.find("trust statements: expected 1642"), std::string::npos);
    }
    EXPECT_NO_THROW(check_dataset_counts(d, count_dataset(d)));
}

TEST(RatingMatrixProperties, RoundTripMeanBoundsAndCountConservation) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        testing::SyntheticSpec spec;
        spec.users = 15;
        spec.items = 20;
        spec.ratings_per_user = 6;
        spec.seed = seed;
        auto data = testing::make_synthetic(spec);
        auto m = ratings_from(data.ratings_text);

        std::size_t lines = 0;
        for (char c : data.ratings_text) lines += c == '\n';
        EXPECT_EQ(m.num_ratings(), lines);

        for (std::uint32_t u = 0; u < m.num_users(); ++u) {
            auto mean = m.user_mean(UserId{u});
            EXPECT_LE(m.scale().lo, mean);
            EXPECT_GE(m.scale().hi, mean);
        }

        std::ostringstream out;
        write_ratings(out, m);
        auto again = ratings_from(out.str());
        ASSERT_EQ(again.num_ratings(), m.num_ratings());
        for (std::size_t k = 0; k < m.num_ratings(); ++k) {
            const auto& a = m.entries()[k];
            const auto& b = again.entries()[k];
            EXPECT_EQ(m.users().external(a.user.value), again.users().external(b.user.value));
            EXPECT_EQ(m.items().external(a.item.value), again.items().external(b.item.value));
            EXPECT_EQ(a.value, b.value);
        }
    }
}

TEST(RatingMatrix, SubsetKeepsIndicesAndRecomputesMeans) {
    auto m = ratings_from("A X 1\nA Y 3\nB X 2\n");
    std::vector<std::size_t> keep{1, 2};
    auto s = m.subset(keep);
    EXPECT_EQ(s.num_users(), 2u);
    EXPECT_EQ(s.num_items(), 2u);
    EXPECT_EQ(s.num_ratings(), 2u);
    EXPECT_DOUBLE_EQ(s.user_mean(UserId{0}), 3.0);
    EXPECT_FALSE(s.rating(UserId{0}, ItemId{0}));
}

TEST(Manifest, ParsesKeyValuesAndRejectsDuplicates) {
    std::istringstream in("# run\nratings = data/r.txt\nalpha=0.3\n");
    auto m = parse_manifest(in, "m");
    EXPECT_EQ(m.at("ratings"), "data/r.txt");
    EXPECT_EQ(m.at("alpha"), "0.3");
    std::istringstream dup("a = 1\na = 2\n");
    EXPECT_THROW(parse_manifest(dup, "m"), ParseError);
    std::istringstream bad("no equals sign\n");
    EXPECT_THROW(parse_manifest(bad, "m"), ParseError);
}

}  // namespace
}  // namespace trustcf
