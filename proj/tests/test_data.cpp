#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "sbpm/data.hpp"
#include "sbpm/error.hpp"

namespace {

sbpm::Dataset make_2d(const std::vector<std::pair<double, double>>& points) {
    sbpm::Dataset d{sbpm::numeric_schema(2)};
    for (const auto& [x, y] : points) d.append_row(std::vector<double>{x, y});
    return d;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("append_row validates arity, finiteness, and discrete codes") {
    sbpm::Dataset d{sbpm::numeric_schema(2)};
    CHECK_THROWS_AS(d.append_row(std::vector<double>{1.0}), sbpm::Error);
    CHECK_THROWS_AS(d.append_row(std::vector<double>{1.0, 2.0, 3.0}), sbpm::Error);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(d.append_row(std::vector<double>{inf, 0.0}), sbpm::Error);
    CHECK_THROWS_AS(d.append_row(std::vector<double>{std::nan(""), 0.0}), sbpm::Error);

    sbpm::Dataset disc{{sbpm::Column{"c", sbpm::ColumnKind::discrete, {}}}};
    CHECK_THROWS_AS(disc.append_row(std::vector<double>{1.5}), sbpm::Error);
    CHECK_THROWS_AS(disc.append_row(std::vector<double>{-1.0}), sbpm::Error);
    disc.append_row(std::vector<double>{3.0});
    CHECK(disc.rows() == 1);
}

TEST_CASE("dataset equality is bitwise on values") {
    auto a = make_2d({{0.1, 0.2}, {0.3, 0.4}});
    auto b = make_2d({{0.1, 0.2}, {0.3, 0.4}});
    auto c = make_2d({{0.1, 0.2}, {0.3, 0.4000000000000001}});
    CHECK(a == b);
    CHECK_FALSE(a == c);
}

TEST_CASE("generate_gauss is deterministic per seed") {
    const sbpm::GaussSpec spec{500, 77, 2};
    CHECK(sbpm::generate_gauss(spec) == sbpm::generate_gauss(spec));
    const sbpm::Dataset other = sbpm::generate_gauss(sbpm::GaussSpec{500, 78, 2});
    CHECK_FALSE(sbpm::generate_gauss(spec) == other);
}

TEST_CASE("generate_gauss moments match a standard normal") {
    const sbpm::Dataset d = sbpm::generate_gauss(sbpm::GaussSpec{100000, 5, 2});
    REQUIRE(d.rows() == 100000);
    for (std::size_t c = 0; c < 2; ++c) {
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t i = 0; i < d.rows(); ++i) {
            sum += d.at(i, c);
            sum_sq += d.at(i, c) * d.at(i, c);
        }
        const double mean = sum / static_cast<double>(d.rows());
        const double var = sum_sq / static_cast<double>(d.rows()) - mean * mean;
        CHECK(mean > -0.02);
        CHECK(mean < 0.02);
        CHECK(var > 0.98);
        CHECK(var < 1.02);
    }
}

TEST_CASE("generate_gauss rejects degenerate sizes") {
    CHECK_THROWS_AS(sbpm::generate_gauss(sbpm::GaussSpec{1, 0, 2}), sbpm::Error);
    CHECK_THROWS_AS(sbpm::generate_gauss(sbpm::GaussSpec{10, 0, 0}), sbpm::Error);
}

TEST_CASE("split_even produces a deterministic even partition") {
    const sbpm::Dataset d = sbpm::generate_gauss(sbpm::GaussSpec{100, 4, 2});
    const sbpm::SplitResult a = sbpm::split_even(d, 9);
    const sbpm::SplitResult b = sbpm::split_even(d, 9);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    CHECK(a.train.rows() == 50);
    CHECK(a.test.rows() == 50);
    CHECK(a.permutation == b.permutation);

    // The permutation field really is a permutation of 0..n-1.
    std::set<std::size_t> seen(a.permutation.begin(), a.permutation.end());
    CHECK(seen.size() == 100);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 99);
}

TEST_CASE("split_even conserves the row multiset") {
    const sbpm::Dataset d = sbpm::generate_gauss(sbpm::GaussSpec{60, 8, 2});
    const sbpm::SplitResult s = sbpm::split_even(d, 3);
    std::vector<std::pair<double, double>> original, recombined;
    for (std::size_t i = 0; i < d.rows(); ++i) original.emplace_back(d.at(i, 0), d.at(i, 1));
    for (std::size_t i = 0; i < s.train.rows(); ++i)
        recombined.emplace_back(s.train.at(i, 0), s.train.at(i, 1));
    for (std::size_t i = 0; i < s.test.rows(); ++i)
        recombined.emplace_back(s.test.at(i, 0), s.test.at(i, 1));
    std::sort(original.begin(), original.end());
    std::sort(recombined.begin(), recombined.end());
    CHECK(original == recombined);
}

TEST_CASE("split_even reaches every half-partition of a 4-row dataset") {
    const auto d = make_2d({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
    // A 4-row dataset has exactly 3 distinct unordered half-partitions,
    // identified by which row accompanies row 0.
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 64 && seen.size() < 3; ++seed) {
        const sbpm::SplitResult s = sbpm::split_even(d, seed);
        std::vector<int> train_ids;
        for (std::size_t i = 0; i < 2; ++i)
            train_ids.push_back(static_cast<int>(s.train.at(i, 0)));
        std::sort(train_ids.begin(), train_ids.end());
        const bool has0 = train_ids[0] == 0;
        const int partner = has0 ? train_ids[1] : 6 - train_ids[0] - train_ids[1];
        seen.insert("0with" + std::to_string(partner));
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("split_even rejects odd or tiny inputs") {
    CHECK_THROWS_AS(sbpm::split_even(make_2d({{0, 0}, {1, 1}, {2, 2}}), 0), sbpm::Error);
    CHECK_THROWS_AS(sbpm::split_even(sbpm::Dataset{sbpm::numeric_schema(2)}, 0), sbpm::Error);
}

TEST_CASE("outlier_mask flags points beyond the radius") {
    const auto d = make_2d({{0, 0}, {3, 0}, {1.5, 1.5}, {2.15, 0}});
    const auto mask = sbpm::outlier_mask(d, sbpm::default_outlier_rule());
    CHECK_FALSE(mask[0]);          // origin
    CHECK(mask[1]);                // norm 3 > 2.146
    CHECK_FALSE(mask[2]);          // norm 2.121 < 2.146
    CHECK(mask[3]);                // norm 2.15 > 2.146
}

TEST_CASE("outlier boundary is strict: a point at the radius is inside") {
    const double r = sbpm::default_outlier_radius();
    const auto d = make_2d({{r, 0.0}});
    const auto mask = sbpm::outlier_mask(d, sbpm::OutlierRule{r});
    CHECK_FALSE(mask[0]);
}

TEST_CASE("default radius tail holds about ten percent of generated points") {
    const sbpm::Dataset d = sbpm::generate_gauss(sbpm::GaussSpec{100000, 21, 2});
    const auto mask = sbpm::outlier_mask(d, sbpm::default_outlier_rule());
    const double share =
        static_cast<double>(std::count(mask.begin(), mask.end(), true)) /
        static_cast<double>(mask.size());
    CHECK(share > 0.094);
    CHECK(share < 0.106);
}

TEST_CASE("outlier_mask requires 2d numeric data and a positive radius") {
    const auto d = make_2d({{0, 0}, {1, 1}});
    CHECK_THROWS_AS(sbpm::outlier_mask(d, sbpm::OutlierRule{0.0}), sbpm::Error);
    sbpm::Dataset d1{sbpm::numeric_schema(1)};
    d1.append_row(std::vector<double>{0.0});
    CHECK_THROWS_AS(sbpm::outlier_mask(d1, sbpm::default_outlier_rule()), sbpm::Error);
}

TEST_CASE("discretize codes equal-width bins with the maximum in the top bin") {
    sbpm::Dataset d{sbpm::numeric_schema(1)};
    for (double v : {0.0, 0.49, 0.51, 1.0}) d.append_row(std::vector<double>{v});
    const sbpm::Dataset coded = sbpm::discretize(d, 2);
    CHECK(coded.schema()[0].kind == sbpm::ColumnKind::discrete);
    CHECK(coded.at(0, 0) == 0.0);
    CHECK(coded.at(1, 0) == 0.0);
    CHECK(coded.at(2, 0) == 1.0);
    CHECK(coded.at(3, 0) == 1.0);  // max value clamps into the top bin
    REQUIRE(coded.schema()[0].bin_edges.size() == 3);
    CHECK(coded.schema()[0].bin_edges.front() == 0.0);
    CHECK(coded.schema()[0].bin_edges.back() == 1.0);
}

TEST_CASE("discretize maps a constant column to bin zero") {
    sbpm::Dataset d{sbpm::numeric_schema(1)};
    for (int i = 0; i < 4; ++i) d.append_row(std::vector<double>{2.5});
    const sbpm::Dataset coded = sbpm::discretize(d, 5);
    for (std::size_t i = 0; i < coded.rows(); ++i) CHECK(coded.at(i, 0) == 0.0);
}

TEST_CASE("discretize passes discrete columns through and is idempotent") {
    sbpm::Dataset d{sbpm::numeric_schema(1)};
    for (double v : {0.0, 3.0, 7.0, 10.0}) d.append_row(std::vector<double>{v});
    const sbpm::Dataset once = sbpm::discretize(d, 4);
    const sbpm::Dataset twice = sbpm::discretize(once, 4);
    CHECK(once.values() == twice.values());
    CHECK_THROWS_AS(sbpm::discretize(d, 1), sbpm::Error);
}

TEST_CASE("apply_bins reuses fitted edges so equal values get equal codes") {
    sbpm::Dataset fit_on{sbpm::numeric_schema(1)};
    for (double v : {0.0, 10.0}) fit_on.append_row(std::vector<double>{v});
    const sbpm::Dataset fitted = sbpm::discretize(fit_on, 5);  // width-2 bins over [0,10]

    sbpm::Dataset other{sbpm::numeric_schema(1)};
    for (double v : {-3.0, 0.0, 1.9, 2.0, 9.9, 10.0, 42.0}) {
        other.append_row(std::vector<double>{v});
    }
    const sbpm::Dataset coded = sbpm::apply_bins(other, fitted.schema());
    CHECK(coded.at(0, 0) == 0.0);  // below the fitted range clamps up
    CHECK(coded.at(1, 0) == 0.0);
    CHECK(coded.at(2, 0) == 0.0);
    CHECK(coded.at(3, 0) == 1.0);
    CHECK(coded.at(4, 0) == 4.0);
    CHECK(coded.at(5, 0) == 4.0);
    CHECK(coded.at(6, 0) == 4.0);  // above the fitted range clamps down
}

TEST_CASE("apply_bins rejects kind mismatches") {
    sbpm::Dataset numeric{sbpm::numeric_schema(1)};
    numeric.append_row(std::vector<double>{1.0});
    const sbpm::Dataset fitted = sbpm::discretize(numeric, 2);

    sbpm::Dataset disc{{sbpm::Column{"x0", sbpm::ColumnKind::discrete, {}}}};
    disc.append_row(std::vector<double>{1.0});
    CHECK_THROWS_AS(sbpm::apply_bins(disc, fitted.schema()), sbpm::Error);
    CHECK_THROWS_AS(sbpm::apply_bins(numeric, disc.schema()), sbpm::Error);
    CHECK_THROWS_AS(sbpm::apply_bins(numeric, sbpm::numeric_schema(2)), sbpm::Error);
}

TEST_CASE("csv round-trip preserves values bit-exactly") {
    sbpm::Dataset d{sbpm::numeric_schema(2)};
    d.append_row(std::vector<double>{0.1, -0.0});
    d.append_row(std::vector<double>{1e-300, 1234567890.1234567});
    d.append_row(std::vector<double>{-2.5e17, 3.0});
    const auto path = temp_file("sbpm_roundtrip.csv");
    sbpm::write_csv(d, path);
    const sbpm::Dataset back = sbpm::read_csv(path);
    CHECK(back == d);
    std::filesystem::remove(path);
}

TEST_CASE("csv read infers discrete columns from bare integer cells") {
    const auto path = temp_file("sbpm_kinds.csv");
    std::ofstream(path) << "a,b\n1,1.0\n2,2.5\n";
    const sbpm::Dataset d = sbpm::read_csv(path);
    CHECK(d.schema()[0].kind == sbpm::ColumnKind::discrete);
    CHECK(d.schema()[1].kind == sbpm::ColumnKind::numeric);
    CHECK(d.at(1, 1) == 2.5);
    std::filesystem::remove(path);
}

TEST_CASE("csv round-trip preserves column kinds") {
    sbpm::Dataset d{{sbpm::Column{"code", sbpm::ColumnKind::discrete, {}},
                     sbpm::Column{"value", sbpm::ColumnKind::numeric, {}}}};
    d.append_row(std::vector<double>{4.0, 4.0});
    const auto path = temp_file("sbpm_kinds_rt.csv");
    sbpm::write_csv(d, path);
    const sbpm::Dataset back = sbpm::read_csv(path);
    CHECK(back.schema()[0].kind == sbpm::ColumnKind::discrete);
    CHECK(back.schema()[1].kind == sbpm::ColumnKind::numeric);  // rendered as 4.0
    CHECK(back == d);
    std::filesystem::remove(path);
}

TEST_CASE("csv with only a header reads as zero rows and writes back") {
    const auto path = temp_file("sbpm_empty.csv");
    std::ofstream(path) << "x0,x1\n";
    const sbpm::Dataset d = sbpm::read_csv(path);
    CHECK(d.rows() == 0);
    CHECK(d.cols() == 2);
    sbpm::write_csv(d, path);
    const sbpm::Dataset again = sbpm::read_csv(path);
    CHECK(again.rows() == 0);
    std::filesystem::remove(path);
}

TEST_CASE("csv parse errors name the row and the column") {
    const auto path = temp_file("sbpm_bad.csv");
    std::ofstream(path) << "x,y\n1.0,2.0\n3.0,oops\n";
    try {
        sbpm::read_csv(path);
        FAIL("expected a parse error");
    } catch (const sbpm::Error& e) {
        const std::string what = e.what();
        CHECK(what.find("row 2") != std::string::npos);
        CHECK(what.find("'y'") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("csv rejects rows of the wrong arity and missing files") {
    const auto path = temp_file("sbpm_arity.csv");
    std::ofstream(path) << "x,y\n1.0\n";
    CHECK_THROWS_AS(sbpm::read_csv(path), sbpm::Error);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(sbpm::read_csv(temp_file("sbpm_does_not_exist.csv")), sbpm::Error);
}

TEST_CASE("declared-schema read enforces kinds") {
    const auto path = temp_file("sbpm_declared.csv");
    std::ofstream(path) << "x\n1.5\n";
    const std::vector<sbpm::Column> want{{"x", sbpm::ColumnKind::discrete, {}}};
    CHECK_THROWS_AS(sbpm::read_csv(path, want), sbpm::Error);
    std::filesystem::remove(path);
}

TEST_CASE("numeric cells always carry a decimal marker") {
    CHECK(sbpm::render_numeric_cell(3.0) == "3.0");
    CHECK(sbpm::render_numeric_cell(0.1) == "0.1");
    CHECK(sbpm::render_numeric_cell(-0.0) == "-0.0");
    CHECK(sbpm::render_numeric_cell(1e300).find('e') != std::string::npos);
    CHECK(sbpm::render_discrete_cell(7.0) == "7");
}
