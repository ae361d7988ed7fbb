#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "polarlens/ideology.hpp"

using namespace polarlens;

namespace {

InteractionMatrix from_dense(const std::vector<std::vector<std::int64_t>>& a,
                             std::vector<std::string> cols = {}) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < a.size(); ++i) rows.push_back("u" + std::to_string(i));
    if (cols.empty())
        for (std::size_t j = 0; j < a[0].size(); ++j) cols.push_back("p" + std::to_string(j));
    std::vector<InteractionMatrix::Triplet> tr;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != 0)
                tr.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                              a[i][j]});
    return InteractionMatrix(2020, rows, cols, tr);
}

InfluencerCatalog two_party_catalog(std::size_t n_cols) {
    InfluencerCatalog cat;
    for (std::size_t j = 0; j < n_cols; ++j)
        cat.add({"p" + std::to_string(j), "@x", PartyLabel(j < (n_cols + 1) / 2 ? "A" : "B")});
    return cat;
}

} // namespace

TEST_CASE("normalize divides by the total count") {
    auto p1 = normalize(from_dense({{2, 0}, {0, 2}}));
    CHECK(p1.at(0, 0) == doctest::Approx(0.5));
    CHECK(p1.at(0, 1) == 0.0);
    CHECK(p1.at(1, 1) == doctest::Approx(0.5));

    auto p2 = normalize(from_dense({{1, 2}, {3, 4}}));
    CHECK(p2.at(0, 0) == doctest::Approx(0.1));
    CHECK(p2.at(0, 1) == doctest::Approx(0.2));
    CHECK(p2.at(1, 0) == doctest::Approx(0.3));
    CHECK(p2.at(1, 1) == doctest::Approx(0.4));

    auto p3 = normalize(from_dense({{1}}));
    CHECK(p3.at(0, 0) == doctest::Approx(1.0));

    double sum = 0;
    for (double v : p2.data) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("margins are row and column sums") {
    auto p = normalize(from_dense({{1, 2}, {3, 4}}));
    auto [r, c] = margins(p);
    CHECK(r[0] == doctest::Approx(0.3));
    CHECK(r[1] == doctest::Approx(0.7));
    CHECK(c[0] == doctest::Approx(0.4));
    CHECK(c[1] == doctest::Approx(0.6));

    // uniform table: all margins 1/n
    auto pu = normalize(from_dense({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
    auto [ru, cu] = margins(pu);
    for (double v : ru) CHECK(v == doctest::Approx(1.0 / 3));
    for (double v : cu) CHECK(v == doctest::Approx(1.0 / 3));

    auto ps = normalize(from_dense({{1}}));
    auto [rs, cs] = margins(ps);
    CHECK(rs[0] == doctest::Approx(1.0));
    CHECK(cs[0] == doctest::Approx(1.0));
}

TEST_CASE("standardize centers with the rank-1 margin product") {
    // block identity: S = [[.5,-.5],[-.5,.5]]
    auto p = normalize(from_dense({{1, 0}, {0, 1}}));
    auto [r, c] = margins(p);
    auto s = standardize(p, r, c);
    CHECK(s.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.at(0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(s.at(1, 0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(s.at(1, 1) == doctest::Approx(0.5).epsilon(1e-12));

    // independent table P_ij = r_i c_j: S vanishes
    auto pi = normalize(from_dense({{1, 1}, {2, 2}, {3, 3}}));
    auto [ri, ci] = margins(pi);
    auto si = standardize(pi, ri, ci);
    for (double v : si.data) CHECK(std::fabs(v) < 1e-14);

    // the trivial axis is annihilated: S sqrt(c) = 0 and sqrt(r)' S = 0
    auto pr = normalize(from_dense({{4, 1, 0}, {2, 0, 5}, {0, 3, 1}, {1, 1, 1}}));
    auto [rr, cr] = margins(pr);
    auto sr = standardize(pr, rr, cr);
    for (std::size_t i = 0; i < sr.rows; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < sr.cols; ++j) acc += sr.at(i, j) * std::sqrt(cr[j]);
        CHECK(std::fabs(acc) < 1e-12);
    }
    for (std::size_t j = 0; j < sr.cols; ++j) {
        double acc = 0;
        for (std::size_t i = 0; i < sr.rows; ++i) acc += std::sqrt(rr[i]) * sr.at(i, j);
        CHECK(std::fabs(acc) < 1e-12);
    }
}

TEST_CASE("standardize rejects zero margins") {
    DenseMatrix p(2, 2);
    p.at(0, 0) = 0.5;
    p.at(1, 0) = 0.5; // column 1 has zero mass
    auto [r, c] = margins(p);
    CHECK_THROWS_AS(standardize(p, r, c), NumericalError);
}

TEST_CASE("latent ideology separates a block-diagonal table") {
    auto cat = two_party_catalog(2);
    auto li = latent_ideology(from_dense({{1, 0}, {0, 1}}), PartyLabel("A"), cat);
    const auto& us = li.result.user_scores;
    REQUIRE(us.size() == 2);
    // scores of equal magnitude and opposite sign (1/sqrt(2) up to sign)
    CHECK(us[0].second == doctest::Approx(-us[1].second).epsilon(1e-12));
    CHECK(std::fabs(us[0].second) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    // anchor A (influencer p0) sits on the negative side
    CHECK(li.result.influencer_score_map().at("p0") <= 0.0);
    // sigma: one informative axis, the second vanishes
    CHECK(li.decomposition.sigma[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(li.decomposition.sigma[1] < 1e-12);
}

TEST_CASE("duplicate user rows receive identical scores") {
    auto cat = two_party_catalog(3);
    auto li = latent_ideology(from_dense({{2, 1, 0}, {2, 1, 0}, {0, 1, 3}, {1, 0, 4}}),
                              PartyLabel("A"), cat);
    const auto us = li.result.user_score_map();
    CHECK(us.at("u0") == doctest::Approx(us.at("u1")).epsilon(1e-12));
}

TEST_CASE("count scaling leaves scores unchanged") {
    auto cat = two_party_catalog(3);
    const std::vector<std::vector<std::int64_t>> base = {{2, 1, 0}, {0, 1, 3}, {1, 0, 4}};
    auto scaled = base;
    for (auto& row : scaled)
        for (auto& v : row) v *= 7;
    auto a = latent_ideology(from_dense(base), PartyLabel("A"), cat);
    auto b = latent_ideology(from_dense(scaled), PartyLabel("A"), cat);
    for (std::size_t i = 0; i < a.result.user_scores.size(); ++i)
        CHECK(a.result.user_scores[i].second == b.result.user_scores[i].second); // bit-equal
}

TEST_CASE("influencer scores are retweeter medians") {
    std::unordered_map<std::string, double> scores;
    // odd count: median is the middle value
    auto m1 = from_dense({{1}, {1}, {1}});
    scores = {{"u0", -0.2}, {"u1", 0.1}, {"u2", 0.4}};
    auto r1 = influencer_ideology(scores, m1);
    CHECK(r1.scores[0].second == doctest::Approx(0.1));

    // even count: mean of the two middle values
    auto m2 = from_dense({{1}, {1}});
    scores = {{"u0", 0.1}, {"u1", 0.3}};
    CHECK(influencer_ideology(scores, m2).scores[0].second == doctest::Approx(0.2));

    // single retweeter
    auto m3 = from_dense({{1}});
    scores = {{"u0", 0.7}};
    CHECK(influencer_ideology(scores, m3).scores[0].second == doctest::Approx(0.7));

    // a column with no scored retweeters is excluded and reported
    auto m4 = from_dense({{1, 0}, {0, 1}});
    scores = {{"u0", 0.5}};
    auto r4 = influencer_ideology(scores, m4);
    CHECK(r4.scores.size() == 1);
    REQUIRE(r4.excluded.size() == 1);
    CHECK(r4.excluded[0] == "p1");
}

TEST_CASE("latent ideology rejects degenerate input") {
    auto cat = two_party_catalog(2);
    // rank-0 residual: every user identical, 2x2 with equal rows
    CHECK_THROWS_AS(latent_ideology(from_dense({{1, 1}, {1, 1}}), PartyLabel("A"), cat),
                    NumericalError);
    // absent anchor party
    CHECK_THROWS_AS(latent_ideology(from_dense({{1, 0}, {0, 1}}), PartyLabel("Z"), cat),
                    DataError);
}

TEST_CASE("row permutation permutes user scores and fixes influencer scores") {
    auto cat = two_party_catalog(4);
    const std::vector<std::vector<std::int64_t>> base = {
        {3, 1, 0, 0}, {2, 2, 0, 1}, {0, 1, 4, 2}, {0, 0, 2, 3}, {1, 0, 1, 5}};
    auto a = latent_ideology(from_dense(base), PartyLabel("A"), cat);

    std::vector<std::vector<std::int64_t>> perm = {base[3], base[0], base[4], base[2], base[1]};
    std::vector<std::string> prows = {"u3", "u0", "u4", "u2", "u1"};
    std::vector<InteractionMatrix::Triplet> tr;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j < perm[i].size(); ++j)
            if (perm[i][j] != 0)
                tr.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                              perm[i][j]});
    InteractionMatrix pm(2020, prows, {"p0", "p1", "p2", "p3"}, tr);
    auto b = latent_ideology(pm, PartyLabel("A"), cat);

    auto am = a.result.user_score_map();
    auto bm = b.result.user_score_map();
    for (const auto& [id, sa] : am) CHECK(sa == doctest::Approx(bm.at(id)).epsilon(1e-9));
    auto ai = a.result.influencer_score_map();
    auto bi = b.result.influencer_score_map();
    for (const auto& [id, sa] : ai) CHECK(sa == doctest::Approx(bi.at(id)).epsilon(1e-9));
}

TEST_CASE("influencer scores stay inside their retweeters' range") {
    std::mt19937_64 rng(23);
    auto cat = two_party_catalog(6);
    std::vector<std::vector<std::int64_t>> dense(25, std::vector<std::int64_t>(6, 0));
    for (auto& row : dense) {
        int nz = 0;
        for (auto& v : row)
            if (rng() % 2) { v = static_cast<std::int64_t>(1 + rng() % 6); ++nz; }
        if (nz == 0) row[rng() % 6] = 1;
    }
    auto li = latent_ideology(from_dense(dense), PartyLabel("A"), cat);
    auto us = li.result.user_score_map();
    const auto& m = li.decomposition; // kept rows/cols mirror the matrix here
    auto matrix = from_dense(dense);
    for (const auto& [pid, score] : li.result.influencer_scores) {
        const int j = matrix.col_index(pid);
        REQUIRE(j >= 0);
        double lo = 1e300, hi = -1e300;
        for (const auto& e : matrix.col_entries(static_cast<std::size_t>(j))) {
            const double s = us.at(matrix.row_ids()[e.row]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        CHECK(score >= lo - 1e-12);
        CHECK(score <= hi + 1e-12);
    }
    CHECK(m.sigma.size() == 6);
}

TEST_CASE("user scores match a dense reference SVD up to global sign") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t rows = 5 + rng() % 30, cols = 3 + rng() % 10;
        std::vector<std::vector<std::int64_t>> dense(rows, std::vector<std::int64_t>(cols, 0));
        for (std::size_t i = 0; i < rows; ++i) {
            dense[i][i % cols] = 1 + static_cast<std::int64_t>(rng() % 9);
            for (std::size_t j = 0; j < cols; ++j)
                if (rng() % 3 == 0) dense[i][j] += static_cast<std::int64_t>(rng() % 9);
        }
        bool colzero = false;
        for (std::size_t j = 0; j < cols; ++j) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < rows; ++i) s += dense[i][j];
            if (s == 0) colzero = true;
        }
        if (colzero) continue;

        auto cat = two_party_catalog(cols);
        auto li = latent_ideology(from_dense(dense), PartyLabel("A"), cat);
        const auto& s = li.decomposition.s;

        Eigen::MatrixXd es(s.rows, s.cols);
        for (std::size_t i = 0; i < s.rows; ++i)
            for (std::size_t j = 0; j < s.cols; ++j) es(i, j) = s.at(i, j);
        Eigen::JacobiSVD<Eigen::MatrixXd> ref(es, Eigen::ComputeThinU);
        if (ref.singularValues()(0) - ref.singularValues()(1) < 1e-8) continue; // tied axis

        double dot = 0;
        for (std::size_t i = 0; i < s.rows; ++i)
            dot += li.decomposition.u_first[i] * ref.matrixU()(i, 0);
        const double sign = dot >= 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < s.rows; ++i)
            CHECK(li.decomposition.u_first[i] ==
                  doctest::Approx(sign * ref.matrixU()(i, 0)).epsilon(1e-8));
    }
}
