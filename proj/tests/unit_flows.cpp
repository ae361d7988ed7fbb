#include "doctest.h"

#include <sstream>

#include "polarlens/flows.hpp"

using namespace polarlens;

namespace {

InfluencerCatalog catalog3() {
    InfluencerCatalog cat;
    cat.add({"i_PTI_0", "@a", PartyLabel("PTI")});
    cat.add({"i_PTI_1", "@b", PartyLabel("PTI")});
    cat.add({"i_PMLN_0", "@c", PartyLabel("PML-N")});
    cat.add({"i_PPP_0", "@d", PartyLabel("PPP")});
    return cat;
}

InteractionMatrix user_matrix(const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& rows,
                              const std::vector<std::string>& cols, int year = 2020) {
    std::vector<std::string> rids;
    std::vector<InteractionMatrix::Triplet> tr;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rids.push_back(rows[i].first);
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (rows[i].second[j] != 0)
                tr.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                              rows[i].second[j]});
    }
    return InteractionMatrix(year, rids, cols, tr);
}

AffiliationTable table(int year, std::vector<std::pair<std::string, std::string>> entries) {
    AffiliationTable t;
    t.year = year;
    for (auto& [user, party] : entries)
        t.assignments.emplace_back(user, std::make_pair(PartyLabel(party), false));
    return t;
}

} // namespace

TEST_CASE("dominant_party picks the most retweeted party") {
    auto cat = catalog3();
    const std::vector<std::string> cols = {"i_PTI_0", "i_PTI_1", "i_PMLN_0", "i_PPP_0"};

    // PTI influencers total 5, PML-N 2
    auto m = user_matrix({{"u1", {3, 2, 2, 0}}}, cols);
    auto [p1, tie1] = dominant_party(m, "u1", cat);
    CHECK(p1.id == "PTI");
    CHECK(!tie1);

    // PPP 3 vs PML-N 3: lexicographic winner, flagged
    auto m2 = user_matrix({{"u1", {0, 0, 3, 3}}}, cols);
    auto [p2, tie2] = dominant_party(m2, "u1", cat);
    CHECK(p2.id == "PML-N");
    CHECK(tie2);

    // single retweet
    auto m3 = user_matrix({{"u1", {0, 0, 0, 1}}}, cols);
    CHECK(dominant_party(m3, "u1", cat).first.id == "PPP");

    CHECK_THROWS_AS(dominant_party(m3, "ghost", cat), DataError);
}

TEST_CASE("dominant_party is invariant under count scaling") {
    auto cat = catalog3();
    const std::vector<std::string> cols = {"i_PTI_0", "i_PTI_1", "i_PMLN_0", "i_PPP_0"};
    auto m = user_matrix({{"u1", {2, 1, 2, 0}}}, cols);
    auto ms = user_matrix({{"u1", {20, 10, 20, 0}}}, cols);
    CHECK(dominant_party(m, "u1", cat).first.id == dominant_party(ms, "u1", cat).first.id);
    CHECK(dominant_party(m, "u1", cat).second == dominant_party(ms, "u1", cat).second);
}

TEST_CASE("flow_matrix counts transitions with ENTER and EXIT margins") {
    // identical tables: diagonal only
    auto a = table(2018, {{"u1", "P1"}, {"u2", "P2"}});
    auto f0 = flow_matrix(a, table(2019, {{"u1", "P1"}, {"u2", "P2"}}));
    CHECK(f0.counts.at({"P1", "P1"}) == 1);
    CHECK(f0.counts.at({"P2", "P2"}) == 1);
    CHECK(f0.counts.size() == 2);

    // one switch
    auto f1 = flow_matrix(a, table(2019, {{"u1", "P2"}, {"u2", "P2"}}));
    CHECK(f1.counts.at({"P1", "P2"}) == 1);

    // a user only present in the later year enters
    auto f2 = flow_matrix(a, table(2019, {{"u1", "P1"}, {"u2", "P2"}, {"u3", "P1"}}));
    CHECK(f2.counts.at({kEnterLabel, "P1"}) == 1);

    // a user only present in the earlier year exits
    auto f3 = flow_matrix(a, table(2019, {{"u1", "P1"}}));
    CHECK(f3.counts.at({"P2", kExitLabel}) == 1);
}

TEST_CASE("flow conservation holds exactly") {
    auto a = table(2018, {{"u1", "P1"}, {"u2", "P1"}, {"u3", "P2"}, {"u4", "P2"}, {"u5", "P3"}});
    auto b = table(2019, {{"u1", "P2"}, {"u3", "P2"}, {"u5", "P3"}, {"u6", "P1"}, {"u7", "P3"}});
    auto f = flow_matrix(a, b);

    std::map<std::string, std::int64_t> from_a, row_sums, to_b, col_sums;
    for (const auto& [user, val] : a.assignments) from_a[val.first.id] += 1;
    for (const auto& [user, val] : b.assignments) to_b[val.first.id] += 1;
    for (const auto& [key, count] : f.counts) {
        if (key.first != kEnterLabel) row_sums[key.first] += count;
        if (key.second != kExitLabel) col_sums[key.second] += count;
    }
    CHECK(row_sums == from_a);
    CHECK(col_sums == to_b);
}

TEST_CASE("growth rates follow the percentage definition") {
    std::map<std::pair<std::string, int>, std::int64_t> counts = {
        {{"P1", 2018}, 100}, {{"P1", 2019}, 150}, // +50.00
        {{"P2", 2018}, 200}, {{"P2", 2019}, 200}, // +0.00
        {{"P3", 2018}, 375356}, {{"P3", 2019}, 939669}, // +150.35
        {{"P4", 2018}, 0}, {{"P4", 2019}, 10},    // undefined (zero prior)
    };
    auto rates = growth_rates(counts);
    auto find = [&](const std::string& p, int y) -> const GrowthEntry& {
        for (const auto& e : rates)
            if (e.party.id == p && e.year == y) return e;
        FAIL("missing entry");
        return rates[0];
    };
    CHECK(find("P1", 2019).growth_pct == doctest::Approx(50.00).epsilon(1e-9));
    CHECK(find("P2", 2019).growth_pct == doctest::Approx(0.0));
    CHECK(find("P3", 2019).growth_pct == doctest::Approx(150.35).epsilon(1e-4));
    CHECK(!find("P3", 2018).defined); // no prior year
    CHECK(!find("P4", 2019).defined); // zero prior count
}

TEST_CASE("link shares split rows by endpoint party") {
    SimilarityGraph g;
    g.directed = false;
    g.nodes = {{"a", PartyLabel("P1")}, {"b", PartyLabel("P1")}, {"c", PartyLabel("P2")}};

    // all edges inside one party
    g.edges = {{0, 1, 0.9}};
    auto t0 = link_share_table(g, 2020);
    CHECK(t0.percent.at({"P1", "P1"}) == doctest::Approx(100.0));

    // 1 intra-P1 edge and 1 cross edge: P1 row 50/50, P2 row 100% P1
    g.edges = {{0, 1, 0.9}, {1, 2, 0.8}};
    auto t1 = link_share_table(g, 2020);
    CHECK(t1.percent.at({"P1", "P1"}) == doctest::Approx(50.0));
    CHECK(t1.percent.at({"P1", "P2"}) == doctest::Approx(50.0));
    CHECK(t1.percent.at({"P2", "P1"}) == doctest::Approx(100.0));

    // rows sum to 100
    std::map<std::string, double> row_sum;
    for (const auto& [key, pct] : t1.percent) row_sum[key.first] += pct;
    for (const auto& [party, sum] : row_sum) CHECK(sum == doctest::Approx(100.0).epsilon(1e-4));

    CHECK_THROWS_AS(link_share_table(SimilarityGraph{}, 2020), DataError);
}

TEST_CASE("directed link shares group by source party") {
    SimilarityGraph g;
    g.directed = true;
    g.nodes = {{"a", PartyLabel("P1")}, {"b", PartyLabel("P2")}, {"c", PartyLabel("P1")}};
    g.edges = {{0, 1, 2}, {0, 2, 1}, {1, 0, 4}};
    auto t = link_share_table(g, 2020);
    CHECK(t.percent.at({"P1", "P2"}) == doctest::Approx(50.0));
    CHECK(t.percent.at({"P1", "P1"}) == doctest::Approx(50.0));
    CHECK(t.percent.at({"P2", "P1"}) == doctest::Approx(100.0));
}

TEST_CASE("affiliation tables reject reserved party labels") {
    InfluencerCatalog cat;
    cat.add({"x", "@x", PartyLabel(kEnterLabel)});
    cat.add({"y", "@y", PartyLabel("A")});
    cat.add({"z", "@z", PartyLabel("B")});
    auto m = user_matrix({{"u1", {1, 1, 1}}}, {"x", "y", "z"});
    CHECK_THROWS_AS(build_affiliations(m, cat), DataError);
}

TEST_CASE("csv exports are stable") {
    auto flows = std::vector<FlowTable>{};
    FlowTable f;
    f.year_from = 2018;
    f.year_to = 2019;
    f.counts[{"P1", "P1"}] = 3;
    f.counts[{"P1", kExitLabel}] = 1;
    flows.push_back(f);
    std::ostringstream out;
    export_flows_csv(flows, out);
    CHECK(out.str() == "year_from,year_to,party_from,party_to,count\n"
                       "2018,2019,P1,EXIT,1\n"
                       "2018,2019,P1,P1,3\n");

    LinkShareTable t;
    t.year = 2020;
    t.percent[{"P1", "P2"}] = 33.333333;
    std::ostringstream out2;
    export_link_shares_csv(t, out2);
    CHECK(out2.str() == "year,party_from,party_to,percent\n2020,P1,P2,33.33\n");
}
