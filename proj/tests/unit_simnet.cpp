#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "polarlens/simnet.hpp"
#include "polarlens/util.hpp"

using namespace polarlens;

namespace {

InfluencerCatalog three_party_catalog(int per_party) {
    InfluencerCatalog cat;
    for (int p = 0; p < 3; ++p)
        for (int k = 0; k < per_party; ++k) {
            const std::string party = "P" + std::to_string(p + 1);
            cat.add({"i_" + party + "_" + std::to_string(k), "@x", PartyLabel(party)});
        }
    return cat;
}

InteractionMatrix from_dense(const std::vector<std::vector<std::int64_t>>& a,
                             const std::vector<std::string>& cols) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < a.size(); ++i) rows.push_back("u" + std::to_string(i));
    std::vector<InteractionMatrix::Triplet> tr;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (a[i][j] != 0)
                tr.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                              a[i][j]});
    return InteractionMatrix(2020, rows, cols, tr);
}

double edge_weight(const SimilarityGraph& g, const std::string& a, const std::string& b) {
    for (const auto& e : g.edges) {
        if ((g.nodes[e.a].id == a && g.nodes[e.b].id == b) ||
            (!g.directed && g.nodes[e.a].id == b && g.nodes[e.b].id == a))
            return e.weight;
    }
    return -1.0;
}

} // namespace

TEST_CASE("cosine similarity matches the formula") {
    using V = std::vector<std::int64_t>;
    V a{1, 2}, b{2, 4};
    CHECK(cosine_similarity(a, b) == doctest::Approx(1.0).epsilon(1e-12));
    V c{1, 0}, d{0, 3};
    CHECK(cosine_similarity(c, d) == doctest::Approx(0.0));
    V e{1, 0, 1}, f{1, 1, 0};
    CHECK(cosine_similarity(e, f) == doctest::Approx(0.5).epsilon(1e-12));

    V zero{0, 0}, one{1, 0}, shorter{1};
    CHECK_THROWS_AS(cosine_similarity(zero, one), NumericalError);
    CHECK_THROWS_AS(cosine_similarity(one, shorter), DataError);
}

TEST_CASE("build_similarity_graph connects overlapping audiences") {
    InfluencerCatalog cat;
    cat.add({"a", "@a", PartyLabel("X")});
    cat.add({"b", "@b", PartyLabel("X")});
    cat.add({"c", "@c", PartyLabel("Y")});

    // identical retweeter columns -> weight 1
    auto m1 = from_dense({{2, 2}, {3, 3}}, {"a", "b"});
    auto g1 = build_similarity_graph(m1, cat);
    REQUIRE(g1.edges.size() == 1);
    CHECK(g1.edges[0].weight == doctest::Approx(1.0).epsilon(1e-12));

    // disjoint retweeters -> no edge
    auto m2 = from_dense({{1, 0}, {0, 1}}, {"a", "b"});
    CHECK(build_similarity_graph(m2, cat).edges.empty());

    // columns (1,0,1),(1,1,0),(0,0,5): edges {(a,b):0.5, (a,c):1/sqrt(2)}, no (b,c)
    auto m3 = from_dense({{1, 1, 0}, {0, 1, 0}, {1, 0, 5}}, {"a", "b", "c"});
    auto g3 = build_similarity_graph(m3, cat);
    CHECK(g3.edges.size() == 2);
    CHECK(edge_weight(g3, "a", "b") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(edge_weight(g3, "a", "c") == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(edge_weight(g3, "b", "c") == -1.0);
}

TEST_CASE("similarity graph needs two usable columns") {
    InfluencerCatalog cat;
    cat.add({"a", "@a", PartyLabel("X")});
    cat.add({"b", "@b", PartyLabel("X")});
    auto m = from_dense({{1, 0}, {1, 0}}, {"a", "b"}); // b all-zero
    CHECK_THROWS_AS(build_similarity_graph(m, cat), NumericalError);
}

TEST_CASE("prune_graph removes edges strictly below the median") {
    SimilarityGraph g;
    g.directed = false;
    for (int i = 0; i < 4; ++i) g.nodes.push_back({"n" + std::to_string(i), PartyLabel("X")});

    // weights {0.2, 0.4, 0.6}: median 0.4, only 0.2 goes
    g.edges = {{0, 1, 0.2}, {1, 2, 0.4}, {2, 3, 0.6}};
    auto p = prune_graph(g);
    CHECK(p.edges.size() == 2);
    for (const auto& e : p.edges) CHECK(e.weight >= 0.4);

    // all equal: nothing strictly below the median
    g.edges = {{0, 1, 0.3}, {1, 2, 0.3}, {2, 3, 0.3}};
    CHECK(prune_graph(g).edges.size() == 3);

    // {0.1, 0.9}: even count, median 0.5; node 0 keeps only the light edge
    g.edges = {{0, 1, 0.1}, {1, 2, 0.9}};
    auto q = prune_graph(g);
    REQUIRE(q.edges.size() == 1);
    CHECK(q.edges[0].weight == doctest::Approx(0.9));
    CHECK(q.nodes.size() == 2); // nodes 0 and 3 dropped as isolated
    for (const auto& n : q.nodes) CHECK(n.id != "n0");
}

TEST_CASE("prune_graph on an empty edge set returns an empty graph") {
    SimilarityGraph g;
    g.nodes.push_back({"a", PartyLabel("X")});
    auto p = prune_graph(g);
    CHECK(p.nodes.empty());
    CHECK(p.edges.empty());
}

TEST_CASE("direct retweet graph aggregates influencer-to-influencer counts") {
    InfluencerCatalog cat;
    cat.add({"p1", "@1", PartyLabel("X")});
    cat.add({"p2", "@2", PartyLabel("Y")});
    auto at = [](const char* ts) { return parse_utc_timestamp(ts); };

    std::vector<RetweetRecord> recs = {{at("2020-02-01T00:00:00Z"), "p1", "p2"},
                                       {at("2020-02-02T00:00:00Z"), "p1", "p2"},
                                       {at("2020-02-03T00:00:00Z"), "p1", "p2"}};
    auto g = build_direct_retweet_graph(recs, cat, 2020);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.directed);
    CHECK(g.edges[0].weight == doctest::Approx(3.0));

    CHECK(build_direct_retweet_graph({{at("2020-02-01T00:00:00Z"), "user", "p1"}}, cat, 2020)
              .edges.empty());

    std::vector<RetweetRecord> both = {{at("2020-02-01T00:00:00Z"), "p1", "p2"},
                                       {at("2020-02-02T00:00:00Z"), "p1", "p2"},
                                       {at("2020-02-03T00:00:00Z"), "p2", "p1"}};
    auto g2 = build_direct_retweet_graph(both, cat, 2020);
    REQUIRE(g2.edges.size() == 2);
    CHECK(edge_weight(g2, "p1", "p2") == doctest::Approx(2.0));
    CHECK(edge_weight(g2, "p2", "p1") == doctest::Approx(1.0));

    // self-retweets stay out of the direct graph
    auto g3 = build_direct_retweet_graph({{at("2020-02-01T00:00:00Z"), "p1", "p1"}}, cat, 2020);
    CHECK(g3.edges.empty());
}

TEST_CASE("similarity weights are symmetric, bounded and row-permutation invariant") {
    std::mt19937_64 rng(5);
    auto cat = three_party_catalog(2);
    std::vector<std::string> cols;
    for (const auto& e : cat.entries()) cols.push_back(e.influencer_id);

    std::vector<std::vector<std::int64_t>> dense(12, std::vector<std::int64_t>(cols.size(), 0));
    for (auto& row : dense)
        for (auto& v : row)
            if (rng() % 2) v = static_cast<std::int64_t>(1 + rng() % 7);
    auto g = build_similarity_graph(from_dense(dense, cols), cat);
    for (const auto& e : g.edges) {
        CHECK(e.weight > 0.0);
        CHECK(e.weight <= 1.0);
    }

    // permuting user rows leaves the graph unchanged
    auto permuted = dense;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    auto g2 = build_similarity_graph(from_dense(permuted, cols), cat);
    REQUIRE(g.edges.size() == g2.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        CHECK(g.nodes[g.edges[i].a].id == g2.nodes[g2.edges[i].a].id);
        CHECK(g.nodes[g.edges[i].b].id == g2.nodes[g2.edges[i].b].id);
        CHECK(g.edges[i].weight == doctest::Approx(g2.edges[i].weight).epsilon(1e-12));
    }

    // scaling one column leaves its cosine weights unchanged
    auto scaled = dense;
    for (auto& row : scaled) row[0] *= 5;
    auto g3 = build_similarity_graph(from_dense(scaled, cols), cat);
    REQUIRE(g3.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        CHECK(g3.edges[i].weight == doctest::Approx(g.edges[i].weight).epsilon(1e-12));
}

TEST_CASE("pruned graphs keep weights at or above the median") {
    std::mt19937_64 rng(17);
    auto cat = three_party_catalog(3);
    std::vector<std::string> cols;
    for (const auto& e : cat.entries()) cols.push_back(e.influencer_id);
    std::vector<std::vector<std::int64_t>> dense(30, std::vector<std::int64_t>(cols.size(), 0));
    for (auto& row : dense)
        for (auto& v : row)
            if (rng() % 3 == 0) v = static_cast<std::int64_t>(1 + rng() % 5);
    auto g = build_similarity_graph(from_dense(dense, cols), cat);
    REQUIRE(!g.edges.empty());

    std::vector<double> ws;
    for (const auto& e : g.edges) ws.push_back(e.weight);
    std::sort(ws.begin(), ws.end());
    const double median = ws.size() % 2 ? ws[ws.size() / 2]
                                        : 0.5 * (ws[ws.size() / 2 - 1] + ws[ws.size() / 2]);

    auto p = prune_graph(g);
    CHECK(p.nodes.size() <= g.nodes.size());
    for (const auto& e : p.edges) CHECK(e.weight >= median - 1e-15);
    for (std::size_t n = 0; n < p.nodes.size(); ++n) CHECK(p.degree(static_cast<std::uint32_t>(n)) > 0);
}

TEST_CASE("edge csv uses 9 significant digits and a mode column") {
    SimilarityGraph g;
    g.directed = false;
    g.nodes = {{"a", PartyLabel("X")}, {"b", PartyLabel("Y")}};
    g.edges = {{0, 1, 1.0 / 3.0}};
    std::ostringstream out;
    export_edges_csv(g, out);
    CHECK(out.str() == "src,dst,weight,mode\na,b,0.333333333,similarity\n");
    std::ostringstream nodes;
    export_nodes_csv(g, nodes);
    CHECK(nodes.str() == "id,party\na,X\nb,Y\n");
}
