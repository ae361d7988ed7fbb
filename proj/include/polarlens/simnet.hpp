#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "polarlens/matrix.hpp"
#include "polarlens/types.hpp"

namespace polarlens {

// Weighted influencer graph. Two modes share the type:
//  - similarity (undirected): weights are cosine similarities in [0, 1],
//    edges stored once with a < b (node-id order);
//  - direct (directed): weights are positive integer retweet counts, edge
//    (a -> b) means a retweeted b. No self-loops in either mode.
struct SimilarityGraph {
    struct Node {
        std::string id;
        PartyLabel party;
    };
    struct Edge {
        std::uint32_t a;
        std::uint32_t b;
        double weight;
    };

    bool directed = false;
    std::vector<Node> nodes;
    std::vector<Edge> edges; // sorted by (node id a, node id b)

    std::size_t degree(std::uint32_t n) const;
    double total_weight() const;
};

// Cosine similarity of two equal-length nonnegative count vectors.
// Exact formula, clamped to [0, 1] against floating rounding.
double cosine_similarity(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

// One node per non-zero column of m; an edge for every column pair with
// positive cosine weight. Throws if fewer than 2 usable columns.
SimilarityGraph build_similarity_graph(const InteractionMatrix& m, const InfluencerCatalog& catalog);

// Median-threshold pruning: drop edges with weight strictly below the median
// of all edge weights (even count -> mean of the two middle values), then
// drop nodes left with degree 0.
SimilarityGraph prune_graph(const SimilarityGraph& g);

// Directed influencer-to-influencer retweet graph for one year (self-loops
// excluded). Empty result is valid.
SimilarityGraph build_direct_retweet_graph(const std::vector<RetweetRecord>& records,
                                           const InfluencerCatalog& catalog, int year);

// Edge list CSV: src,dst,weight,mode with 9 significant digits on weights.
void export_edges_csv(const SimilarityGraph& g, std::ostream& out);
// Node list CSV: id,party.
void export_nodes_csv(const SimilarityGraph& g, std::ostream& out);

} // namespace polarlens
