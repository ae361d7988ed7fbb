#include "polarlens/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <ostream>

#include "polarlens/util.hpp"

namespace polarlens {

std::size_t SimilarityGraph::degree(std::uint32_t n) const {
    std::size_t d = 0;
    for (const Edge& e : edges)
        if (e.a == n || e.b == n) ++d;
    return d;
}

double SimilarityGraph::total_weight() const {
    double w = 0;
    for (const Edge& e : edges) w += e.weight;
    return w;
}

double cosine_similarity(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    if (a.size() != b.size())
        throw DataError("cosine similarity: vector length mismatch (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
        na += static_cast<double>(a[i]) * static_cast<double>(a[i]);
        nb += static_cast<double>(b[i]) * static_cast<double>(b[i]);
    }
    if (na == 0 || nb == 0)
        throw NumericalError("cosine similarity undefined for a zero vector");
    double w = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(w, 0.0, 1.0);
}

namespace {

void sort_edges_by_ids(SimilarityGraph& g) {
    std::sort(g.edges.begin(), g.edges.end(),
              [&](const SimilarityGraph::Edge& x, const SimilarityGraph::Edge& y) {
                  const std::string& xa = g.nodes[x.a].id;
                  const std::string& xb = g.nodes[x.b].id;
                  const std::string& ya = g.nodes[y.a].id;
                  const std::string& yb = g.nodes[y.b].id;
                  return xa != ya ? xa < ya : xb < yb;
              });
}

} // namespace

SimilarityGraph build_similarity_graph(const InteractionMatrix& m,
                                       const InfluencerCatalog& catalog) {
    SimilarityGraph g;
    g.directed = false;

    std::vector<std::size_t> usable; // non-zero columns
    for (std::size_t j = 0; j < m.n_cols(); ++j)
        if (!m.col_is_zero(j)) usable.push_back(j);
    if (usable.size() < 2)
        throw NumericalError("similarity graph needs at least 2 non-zero columns, have " +
                             std::to_string(usable.size()));

    g.nodes.reserve(usable.size());
    std::vector<double> norms(usable.size());
    for (std::size_t k = 0; k < usable.size(); ++k) {
        const std::string& id = m.col_ids()[usable[k]];
        g.nodes.push_back({id, catalog.at(id).party});
        double sq = 0;
        for (const auto& e : m.col_entries(usable[k]))
            sq += static_cast<double>(e.count) * static_cast<double>(e.count);
        norms[k] = std::sqrt(sq);
    }

    // Pairwise sparse dot products over ordered column entry lists. The pair
    // loop order is fixed, so the edge list is identical regardless of any
    // internal parallelism.
    for (std::size_t p = 0; p < usable.size(); ++p) {
        const auto& ca = m.col_entries(usable[p]);
        for (std::size_t q = p + 1; q < usable.size(); ++q) {
            const auto& cb = m.col_entries(usable[q]);
            double dot = 0;
            std::size_t i = 0, j = 0;
            while (i < ca.size() && j < cb.size()) {
                if (ca[i].row < cb[j].row) ++i;
                else if (ca[i].row > cb[j].row) ++j;
                else {
                    dot += static_cast<double>(ca[i].count) * static_cast<double>(cb[j].count);
                    ++i;
                    ++j;
                }
            }
            if (dot > 0) {
                double w = std::clamp(dot / (norms[p] * norms[q]), 0.0, 1.0);
                g.edges.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), w});
            }
        }
    }
    sort_edges_by_ids(g);
    return g;
}

SimilarityGraph prune_graph(const SimilarityGraph& g) {
    if (g.directed) throw DataError("prune_graph expects a similarity-mode graph");
    if (g.edges.empty()) {
        std::cerr << "warning: prune_graph on empty edge set\n";
        return SimilarityGraph{};
    }

    std::vector<double> weights;
    weights.reserve(g.edges.size());
    for (const auto& e : g.edges) weights.push_back(e.weight);
    std::sort(weights.begin(), weights.end());
    const std::size_t n = weights.size();
    const double median =
        n % 2 == 1 ? weights[n / 2] : 0.5 * (weights[n / 2 - 1] + weights[n / 2]);

    // Strict '<': ties at the median survive.
    std::vector<SimilarityGraph::Edge> kept;
    for (const auto& e : g.edges)
        if (!(e.weight < median)) kept.push_back(e);

    std::vector<bool> alive(g.nodes.size(), false);
    for (const auto& e : kept) alive[e.a] = alive[e.b] = true;

    SimilarityGraph out;
    out.directed = false;
    std::vector<std::uint32_t> remap(g.nodes.size(), 0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (alive[i]) {
            remap[i] = static_cast<std::uint32_t>(out.nodes.size());
            out.nodes.push_back(g.nodes[i]);
        }
    }
    out.edges.reserve(kept.size());
    for (const auto& e : kept) out.edges.push_back({remap[e.a], remap[e.b], e.weight});
    return out;
}

SimilarityGraph build_direct_retweet_graph(const std::vector<RetweetRecord>& records,
                                           const InfluencerCatalog& catalog, int year) {
    std::map<std::pair<std::string, std::string>, std::int64_t> agg;
    for (const auto& r : records) {
        if (utc_year(r.timestamp) != year) continue;
        if (!catalog.contains(r.retweeter) || !catalog.contains(r.influencer)) continue;
        if (r.retweeter == r.influencer) continue;
        agg[{r.retweeter, r.influencer}] += 1;
    }

    SimilarityGraph g;
    g.directed = true;
    std::unordered_map<std::string, std::uint32_t> index;
    auto node_of = [&](const std::string& id) {
        auto [it, fresh] = index.try_emplace(id, static_cast<std::uint32_t>(g.nodes.size()));
        if (fresh) g.nodes.push_back({id, catalog.at(id).party});
        return it->second;
    };
    for (const auto& [pair, count] : agg)
        g.edges.push_back({node_of(pair.first), node_of(pair.second), static_cast<double>(count)});
    sort_edges_by_ids(g);
    return g;
}

void export_edges_csv(const SimilarityGraph& g, std::ostream& out) {
    const char* mode = g.directed ? "direct" : "similarity";
    out << "src,dst,weight,mode\n";
    for (const auto& e : g.edges)
        out << g.nodes[e.a].id << ',' << g.nodes[e.b].id << ',' << format_double(e.weight, 9)
            << ',' << mode << '\n';
}

void export_nodes_csv(const SimilarityGraph& g, std::ostream& out) {
    out << "id,party\n";
    for (const auto& n : g.nodes) out << n.id << ',' << n.party.id << '\n';
}

} // namespace polarlens
