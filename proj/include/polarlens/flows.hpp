#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "polarlens/matrix.hpp"
#include "polarlens/simnet.hpp"
#include "polarlens/types.hpp"

namespace polarlens {

// Reserved pseudo-parties for flow margins: users present only in the later
// year enter from ENTER, users present only in the earlier year leave to EXIT.
inline const std::string kEnterLabel = "ENTER";
inline const std::string kExitLabel = "EXIT";

struct AffiliationTable {
    int year = 0;
    // user id -> (dominant party, tie flag), insertion order = matrix row order
    std::vector<std::pair<std::string, std::pair<PartyLabel, bool>>> assignments;

    const std::pair<PartyLabel, bool>* find(const std::string& user) const;
};

struct FlowTable {
    int year_from = 0;
    int year_to = 0;
    // (party_from or ENTER, party_to or EXIT) -> count
    std::map<std::pair<std::string, std::string>, std::int64_t> counts;
};

struct LinkShareTable {
    int year = 0;
    // ordered (party X, party Y) -> percentage of X-incident edges whose other
    // endpoint is in Y; every X row sums to 100.
    std::map<std::pair<std::string, std::string>, double> percent;
};

// Party whose influencers the user retweeted the most; ties resolve to the
// lexicographically smallest party id and set the flag.
std::pair<PartyLabel, bool> dominant_party(const InteractionMatrix& m, const std::string& user,
                                           const InfluencerCatalog& catalog);

AffiliationTable build_affiliations(const InteractionMatrix& m, const InfluencerCatalog& catalog);

// Cross-year flow counts with ENTER/EXIT margins. Conservation is exact:
// row sums (over parties + EXIT) reproduce year_from party sizes, column sums
// (over parties + ENTER) reproduce year_to party sizes.
FlowTable flow_matrix(const AffiliationTable& a, const AffiliationTable& b);

struct GrowthEntry {
    PartyLabel party;
    int year = 0;
    std::int64_t count = 0;
    double growth_pct = 0.0; // vs prior year, 2-decimal semantics
    bool defined = false;    // false for the first year or a zero prior count
};

// 100 * (n_t - n_{t-1}) / n_{t-1} per party. Input: per-year counts.
std::vector<GrowthEntry> growth_rates(const std::map<std::pair<std::string, int>, std::int64_t>& counts);

// Share of edges between party pairs. Undirected graphs: an intra-party edge
// counts once in that party's row, a cross edge once in each endpoint's row.
// Directed graphs: rows are source parties over out-edges.
LinkShareTable link_share_table(const SimilarityGraph& g, int year);

void export_affiliations_csv(const AffiliationTable& t, std::ostream& out);
void export_flows_csv(const std::vector<FlowTable>& flows, std::ostream& out);
void export_growth_csv(const std::vector<GrowthEntry>& dominant,
                       const std::vector<GrowthEntry>& retweeter, std::ostream& out);
void export_link_shares_csv(const LinkShareTable& t, std::ostream& out);

} // namespace polarlens
