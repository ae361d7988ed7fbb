#include "polarlens/flows.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "polarlens/util.hpp"

namespace polarlens {

const std::pair<PartyLabel, bool>* AffiliationTable::find(const std::string& user) const {
    for (const auto& [id, val] : assignments)
        if (id == user) return &val;
    return nullptr;
}

std::pair<PartyLabel, bool> dominant_party(const InteractionMatrix& m, const std::string& user,
                                           const InfluencerCatalog& catalog) {
    const int row = m.row_index(user);
    if (row < 0) throw DataError("unknown user '" + user + "'");
    const auto& entries = m.row_entries(static_cast<std::size_t>(row));
    if (entries.empty()) throw DataError("user '" + user + "' has no counts");

    std::map<std::string, std::int64_t> per_party;
    for (const auto& e : entries)
        per_party[catalog.at(m.col_ids()[e.col]).party.id] += e.count;

    std::string best;
    std::int64_t best_count = -1;
    bool tie = false;
    for (const auto& [party, count] : per_party) { // map order = lexicographic
        if (count > best_count) {
            best = party;
            best_count = count;
            tie = false;
        } else if (count == best_count) {
            tie = true;
        }
    }
    return {PartyLabel(best), tie};
}

AffiliationTable build_affiliations(const InteractionMatrix& m, const InfluencerCatalog& catalog) {
    for (const auto& p : catalog.parties())
        if (p.id == kEnterLabel || p.id == kExitLabel)
            throw DataError("party label '" + p.id + "' collides with a reserved flow label");
    AffiliationTable t;
    t.year = m.year();
    t.assignments.reserve(m.n_rows());
    for (const auto& user : m.row_ids())
        t.assignments.emplace_back(user, dominant_party(m, user, catalog));
    return t;
}

FlowTable flow_matrix(const AffiliationTable& a, const AffiliationTable& b) {
    FlowTable f;
    f.year_from = a.year;
    f.year_to = b.year;

    std::unordered_map<std::string, const PartyLabel*> in_b;
    in_b.reserve(b.assignments.size());
    for (const auto& [id, val] : b.assignments) in_b.emplace(id, &val.first);

    std::unordered_map<std::string, bool> seen_in_a;
    seen_in_a.reserve(a.assignments.size());
    for (const auto& [id, val] : a.assignments) {
        seen_in_a.emplace(id, true);
        auto it = in_b.find(id);
        if (it == in_b.end()) f.counts[{val.first.id, kExitLabel}] += 1;
        else f.counts[{val.first.id, it->second->id}] += 1;
    }
    for (const auto& [id, val] : b.assignments)
        if (!seen_in_a.count(id)) f.counts[{kEnterLabel, val.first.id}] += 1;
    return f;
}

std::vector<GrowthEntry> growth_rates(
    const std::map<std::pair<std::string, int>, std::int64_t>& counts) {
    std::vector<GrowthEntry> out;
    for (const auto& [key, count] : counts) {
        const auto& [party, year] = key;
        GrowthEntry e;
        e.party = PartyLabel(party);
        e.year = year;
        e.count = count;
        auto prev = counts.find({party, year - 1});
        if (prev != counts.end() && prev->second > 0) {
            e.growth_pct = 100.0 * static_cast<double>(count - prev->second) /
                           static_cast<double>(prev->second);
            e.defined = true;
        }
        out.push_back(e);
    }
    return out;
}

LinkShareTable link_share_table(const SimilarityGraph& g, int year) {
    if (g.edges.empty()) throw DataError("link share table of an empty graph");
    LinkShareTable t;
    t.year = year;

    std::map<std::string, std::map<std::string, double>> incident; // X -> Y -> edges
    for (const auto& e : g.edges) {
        const std::string& pa = g.nodes[e.a].party.id;
        const std::string& pb = g.nodes[e.b].party.id;
        if (g.directed) {
            incident[pa][pb] += 1.0; // out-edges grouped by source party
        } else if (pa == pb) {
            incident[pa][pb] += 1.0;
        } else {
            incident[pa][pb] += 1.0;
            incident[pb][pa] += 1.0;
        }
    }
    for (const auto& [x, row] : incident) {
        double total = 0;
        for (const auto& [y, c] : row) total += c;
        for (const auto& [y, c] : row) t.percent[{x, y}] = 100.0 * c / total;
    }
    return t;
}

void export_affiliations_csv(const AffiliationTable& t, std::ostream& out) {
    out << "user_id,party,tie,year\n";
    for (const auto& [id, val] : t.assignments)
        out << id << ',' << val.first.id << ',' << (val.second ? 1 : 0) << ',' << t.year << '\n';
}

void export_flows_csv(const std::vector<FlowTable>& flows, std::ostream& out) {
    out << "year_from,year_to,party_from,party_to,count\n";
    for (const auto& f : flows)
        for (const auto& [key, count] : f.counts)
            out << f.year_from << ',' << f.year_to << ',' << key.first << ',' << key.second << ','
                << count << '\n';
}

void export_growth_csv(const std::vector<GrowthEntry>& dominant,
                       const std::vector<GrowthEntry>& retweeter, std::ostream& out) {
    out << "basis,party,year,users,growth_pct\n";
    auto emit = [&](const char* basis, const std::vector<GrowthEntry>& entries) {
        for (const auto& e : entries) {
            out << basis << ',' << e.party.id << ',' << e.year << ',' << e.count << ',';
            if (e.defined) out << format_fixed(e.growth_pct, 2);
            out << '\n';
        }
    };
    // Two counting bases: 'dominant' deduplicates users by their dominant
    // party, 'retweeter' counts a user under every party they retweeted.
    emit("dominant", dominant);
    emit("retweeter", retweeter);
}

void export_link_shares_csv(const LinkShareTable& t, std::ostream& out) {
    out << "year,party_from,party_to,percent\n";
    for (const auto& [key, pct] : t.percent)
        out << t.year << ',' << key.first << ',' << key.second << ',' << format_fixed(pct, 2)
            << '\n';
}

} // namespace polarlens
