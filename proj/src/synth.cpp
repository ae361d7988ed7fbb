#include "polarlens/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <json.hpp>

#include "polarlens/ingest.hpp"
#include "polarlens/util.hpp"

namespace polarlens {

namespace {

double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Shifted geometric integer count with the given mean: base + Geom0 extras.
// Heavy-tailed enough to exercise the sparse paths, trivially seedable.
int draw_count(std::mt19937_64& rng, int base, double mean) {
    if (mean <= static_cast<double>(base)) return base;
    const double extra_mean = mean - static_cast<double>(base);
    const double p = 1.0 / (extra_mean + 1.0);
    const double u = canonical(rng);
    const int extra = static_cast<int>(std::floor(std::log1p(-u) / std::log1p(-p)));
    return base + std::max(0, extra);
}

} // namespace

void SynthConfig::validate() const {
    if (parties.empty()) throw DataError("synth config has no parties");
    if (years.empty()) throw DataError("synth config has no years");
    if (epsilon < 0 || epsilon > 0.5) throw DataError("epsilon must be in [0, 0.5]");
    if (within_bloc_cross_party < 0 || within_bloc_cross_party > 1)
        throw DataError("within_bloc_cross_party must be in [0, 1]");
    if (retweets_per_user_mean < static_cast<double>(min_distinct_guarantee))
        throw DataError("retweets_per_user_mean below the distinct-influencer guarantee");
    if (popularity_exponent < 0 || popularity_exponent > 3)
        throw DataError("popularity_exponent must be in [0, 3]");
    for (const auto& y : years) {
        if (y.epsilon_override && (*y.epsilon_override < 0 || *y.epsilon_override > 0.5))
            throw DataError("epsilon override out of range for year " + std::to_string(y.year));
        if (y.within_bloc_cross_override &&
            (*y.within_bloc_cross_override < 0 || *y.within_bloc_cross_override > 1))
            throw DataError("within-bloc override out of range for year " + std::to_string(y.year));
    }
    for (const auto& p : parties)
        if (p.epsilon_override && (*p.epsilon_override < 0 || *p.epsilon_override > 0.5))
            throw DataError("epsilon override out of range for party '" + p.label.id + "'");
    for (const auto& p : parties) {
        if (p.n_influencers < 0 || p.n_users < 0)
            throw DataError("party '" + p.label.id + "' has negative counts");
        // Influencer-free parties are legal as pure defection targets.
        if (p.n_users > 0 && p.n_influencers < min_distinct_guarantee)
            throw DataError("party '" + p.label.id + "' has fewer influencers (" +
                            std::to_string(p.n_influencers) +
                            ") than the distinct-influencer guarantee (" +
                            std::to_string(min_distinct_guarantee) + ")");
    }
}

SynthOutput generate(const SynthConfig& cfg) {
    cfg.validate();

    SynthOutput out;
    out.seed = cfg.seed;

    // Stable id universe.
    std::vector<std::string> influencer_ids;            // global order
    std::vector<std::string> influencer_handles;
    std::vector<std::string> influencer_party;          // evolves with defections
    std::vector<std::string> user_home;                 // evolves with switches
    std::unordered_map<std::string, std::size_t> influencer_index;

    std::vector<std::string> party_names;
    std::unordered_map<std::string, int> party_bloc;
    std::unordered_map<std::string, int> party_pos;
    for (std::size_t pi = 0; pi < cfg.parties.size(); ++pi) {
        const auto& p = cfg.parties[pi];
        if (party_bloc.count(p.label.id)) throw DataError("duplicate party '" + p.label.id + "'");
        party_names.push_back(p.label.id);
        party_bloc[p.label.id] = p.bloc;
        party_pos[p.label.id] = static_cast<int>(pi);
        out.party_blocs.emplace_back(p.label.id, p.bloc);
        for (int k = 0; k < p.n_influencers; ++k) {
            std::string id = "i_" + p.label.id + "_" + std::to_string(k);
            influencer_index[id] = influencer_ids.size();
            influencer_ids.push_back(id);
            influencer_handles.push_back("@" + id);
            influencer_party.push_back(p.label.id);
        }
        for (int k = 0; k < p.n_users; ++k) {
            out.user_ids.push_back("u_" + p.label.id + "_" + std::to_string(k));
            user_home.push_back(p.label.id);
        }
    }

    for (const auto& y : cfg.years) {
        out.years.push_back(y.year);

        // Apply scripted influencer defections (persistent from this year on).
        for (const auto& d : y.defections) {
            auto it = influencer_index.find(d.influencer_id);
            if (it == influencer_index.end())
                throw DataError("defection target '" + d.influencer_id + "' does not exist");
            if (!party_bloc.count(d.new_party.id)) {
                // Defections may introduce a fresh label (e.g. a defector
                // group); it inherits the destination bloc of no party, so it
                // must be declared via an existing party or carry one here.
                throw DataError("defection to unknown party '" + d.new_party.id + "'");
            }
            out.defections.push_back({y.year, d.influencer_id, influencer_party[it->second],
                                      d.new_party.id});
            influencer_party[it->second] = d.new_party.id;
        }

        // Apply scripted user switches (persistent, lowest user indices
        // first). Candidates are judged against the year-start snapshot so
        // switches within one year never cascade into each other.
        const std::vector<std::string> at_year_start = user_home;
        std::vector<bool> moved_this_year(user_home.size(), false);
        for (const auto& sw : y.user_switches) {
            if (!party_bloc.count(sw.from_party.id) || !party_bloc.count(sw.to_party.id))
                throw DataError("user switch references an unknown party");
            int moved = 0;
            for (std::size_t u = 0; u < out.user_ids.size() && moved < sw.count; ++u) {
                if (at_year_start[u] == sw.from_party.id && !moved_this_year[u]) {
                    out.switches.push_back({y.year, out.user_ids[u], sw.from_party.id,
                                            sw.to_party.id});
                    user_home[u] = sw.to_party.id;
                    moved_this_year[u] = true;
                    ++moved;
                }
            }
            if (moved < sw.count)
                throw DataError("user switch wants " + std::to_string(sw.count) + " users of '" +
                                sw.from_party.id + "' but only " + std::to_string(moved) +
                                " are available in year " + std::to_string(y.year));
        }

        // Per-party influencer pools for this year.
        std::unordered_map<std::string, std::vector<std::size_t>> pool;
        for (std::size_t i = 0; i < influencer_ids.size(); ++i)
            pool[influencer_party[i]].push_back(i);
        for (const auto& name : party_names) {
            bool has_users = false;
            for (const auto& h : user_home)
                if (h == name) { has_users = true; break; }
            if (has_users && pool[name].size() < static_cast<std::size_t>(cfg.min_distinct_guarantee))
                throw DataError("party '" + name + "' has too few influencers in year " +
                                std::to_string(y.year) + " for the distinct guarantee");
        }

        // Candidate target parties this year: same bloc / other blocs, only
        // parties that currently have influencers. Defectors' audiences follow
        // the influencer's new party automatically.
        std::unordered_map<std::string, std::vector<std::string>> same_bloc_others;
        std::unordered_map<std::string, std::vector<std::string>> cross_bloc;
        for (const auto& name : party_names) {
            for (const auto& other : party_names) {
                if (other == name || pool[other].empty()) continue;
                if (party_bloc[other] == party_bloc[name]) same_bloc_others[name].push_back(other);
                else cross_bloc[name].push_back(other);
            }
        }

        const double year_eps = y.epsilon_override.value_or(cfg.epsilon);
        const double wcross = y.within_bloc_cross_override.value_or(cfg.within_bloc_cross_party);
        std::unordered_map<std::string, double> eps_of;
        for (const auto& p : cfg.parties)
            eps_of[p.label.id] = p.epsilon_override.value_or(year_eps);

        // Popularity-weighted pick inside a party: cumulative weights over the
        // pool, rank k carrying (k+1)^-exponent.
        std::unordered_map<std::string, std::vector<double>> popcum;
        for (const auto& [party, members] : pool) {
            std::vector<double> cum(members.size());
            double acc = 0;
            for (std::size_t k = 0; k < members.size(); ++k) {
                acc += cfg.popularity_exponent == 0.0
                           ? 1.0
                           : std::pow(static_cast<double>(k + 1), -cfg.popularity_exponent);
                cum[k] = acc;
            }
            popcum[party] = std::move(cum);
        }

        std::mt19937_64 rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(y.year)));
        const std::int64_t t0 = days_from_civil(y.year, 1, 1) * 86400;
        const std::int64_t t1 = days_from_civil(y.year + 1, 1, 1) * 86400;
        auto draw_ts = [&] {
            return t0 + static_cast<std::int64_t>(canonical(rng) * static_cast<double>(t1 - t0));
        };

        auto pick_party = [&](const std::string& home) -> const std::string& {
            if (canonical(rng) < eps_of[home]) {
                const auto& others = cross_bloc[home];
                if (!others.empty())
                    return others[static_cast<std::size_t>(canonical(rng) * others.size())];
                return home;
            }
            if (canonical(rng) < wcross) {
                const auto& sibs = same_bloc_others[home];
                if (!sibs.empty())
                    return sibs[static_cast<std::size_t>(canonical(rng) * sibs.size())];
            }
            return home;
        };

        auto pick_influencer = [&](const std::string& party) {
            const auto& members = pool[party];
            const auto& cum = popcum[party];
            const double target = canonical(rng) * cum.back();
            const std::size_t k = static_cast<std::size_t>(
                std::lower_bound(cum.begin(), cum.end(), target) - cum.begin());
            return members[std::min(k, members.size() - 1)];
        };

        std::vector<RetweetRecord> recs;
        for (std::size_t u = 0; u < out.user_ids.size(); ++u) {
            const std::string& home = user_home[u];
            const int k = draw_count(rng, cfg.min_distinct_guarantee, cfg.retweets_per_user_mean);

            // Distinct home-party influencers first, so the guarantee never
            // depends on the mixing probabilities.
            const auto& home_pool = pool[home];
            std::vector<std::size_t> picks(home_pool.size());
            for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = home_pool[i];
            for (int g = 0; g < cfg.min_distinct_guarantee; ++g) {
                const std::size_t j =
                    g + static_cast<std::size_t>(canonical(rng) *
                                                 static_cast<double>(picks.size() - g));
                std::swap(picks[g], picks[j]);
                recs.push_back({draw_ts(), out.user_ids[u], influencer_ids[picks[g]]});
            }
            for (int r = cfg.min_distinct_guarantee; r < k; ++r) {
                const std::string& party = pick_party(home);
                recs.push_back({draw_ts(), out.user_ids[u], influencer_ids[pick_influencer(party)]});
            }
        }

        if (cfg.influencer_retweets_mean > 0) {
            for (std::size_t i = 0; i < influencer_ids.size(); ++i) {
                const int k = draw_count(rng, 0, cfg.influencer_retweets_mean);
                const std::string& home = influencer_party[i];
                for (int r = 0; r < k; ++r) {
                    const std::string& party = pick_party(home);
                    std::size_t target = pick_influencer(party);
                    if (target == i) { // no self-retweets here
                        const auto& p = pool[party];
                        if (p.size() < 2) continue;
                        target = p[(std::find(p.begin(), p.end(), i) - p.begin() + 1) % p.size()];
                    }
                    recs.push_back({draw_ts(), influencer_ids[i], influencer_ids[target]});
                }
            }
        }

        std::sort(recs.begin(), recs.end(), [](const RetweetRecord& a, const RetweetRecord& b) {
            if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
            if (a.retweeter != b.retweeter) return a.retweeter < b.retweeter;
            return a.influencer < b.influencer;
        });
        out.records.push_back(std::move(recs));

        InfluencerCatalog catalog;
        for (std::size_t i = 0; i < influencer_ids.size(); ++i)
            catalog.add({influencer_ids[i], influencer_handles[i],
                         PartyLabel(influencer_party[i])});
        out.catalogs.push_back(std::move(catalog));

        out.user_party_by_year.push_back(user_home);
    }
    return out;
}

std::string truth_json(const SynthOutput& out) {
    nlohmann::ordered_json j;
    j["seed"] = out.seed;
    j["years"] = out.years;
    nlohmann::ordered_json blocs;
    for (const auto& [party, bloc] : out.party_blocs) blocs[party] = bloc;
    j["party_blocs"] = blocs;
    nlohmann::ordered_json users;
    for (std::size_t u = 0; u < out.user_ids.size(); ++u) {
        nlohmann::ordered_json per_year = nlohmann::ordered_json::array();
        for (const auto& ys : out.user_party_by_year) per_year.push_back(ys[u]);
        users[out.user_ids[u]] = per_year;
    }
    j["user_party_by_year"] = users;
    nlohmann::ordered_json defs = nlohmann::ordered_json::array();
    for (const auto& d : out.defections)
        defs.push_back({{"year", d.year},
                        {"influencer", d.influencer_id},
                        {"from", d.from_party},
                        {"to", d.to_party}});
    j["defections"] = defs;
    nlohmann::ordered_json sws = nlohmann::ordered_json::array();
    for (const auto& s : out.switches)
        sws.push_back({{"year", s.year},
                       {"user", s.user_id},
                       {"from", s.from_party},
                       {"to", s.to_party}});
    j["switches"] = sws;
    return j.dump(2) + "\n";
}

void write_corpus(const SynthOutput& out, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (std::size_t i = 0; i < out.years.size(); ++i) {
        {
            std::ofstream f(dir + "/records_" + std::to_string(out.years[i]) + ".jsonl",
                            std::ios::binary);
            serialize_records(out.records[i], f);
        }
        {
            std::ofstream f(dir + "/catalog_" + std::to_string(out.years[i]) + ".csv",
                            std::ios::binary);
            serialize_catalog(out.catalogs[i], f);
        }
    }
    std::ofstream t(dir + "/truth.json", std::ios::binary);
    t << truth_json(out);
}

} // namespace polarlens
