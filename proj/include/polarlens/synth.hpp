#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarlens/types.hpp"

namespace polarlens {

// Planted-bloc corpus generator. Users belong to a home party; parties are
// partitioned into blocs. Each retweet picks a target party (cross-bloc with
// probability epsilon, same-bloc different party with probability
// within_bloc_cross_party, otherwise home) and a uniform influencer inside
// it. The generator guarantees at least min_distinct_guarantee distinct
// influencers per user so the ideology-side filter keeps everyone.
struct SynthParty {
    PartyLabel label;
    int n_influencers = 0;
    int n_users = 0;
    int bloc = 0;
    // Cross-bloc rate for users homed here; falls back to the global epsilon.
    std::optional<double> epsilon_override;
};

struct SynthDefection {
    std::string influencer_id;
    PartyLabel new_party;
};

struct SynthUserSwitch {
    PartyLabel from_party;
    PartyLabel to_party;
    int count = 0; // moves this many users of from_party (lowest indices first)
};

struct SynthYear {
    int year = 0;
    std::optional<double> epsilon_override;
    std::optional<double> within_bloc_cross_override;
    std::vector<SynthDefection> defections;
    std::vector<SynthUserSwitch> user_switches;
};

struct SynthConfig {
    std::vector<SynthParty> parties;
    double epsilon = 0.05;
    double within_bloc_cross_party = 0.0;
    double retweets_per_user_mean = 8.0;
    double influencer_retweets_mean = 0.0; // politician-to-politician activity
    // Popularity skew inside a party: influencer k drawn with weight
    // (k+1)^-popularity_exponent. Zero keeps the uniform pick.
    double popularity_exponent = 0.0;
    int min_distinct_guarantee = 3;
    std::vector<SynthYear> years;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SynthOutput {
    std::vector<int> years;
    std::vector<std::vector<RetweetRecord>> records;  // per year, sorted by timestamp
    std::vector<InfluencerCatalog> catalogs;          // per year, defections applied

    // Ground truth (sidecar only; the analysis path never reads it).
    std::vector<std::string> user_ids;
    std::vector<std::vector<std::string>> user_party_by_year; // [year][user]
    std::vector<std::pair<std::string, int>> party_blocs;
    struct AppliedDefection {
        int year;
        std::string influencer_id;
        std::string from_party, to_party;
    };
    struct AppliedSwitch {
        int year;
        std::string user_id;
        std::string from_party, to_party;
    };
    std::vector<AppliedDefection> defections;
    std::vector<AppliedSwitch> switches;
    std::uint64_t seed = 0;
};

// Deterministic for a fixed config: per-year RNG streams are derived from
// (seed, year) and users are processed in a fixed order.
SynthOutput generate(const SynthConfig& cfg);

std::string truth_json(const SynthOutput& out);

// Writes records_<year>.jsonl, catalog_<year>.csv and truth.json under dir.
void write_corpus(const SynthOutput& out, const std::string& dir);

} // namespace polarlens
