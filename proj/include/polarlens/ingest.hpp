#pragma once

#include <iosfwd>
#include <vector>

#include "polarlens/matrix.hpp"
#include "polarlens/types.hpp"

namespace polarlens {

struct FilterConfig {
    // Collection-side filter; treated as a property of the input corpus and
    // enforced generatively by synth, not re-checked at ingest.
    int min_retweets_per_tweet = 3;
    // Users with fewer distinct retweeted influencers than this are dropped
    // before any ideology/network analysis.
    int min_distinct_influencers = 3;

    void validate() const {
        if (min_retweets_per_tweet < 0 || min_distinct_influencers < 0)
            throw DataError("filter thresholds must be nonnegative");
    }
};

// Wire format: JSON Lines, one object per line with fields exactly
// ts (ISO-8601 UTC), src (retweeter id), dst (influencer id).
// Malformed lines raise ParseError with the 1-based line number.
std::vector<RetweetRecord> parse_records(std::istream& in);
std::vector<RetweetRecord> parse_records_file(const std::string& path);

void serialize_records(const std::vector<RetweetRecord>& records, std::ostream& out);

// CSV with exact header influencer_id,handle,party.
InfluencerCatalog parse_catalog(std::istream& in);
InfluencerCatalog parse_catalog_file(const std::string& path);

void serialize_catalog(const InfluencerCatalog& catalog, std::ostream& out);

// Records whose UTC calendar year equals `year`, in original order.
std::vector<RetweetRecord> slice_by_year(const std::vector<RetweetRecord>& records, int year);

struct BuildResult {
    InteractionMatrix matrix;
    std::vector<std::string> zero_columns; // all-zero after row filtering
    bool empty_after_filter = false;
    std::size_t rows_dropped = 0;
};

// Aggregates the in-year records into counts, then drops users with fewer
// than cfg.min_distinct_influencers distinct positive columns. Columns that
// become all-zero stay in the column list and are reported back.
BuildResult build_interaction_matrix(const std::vector<RetweetRecord>& records,
                                     const InfluencerCatalog& catalog, int year,
                                     const FilterConfig& cfg);

// Debug export: CSV triples user_id,influencer_id,count.
void export_matrix_csv(const InteractionMatrix& m, std::ostream& out);

} // namespace polarlens
