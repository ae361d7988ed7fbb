#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "polarlens/errors.hpp"

namespace polarlens {

// Party labels are short opaque tokens ("PTI", "P1", ...). They compare by
// exact byte equality and must survive a CSV round-trip, so commas and
// newlines are rejected.
struct PartyLabel {
    std::string id;

    PartyLabel() = default;
    explicit PartyLabel(std::string s) : id(std::move(s)) { validate(); }

    void validate() const {
        if (id.empty()) throw DataError("party label must be non-empty");
        if (id.find(',') != std::string::npos || id.find('\n') != std::string::npos ||
            id.find('\r') != std::string::npos)
            throw DataError("party label '" + id + "' contains a comma or newline");
    }

    bool operator==(const PartyLabel& o) const { return id == o.id; }
    bool operator!=(const PartyLabel& o) const { return id != o.id; }
    bool operator<(const PartyLabel& o) const { return id < o.id; }
};

// One timestamped retweet interaction. Self-retweets are legal and counted.
struct RetweetRecord {
    std::int64_t timestamp = 0; // epoch seconds, UTC
    std::string retweeter;      // user id (opaque)
    std::string influencer;     // influencer id (opaque)

    bool operator==(const RetweetRecord& o) const {
        return timestamp == o.timestamp && retweeter == o.retweeter && influencer == o.influencer;
    }
};

struct CatalogEntry {
    std::string influencer_id;
    std::string handle;
    PartyLabel party;
};

// Influencer identities and party affiliations for one time slice.
// Ids are unique; every entry carries exactly one party.
class InfluencerCatalog {
public:
    InfluencerCatalog() = default;

    void add(CatalogEntry entry) {
        if (index_.count(entry.influencer_id))
            throw DataError("duplicate influencer id '" + entry.influencer_id + "'");
        index_.emplace(entry.influencer_id, entries_.size());
        entries_.push_back(std::move(entry));
    }

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    bool contains(const std::string& influencer_id) const {
        return index_.count(influencer_id) != 0;
    }

    const CatalogEntry& at(const std::string& influencer_id) const {
        auto it = index_.find(influencer_id);
        if (it == index_.end())
            throw DataError("unknown influencer id '" + influencer_id + "'");
        return entries_[it->second];
    }

    std::optional<PartyLabel> party_of(const std::string& influencer_id) const {
        auto it = index_.find(influencer_id);
        if (it == index_.end()) return std::nullopt;
        return entries_[it->second].party;
    }

    // Distinct parties in first-seen order.
    std::vector<PartyLabel> parties() const {
        std::vector<PartyLabel> out;
        for (const auto& e : entries_) {
            bool seen = false;
            for (const auto& p : out)
                if (p == e.party) { seen = true; break; }
            if (!seen) out.push_back(e.party);
        }
        return out;
    }

private:
    std::vector<CatalogEntry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace polarlens
