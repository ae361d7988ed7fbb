#include "polarlens/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polarlens/util.hpp"

namespace polarlens {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    return in;
}

std::string json_escape(const std::string& s) {
    return nlohmann::json(s).dump();
}

} // namespace

std::vector<RetweetRecord> parse_records(std::istream& in) {
    std::vector<RetweetRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_trailing_cr(line);
        if (line.empty()) throw ParseError(lineno, "empty line");
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError(lineno, "invalid JSON");
        if (!j.is_object()) throw ParseError(lineno, "record is not a JSON object");
        for (const char* field : {"ts", "src", "dst"}) {
            if (!j.contains(field)) throw ParseError(lineno, std::string("missing field '") + field + "'");
            if (!j[field].is_string()) throw ParseError(lineno, std::string("field '") + field + "' is not a string");
        }
        RetweetRecord rec;
        try {
            rec.timestamp = parse_utc_timestamp(j["ts"].get<std::string>());
        } catch (const DataError& e) {
            throw ParseError(lineno, e.what());
        }
        rec.retweeter = j["src"].get<std::string>();
        rec.influencer = j["dst"].get<std::string>();
        if (rec.retweeter.empty()) throw ParseError(lineno, "empty 'src'");
        if (rec.influencer.empty()) throw ParseError(lineno, "empty 'dst'");
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<RetweetRecord> parse_records_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    try {
        return parse_records(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.reason());
    }
}

void serialize_records(const std::vector<RetweetRecord>& records, std::ostream& out) {
    for (const RetweetRecord& r : records) {
        out << "{\"ts\":\"" << format_utc_timestamp(r.timestamp) << "\",\"src\":" << json_escape(r.retweeter)
            << ",\"dst\":" << json_escape(r.influencer) << "}\n";
    }
}

InfluencerCatalog parse_catalog(std::istream& in) {
    InfluencerCatalog catalog;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw DataError("catalog is empty (missing header)");
    ++lineno;
    strip_trailing_cr(line);
    if (line != "influencer_id,handle,party")
        throw ParseError(lineno, "bad catalog header '" + line +
                                     "' (expected influencer_id,handle,party)");
    while (std::getline(in, line)) {
        ++lineno;
        strip_trailing_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3) throw ParseError(lineno, "expected 3 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty()) throw ParseError(lineno, "empty influencer_id");
        try {
            catalog.add({fields[0], fields[1], PartyLabel(fields[2])});
        } catch (const DataError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return catalog;
}

InfluencerCatalog parse_catalog_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    try {
        return parse_catalog(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.reason());
    }
}

void serialize_catalog(const InfluencerCatalog& catalog, std::ostream& out) {
    out << "influencer_id,handle,party\n";
    for (const auto& e : catalog.entries())
        out << e.influencer_id << ',' << e.handle << ',' << e.party.id << '\n';
}

std::vector<RetweetRecord> slice_by_year(const std::vector<RetweetRecord>& records, int year) {
    std::vector<RetweetRecord> out;
    for (const auto& r : records)
        if (utc_year(r.timestamp) == year) out.push_back(r);
    return out;
}

BuildResult build_interaction_matrix(const std::vector<RetweetRecord>& records,
                                     const InfluencerCatalog& catalog, int year,
                                     const FilterConfig& cfg) {
    cfg.validate();

    // First pass: aggregate counts in first-seen order, validating influencers.
    std::vector<std::string> row_ids, col_ids;
    std::unordered_map<std::string, std::uint32_t> row_index, col_index;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> agg;
    std::set<std::string> unknown;

    for (const auto& r : records) {
        if (utc_year(r.timestamp) != year) continue;
        if (!catalog.contains(r.influencer)) {
            unknown.insert(r.influencer);
            continue;
        }
        auto [rit, rnew] = row_index.try_emplace(r.retweeter, static_cast<std::uint32_t>(row_ids.size()));
        if (rnew) row_ids.push_back(r.retweeter);
        auto [cit, cnew] = col_index.try_emplace(r.influencer, static_cast<std::uint32_t>(col_ids.size()));
        if (cnew) col_ids.push_back(r.influencer);
        agg[{rit->second, cit->second}] += 1;
    }
    if (!unknown.empty()) {
        std::string msg = "records reference influencers missing from the catalog:";
        for (const auto& id : unknown) msg += " '" + id + "'";
        throw DataError(msg);
    }

    // Row filter: at least min_distinct_influencers distinct positive columns.
    std::vector<int> distinct(row_ids.size(), 0);
    for (const auto& [coord, count] : agg) distinct[coord.first] += 1;

    std::vector<std::uint32_t> row_map(row_ids.size(), UINT32_MAX);
    std::vector<std::string> kept_rows;
    for (std::size_t i = 0; i < row_ids.size(); ++i) {
        if (distinct[i] >= cfg.min_distinct_influencers) {
            row_map[i] = static_cast<std::uint32_t>(kept_rows.size());
            kept_rows.push_back(row_ids[i]);
        }
    }

    std::vector<InteractionMatrix::Triplet> triplets;
    triplets.reserve(agg.size());
    for (const auto& [coord, count] : agg)
        if (row_map[coord.first] != UINT32_MAX)
            triplets.push_back({row_map[coord.first], coord.second, count});

    BuildResult res{InteractionMatrix(year, std::move(kept_rows), col_ids, std::move(triplets)),
                    {},
                    false,
                    row_ids.size()};
    res.rows_dropped = row_ids.size() - res.matrix.n_rows();
    for (std::size_t j = 0; j < res.matrix.n_cols(); ++j)
        if (res.matrix.col_is_zero(j)) res.zero_columns.push_back(res.matrix.col_ids()[j]);
    res.empty_after_filter = res.matrix.n_rows() == 0;
    return res;
}

void export_matrix_csv(const InteractionMatrix& m, std::ostream& out) {
    out << "user_id,influencer_id,count\n";
    for (std::size_t i = 0; i < m.n_rows(); ++i)
        for (const auto& e : m.row_entries(i))
            out << m.row_ids()[i] << ',' << m.col_ids()[e.col] << ',' << e.count << '\n';
}

} // namespace polarlens
