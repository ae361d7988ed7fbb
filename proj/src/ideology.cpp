#include "polarlens/ideology.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <ostream>

#include <json.hpp>

#include "polarlens/util.hpp"

namespace polarlens {

namespace {

double median_inplace(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::unordered_map<std::string, double> IdeologyResult::user_score_map() const {
    std::unordered_map<std::string, double> m;
    m.reserve(user_scores.size());
    for (const auto& [id, s] : user_scores) m.emplace(id, s);
    return m;
}

std::unordered_map<std::string, double> IdeologyResult::influencer_score_map() const {
    std::unordered_map<std::string, double> m;
    m.reserve(influencer_scores.size());
    for (const auto& [id, s] : influencer_scores) m.emplace(id, s);
    return m;
}

DenseMatrix normalize(const InteractionMatrix& m) {
    if (m.total_count() <= 0) throw NumericalError("cannot normalize an empty matrix");
    DenseMatrix p(m.n_rows(), m.n_cols());
    const double total = static_cast<double>(m.total_count());
    for (std::size_t i = 0; i < m.n_rows(); ++i)
        for (const auto& e : m.row_entries(i))
            p.at(i, e.col) = static_cast<double>(e.count) / total;
    return p;
}

std::pair<std::vector<double>, std::vector<double>> margins(const DenseMatrix& p) {
    std::vector<double> r(p.rows, 0.0), c(p.cols, 0.0);
    for (std::size_t i = 0; i < p.rows; ++i)
        for (std::size_t j = 0; j < p.cols; ++j) {
            r[i] += p.at(i, j);
            c[j] += p.at(i, j);
        }
    return {r, c};
}

DenseMatrix standardize(const DenseMatrix& p, const std::vector<double>& r,
                        const std::vector<double>& c) {
    if (r.size() != p.rows || c.size() != p.cols)
        throw DataError("standardize: margin sizes do not match the matrix");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] <= 0) throw NumericalError("singular margin: row " + std::to_string(i) + " has zero mass");
    for (std::size_t j = 0; j < c.size(); ++j)
        if (c[j] <= 0) throw NumericalError("singular margin: column " + std::to_string(j) + " has zero mass");

    DenseMatrix s(p.rows, p.cols);
    for (std::size_t i = 0; i < p.rows; ++i) {
        const double ri = r[i];
        const double sri = std::sqrt(ri);
        for (std::size_t j = 0; j < p.cols; ++j)
            s.at(i, j) = (p.at(i, j) - ri * c[j]) / (sri * std::sqrt(c[j]));
    }
    return s;
}

InfluencerScores influencer_ideology(const std::unordered_map<std::string, double>& user_scores,
                                     const InteractionMatrix& m) {
    InfluencerScores out;
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
        std::vector<double> scores;
        for (const auto& e : m.col_entries(j)) {
            auto it = user_scores.find(m.row_ids()[e.row]);
            if (it != user_scores.end()) scores.push_back(it->second);
        }
        if (scores.empty()) {
            out.excluded.push_back(m.col_ids()[j]);
            continue;
        }
        out.scores.emplace_back(m.col_ids()[j], median_inplace(scores));
    }
    return out;
}

LatentIdeology latent_ideology(const InteractionMatrix& m, const PartyLabel& anchor,
                               const InfluencerCatalog& catalog) {
    if (m.total_count() <= 0) throw NumericalError("latent ideology: empty matrix");

    LatentIdeology li;
    CADecomposition& ca = li.decomposition;

    // Zero-margin rows/columns would make D_r / D_c singular; drop them with a
    // warning before forming S.
    std::vector<std::size_t> keep_rows, keep_cols;
    for (std::size_t i = 0; i < m.n_rows(); ++i) {
        if (m.row_sum(i) > 0) keep_rows.push_back(i);
        else ca.dropped_rows.push_back(m.row_ids()[i]);
    }
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
        if (m.col_sum(j) > 0) keep_cols.push_back(j);
        else ca.dropped_cols.push_back(m.col_ids()[j]);
    }
    if (!ca.dropped_rows.empty() || !ca.dropped_cols.empty())
        std::cerr << "warning: latent ideology dropped " << ca.dropped_rows.size()
                  << " zero-margin rows and " << ca.dropped_cols.size()
                  << " zero-margin columns (year " << m.year() << ")\n";

    if (keep_rows.size() < 2 || keep_cols.size() < 2)
        throw NumericalError("latent ideology needs at least 2 rows and 2 non-zero columns");

    for (std::size_t i : keep_rows) ca.kept_rows.push_back(m.row_ids()[i]);
    for (std::size_t j : keep_cols) ca.kept_cols.push_back(m.col_ids()[j]);

    std::vector<std::size_t> col_map(m.n_cols(), SIZE_MAX);
    for (std::size_t k = 0; k < keep_cols.size(); ++k) col_map[keep_cols[k]] = k;

    // P over the kept rows/columns (total is unchanged by the drops).
    ca.p = DenseMatrix(keep_rows.size(), keep_cols.size());
    const double total = static_cast<double>(m.total_count());
    for (std::size_t ik = 0; ik < keep_rows.size(); ++ik)
        for (const auto& e : m.row_entries(keep_rows[ik]))
            ca.p.at(ik, col_map[e.col]) = static_cast<double>(e.count) / total;

    auto [r, c] = margins(ca.p);
    ca.row_mass = r;
    ca.col_mass = c;
    ca.s = standardize(ca.p, r, c);

    SvdResult svd = jacobi_svd(ca.s);
    ca.sigma = svd.sigma;
    ca.svd_sweeps = svd.sweeps;
    ca.svd_tol = svd.tol;

    if (ca.sigma.empty() || ca.sigma[0] <= 1e-12)
        throw NumericalError("no ideological dimension (rank-0 standardized matrix)");

    ca.u_first.resize(ca.s.rows);
    ca.v_first.resize(ca.s.cols);
    for (std::size_t i = 0; i < ca.s.rows; ++i) ca.u_first[i] = svd.u.at(i, 0);
    for (std::size_t j = 0; j < ca.s.cols; ++j) ca.v_first[j] = svd.v.at(j, 0);

    IdeologyResult& res = li.result;
    res.anchor = anchor;
    for (std::size_t ik = 0; ik < ca.kept_rows.size(); ++ik)
        res.user_scores.emplace_back(ca.kept_rows[ik], ca.u_first[ik]);

    InfluencerScores inf = influencer_ideology(res.user_score_map(), m);
    res.influencer_scores = std::move(inf.scores);

    // Orientation: flip globally if the anchor party's influencer mean is
    // positive. An exact zero keeps the unflipped axis.
    bool anchor_seen = false;
    double anchor_sum = 0;
    std::size_t anchor_n = 0;
    for (const auto& [id, score] : res.influencer_scores) {
        if (catalog.at(id).party == anchor) {
            anchor_seen = true;
            anchor_sum += score;
            ++anchor_n;
        }
    }
    if (!anchor_seen)
        throw DataError("anchor party '" + anchor.id + "' has no scored influencer");
    if (anchor_sum / static_cast<double>(anchor_n) > 0.0) {
        res.flipped = true;
        for (auto& [id, score] : res.user_scores) score = -score;
        for (auto& [id, score] : res.influencer_scores) score = -score;
        for (double& x : ca.u_first) x = -x;
        for (double& x : ca.v_first) x = -x;
    }
    return li;
}

void export_scores_csv(const IdeologyResult& res, const InfluencerCatalog& catalog, int year,
                       std::ostream& out) {
    out << "id,kind,party,score,year\n";
    for (const auto& [id, score] : res.user_scores)
        out << id << ",user,," << format_double(score) << ',' << year << '\n';
    for (const auto& [id, score] : res.influencer_scores)
        out << id << ",influencer," << catalog.at(id).party.id << ',' << format_double(score)
            << ',' << year << '\n';
}

std::string decomposition_report_json(const LatentIdeology& li, int year) {
    const CADecomposition& ca = li.decomposition;
    nlohmann::ordered_json j;
    j["year"] = year;
    j["rows"] = ca.s.rows;
    j["cols"] = ca.s.cols;
    std::vector<double> top(ca.sigma.begin(),
                            ca.sigma.begin() + std::min<std::size_t>(5, ca.sigma.size()));
    j["singular_values_top5"] = top;
    j["dropped_rows"] = ca.dropped_rows;
    j["dropped_cols"] = ca.dropped_cols;
    j["anchor"] = li.result.anchor.id;
    j["flipped"] = li.result.flipped;
    j["solver"] = {{"method", "one-sided-jacobi"},
                   {"tol", ca.svd_tol},
                   {"sweeps", ca.svd_sweeps},
                   {"seed", nullptr}};
    return j.dump(2) + "\n";
}

} // namespace polarlens
