#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polarlens/matrix.hpp"
#include "polarlens/svd.hpp"
#include "polarlens/types.hpp"

namespace polarlens {

// Correspondence-analysis decomposition of one interaction matrix:
//   P = A / sum(A),  r = P 1,  c = 1'P,
//   S = D_r^{-1/2} (P - r c') D_c^{-1/2},  S = U Sigma V'.
// The r c' centering annihilates the trivial CA axis, so the first column of
// U (largest singular value) is the ideological dimension directly.
struct CADecomposition {
    DenseMatrix p;                 // normalized interactions over kept rows/cols
    DenseMatrix s;                 // standardized residual matrix
    std::vector<double> row_mass;  // r
    std::vector<double> col_mass;  // c
    std::vector<double> sigma;     // nonincreasing
    std::vector<double> u_first;   // first left singular vector (user axis)
    std::vector<double> v_first;   // first right singular vector
    std::vector<std::string> kept_rows;
    std::vector<std::string> kept_cols;
    std::vector<std::string> dropped_rows; // zero-margin, removed before Eq. 3
    std::vector<std::string> dropped_cols;
    int svd_sweeps = 0;
    double svd_tol = 0.0;
};

struct IdeologyResult {
    // Scores in kept row/column order; the maps mirror them for lookup.
    std::vector<std::pair<std::string, double>> user_scores;
    std::vector<std::pair<std::string, double>> influencer_scores;
    PartyLabel anchor; // party whose influencer-score mean is held <= 0
    bool flipped = false;

    std::unordered_map<std::string, double> user_score_map() const;
    std::unordered_map<std::string, double> influencer_score_map() const;
};

DenseMatrix normalize(const InteractionMatrix& m);

std::pair<std::vector<double>, std::vector<double>> margins(const DenseMatrix& p);

// Throws NumericalError naming the offending row/column when a margin is zero.
DenseMatrix standardize(const DenseMatrix& p, const std::vector<double>& r,
                        const std::vector<double>& c);

struct LatentIdeology {
    IdeologyResult result;
    CADecomposition decomposition;
};

// Full pipeline: drop zero-margin rows/columns (warned, never imputed), form
// S, decompose, score users by the first left singular vector, score
// influencers by their retweeters' median, and orient the axis so the anchor
// party's influencer-score mean is <= 0 (exact zero keeps the raw sign).
LatentIdeology latent_ideology(const InteractionMatrix& m, const PartyLabel& anchor,
                               const InfluencerCatalog& catalog);

struct InfluencerScores {
    std::vector<std::pair<std::string, double>> scores; // column order
    std::vector<std::string> excluded;                  // no scored retweeters
};

// Per-column median of the retweeters' scores; even counts average the two
// middle values. Columns with no scored retweeter are excluded and reported.
InfluencerScores influencer_ideology(const std::unordered_map<std::string, double>& user_scores,
                                     const InteractionMatrix& m);

// Scores CSV: id,kind,party,score,year (party empty for users).
void export_scores_csv(const IdeologyResult& res, const InfluencerCatalog& catalog, int year,
                       std::ostream& out);

// Report JSON: top singular values, shape, drops, anchor, solver parameters.
std::string decomposition_report_json(const LatentIdeology& li, int year);

} // namespace polarlens
