#include "polarlens/dipstat.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

#include <json.hpp>

#include "polarlens/errors.hpp"
#include "polarlens/util.hpp"

namespace polarlens {

namespace {

constexpr double kEps = 1e-12;

// Distinct-value knots of the empirical CDF: top[k] = F(x[k]) and
// bot[k] = F(x[k]-), as fractions of n.
struct Knots {
    std::vector<double> x, top, bot;
    std::size_t size() const { return x.size(); }
};

Knots make_knots(const std::vector<double>& sorted) {
    Knots k;
    const double n = static_cast<double>(sorted.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        k.x.push_back(sorted[i]);
        k.bot.push_back(static_cast<double>(i) / n);
        k.top.push_back(static_cast<double>(j) / n);
        i = j;
    }
    return k;
}

// One side of the unimodal fit, in a band [lo, hi] sampled at the knots.
//
// The pointwise-minimal nondecreasing convex function through the band is the
// upper envelope of tangent lines anchored at the lower bounds: anchor i
// contributes lo[i] + s[i]*(t - x[i]), where s[i] is the smallest slope whose
// backward extension from (x[i], lo[i]) stays below every earlier hi. The
// concave side reuses this machinery on mirrored data (x -> -x, y -> 1 - y).
struct SidePass {
    std::vector<double> x, lo, hi;
    std::vector<double> slope;
    std::vector<double> minval; // envelope value at each knot
    std::vector<char> ok;       // prefix feasibility: minval <= hi up to here

    void run() {
        const std::size_t k = x.size();
        slope.assign(k, 0.0);
        minval.assign(k, 0.0);
        ok.assign(k, 1);
        bool good = true;
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t e = 0; e < i; ++e)
                s = std::max(s, (lo[i] - hi[e]) / (x[i] - x[e]));
            slope[i] = s;
            double v = 0.0; // the zero floor is a valid tangent
            for (std::size_t a = 0; a <= i; ++a)
                v = std::max(v, lo[a] + slope[a] * (x[i] - x[a]));
            minval[i] = v;
            good = good && v <= hi[i] + kEps;
            ok[i] = good ? 1 : 0;
        }
    }

    // Envelope over anchors [0, count) extended to position t. Also reports
    // the active line's slope (a subgradient of the envelope at t).
    void envelope_at(double t, std::size_t count, double& value, double& act_slope) const {
        value = 0.0;
        act_slope = 0.0;
        for (std::size_t a = 0; a < count; ++a) {
            const double v = lo[a] + slope[a] * (t - x[a]);
            if (v > value) {
                value = v;
                act_slope = slope[a];
            }
        }
    }
};

struct FeasibilityCheck {
    const Knots& kn;
    double d;
    std::size_t K;
    SidePass left;  // convex side, original orientation
    SidePass right; // concave side, mirrored orientation

    FeasibilityCheck(const Knots& knots, double dd) : kn(knots), d(dd), K(knots.size()) {
        left.x = kn.x;
        left.lo.resize(K);
        left.hi.resize(K);
        for (std::size_t k = 0; k < K; ++k) {
            left.lo[k] = kn.top[k] - d;
            left.hi[k] = kn.bot[k] + d;
        }
        left.run();

        right.x.resize(K);
        right.lo.resize(K);
        right.hi.resize(K);
        for (std::size_t i = 0; i < K; ++i) {
            const std::size_t o = K - 1 - i;
            right.x[i] = -kn.x[o];
            right.lo[i] = 1.0 - left.hi[o];
            right.hi[i] = 1.0 - left.lo[o];
        }
        right.run();
    }

    bool left_ok(std::size_t count) const { return count == 0 || left.ok[count - 1] != 0; }
    bool right_ok(std::size_t from) const { return from >= K || right.ok[K - 1 - from] != 0; }

    // Minimal value of the convex piece over knots [0, count) extended to t;
    // slope is d(value)/dt.
    void left_min(double t, std::size_t count, double& value, double& slp) const {
        if (count == 0) {
            value = 0.0;
            slp = 0.0;
            return;
        }
        left.envelope_at(t, count, value, slp);
    }

    // Maximal start value of the concave piece over knots [from, K) extended
    // back to t; slope is d(value)/dt.
    void right_max(double t, std::size_t from, double& value, double& slp) const {
        if (from >= K) {
            value = 1.0;
            slp = 0.0;
            return;
        }
        double mv, ms;
        right.envelope_at(-t, K - from, mv, ms);
        value = 1.0 - mv;
        slp = ms; // two sign flips (axis and value) cancel
    }

    // Atom at knot j: convex piece on [0..j-1] extended to x[j] against the
    // left-limit band bot[j] +- d, jump, concave piece from knot j with the
    // value band top[j] +- d.
    bool atom_at_knot(std::size_t j) const {
        if (!right_ok(j + 1)) return false;
        double v1, v2, s;
        left_min(kn.x[j], j, v1, s);
        v1 = std::max({v1, kn.bot[j] - d, 0.0});
        if (v1 > kn.bot[j] + d + kEps) return false;
        right_max(kn.x[j], j + 1, v2, s);
        v2 = std::min({v2, kn.top[j] + d, 1.0});
        return std::max(v1, kn.top[j] - d) <= v2 + kEps;
    }

    // Atom strictly inside the gap (x[k-1], x[k]). Both endpoints keep full
    // bands; in the gap the empirical CDF is flat at top[k-1], bounding both
    // sides of the jump. Feasible iff the convex gap function
    //   f(m) = v1min(m) - v2max(m)
    // dips to 0 somewhere in the gap; f is minimized by cutting planes.
    bool atom_in_gap(std::size_t k) const {
        if (!right_ok(k)) return false;
        const double cap_lo = kn.top[k - 1] - d;
        const double cap_hi = kn.top[k - 1] + d;

        auto eval = [&](double m, double& f, double& g) {
            double v1, s1, v2, s2;
            left_min(m, k, v1, s1);
            if (cap_lo > v1 || 0.0 > v1) {
                v1 = std::max(cap_lo, 0.0);
                s1 = 0.0;
            }
            right_max(m, k, v2, s2);
            if (cap_hi < v2 || 1.0 < v2) {
                v2 = std::min(cap_hi, 1.0);
                s2 = 0.0;
            }
            f = v1 - v2;
            g = s1 - s2;
        };

        double a = kn.x[k - 1], b = kn.x[k];
        double fa, ga, fb, gb;
        eval(a, fa, ga);
        if (fa <= kEps) return true;
        eval(b, fb, gb);
        if (fb <= kEps) return true;
        for (int it = 0; it < 64; ++it) {
            if (ga >= -kEps) return false; // f nondecreasing from a onward
            if (gb <= kEps) return false;  // f nonincreasing up to b
            const double m = (fb - gb * b - fa + ga * a) / (ga - gb);
            const double bound = fa + ga * (m - a); // tangent intersection
            if (bound > kEps) return false;         // min of f is positive
            if (!(m > a && m < b)) return false;
            double fm, gm;
            eval(m, fm, gm);
            if (fm <= kEps) return true;
            if (gm < 0) {
                a = m;
                fa = fm;
                ga = gm;
            } else {
                b = m;
                fb = fm;
                gb = gm;
            }
        }
        return false;
    }

    bool run() const {
        // Mode after all data: one convex piece rising to 1.
        if (left_ok(K) && left.minval[K - 1] <= 1.0 + kEps) return true;
        // Mode before all data: one concave piece from 0.
        if (right_ok(0) && 1.0 - right.minval[K - 1] >= -kEps) return true;

        for (std::size_t j = 0; j < K; ++j) {
            if (!left_ok(j)) break; // prefix feasibility only degrades
            if (atom_at_knot(j)) return true;
        }
        for (std::size_t k = 1; k < K; ++k) {
            if (!left_ok(k)) break;
            if (atom_in_gap(k)) return true;
        }
        return false;
    }
};

bool knots_feasible(const Knots& kn, double d) {
    if (d <= 0) return false;
    return FeasibilityCheck(kn, d).run();
}

} // namespace

bool dip_feasible(const std::vector<double>& sorted_sample, double d) {
    return knots_feasible(make_knots(sorted_sample), d);
}

double dip_statistic(const std::vector<double>& sample) {
    std::vector<double> xs;
    xs.reserve(sample.size());
    for (double v : sample)
        if (std::isfinite(v)) xs.push_back(v);
    if (xs.size() < 2)
        throw DataError("dip statistic needs at least 2 finite values, have " +
                        std::to_string(xs.size()));
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());

    Knots kn = make_knots(xs);
    if (kn.size() == 1) {
        std::cerr << "warning: dip statistic on an all-equal sample, returning 1/(2n)\n";
        return 1.0 / (2.0 * n);
    }

    double lo = 0.0, hi = 0.25;
    if (!knots_feasible(kn, hi)) hi = 0.5; // defensive; the dip is at most 1/4
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (knots_feasible(kn, mid)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

double dip_pvalue(double d, std::size_t n, std::size_t n_boot, std::uint64_t seed) {
    if (n < 2) throw DataError("dip p-value needs n >= 2");
    if (n_boot < 100) throw DataError("n_boot must be >= 100, have " + std::to_string(n_boot));

    std::size_t count = 0;
    std::vector<double> xs(n);
    // The null dip exceeds d iff d' slightly below d is infeasible, which
    // costs one feasibility check per replicate instead of a full bisection.
    const double d_test = d - std::max(1e-12 * d, 1e-15);
    for (std::size_t r = 0; r < n_boot; ++r) {
        std::mt19937_64 rng(derive_stream(seed, r));
        for (double& v : xs) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::sort(xs.begin(), xs.end());
        Knots kn = make_knots(xs);
        bool ge;
        if (kn.size() == 1) ge = 1.0 / (2.0 * static_cast<double>(n)) >= d;
        else ge = !knots_feasible(kn, d_test);
        if (ge) ++count;
    }
    return (1.0 + static_cast<double>(count)) / (static_cast<double>(n_boot) + 1.0);
}

DipResult dip_test(const std::vector<double>& sample, std::size_t n_boot, std::uint64_t seed) {
    DipResult res;
    std::vector<double> finite;
    for (double v : sample)
        if (std::isfinite(v)) finite.push_back(v);
    res.n = finite.size();
    res.n_boot = n_boot;
    res.seed = seed;
    res.d = dip_statistic(finite);
    res.degenerate = res.n >= 2 && std::count(finite.begin(), finite.end(), finite.front()) ==
                                       static_cast<std::ptrdiff_t>(finite.size());
    res.p_value = dip_pvalue(res.d, res.n, n_boot, seed);
    return res;
}

std::string dip_report_json(const DipResult& r) {
    nlohmann::ordered_json j;
    j["D"] = r.d;
    j["p_value"] = r.p_value;
    j["n"] = r.n;
    j["n_boot"] = r.n_boot;
    j["seed"] = r.seed;
    if (r.degenerate) j["degenerate"] = true;
    return j.dump(2) + "\n";
}

} // namespace polarlens
