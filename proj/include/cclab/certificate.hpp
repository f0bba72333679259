#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cclab/instance.hpp"
#include "cclab/rational.hpp"
#include "cclab/rounding.hpp"

namespace cclab {

enum class CertMode { Wcc, Ccc };

// ---------------------------------------------------------------------------
// Per-role primitives. Role order follows the pivot conditioning: the
// first role is edge uv with pivot w, whose incident probabilities are
// those of edges vw and wu.

/// Expected violation cost of a pair, conditioned on the pivot; p_a and
/// p_b are the rounding probabilities of the two edges at the pivot.
inline double e_cost(EdgeSign sign, double p_a, double p_b) {
    switch (sign) {
        case EdgeSign::Positive: return p_a * (1 - p_b) + (1 - p_a) * p_b;
        case EdgeSign::Negative: return (1 - p_a) * (1 - p_b);
        case EdgeSign::Neutral: return 1 - p_a * p_b;
    }
    return 0;
}

/// Expected LP charge of a CC/wCC pair conditioned on the pivot.
/// Neutral pairs carry no LP charge in this mode.
inline double e_lp_cc(EdgeSign sign, double x_edge, double p_a, double p_b) {
    switch (sign) {
        case EdgeSign::Positive: return (1 - p_a * p_b) * x_edge;
        case EdgeSign::Negative: return (1 - p_a * p_b) * (1 - x_edge);
        case EdgeSign::Neutral:
            throw std::invalid_argument("e_lp_cc: Neutral pair has no LP charge in CC/wCC mode");
    }
    return 0;
}

/// Lower bound on the LP charge of a CCC pair conditioned on the pivot.
/// For a neutral edge the charge x_{uv}^{phi(uv)} is bounded below by
/// max{1/2, 1 - x_uv^c, 1 - x_vw^c, 1 - x_wu^c}.
inline double e_lp_ccc_lower(EdgeSign sign, double x_edge, double x_other1, double x_other2,
                             double p_a, double p_b) {
    if (sign != EdgeSign::Neutral) return e_lp_cc(sign, x_edge, p_a, p_b);
    double m = std::max({0.5, 1 - x_edge, 1 - x_other1, 1 - x_other2});
    return (1 - p_a * p_b) * m;
}

inline Rat e_cost_rat(EdgeSign sign, const Rat& p_a, const Rat& p_b) {
    const Rat one(1);
    switch (sign) {
        case EdgeSign::Positive: return p_a * (one - p_b) + (one - p_a) * p_b;
        case EdgeSign::Negative: return (one - p_a) * (one - p_b);
        case EdgeSign::Neutral: return one - p_a * p_b;
    }
    return Rat(0);
}

inline Rat e_lp_cc_rat(EdgeSign sign, const Rat& x_edge, const Rat& p_a, const Rat& p_b) {
    const Rat one(1);
    if (sign == EdgeSign::Positive) return (one - p_a * p_b) * x_edge;
    if (sign == EdgeSign::Negative) return (one - p_a * p_b) * (one - x_edge);
    throw std::invalid_argument("e_lp_cc_rat: Neutral pair");
}

// ---------------------------------------------------------------------------
// Triple configurations and the gap function

/// One LP-value configuration on a triangle: coordinates are
/// (x_uv, x_vw, x_wu); per-coordinate signs, optional weights (wcc) and
/// one-sided evaluation directives.
struct TripleConfig {
    double x = 0, y = 0, z = 0;
    std::array<EdgeSign, 3> signs{EdgeSign::Positive, EdgeSign::Positive, EdgeSign::Positive};
    std::array<double, 3> weights{1, 1, 1};
    std::array<Side, 3> sides{Side::At, Side::At, Side::At};

    std::array<double, 3> coords() const { return {x, y, z}; }
};

inline bool triangle_ok(double x, double y, double z, double tol = 1e-12) {
    return x <= y + z + tol && y <= x + z + tol && z <= x + y + tol;
}

namespace detail {

inline double rounding_prob(const RoundingScheme& scheme, EdgeSign sign, double v, Side side) {
    switch (sign) {
        case EdgeSign::Positive: return scheme.fplus.eval(v, side);
        case EdgeSign::Negative: return scheme.fminus.eval(v, side);
        case EdgeSign::Neutral:
            if (!scheme.fcirc) throw std::invalid_argument("scheme has no f-circ");
            return scheme.fcirc->eval(v, side);
    }
    return 0;
}

struct RoleValues {
    std::array<double, 3> cost;
    std::array<double, 3> lp;
};

inline RoleValues role_values(const TripleConfig& cfg, const RoundingScheme& scheme,
                              CertMode mode) {
    std::array<double, 3> c = cfg.coords();
    std::array<double, 3> p;
    for (int i = 0; i < 3; ++i)
        p[i] = rounding_prob(scheme, cfg.signs[i], c[i], cfg.sides[i]);

    // role i: the edge with coordinate i; the pivot is the opposite
    // vertex, so its incident probabilities are the other two.
    static constexpr int other[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    RoleValues rv;
    for (int i = 0; i < 3; ++i) {
        double pa = p[other[i][0]], pb = p[other[i][1]];
        rv.cost[i] = e_cost(cfg.signs[i], pa, pb);
        rv.lp[i] = (mode == CertMode::Ccc)
                       ? e_lp_ccc_lower(cfg.signs[i], c[i], c[other[i][0]], c[other[i][1]], pa, pb)
                       : e_lp_cc(cfg.signs[i], c[i], pa, pb);
    }
    return rv;
}

} // namespace detail

/// alpha * LP(uvw) - ALG(uvw); weighted per edge in wcc mode. In ccc
/// mode the LP side uses the neutral-edge lower bound, so the result
/// lower-bounds the true gap.
inline double triple_gap(const TripleConfig& cfg, const RoundingScheme& scheme, double alpha,
                         CertMode mode) {
    detail::RoleValues rv = detail::role_values(cfg, scheme, mode);
    double gap = 0;
    for (int i = 0; i < 3; ++i)
        gap += cfg.weights[i] * (alpha * rv.lp[i] - rv.cost[i]);
    return gap;
}

/// Expected algorithm cost of a configuration (weighted); used to rank
/// gap-minimal configurations.
inline double triple_alg(const TripleConfig& cfg, const RoundingScheme& scheme, CertMode mode) {
    detail::RoleValues rv = detail::role_values(cfg, scheme, mode);
    double a = 0;
    for (int i = 0; i < 3; ++i) a += cfg.weights[i] * rv.cost[i];
    return a;
}

// ---------------------------------------------------------------------------
// Certification reports

struct GapViolation {
    TripleConfig config;
    double gap;
};

struct CertificateReport {
    CertMode mode = CertMode::Wcc;
    double alpha = 0;
    double grid_step = 0;
    double min_gap = 0;
    TripleConfig argmin;
    double argmin_alg = 0;
    uint64_t configs_checked = 0;
    std::vector<GapViolation> violations; // gap < -tolerance, capped
    double tolerance = 1e-9;

    bool certified() const { return violations.empty(); }
};

namespace detail {

/// Deterministic "worse" ordering for argmin selection: smaller gap
/// wins; among (near-)equal gaps, the configuration with the larger
/// expected algorithm cost is the meaningful tight point; remaining ties
/// go to the lexicographically smaller coordinates/signs.
struct BestTracker {
    bool has = false;
    double gap = 0, alg = 0;
    TripleConfig cfg;

    static std::array<int, 3> sign_key(const TripleConfig& c) {
        return {static_cast<int>(c.signs[0]), static_cast<int>(c.signs[1]),
                static_cast<int>(c.signs[2])};
    }

    static std::array<int, 3> side_key(const TripleConfig& c) {
        return {static_cast<int>(c.sides[0]), static_cast<int>(c.sides[1]),
                static_cast<int>(c.sides[2])};
    }

    void offer(double g, double a, const TripleConfig& c) {
        if (!has) { has = true; gap = g; alg = a; cfg = c; return; }
        if (g < gap - 1e-12) { gap = g; alg = a; cfg = c; return; }
        if (g > gap + 1e-12) return;
        gap = std::min(gap, g);
        // among equal gaps, a configuration where the algorithm pays something
        // is the informative witness; degenerate all-zero ones are not
        bool triv_new = a <= 1e-9, triv_cur = alg <= 1e-9;
        if (triv_new && !triv_cur) return;
        if (!triv_new && triv_cur) { alg = a; cfg = c; return; }
        auto key = std::make_tuple(c.x, c.y, c.z, side_key(c), sign_key(c));
        auto cur = std::make_tuple(cfg.x, cfg.y, cfg.z, side_key(cfg), sign_key(cfg));
        if (key < cur) { alg = a; cfg = c; }
    }

    void merge(const BestTracker& o) {
        if (o.has) offer(o.gap, o.alg, o.cfg);
    }
};

inline std::vector<double> grid_values(double step, const std::vector<const PiecewiseFn*>& fns,
                                       const std::vector<double>& extra = {}) {
    std::vector<double> g;
    long count = std::lround(1.0 / step);
    for (long i = 0; i <= count; ++i) g.push_back(std::min(1.0, i * step));
    for (const PiecewiseFn* f : fns)
        for (const Rat& b : f->breakpoints) g.push_back(b.to_double());
    for (double v : extra) g.push_back(v);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            g.end());
    return g;
}

inline int default_workers() {
    if (const char* env = std::getenv("CCLAB_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

} // namespace detail

// ---------------------------------------------------------------------------
// wCC certification

/// Certifies alpha for a wCC rounding scheme over (a) tight triangles
/// z = x + y on a breakpoint-refined grid and (b) all breakpoint tuples
/// with one-sided limit directions, each against the three pseudometric
/// weight-cone generators and all sign assignments of the weighted edges.
inline CertificateReport certify_wcc(const RoundingScheme& scheme, double alpha,
                                     double grid_step, int workers = 0) {
    if (grid_step <= 0) throw std::invalid_argument("grid_step must be > 0");
    if (workers <= 0) workers = detail::default_workers();
    {
        auto bad = validate_rounding(scheme);
        if (!bad.empty())
            throw std::invalid_argument("invalid rounding scheme: " + bad.front().detail);
    }
    const bool symmetric_signs = scheme.fplus.breakpoints == scheme.fminus.breakpoints &&
                                 std::equal(scheme.fplus.pieces.begin(), scheme.fplus.pieces.end(),
                                            scheme.fminus.pieces.begin(), scheme.fminus.pieces.end(),
                                            [](const auto& a, const auto& b) {
                                                return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
                                            });

    CertificateReport rep;
    rep.mode = CertMode::Wcc;
    rep.alpha = alpha;
    rep.grid_step = grid_step;

    static constexpr std::array<std::array<double, 3>, 3> weight_vectors{
        {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};

    auto evaluate = [&](TripleConfig cfg, detail::BestTracker& best,
                        std::vector<GapViolation>& viols, uint64_t& checked) {
        for (const auto& w : weight_vectors) {
            cfg.weights = w;
            // Enumerate signs on the weighted edges; the unweighted edge
            // stays '+' (its own sign is irrelevant when f+ = f-).
            std::array<int, 3> nsigns;
            for (int i = 0; i < 3; ++i) nsigns[i] = (w[i] != 0 || !symmetric_signs) ? 2 : 1;
            for (int s0 = 0; s0 < nsigns[0]; ++s0)
                for (int s1 = 0; s1 < nsigns[1]; ++s1)
                    for (int s2 = 0; s2 < nsigns[2]; ++s2) {
                        cfg.signs = {s0 ? EdgeSign::Negative : EdgeSign::Positive,
                                     s1 ? EdgeSign::Negative : EdgeSign::Positive,
                                     s2 ? EdgeSign::Negative : EdgeSign::Positive};
                        double gap = triple_gap(cfg, scheme, alpha, CertMode::Wcc);
                        ++checked;
                        best.offer(gap, triple_alg(cfg, scheme, CertMode::Wcc), cfg);
                        if (gap < -rep.tolerance && viols.size() < 200)
                            viols.push_back({cfg, gap});
                    }
        }
    };

    detail::BestTracker best;
    std::vector<GapViolation> viols;
    uint64_t checked = 0;

    // (a) tight triangles z = x + y on the refined grid.
    std::vector<double> grid =
        detail::grid_values(grid_step, {&scheme.fplus, &scheme.fminus});
    for (size_t ix = 0; ix < grid.size(); ++ix)
        for (size_t iy = ix; iy < grid.size(); ++iy) {
            double x = grid[ix], y = grid[iy], z = x + y;
            if (z > 1 + 1e-12) break;
            TripleConfig cfg;
            cfg.x = x;
            cfg.y = y;
            cfg.z = std::min(z, 1.0);
            evaluate(cfg, best, viols, checked);
        }

    // (b) breakpoint tuples with one-sided limit directions.
    struct Coord { double v; Side side; };
    std::vector<Coord> opts;
    {
        std::vector<double> bps = detail::grid_values(1.0, {&scheme.fplus, &scheme.fminus});
        for (double v : bps)
            for (Side s : {Side::Left, Side::At, Side::Right}) {
                if (s == Side::Left && v < 1e-12) continue;
                if (s == Side::Right && v > 1 - 1e-12) continue;
                opts.push_back({v, s});
            }
    }
    for (const Coord& cx : opts)
        for (const Coord& cy : opts)
            for (const Coord& cz : opts) {
                if (!triangle_ok(cx.v, cy.v, cz.v)) continue;
                TripleConfig cfg;
                cfg.x = cx.v;
                cfg.y = cy.v;
                cfg.z = cz.v;
                cfg.sides = {cx.side, cy.side, cz.side};
                evaluate(cfg, best, viols, checked);
            }

    rep.min_gap = best.gap;
    rep.argmin = best.cfg;
    rep.argmin_alg = best.alg;
    rep.configs_checked = checked;
    rep.violations = std::move(viols);
    (void)workers; // the wcc sweep is small enough to stay single-threaded
    return rep;
}

// ---------------------------------------------------------------------------
// CCC certification

/// Certifies alpha for the CCC rounding functions over all sign triples
/// in {+,-,o}^3 and all grid points satisfying the triangle inequality,
/// using the neutral-edge LP lower bound.
inline CertificateReport certify_ccc(const RoundingScheme& scheme, double alpha,
                                     double grid_step, int workers = 0) {
    if (grid_step <= 0) throw std::invalid_argument("grid_step must be > 0");
    if (!scheme.fcirc) throw std::invalid_argument("ccc certification needs f-circ");
    if (workers <= 0) workers = detail::default_workers();

    CertificateReport rep;
    rep.mode = CertMode::Ccc;
    rep.alpha = alpha;
    rep.grid_step = grid_step;

    std::vector<double> grid = detail::grid_values(
        grid_step, {&scheme.fplus, &scheme.fminus, &*scheme.fcirc}, {0.5});
    const size_t g = grid.size();

    // Precompute all three rounding functions on the grid.
    std::vector<std::array<double, 3>> p_of(g);
    for (size_t i = 0; i < g; ++i)
        p_of[i] = {scheme.fplus.eval(grid[i]), scheme.fminus.eval(grid[i]),
                   scheme.fcirc->eval(grid[i])};

    static constexpr std::array<EdgeSign, 3> all_signs{EdgeSign::Positive, EdgeSign::Negative,
                                                       EdgeSign::Neutral};
    static constexpr int other[3][2] = {{1, 2}, {0, 2}, {0, 1}};

    struct WorkerState {
        detail::BestTracker best;
        std::vector<GapViolation> viols;
        uint64_t checked = 0;
    };
    std::vector<WorkerState> states(workers);

    auto run_worker = [&](int w) {
        WorkerState& st = states[w];
        for (size_t ix = static_cast<size_t>(w); ix < g; ix += workers) {
            double x = grid[ix];
            for (size_t iy = 0; iy < g; ++iy) {
                double y = grid[iy];
                for (size_t iz = 0; iz < g; ++iz) {
                    double z = grid[iz];
                    if (!triangle_ok(x, y, z)) continue;
                    const std::array<double, 3> c{x, y, z};
                    const std::array<const std::array<double, 3>*, 3> pv{&p_of[ix], &p_of[iy],
                                                                          &p_of[iz]};
                    for (int s0 = 0; s0 < 3; ++s0)
                        for (int s1 = 0; s1 < 3; ++s1)
                            for (int s2 = 0; s2 < 3; ++s2) {
                                const std::array<int, 3> si{s0, s1, s2};
                                double gap = 0, alg = 0;
                                for (int i = 0; i < 3; ++i) {
                                    double pa = (*pv[other[i][0]])[si[other[i][0]]];
                                    double pb = (*pv[other[i][1]])[si[other[i][1]]];
                                    EdgeSign sign = all_signs[si[i]];
                                    double cost = e_cost(sign, pa, pb);
                                    double lp = e_lp_ccc_lower(sign, c[i], c[other[i][0]],
                                                               c[other[i][1]], pa, pb);
                                    gap += alpha * lp - cost;
                                    alg += cost;
                                }
                                ++st.checked;
                                if (gap < st.best.gap + 1e-9 || !st.best.has) {
                                    TripleConfig cfg;
                                    cfg.x = x;
                                    cfg.y = y;
                                    cfg.z = z;
                                    cfg.signs = {all_signs[s0], all_signs[s1], all_signs[s2]};
                                    st.best.offer(gap, alg, cfg);
                                    if (gap < -rep.tolerance && st.viols.size() < 200)
                                        st.viols.push_back({cfg, gap});
                                }
                            }
                }
            }
        }
    };

    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
        for (auto& t : threads) t.join();
    }

    detail::BestTracker best;
    uint64_t checked = 0;
    for (auto& st : states) {
        best.merge(st.best);
        checked += st.checked;
        for (auto& v : st.viols)
            if (rep.violations.size() < 200) rep.violations.push_back(v);
    }
    rep.min_gap = best.gap;
    rep.argmin = best.cfg;
    rep.argmin_alg = best.alg;
    rep.configs_checked = checked;
    return rep;
}

// ---------------------------------------------------------------------------
// Violation region (the f-circ feasibility display)

/// Value of the (o,+,+) tight-case display at (x,y,z) = (2t,t,t) with
/// p_y = f+(t) and membership probability p_x left free: negative means
/// choosing f-circ(2t) = p_x would break the alpha-approximation there.
inline double violation_region_expr(const PiecewiseFn& fplus, double alpha, double t,
                                    double p_x) {
    double p_y = fplus.eval(std::min(t, 1.0));
    double constant =
        alpha * (1 - p_y * p_y) * (1 - t) + 2 * alpha * t - 1 - 2 * p_y + p_y * p_y;
    double coeff = 2 * alpha * p_y * t + 2 - 4 * p_y;
    return constant - coeff * p_x;
}

struct RegionPoint {
    double x;   // 2t
    double p;   // violating probability value
};

/// All grid points (2t, p) where assigning f-circ(2t) = p violates the
/// alpha-approximation in the (o,+,+) tight case.
inline std::vector<RegionPoint> violation_region(const PiecewiseFn& fplus, double alpha,
                                                 double resolution) {
    if (resolution <= 0) throw std::invalid_argument("resolution must be > 0");
    std::vector<RegionPoint> pts;
    long count = std::lround(1.0 / resolution);
    for (long i = 0; i <= count; ++i) {
        double t = std::min(1.0, i * resolution);
        for (long j = 0; j <= count; ++j) {
            double p = std::min(1.0, j * resolution);
            // strict negativity with a small guard against rounding noise on
            // the region boundary
            if (violation_region_expr(fplus, alpha, t, p) < -1e-12) pts.push_back({2 * t, p});
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Lower bounds

struct LowerBoundReport {
    double alpha = 0;
    bool feasible = false;
    std::vector<std::string> witness; // derivation trace
};

///// Necessary-condition chain for wCC: f+(x) <= alpha*x and
/// f+(2x) <= alpha*x force f+ < 1 on [0, 2/alpha), while
/// f+(4/(3 alpha)) <= 2/3 forces f+(1 - 4/(3 alpha)) = 1. These conflict
/// exactly when 2/alpha > 1 - 4/(3 alpha), i.e. alpha < 10/3.
inline LowerBoundReport lb_wcc(double alpha) {
    if (alpha <= 0) throw std::invalid_argument("alpha must be > 0");
    LowerBoundReport rep;
    rep.alpha = alpha;
    double need_lt_one_until = 2 / alpha;       // f+ < 1 on [0, 2/alpha)
    double forced_one_at = 1 - 4 / (3 * alpha); // f+(1 - 4/(3 alpha)) = 1
    char buf[160];
    std::snprintf(buf, sizeof buf, "f+(x) < 1 required for x < 2/alpha = %.9f",
                  need_lt_one_until);
    rep.witness.push_back(buf);
    std::snprintf(buf, sizeof buf,
                  "f+(4/(3 alpha)) <= 2/3 = 2 - alpha*x forces f+(%.9f) = 1", forced_one_at);
    rep.witness.push_back(buf);
    rep.feasible = need_lt_one_until <= forced_one_at + 1e-15;
    std::snprintf(buf, sizeof buf, "2/alpha %s 1 - 4/(3 alpha): %s",
                  rep.feasible ? "<=" : ">", rep.feasible ? "no conflict" : "contradiction");
    rep.witness.push_back(buf);
    return rep;
}

/// h(t) = 2(t^2 - t + 1)(4t^2 - 1) - (3t^3 - 6t^2 - 4t + 6).
inline double lb_ccc_h(double t) {
    return 8 * t * t * t * t - 11 * t * t * t + 12 * t * t + 6 * t - 8;
}

/// CCC lower-bound check at alpha in [2,4): the required value
/// f-circ(1/2) >= 3 - alpha conflicts with the upper bound
/// g(1 - t, 4(1 - t^2)) exactly when h(t) > 0, where t = sqrt(1 - alpha/4).
inline LowerBoundReport lb_ccc(double alpha) {
    if (alpha < 2 || alpha >= 4) throw std::invalid_argument("lb_ccc: alpha must be in [2,4)");
    LowerBoundReport rep;
    rep.alpha = alpha;
    double t = std::sqrt(1 - alpha / 4);
    double lower = 4 * t * t - 1; // = 3 - alpha
    double upper = (3 * t * t * t - 6 * t * t - 4 * t + 6) / (2 * (t * t - t + 1));
    double h = lb_ccc_h(t);
    char buf[160];
    std::snprintf(buf, sizeof buf, "t = sqrt(1 - alpha/4) = %.9f", t);
    rep.witness.push_back(buf);
    std::snprintf(buf, sizeof buf, "required: f-circ(1/2) >= 3 - alpha = %.9f", lower);
    rep.witness.push_back(buf);
    std::snprintf(buf, sizeof buf, "allowed:  f-circ(1/2) <= g(1-t, 4(1-t^2)) = %.9f", upper);
    rep.witness.push_back(buf);
    std::snprintf(buf, sizeof buf, "h(t) = %.9f (%s 0)", h, h > 0 ? ">" : "<=");
    rep.witness.push_back(buf);
    rep.feasible = h <= 0;
    return rep;
}

/// Bisection for the smallest alpha the lower-bound check accepts.
template <typename LbFn>
double lb_bisect(LbFn lb, double lo, double hi, double tol = 1e-7) {
    // invariant: lb(lo) infeasible, lb(hi) feasible
    if (lb(lo).feasible) return lo;
    if (!lb(hi).feasible) return hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (lb(mid).feasible) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Extremal tables (exact rational reproduction of the appendix tables)

enum class Appendix { A, B };

struct ExtremalRow {
    std::string region;        // "I".."VII" or "boundary"
    Rat x, y, z;
    std::array<Side, 3> sides;
    EdgeSign sign;             // applied to each role's own edge
    std::array<Rat, 3> gap;    // alpha * e.lp - e.cost per role
    bool reconstructed = false;
};

struct ExtremalTable {
    Appendix appendix;
    Rat alpha;
    std::vector<ExtremalRow> rows;          // tight-triangle extremal points
    std::vector<ExtremalRow> boundary_rows; // one-sided breakpoint tuples
};

namespace detail {

inline std::array<Rat, 3> rational_role_gaps(const RoundingScheme& scheme, const Rat& alpha,
                                             const std::array<Rat, 3>& c,
                                             const std::array<Side, 3>& sides, EdgeSign sign) {
    // The appendix tables assume f+ = f-, so the probability of an edge
    // does not depend on its sign.
    std::array<Rat, 3> p;
    for (int i = 0; i < 3; ++i) p[i] = scheme.fplus.eval_rat(c[i], sides[i]);
    static constexpr int other[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    std::array<Rat, 3> out;
    for (int i = 0; i < 3; ++i) {
        Rat pa = p[other[i][0]], pb = p[other[i][1]];
        out[i] = alpha * e_lp_cc_rat(sign, c[i], pa, pb) - e_cost_rat(sign, pa, pb);
    }
    return out;
}

struct RowSpec {
    const char* region;
    Rat x, y;                  // z = x + y for extremal rows
    std::array<Side, 3> sides;
};

struct BoundarySpec {
    Rat x, y, z;
    std::array<Side, 3> sides;
};

} // namespace detail

/// Reproduces the per-role gap tables for the tight-triangle extremal
/// points and the one-sided breakpoint tuples of the chosen analysis.
/// Appendix A is the Charikar-Gao ramp at alpha = 6, Appendix B the
/// 10/3-tight scheme.
inline ExtremalTable extremal_tables(const RoundingScheme& scheme, const Rat& alpha,
                                     Appendix appendix) {
    using detail::BoundarySpec;
    using detail::RowSpec;
    const Side L = Side::Left, A = Side::At, R = Side::Right;

    std::vector<RowSpec> rows;
    std::vector<BoundarySpec> boundary;
    if (appendix == Appendix::B) {
        rows = {
            {"I", Rat(0), Rat(0), {A, A, A}},
            {"I", Rat(0), Rat(2, 5), {A, L, L}},
            {"I", Rat(1, 5), Rat(1, 5), {A, A, L}},
            {"II", Rat(0), Rat(2, 5), {A, L, A}},
            {"II", Rat(1, 5), Rat(1, 5), {A, A, A}},
            {"II", Rat(1, 5), Rat(2, 5), {A, L, L}},
            {"II", Rat(3, 10), Rat(3, 10), {A, A, L}},
            {"III", Rat(1, 5), Rat(2, 5), {A, L, A}},
            {"III", Rat(3, 10), Rat(3, 10), {A, A, A}},
            {"III", Rat(2, 5), Rat(2, 5), {L, L, A}},
            {"VI", Rat(0), Rat(3, 5), {A, A, A}},
            {"VI", Rat(0), Rat(1), {A, A, A}},
            {"VI", Rat(2, 5), Rat(3, 5), {L, A, A}},
        };
        boundary = {
            {Rat(3, 5), Rat(3, 5), Rat(1), {A, A, A}},
            {Rat(2, 5), Rat(1), Rat(1), {L, A, A}},
            {Rat(2, 5), Rat(1), Rat(1), {R, A, A}},
            {Rat(3, 5), Rat(1), Rat(1), {A, A, A}},
            {Rat(1), Rat(1), Rat(1), {A, A, A}},
        };
    } else {
        rows = {
            {"I", Rat(0), Rat(0), {A, A, A}},
            {"I", Rat(0), Rat(1, 3), {A, L, L}},
            {"I", Rat(1, 6), Rat(1, 6), {A, A, L}},
            {"II", Rat(0), Rat(1, 3), {A, L, A}},
            {"II", Rat(1, 6), Rat(1, 6), {A, A, A}},
            {"II", Rat(1, 3), Rat(1, 3), {L, L, A}},
            {"V", Rat(0), Rat(2, 3), {A, R, R}},
            {"V", Rat(0), Rat(1), {A, A, A}},
            {"V", Rat(1, 3), Rat(2, 3), {L, R, A}},
        };
        boundary = {
            {Rat(2, 3), Rat(2, 3), Rat(1), {L, L, A}},
            {Rat(2, 3), Rat(2, 3), Rat(1), {L, R, A}},
            {Rat(2, 3), Rat(2, 3), Rat(1), {R, R, A}},
            {Rat(1, 3), Rat(1), Rat(1), {L, A, A}},
            {Rat(1, 3), Rat(1), Rat(1), {R, A, A}},
            {Rat(2, 3), Rat(1), Rat(1), {L, A, A}},
            {Rat(2, 3), Rat(1), Rat(1), {R, A, A}},
            {Rat(1), Rat(1), Rat(1), {A, A, A}},
        };
    }

    ExtremalTable table;
    table.appendix = appendix;
    table.alpha = alpha;
    for (const auto& spec : rows) {
        std::array<Rat, 3> c{spec.x, spec.y, spec.x + spec.y};
        for (EdgeSign s : {EdgeSign::Positive, EdgeSign::Negative}) {
            ExtremalRow row;
            row.region = spec.region;
            row.x = c[0];
            row.y = c[1];
            row.z = c[2];
            row.sides = spec.sides;
            row.sign = s;
            // Values are always recomputed from e.cost/e.lp, so the
            // typographically broken Region-V '-' line of the published
            // per-region formula table never has to be transcribed.
            row.gap = detail::rational_role_gaps(scheme, alpha, c, spec.sides, s);
            table.rows.push_back(row);
        }
    }
    for (const auto& spec : boundary) {
        std::array<Rat, 3> c{spec.x, spec.y, spec.z};
        for (EdgeSign s : {EdgeSign::Positive, EdgeSign::Negative}) {
            ExtremalRow row;
            row.region = "boundary";
            row.x = c[0];
            row.y = c[1];
            row.z = c[2];
            row.sides = spec.sides;
            row.sign = s;
            row.gap = detail::rational_role_gaps(scheme, alpha, c, spec.sides, s);
            table.boundary_rows.push_back(row);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// The interior minimum of the (o,+,-) analysis

struct CaseMinimum {
    double value = 0;
    double argmin_y = 0;
};

/// C'(y) at the binding boundary x = 1 - y, z = 1 of the (o,+,-) case,
/// with p_x = 1 - 0.3 y and p_y = f+(y), at alpha = 2.15; minimized over
/// y in [0.19, 0.5).
inline double ccc_case_expr(double y, double alpha = 2.15) {
    double py = ccc_plus_fn().eval(y);
    return alpha * ((1 - py) * (1 - y) + 0.3 * y * y) - (1 + 0.3 * y) * (2 - py) + 1;
}

inline CaseMinimum ccc_case_minimum() {
    const double lo = 0.19, hi = 0.5 - 1e-12;
    // Coarse scan, then golden-section refinement around the best cell.
    double best_y = lo, best_v = ccc_case_expr(lo);
    const int steps = 5000;
    for (int i = 0; i <= steps; ++i) {
        double y = lo + (hi - lo) * i / steps;
        double v = ccc_case_expr(y);
        if (v < best_v) { best_v = v; best_y = y; }
    }
    double a = std::max(lo, best_y - (hi - lo) / steps);
    double b = std::min(hi, best_y + (hi - lo) / steps);
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    while (b - a > 1e-10) {
        if (ccc_case_expr(c) < ccc_case_expr(d)) { b = d; d = c; c = b - phi * (b - a); }
        else { a = c; c = d; d = a + phi * (b - a); }
    }
    CaseMinimum m;
    m.argmin_y = 0.5 * (a + b);
    m.value = ccc_case_expr(m.argmin_y);
    return m;
}

} // namespace cclab
