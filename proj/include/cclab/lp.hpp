#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cclab/instance.hpp"
#include "cclab/simplex.hpp"

namespace cclab {

constexpr double lp_feas_tol = 1e-7;

/// Fractional pair distances for CC / wCC. Variables exist for all
/// pairs, including Neutral ones.
struct LpSolution {
    int n = 0;
    std::vector<double> x; // per pair
    double objective = 0;
    SolverStatus status = SolverStatus::Infeasible;
    double max_residual = 0;

    double x_of(int u, int v) const { return x[pair_index(n, u, v)]; }
};

/// Per-vertex and per-pair color variables for CCC.
struct CCCLpSolution {
    int n = 0, num_colors = 0;
    std::vector<double> xv; // n * L, index u * L + (c - 1)
    std::vector<double> xe; // pair_count(n) * L
    double objective = 0;
    SolverStatus status = SolverStatus::Infeasible;
    double max_residual = 0;

    double xv_of(int u, int c) const { return xv[u * num_colors + (c - 1)]; }
    double xe_of(int u, int v, int c) const {
        return xe[pair_index(n, u, v) * num_colors + (c - 1)];
    }
};

struct LpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConstraintViolation {
    std::string family;        // "triangle", "domination", "color_sum", "bounds"
    std::vector<int> witness;  // vertices (and trailing color for CCC families)
    double amount;
};

namespace detail {

/// Solve with lazy triangle-inequality rows: start from the explicit
/// rows, then repeatedly add the most violated triangle constraints
/// until none remain. `scan` appends violated rows (capped at `batch`)
/// and returns the worst violation found.
template <typename ScanFn>
SimplexResult solve_with_lazy_triangles(LinearProgram& lp, ScanFn scan) {
    SimplexResult res;
    for (int round = 0; round < 200; ++round) {
        res = solve_lp(lp);
        if (res.status != SolverStatus::Optimal) return res;
        size_t before = lp.rows.size();
        double worst = scan(res.x, lp);
        if (lp.rows.size() == before || worst <= 1e-9) return res;
    }
    res.status = SolverStatus::IterationLimit;
    return res;
}

struct TriangleViolationScanner {
    int n;
    size_t batch = 400;

    // x_uv <= x_uw + x_wv for all ordered triples; variables indexed by pair.
    double operator()(const std::vector<double>& x, LinearProgram& lp) const {
        struct Cand { double viol; int i, j, k; };
        std::vector<Cand> cands;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double xij = x[pair_index(n, i, j)];
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    double v = xij - x[pair_index(n, i, k)] - x[pair_index(n, k, j)];
                    if (v > 1e-9) cands.push_back({v, i, j, k});
                }
            }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.viol != b.viol) return a.viol > b.viol;
            return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
        });
        double worst = cands.empty() ? 0.0 : cands.front().viol;
        for (size_t t = 0; t < cands.size() && t < batch; ++t) {
            const auto& c = cands[t];
            lp.add_row({{pair_index(n, c.i, c.k), 1.0},
                        {pair_index(n, c.k, c.j), 1.0},
                        {pair_index(n, c.i, c.j), -1.0}},
                       '>', 0.0);
        }
        return worst;
    }
};

inline void add_upper_bounds(LinearProgram& lp, int count) {
    for (int j = 0; j < count; ++j) lp.add_row({{j, 1.0}}, '<', 1.0);
}

} // namespace detail

template <typename Inst>
LpSolution solve_pair_lp(const Inst& inst) {
    const int n = inst.n;
    LinearProgram lp;
    lp.nvars = pair_count(n);
    lp.cost.assign(lp.nvars, 0.0);
    double constant = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            double w = 1.0;
            if constexpr (std::is_same_v<Inst, WCCInstance>) w = inst.weight_of(u, v);
            switch (inst.sign_of(u, v)) {
                case EdgeSign::Positive: lp.cost[pi] = w; break;
                case EdgeSign::Negative: lp.cost[pi] = -w; constant += w; break;
                case EdgeSign::Neutral: break;
            }
        }
    detail::add_upper_bounds(lp, lp.nvars);

    SimplexResult res = detail::solve_with_lazy_triangles(lp, detail::TriangleViolationScanner{n});
    if (res.status != SolverStatus::Optimal)
        throw LpError(std::string("LP solve failed: ") + to_string(res.status));

    LpSolution sol;
    sol.n = n;
    sol.status = res.status;
    sol.x = std::move(res.x);
    for (double& v : sol.x) v = std::clamp(v, 0.0, 1.0);
    sol.objective = constant;
    for (int j = 0; j < lp.nvars; ++j) sol.objective += lp.cost[j] * sol.x[j];
    return sol;
}

inline LpSolution solve_cc_lp(const CCInstance& inst) { return solve_pair_lp(inst); }

inline LpSolution solve_wcc_lp(const WCCInstance& inst) {
    if (auto bad = pseudometric_violation(inst))
        throw LpError("wcc instance weights violate the triangle inequality");
    return solve_pair_lp(inst);
}

inline CCCLpSolution solve_ccc_lp(const CCCInstance& inst) {
    const int n = inst.n, L = inst.num_colors;
    const int npairs = pair_count(n);
    const int nv = n * L;       // vertex-color variables come first
    const int nvars = nv + npairs * L;
    auto vvar = [&](int u, int c) { return u * L + (c - 1); };
    auto evar = [&](int pi, int c) { return nv + pi * L + (c - 1); };

    LinearProgram lp;
    lp.nvars = nvars;
    lp.cost.assign(nvars, 0.0);
    double constant = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            int col = inst.color_of(u, v);
            if (col == CCCInstance::no_edge) continue;
            if (col == CCCInstance::gamma) {
                for (int c = 1; c <= L; ++c) lp.cost[evar(pi, c)] -= 1.0;
                constant += L;
            } else {
                lp.cost[evar(pi, col)] += 1.0;
            }
        }
    detail::add_upper_bounds(lp, nvars);
    // Edge variables dominate both endpoint variables.
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int pi = pair_index(n, u, v);
            for (int c = 1; c <= L; ++c) {
                lp.add_row({{vvar(u, c), 1.0}, {evar(pi, c), -1.0}}, '<', 0.0);
                lp.add_row({{vvar(v, c), 1.0}, {evar(pi, c), -1.0}}, '<', 0.0);
            }
        }
    // Each vertex is fractionally assigned exactly one color.
    for (int u = 0; u < n; ++u) {
        std::vector<std::pair<int, double>> terms;
        for (int c = 1; c <= L; ++c) terms.push_back({vvar(u, c), 1.0});
        lp.add_row(std::move(terms), '=', L - 1.0);
    }

    auto scan = [&](const std::vector<double>& x, LinearProgram& prog) {
        double worst = 0;
        size_t added = 0;
        for (int c = 1; c <= L && added < 600; ++c)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double xij = x[evar(pair_index(n, i, j), c)];
                    for (int k = 0; k < n; ++k) {
                        if (k == i || k == j) continue;
                        double v = xij - x[evar(pair_index(n, i, k), c)] -
                                   x[evar(pair_index(n, k, j), c)];
                        if (v > 1e-9) {
                            worst = std::max(worst, v);
                            prog.add_row({{evar(pair_index(n, i, k), c), 1.0},
                                          {evar(pair_index(n, k, j), c), 1.0},
                                          {evar(pair_index(n, i, j), c), -1.0}},
                                         '>', 0.0);
                            if (++added >= 600) return worst;
                        }
                    }
                }
        return worst;
    };

    SimplexResult res = detail::solve_with_lazy_triangles(lp, scan);
    if (res.status != SolverStatus::Optimal)
        throw LpError(std::string("CCC LP solve failed: ") + to_string(res.status));

    CCCLpSolution sol;
    sol.n = n;
    sol.num_colors = L;
    sol.status = res.status;
    sol.xv.assign(res.x.begin(), res.x.begin() + nv);
    sol.xe.assign(res.x.begin() + nv, res.x.end());
    for (double& v : sol.xv) v = std::clamp(v, 0.0, 1.0);
    for (double& v : sol.xe) v = std::clamp(v, 0.0, 1.0);
    sol.objective = constant;
    for (int j = 0; j < nvars; ++j)
        sol.objective += lp.cost[j] * (j < nv ? sol.xv[j] : sol.xe[j - nv]);
    return sol;
}

// ---------------------------------------------------------------------------
// Feasibility checks

inline std::vector<ConstraintViolation> check_feasibility(const LpSolution& sol,
                                                          double tol = lp_feas_tol) {
    std::vector<ConstraintViolation> out;
    const int n = sol.n;
    for (int pi = 0; pi < pair_count(n); ++pi)
        if (sol.x[pi] < -tol || sol.x[pi] > 1 + tol)
            out.push_back({"bounds", {pi}, std::max(-sol.x[pi], sol.x[pi] - 1)});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                double v = sol.x_of(i, j) - sol.x_of(i, k) - sol.x_of(k, j);
                if (v > tol) out.push_back({"triangle", {i, j, k}, v});
            }
    return out;
}

inline std::vector<ConstraintViolation> check_feasibility(const CCCLpSolution& sol,
                                                          double tol = lp_feas_tol) {
    std::vector<ConstraintViolation> out;
    const int n = sol.n, L = sol.num_colors;
    for (double v : sol.xv)
        if (v < -tol || v > 1 + tol) out.push_back({"bounds", {}, std::max(-v, v - 1)});
    for (double v : sol.xe)
        if (v < -tol || v > 1 + tol) out.push_back({"bounds", {}, std::max(-v, v - 1)});
    for (int u = 0; u < n; ++u) {
        double sum = 0;
        for (int c = 1; c <= L; ++c) sum += sol.xv_of(u, c);
        if (std::abs(sum - (L - 1)) > tol)
            out.push_back({"color_sum", {u}, std::abs(sum - (L - 1))});
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            for (int c = 1; c <= L; ++c) {
                double xe = sol.xe_of(u, v, c);
                double d = std::max(sol.xv_of(u, c), sol.xv_of(v, c)) - xe;
                if (d > tol) out.push_back({"domination", {u, v, c}, d});
            }
    for (int c = 1; c <= L; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    double v = sol.xe_of(i, j, c) - sol.xe_of(i, k, c) - sol.xe_of(k, j, c);
                    if (v > tol) out.push_back({"triangle", {i, j, k, c}, v});
                }
    return out;
}

inline double max_residual(const std::vector<ConstraintViolation>& v) {
    double m = 0;
    for (const auto& c : v) m = std::max(m, c.amount);
    return m;
}

} // namespace cclab
