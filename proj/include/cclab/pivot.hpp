#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cclab/instance.hpp"
#include "cclab/lp.hpp"
#include "cclab/rounding.hpp"

namespace cclab {

/// Counter-based generator: the i-th draw of stream (seed, stream) is a
/// pure function of (seed, stream, i), so runs are reproducible and
/// trials can be split across workers without shared state.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream = 0)
        : key_(mix(seed ^ mix(stream + 0x7f4a7c15ULL))) {}

    double next_u01() {
        uint64_t v = mix(key_ ^ (counter_++ * 0x9e3779b97f4a7c15ULL));
        return static_cast<double>(v >> 11) * 0x1.0p-53;
    }

    int next_below(int k) { return static_cast<int>(next_u01() * k) % k; }

private:
    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t key_;
    uint64_t counter_ = 0;
};

/// The inputs LP-Pivot needs about a vertex subset: signs and fractional
/// distances for every pair within it.
struct PivotView {
    std::vector<int> vertices;
    std::function<EdgeSign(int, int)> sign;
    std::function<double(int, int)> x;
};

/// Recursive randomized pivot clustering, implemented iteratively over
/// the shrinking vertex set. One draw picks the pivot, then one draw per
/// remaining vertex (in vertex-index order) decides membership with
/// probability 1 - p, where p = f^sign(x).
inline Clustering lp_pivot(const PivotView& view, const RoundingScheme& scheme,
                           CounterRng& rng, std::vector<int>* pivot_trace = nullptr) {
    int max_id = 0;
    for (int v : view.vertices) max_id = std::max(max_id, v + 1);
    Clustering out;
    out.assignment.assign(max_id, -1);

    std::vector<int> remaining = view.vertices;
    std::sort(remaining.begin(), remaining.end());
    int next_cluster = 0;
    while (!remaining.empty()) {
        int pidx = rng.next_below(static_cast<int>(remaining.size()));
        int pivot = remaining[pidx];
        if (pivot_trace) pivot_trace->push_back(pivot);
        std::vector<int> rest;
        out.assignment[pivot] = next_cluster;
        for (int u : remaining) {
            if (u == pivot) continue;
            double xv = view.x(u, pivot);
            double p;
            switch (view.sign(u, pivot)) {
                case EdgeSign::Positive: p = scheme.fplus.eval(xv); break;
                case EdgeSign::Negative: p = scheme.fminus.eval(xv); break;
                case EdgeSign::Neutral:
                    if (!scheme.fcirc)
                        throw std::invalid_argument("scheme has no f-circ for Neutral pair");
                    p = scheme.fcirc->eval(xv);
                    break;
            }
            if (rng.next_u01() < 1.0 - p) out.assignment[u] = next_cluster;
            else rest.push_back(u);
        }
        remaining = std::move(rest);
        ++next_cluster;
    }
    return out;
}

inline Clustering lp_pivot(const CCInstance& inst, const LpSolution& sol,
                           const RoundingScheme& scheme, CounterRng& rng) {
    PivotView view;
    view.vertices.resize(inst.n);
    for (int v = 0; v < inst.n; ++v) view.vertices[v] = v;
    view.sign = [&inst](int u, int v) { return inst.sign_of(u, v); };
    view.x = [&sol](int u, int v) { return sol.x_of(u, v); };
    return lp_pivot(view, scheme, rng);
}

inline Clustering lp_pivot(const WCCInstance& inst, const LpSolution& sol,
                           const RoundingScheme& scheme, CounterRng& rng) {
    PivotView view;
    view.vertices.resize(inst.n);
    for (int v = 0; v < inst.n; ++v) view.vertices[v] = v;
    view.sign = [&inst](int u, int v) { return inst.sign_of(u, v); };
    view.x = [&sol](int u, int v) { return sol.x_of(u, v); };
    return lp_pivot(view, scheme, rng);
}

/// LP-CCC: vertices with a strict-majority color go to their color
/// class; the rest become singletons (colored 1, cost-neutral since a
/// singleton has no internal edge). Each color class is clustered by
/// lp_pivot with color-c edges Positive, gamma edges Negative, anything
/// else Neutral.
inline ChromaticClustering lp_ccc(const CCCInstance& inst, const CCCLpSolution& sol,
                                  const RoundingScheme& scheme, CounterRng& rng) {
    const int n = inst.n, L = inst.num_colors;
    ChromaticClustering out;
    out.clustering.assignment.assign(n, -1);
    std::vector<std::vector<int>> color_class(L + 1);

    std::vector<bool> in_class(n, false);
    for (int u = 0; u < n; ++u) {
        int chosen = 0;
        for (int c = 1; c <= L; ++c) {
            if (sol.xv_of(u, c) < 0.5) {
                if (chosen != 0)
                    throw std::invalid_argument("infeasible CCC solution: two majority colors");
                chosen = c;
            }
        }
        if (chosen != 0) {
            color_class[chosen].push_back(u);
            in_class[u] = true;
        }
    }

    int next_cluster = 0;
    for (int u = 0; u < n; ++u) {
        if (!in_class[u]) {
            out.clustering.assignment[u] = next_cluster++;
            out.cluster_color.push_back(1);
        }
    }

    for (int c = 1; c <= L; ++c) {
        if (color_class[c].empty()) continue;
        PivotView view;
        view.vertices = color_class[c];
        view.sign = [&inst, c](int u, int v) {
            int col = inst.color_of(u, v);
            if (col == c) return EdgeSign::Positive;
            if (col == CCCInstance::gamma) return EdgeSign::Negative;
            return EdgeSign::Neutral;
        };
        view.x = [&sol, c](int u, int v) { return sol.xe_of(u, v, c); };
        Clustering sub = lp_pivot(view, scheme, rng);
        int base = next_cluster;
        int sub_clusters = 0;
        for (int v : color_class[c]) {
            int sc = sub.assignment[v];
            sub_clusters = std::max(sub_clusters, sc + 1);
            out.clustering.assignment[v] = base + sc;
        }
        for (int i = 0; i < sub_clusters; ++i) out.cluster_color.push_back(c);
        next_cluster += sub_clusters;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimation

struct MonteCarloStats {
    int trials = 0;
    double mean = 0;
    double stddev = 0;
    double ci95_lo = 0, ci95_hi = 0;
    double min_cost = 0;
};

namespace detail {

inline MonteCarloStats summarize(const std::vector<double>& costs) {
    MonteCarloStats s;
    s.trials = static_cast<int>(costs.size());
    // Kahan summation so the result does not depend on worker count.
    double sum = 0, comp = 0;
    for (double c : costs) {
        double y = c - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    s.mean = sum / s.trials;
    double sq = 0;
    for (double c : costs) sq += (c - s.mean) * (c - s.mean);
    s.stddev = s.trials > 1 ? std::sqrt(sq / (s.trials - 1)) : 0.0;
    double half = 1.96 * s.stddev / std::sqrt(static_cast<double>(s.trials));
    s.ci95_lo = s.mean - half;
    s.ci95_hi = s.mean + half;
    s.min_cost = costs.empty() ? 0.0 : *std::min_element(costs.begin(), costs.end());
    return s;
}

} // namespace detail

template <typename Inst>
MonteCarloStats monte_carlo_pivot(const Inst& inst, const LpSolution& sol,
                                  const RoundingScheme& scheme, int trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::vector<double> costs(trials);
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, static_cast<uint64_t>(t));
        Clustering c = lp_pivot(inst, sol, scheme, rng);
        costs[t] = cc_cost(inst, c);
    }
    return detail::summarize(costs);
}

inline MonteCarloStats monte_carlo_ccc(const CCCInstance& inst, const CCCLpSolution& sol,
                                       const RoundingScheme& scheme, int trials, uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    std::vector<double> costs(trials);
    for (int t = 0; t < trials; ++t) {
        CounterRng rng(seed, static_cast<uint64_t>(t));
        ChromaticClustering cc = lp_ccc(inst, sol, scheme, rng);
        costs[t] = static_cast<double>(ccc_cost(inst, cc));
    }
    return detail::summarize(costs);
}

} // namespace cclab
