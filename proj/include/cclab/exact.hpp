#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cclab/instance.hpp"

namespace cclab {

struct ExactResult {
    Clustering best;
    std::vector<int> best_colors; // ccc only
    double cost = 0;
    uint64_t partitions_examined = 0;
};

namespace detail {

/// Enumerates set partitions of {0..n-1} as restricted-growth strings in
/// lexicographic order, calling visit(rgs) for each.
template <typename Visit>
void for_each_partition(int n, Visit visit) {
    std::vector<int> rgs(n, 0), maxv(n, 0);
    while (true) {
        visit(rgs);
        int i = n - 1;
        while (i > 0 && rgs[i] == maxv[i - 1] + 1) --i;
        if (i == 0) return;
        ++rgs[i];
        maxv[i] = std::max(maxv[i - 1], rgs[i]);
        for (int j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxv[j] = maxv[i];
        }
    }
}

} // namespace detail

/// Brute-force optimum over all set partitions. Ties keep the earliest
/// partition in restricted-growth-string order.
template <typename Inst>
ExactResult exact_cc(const Inst& inst) {
    const int n = inst.n;
    if (n > 12) throw std::invalid_argument("exact_cc: n > 12");
    ExactResult res;
    res.cost = -1;
    detail::for_each_partition(n, [&](const std::vector<int>& rgs) {
        ++res.partitions_examined;
        double cost = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                EdgeSign s = inst.sign_of(u, v);
                if (s == EdgeSign::Neutral) continue;
                bool together = rgs[u] == rgs[v];
                double w = 1.0;
                if constexpr (std::is_same_v<Inst, WCCInstance>) w = inst.weight_of(u, v);
                if (s == EdgeSign::Positive && !together) cost += w;
                if (s == EdgeSign::Negative && together) cost += w;
            }
        if (res.cost < 0 || cost < res.cost) {
            res.cost = cost;
            res.best.assignment = rgs;
        }
    });
    return res;
}

/// Brute-force CCC optimum. Colors are not enumerated: the objective
/// decomposes per cluster, so each cluster takes a color with the most
/// internal edges of that color (smallest index on ties).
inline ExactResult exact_ccc(const CCCInstance& inst) {
    const int n = inst.n, L = inst.num_colors;
    if (n > 10) throw std::invalid_argument("exact_ccc: n > 10");
    ExactResult res;
    res.cost = -1;
    detail::for_each_partition(n, [&](const std::vector<int>& rgs) {
        ++res.partitions_examined;
        int k = 0;
        for (int c : rgs) k = std::max(k, c + 1);
        // Per cluster: count internal edges by color; internal gamma and
        // off-color chromatic edges cost 1 each, as does every cut
        // chromatic edge.
        std::vector<std::vector<int>> internal(k, std::vector<int>(L + 1, 0));
        long long base = 0; // cost ignoring color credit
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int col = inst.color_of(u, v);
                if (col == CCCInstance::no_edge) continue;
                if (rgs[u] == rgs[v]) {
                    ++internal[rgs[u]][col];
                    ++base; // refunded below if the cluster color matches
                } else if (col != CCCInstance::gamma) {
                    ++base;
                }
            }
        std::vector<int> colors(k, 1);
        long long cost = base;
        for (int c = 0; c < k; ++c) {
            int best_col = 1, best_cnt = internal[c][1];
            for (int col = 2; col <= L; ++col)
                if (internal[c][col] > best_cnt) { best_cnt = internal[c][col]; best_col = col; }
            colors[c] = best_col;
            cost -= best_cnt;
        }
        if (res.cost < 0 || static_cast<double>(cost) < res.cost) {
            res.cost = static_cast<double>(cost);
            res.best.assignment = rgs;
            res.best_colors = colors;
        }
    });
    return res;
}

} // namespace cclab
