#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cclab {

enum class SolverStatus { Optimal, Infeasible, IterationLimit };

inline const char* to_string(SolverStatus s) {
    switch (s) {
        case SolverStatus::Optimal: return "optimal";
        case SolverStatus::Infeasible: return "infeasible";
        case SolverStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

/// Minimization LP over x >= 0 with <=, >= and = rows. Upper bounds are
/// expressed as ordinary rows by the callers.
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, double>> terms; // (var, coeff), vars sorted
        char rel;                                  // '<', '>', '='
        double rhs;
    };

    int nvars = 0;
    std::vector<double> cost;
    std::vector<Row> rows;

    void add_row(std::vector<std::pair<int, double>> terms, char rel, double rhs) {
        rows.push_back({std::move(terms), rel, rhs});
    }
};

struct SimplexResult {
    SolverStatus status = SolverStatus::Infeasible;
    double objective = 0;
    std::vector<double> x;
    long iterations = 0;
};

/// Dense two-phase tableau simplex with Bland's rule. Deterministic:
/// entering variable is the lowest eligible index, ratio ties break on
/// the lowest basis index. Intended for the small dense LPs built by
/// lp.hpp; not a general-purpose solver.
class DenseSimplex {
public:
    explicit DenseSimplex(const LinearProgram& lp) : lp_(lp) {}

    SimplexResult solve(long max_iters = 200000) {
        build_tableau();
        SimplexResult res;

        // Phase 1: minimize the artificial sum.
        if (nart_ > 0) {
            std::vector<double> phase1_cost(ncols_ - 1, 0.0);
            for (int j = art_begin_; j < ncols_ - 1; ++j) phase1_cost[j] = 1.0;
            set_cost_row(phase1_cost);
            long it = run(max_iters);
            res.iterations += it;
            if (it < 0 || obj_value() > 1e-7) {
                res.status = it < 0 ? SolverStatus::IterationLimit : SolverStatus::Infeasible;
                return res;
            }
            drive_out_artificials();
        }

        // Phase 2: original objective; artificials are barred from entering.
        std::vector<double> phase2_cost(ncols_ - 1, 0.0);
        for (int j = 0; j < lp_.nvars; ++j) phase2_cost[j] = lp_.cost[j];
        set_cost_row(phase2_cost);
        banned_from_ = art_begin_;
        long it = run(max_iters - res.iterations);
        res.iterations += it;
        if (it < 0) {
            res.status = SolverStatus::IterationLimit;
            return res;
        }

        res.status = SolverStatus::Optimal;
        res.x.assign(lp_.nvars, 0.0);
        for (int i = 0; i < nrows_; ++i)
            if (basis_[i] < lp_.nvars) res.x[basis_[i]] = rhs(i);
        res.objective = 0;
        for (int j = 0; j < lp_.nvars; ++j) res.objective += lp_.cost[j] * res.x[j];
        return res;
    }

private:
    static constexpr double eps = 1e-9;

    const LinearProgram& lp_;
    std::vector<double> T_;   // (nrows_ + 1) x ncols_, last row = cost
    std::vector<int> basis_;
    int nrows_ = 0, ncols_ = 0;
    int art_begin_ = 0, nart_ = 0;
    int banned_from_ = -1;

    double& at(int r, int c) { return T_[static_cast<size_t>(r) * ncols_ + c]; }
    double rhs(int r) { return at(r, ncols_ - 1); }
    double obj_value() { return -at(nrows_, ncols_ - 1); }

    void build_tableau() {
        nrows_ = static_cast<int>(lp_.rows.size());

        // Normalize: '>' rows negated to '<'; record per-row slack sign.
        struct Norm { char rel; double rhs; double mult; };
        std::vector<Norm> norm(nrows_);
        int nslack = 0;
        for (int i = 0; i < nrows_; ++i) {
            const auto& r = lp_.rows[i];
            double mult = (r.rel == '>') ? -1.0 : 1.0;
            norm[i] = {r.rel == '=' ? '=' : '<', r.rhs * mult, mult};
            if (norm[i].rel == '<') ++nslack;
        }

        // A row needs an artificial when its slack cannot serve as a
        // basic variable: equalities, and '<' rows with negative rhs.
        nart_ = 0;
        for (auto& nr : norm)
            if (nr.rel == '=' || nr.rhs < 0) ++nart_;

        art_begin_ = lp_.nvars + nslack;
        ncols_ = art_begin_ + nart_ + 1;
        T_.assign(static_cast<size_t>(nrows_ + 1) * ncols_, 0.0);
        basis_.assign(nrows_, -1);

        int slack = lp_.nvars, art = art_begin_;
        for (int i = 0; i < nrows_; ++i) {
            double mult = norm[i].mult;
            double b = norm[i].rhs;
            double row_sign = (b < 0) ? -1.0 : 1.0;
            for (auto [j, a] : lp_.rows[i].terms) at(i, j) = a * mult * row_sign;
            at(i, ncols_ - 1) = b * row_sign;
            if (norm[i].rel == '<') {
                at(i, slack) = row_sign;
                if (row_sign > 0) basis_[i] = slack;
                ++slack;
            }
            if (basis_[i] < 0) {
                at(i, art) = 1.0;
                basis_[i] = art++;
            }
        }
        banned_from_ = -1;
    }

    /// Load a cost row and price out the current basis.
    void set_cost_row(const std::vector<double>& c) {
        for (int j = 0; j < ncols_; ++j) at(nrows_, j) = (j < ncols_ - 1) ? c[j] : 0.0;
        for (int i = 0; i < nrows_; ++i) {
            double cb = at(nrows_, basis_[i]);
            if (cb != 0.0)
                for (int j = 0; j < ncols_; ++j) at(nrows_, j) -= cb * at(i, j);
        }
    }

    /// Bland iterations; returns the count, or -1 on hitting the limit.
    long run(long max_iters) {
        for (long it = 0; it < max_iters; ++it) {
            int enter = -1;
            int limit = (banned_from_ >= 0) ? banned_from_ : ncols_ - 1;
            for (int j = 0; j < limit; ++j)
                if (at(nrows_, j) < -eps) { enter = j; break; }
            if (enter < 0) return it;

            int leave = -1;
            double best = 0;
            for (int i = 0; i < nrows_; ++i) {
                double a = at(i, enter);
                if (a > eps) {
                    double ratio = rhs(i) / a;
                    if (leave < 0 || ratio < best - eps ||
                        (ratio < best + eps && basis_[i] < basis_[leave]))
                    { best = ratio; leave = i; }
                }
            }
            if (leave < 0) throw std::runtime_error("simplex: unbounded LP");
            pivot(leave, enter);
        }
        return -1;
    }

    void pivot(int r, int c) {
        double p = at(r, c);
        for (int j = 0; j < ncols_; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (int i = 0; i <= nrows_; ++i) {
            if (i == r) continue;
            double f = at(i, c);
            if (f == 0.0) continue;
            for (int j = 0; j < ncols_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    /// After phase 1, swap basic artificials (at value 0) for structural
    /// or slack columns where possible; rows with no pivot candidate are
    /// redundant and harmless.
    void drive_out_artificials() {
        for (int i = 0; i < nrows_; ++i) {
            if (basis_[i] < art_begin_) continue;
            for (int j = 0; j < art_begin_; ++j) {
                if (std::abs(at(i, j)) > 1e-7) { pivot(i, j); break; }
            }
        }
    }
};

inline SimplexResult solve_lp(const LinearProgram& lp, long max_iters = 200000) {
    return DenseSimplex(lp).solve(max_iters);
}

} // namespace cclab
