#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cclab/rational.hpp"

namespace cclab {

/// Which value of a piecewise function to take at a breakpoint.
enum class Side { Left, At, Right };

/// A piecewise polynomial (degree <= 2) on [0,1] with rational
/// coefficients. Pieces are stored over consecutive breakpoint
/// intervals; each interior breakpoint records which adjacent piece
/// owns the function value there.
struct PiecewiseFn {
    struct Piece {
        Rat c0, c1, c2; // c0 + c1*x + c2*x^2

        Rat eval(const Rat& x) const { return c0 + c1 * x + c2 * x * x; }
        double eval(double x) const {
            return c0.to_double() + c1.to_double() * x + c2.to_double() * x * x;
        }
    };

    std::vector<Rat> breakpoints;     // ascending, first 0, last 1
    std::vector<Piece> pieces;        // pieces.size() == breakpoints.size() - 1
    std::vector<bool> right_owns;     // per interior breakpoint

    size_t piece_count() const { return pieces.size(); }

    /// Index of the piece to use for x, honoring side directives at
    /// breakpoints. Doubles within `snap_tol` of a breakpoint are
    /// treated as sitting on it.
    static constexpr double snap_tol = 1e-12;

    size_t piece_index(const Rat& x, Side side) const {
        if (x < Rat(0) || x > Rat(1)) throw std::domain_error("PiecewiseFn: x outside [0,1]");
        if (side == Side::Left && x == Rat(0)) throw std::domain_error("PiecewiseFn: left limit at 0");
        if (side == Side::Right && x == Rat(1)) throw std::domain_error("PiecewiseFn: right limit at 1");
        for (size_t i = 1; i + 1 < breakpoints.size(); ++i) {
            if (x == breakpoints[i]) return index_at_breakpoint(i, side);
            if (x < breakpoints[i]) return i - 1;
        }
        return pieces.size() - 1;
    }

    size_t piece_index(double x, Side side) const {
        if (x < -snap_tol || x > 1 + snap_tol) throw std::domain_error("PiecewiseFn: x outside [0,1]");
        if (side == Side::Left && x < snap_tol) throw std::domain_error("PiecewiseFn: left limit at 0");
        if (side == Side::Right && x > 1 - snap_tol) throw std::domain_error("PiecewiseFn: right limit at 1");
        for (size_t i = 1; i + 1 < breakpoints.size(); ++i) {
            double b = breakpoints[i].to_double();
            if (std::abs(x - b) <= snap_tol) return index_at_breakpoint(i, side);
            if (x < b) return i - 1;
        }
        return pieces.size() - 1;
    }

    Rat eval_rat(const Rat& x, Side side = Side::At) const {
        return pieces[piece_index(x, side)].eval(x);
    }

    double eval(double x, Side side = Side::At) const {
        double v = pieces[piece_index(x, side)].eval(std::clamp(x, 0.0, 1.0));
        return std::clamp(v, 0.0, 1.0);
    }

    /// All coefficients exactly representable as rationals (always true
    /// for this storage; kept for interface symmetry with custom input).
    bool is_rational() const { return true; }

private:
    size_t index_at_breakpoint(size_t i, Side side) const {
        switch (side) {
            case Side::Left: return i - 1;
            case Side::Right: return i;
            case Side::At: return right_owns[i - 1] ? i : i - 1;
        }
        return i;
    }
};

struct RoundingScheme {
    std::string name;
    PiecewiseFn fplus;
    PiecewiseFn fminus;
    std::optional<PiecewiseFn> fcirc;
    std::optional<std::pair<Rat, Rat>> params; // (alpha, beta) of the Charikar-Gao family
};

namespace detail {

inline PiecewiseFn::Piece const_piece(const Rat& v) { return {v, Rat(0), Rat(0)}; }
inline PiecewiseFn::Piece linear_piece(const Rat& c0, const Rat& c1) { return {c0, c1, Rat(0)}; }

inline PiecewiseFn identity_fn() {
    PiecewiseFn f;
    f.breakpoints = {Rat(0), Rat(1)};
    f.pieces = {linear_piece(Rat(0), Rat(1))};
    return f;
}

/// 0 below `lo`, `mid` in between, 1 above `hi`. `lo_right`/`hi_right`
/// state whether the breakpoint value belongs to the piece to its right.
inline PiecewiseFn step_ramp(const Rat& lo, const Rat& hi, PiecewiseFn::Piece mid,
                             bool lo_right, bool hi_right) {
    PiecewiseFn f;
    f.breakpoints = {Rat(0), lo, hi, Rat(1)};
    f.pieces = {const_piece(Rat(0)), mid, const_piece(Rat(1))};
    f.right_owns = {lo_right, hi_right};
    return f;
}

} // namespace detail

/// Rounding function used for pseudometric-weighted CC: jumps to 5/3*x
/// at 0.4 and saturates at 0.6.
inline PiecewiseFn wcc_tight_fn() {
    return detail::step_ramp(Rat(2, 5), Rat(3, 5),
                             detail::linear_piece(Rat(0), Rat(5, 3)),
                             /*lo_right=*/true, /*hi_right=*/true);
}

/// f+ for CCC: quadratic ramp ((x - 0.19) / (0.5095 - 0.19))^2 between
/// 0.19 and 0.5095.
inline PiecewiseFn ccc_plus_fn() {
    const Rat a(19, 100);
    const Rat b(5095, 10000);
    const Rat d = b - a;
    const Rat d2 = d * d;
    PiecewiseFn::Piece quad{a * a / d2, Rat(-2) * a / d2, Rat(1) / d2};
    return detail::step_ramp(a, b, quad, true, true);
}

/// f-circ for CCC: 1.7*x below 0.5, 0.3*x + 0.7 above; continuous.
inline PiecewiseFn ccc_circ_fn() {
    PiecewiseFn f;
    f.breakpoints = {Rat(0), Rat(1, 2), Rat(1)};
    f.pieces = {detail::linear_piece(Rat(0), Rat(17, 10)),
                detail::linear_piece(Rat(7, 10), Rat(3, 10))};
    f.right_owns = {true};
    return f;
}

/// The Charikar-Gao ramp: 0 below alpha, (x - alpha*beta)/(1 - alpha*beta)
/// on [alpha, 1 - alpha], 1 above. The middle piece owns both endpoints.
inline PiecewiseFn charikar_gao_fn(const Rat& alpha, const Rat& beta) {
    const Rat ab = alpha * beta;
    return detail::step_ramp(alpha, Rat(1) - alpha,
                             detail::linear_piece(-ab / (Rat(1) - ab), Rat(1) / (Rat(1) - ab)),
                             /*lo_right=*/true, /*hi_right=*/false);
}

inline PiecewiseFn charikar_gao_circ_fn(const Rat& alpha, const Rat& beta) {
    const Rat ab = alpha * beta;
    if (ab == Rat(0)) return detail::identity_fn();
    return detail::step_ramp(ab, Rat(1) - ab, detail::linear_piece(Rat(0), Rat(1)), true, false);
}

inline RoundingScheme preset(const std::string& name,
                             const Rat& cg_alpha = Rat(1, 3),
                             const Rat& cg_beta = Rat(0)) {
    RoundingScheme s;
    s.name = name;
    if (name == "wcc_tight") {
        s.fplus = s.fminus = wcc_tight_fn();
    } else if (name == "wcc_charikar_gao") {
        s.fplus = s.fminus = charikar_gao_fn(cg_alpha, cg_beta);
        s.fcirc = charikar_gao_circ_fn(cg_alpha, cg_beta);
        s.params = {{cg_alpha, cg_beta}};
    } else if (name == "ccc_plus_minus") {
        s.fplus = ccc_plus_fn();
        s.fminus = detail::identity_fn();
    } else if (name == "ccc_neutral_scheme" || name == "paper") {
        s.name = "ccc_neutral_scheme";
        s.fplus = ccc_plus_fn();
        s.fminus = detail::identity_fn();
        s.fcirc = ccc_circ_fn();
    } else if (name == "identity") {
        s.fplus = s.fminus = detail::identity_fn();
        s.fcirc = detail::identity_fn();
    } else {
        throw std::invalid_argument("unknown rounding preset: " + name);
    }
    return s;
}

/// A violated rounding-function condition, with a witness argument.
struct RoundingViolation {
    std::string function;  // "f+", "f-", "fo"
    std::string condition; // "endpoint" or "monotone"
    double witness_x;
    std::string detail;
};

namespace detail {

inline void validate_fn(const PiecewiseFn& f, const std::string& label,
                        std::vector<RoundingViolation>& out) {
    if (f.eval_rat(Rat(0)) != Rat(0))
        out.push_back({label, "endpoint", 0.0, label + "(0) != 0"});
    if (f.eval_rat(Rat(1)) != Rat(1))
        out.push_back({label, "endpoint", 1.0, label + "(1) != 1"});
    // Monotone within each piece: for a quadratic the derivative is
    // monotone, so checking it at both interval endpoints suffices.
    for (size_t i = 0; i < f.pieces.size(); ++i) {
        const auto& p = f.pieces[i];
        const Rat lo = f.breakpoints[i], hi = f.breakpoints[i + 1];
        for (const Rat& x : {lo, hi}) {
            Rat deriv = p.c1 + Rat(2) * p.c2 * x;
            if (deriv < Rat(0)) {
                out.push_back({label, "monotone", x.to_double(),
                               label + " decreasing inside piece " + std::to_string(i)});
                break;
            }
        }
        for (const Rat& x : {lo, hi}) {
            Rat v = p.eval(x);
            if (v < Rat(0) || v > Rat(1)) {
                out.push_back({label, "range", x.to_double(),
                               label + " leaves [0,1] at " + x.str()});
                break;
            }
        }
    }
    // Monotone across breakpoints: any jump must go upward.
    for (size_t i = 1; i + 1 < f.breakpoints.size(); ++i) {
        Rat left = f.pieces[i - 1].eval(f.breakpoints[i]);
        Rat right = f.pieces[i].eval(f.breakpoints[i]);
        if (right < left) {
            out.push_back({label, "monotone", f.breakpoints[i].to_double(),
                           label + " jumps downward at " + f.breakpoints[i].str()});
        }
    }
}

} // namespace detail

/// Checks f(0)=0, f(1)=1, monotonicity and range for every component.
inline std::vector<RoundingViolation> validate_rounding(const RoundingScheme& s) {
    std::vector<RoundingViolation> out;
    detail::validate_fn(s.fplus, "f+", out);
    detail::validate_fn(s.fminus, "f-", out);
    if (s.fcirc) detail::validate_fn(*s.fcirc, "fo", out);
    return out;
}

} // namespace cclab
