#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cclab/certificate.hpp"
#include "cclab/exact.hpp"
#include "cclab/instance.hpp"
#include "cclab/lp.hpp"
#include "cclab/pivot.hpp"
#include "cclab/rounding.hpp"

namespace cclab {

using nlohmann::json;

inline constexpr const char* tool_version = "cclab 1.0.0";

/// FNV-1a over the canonical text serialization; embedded in reports so
/// a result can be matched to its exact input.
inline std::string instance_hash(const Instance& inst) {
    std::string text = serialize_instance(inst);
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Rationals and piecewise functions

inline json rat_to_json(const Rat& r) {
    return json{{"num", r.num()}, {"den", r.den()}, {"value", r.to_double()}};
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
    if (j.is_object()) return Rat(j.at("num").get<long long>(), j.at("den").get<long long>());
    throw std::invalid_argument("expected rational as int, \"p/q\" string, or {num,den}");
}

inline json piecewise_to_json(const PiecewiseFn& f) {
    json j;
    j["breakpoints"] = json::array();
    for (const Rat& b : f.breakpoints) j["breakpoints"].push_back(rat_to_json(b));
    j["pieces"] = json::array();
    for (const auto& p : f.pieces)
        j["pieces"].push_back({{"c0", rat_to_json(p.c0)},
                               {"c1", rat_to_json(p.c1)},
                               {"c2", rat_to_json(p.c2)}});
    j["right_owns"] = f.right_owns;
    return j;
}

inline PiecewiseFn piecewise_from_json(const json& j) {
    PiecewiseFn f;
    for (const auto& b : j.at("breakpoints")) f.breakpoints.push_back(rat_from_json(b));
    for (const auto& p : j.at("pieces"))
        f.pieces.push_back({rat_from_json(p.at("c0")), rat_from_json(p.at("c1")),
                            p.contains("c2") ? rat_from_json(p.at("c2")) : Rat(0)});
    if (j.contains("right_owns")) f.right_owns = j.at("right_owns").get<std::vector<bool>>();
    else f.right_owns.assign(f.breakpoints.size() >= 2 ? f.breakpoints.size() - 2 : 0, true);
    if (f.breakpoints.size() < 2 || f.pieces.size() + 1 != f.breakpoints.size() ||
        f.right_owns.size() + 2 != f.breakpoints.size())
        throw std::invalid_argument("piecewise function: inconsistent sizes");
    return f;
}

inline json scheme_to_json(const RoundingScheme& s) {
    json j;
    j["name"] = s.name;
    j["fplus"] = piecewise_to_json(s.fplus);
    j["fminus"] = piecewise_to_json(s.fminus);
    if (s.fcirc) j["fcirc"] = piecewise_to_json(*s.fcirc);
    if (s.params)
        j["params"] = {{"alpha", rat_to_json(s.params->first)},
                       {"beta", rat_to_json(s.params->second)}};
    return j;
}

inline RoundingScheme scheme_from_json(const json& j) {
    RoundingScheme s;
    s.name = j.value("name", "custom");
    s.fplus = piecewise_from_json(j.at("fplus"));
    s.fminus = piecewise_from_json(j.at("fminus"));
    if (j.contains("fcirc")) s.fcirc = piecewise_from_json(j.at("fcirc"));
    return s;
}

// ---------------------------------------------------------------------------
// Clusterings and solutions

inline json clustering_to_json(const Clustering& c) {
    return json{{"assignment", c.assignment}, {"num_clusters", c.num_clusters()}};
}

inline json chromatic_clustering_to_json(const ChromaticClustering& cc) {
    json j = clustering_to_json(cc.clustering);
    j["cluster_color"] = cc.cluster_color;
    return j;
}

inline json lp_solution_to_json(const LpSolution& sol) {
    json vars = json::array();
    for (int u = 0; u < sol.n; ++u)
        for (int v = u + 1; v < sol.n; ++v)
            vars.push_back({{"u", u}, {"v", v}, {"x", sol.x_of(u, v)}});
    return json{{"kind", "lp_solution"},
                {"n", sol.n},
                {"variables", vars},
                {"objective", sol.objective},
                {"status", to_string(sol.status)},
                {"max_residual", sol.max_residual}};
}

inline json ccc_lp_solution_to_json(const CCCLpSolution& sol) {
    json vvars = json::array(), evars = json::array();
    for (int u = 0; u < sol.n; ++u)
        for (int c = 1; c <= sol.num_colors; ++c)
            vvars.push_back({{"u", u}, {"c", c}, {"x", sol.xv_of(u, c)}});
    for (int u = 0; u < sol.n; ++u)
        for (int v = u + 1; v < sol.n; ++v)
            for (int c = 1; c <= sol.num_colors; ++c)
                evars.push_back({{"u", u}, {"v", v}, {"c", c}, {"x", sol.xe_of(u, v, c)}});
    return json{{"kind", "ccc_lp_solution"},
                {"n", sol.n},
                {"num_colors", sol.num_colors},
                {"vertex_variables", vvars},
                {"edge_variables", evars},
                {"objective", sol.objective},
                {"status", to_string(sol.status)},
                {"max_residual", sol.max_residual}};
}

inline json stats_to_json(const MonteCarloStats& s) {
    return json{{"trials", s.trials}, {"mean", s.mean},       {"stddev", s.stddev},
                {"ci95_lo", s.ci95_lo}, {"ci95_hi", s.ci95_hi}, {"min_cost", s.min_cost}};
}

inline json exact_result_to_json(const ExactResult& r) {
    json j{{"cost", r.cost},
           {"partitions_examined", r.partitions_examined},
           {"clustering", clustering_to_json(r.best)}};
    if (!r.best_colors.empty()) j["cluster_color"] = r.best_colors;
    return j;
}

// ---------------------------------------------------------------------------
// Certification

inline const char* side_name(Side s) {
    switch (s) {
        case Side::Left: return "left";
        case Side::At: return "at";
        case Side::Right: return "right";
    }
    return "?";
}

inline json triple_config_to_json(const TripleConfig& c) {
    return json{{"x", c.x},
                {"y", c.y},
                {"z", c.z},
                {"signs", {std::string(1, sign_char(c.signs[0])), std::string(1, sign_char(c.signs[1])),
                           std::string(1, sign_char(c.signs[2]))}},
                {"weights", c.weights},
                {"sides", {side_name(c.sides[0]), side_name(c.sides[1]), side_name(c.sides[2])}}};
}

inline json certificate_report_to_json(const CertificateReport& r) {
    json viols = json::array();
    for (const auto& v : r.violations)
        viols.push_back({{"config", triple_config_to_json(v.config)}, {"gap", v.gap}});
    return json{{"kind", "certificate_report"},
                {"tool_version", tool_version},
                {"mode", r.mode == CertMode::Wcc ? "wcc" : "ccc"},
                {"alpha", r.alpha},
                {"grid_step", r.grid_step},
                {"min_gap", r.min_gap},
                {"argmin", triple_config_to_json(r.argmin)},
                {"argmin_alg_cost", r.argmin_alg},
                {"configs_checked", r.configs_checked},
                {"tolerance", r.tolerance},
                {"certified", r.certified()},
                {"note", "grid certificate: sound numerical check at extremal "
                         "configurations, not a symbolic proof"},
                {"violations", viols}};
}

inline json lower_bound_report_to_json(const LowerBoundReport& r) {
    return json{{"kind", "lower_bound_report"},
                {"tool_version", tool_version},
                {"alpha", r.alpha},
                {"feasible", r.feasible},
                {"witness", r.witness}};
}

inline json extremal_row_to_json(const ExtremalRow& row) {
    json j{{"region", row.region},
           {"x", rat_to_json(row.x)},
           {"y", rat_to_json(row.y)},
           {"z", rat_to_json(row.z)},
           {"sides", {side_name(row.sides[0]), side_name(row.sides[1]), side_name(row.sides[2])}},
           {"sign", std::string(1, sign_char(row.sign))},
           {"gap", {rat_to_json(row.gap[0]), rat_to_json(row.gap[1]), rat_to_json(row.gap[2])}}};
    if (row.reconstructed) j["reconstructed"] = true;
    return j;
}

inline json extremal_table_to_json(const ExtremalTable& t) {
    json rows = json::array(), brows = json::array();
    for (const auto& r : t.rows) rows.push_back(extremal_row_to_json(r));
    for (const auto& r : t.boundary_rows) brows.push_back(extremal_row_to_json(r));
    return json{{"kind", "extremal_table"},
                {"appendix", t.appendix == Appendix::A ? "A" : "B"},
                {"alpha", rat_to_json(t.alpha)},
                {"rows", rows},
                {"boundary_rows", brows}};
}

inline std::string region_points_to_csv(const std::vector<RegionPoint>& pts) {
    std::ostringstream out;
    out << "x,p\n";
    for (const auto& p : pts) out << p.x << "," << p.p << "\n";
    return out.str();
}

} // namespace cclab
