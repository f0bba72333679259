#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cclab {

enum class EdgeSign { Positive, Negative, Neutral };

inline char sign_char(EdgeSign s) {
    switch (s) {
        case EdgeSign::Positive: return '+';
        case EdgeSign::Negative: return '-';
        case EdgeSign::Neutral: return 'o';
    }
    return '?';
}

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/// Index of an unordered pair (u,v), u != v, into a dense triangular array.
inline int pair_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Signed CC instance. Pairs not present in the input are Neutral.
struct CCInstance {
    int n = 0;
    std::vector<EdgeSign> sign; // size pair_count(n)

    explicit CCInstance(int n_ = 0) : n(n_), sign(pair_count(n_), EdgeSign::Neutral) {}

    EdgeSign sign_of(int u, int v) const { return sign[pair_index(n, u, v)]; }
    void set_sign(int u, int v, EdgeSign s) { sign[pair_index(n, u, v)] = s; }
};

/// Pseudometric-weighted CC instance; complete, every pair carries a
/// {+,-} sign and a nonnegative weight satisfying the triangle inequality.
struct WCCInstance {
    int n = 0;
    std::vector<EdgeSign> sign;
    std::vector<double> weight;

    explicit WCCInstance(int n_ = 0)
        : n(n_), sign(pair_count(n_), EdgeSign::Positive), weight(pair_count(n_), 0.0) {}

    EdgeSign sign_of(int u, int v) const { return sign[pair_index(n, u, v)]; }
    double weight_of(int u, int v) const { return weight[pair_index(n, u, v)]; }
};

/// Edge-colored CCC instance. Colors are 1..L; 0 encodes the special
/// separating color gamma; pairs outside E carry no color.
struct CCCInstance {
    static constexpr int gamma = 0;
    static constexpr int no_edge = -1;

    int n = 0;
    int num_colors = 0;
    std::vector<int> color; // per pair: 1..L, gamma, or no_edge

    CCCInstance(int n_ = 0, int L = 0)
        : n(n_), num_colors(L), color(pair_count(n_), no_edge) {}

    int color_of(int u, int v) const { return color[pair_index(n, u, v)]; }
    void set_color(int u, int v, int c) { color[pair_index(n, u, v)] = c; }
    bool has_edge(int u, int v) const { return color_of(u, v) != no_edge; }
    int edge_count() const {
        int m = 0;
        for (int c : color) m += (c != no_edge);
        return m;
    }
};

using Instance = std::variant<CCInstance, WCCInstance, CCCInstance>;

inline int instance_size(const Instance& inst) {
    return std::visit([](const auto& i) { return i.n; }, inst);
}

struct Clustering {
    std::vector<int> assignment; // vertex -> dense cluster id

    int num_clusters() const {
        int k = 0;
        for (int c : assignment) k = std::max(k, c + 1);
        return k;
    }
    bool together(int u, int v) const { return assignment[u] == assignment[v]; }

    /// Renumber cluster ids to be dense in order of first appearance.
    void canonicalize() {
        std::map<int, int> remap;
        for (int& c : assignment) {
            auto [it, fresh] = remap.try_emplace(c, static_cast<int>(remap.size()));
            c = it->second;
        }
    }
};

struct ChromaticClustering {
    Clustering clustering;
    std::vector<int> cluster_color; // cluster id -> color in 1..L
};

// ---------------------------------------------------------------------------
// Validation

/// Returns the first strictly violating triple (u,v,w) with
/// w(u,v) > w(v,w) + w(w,u), or nullopt if the weights are a pseudometric.
inline std::optional<std::array<int, 3>> pseudometric_violation(const WCCInstance& inst,
                                                                double tol = 1e-9) {
    for (int u = 0; u < inst.n; ++u)
        for (int v = u + 1; v < inst.n; ++v)
            for (int w = 0; w < inst.n; ++w) {
                if (w == u || w == v) continue;
                if (inst.weight_of(u, v) > inst.weight_of(v, w) + inst.weight_of(w, u) + tol)
                    return std::array<int, 3>{u, v, w};
            }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Costs

inline double cc_cost(const CCInstance& inst, const Clustering& c) {
    if (static_cast<int>(c.assignment.size()) != inst.n)
        throw std::invalid_argument("clustering/instance size mismatch");
    double cost = 0;
    for (int u = 0; u < inst.n; ++u)
        for (int v = u + 1; v < inst.n; ++v) {
            EdgeSign s = inst.sign_of(u, v);
            if (s == EdgeSign::Positive && !c.together(u, v)) cost += 1;
            if (s == EdgeSign::Negative && c.together(u, v)) cost += 1;
        }
    return cost;
}

inline double cc_cost(const WCCInstance& inst, const Clustering& c) {
    if (static_cast<int>(c.assignment.size()) != inst.n)
        throw std::invalid_argument("clustering/instance size mismatch");
    double cost = 0;
    for (int u = 0; u < inst.n; ++u)
        for (int v = u + 1; v < inst.n; ++v) {
            EdgeSign s = inst.sign_of(u, v);
            if (s == EdgeSign::Positive && !c.together(u, v)) cost += inst.weight_of(u, v);
            if (s == EdgeSign::Negative && c.together(u, v)) cost += inst.weight_of(u, v);
        }
    return cost;
}

/// A chromatic edge costs 0 iff its endpoints share a cluster of the
/// matching color; a gamma edge costs 1 iff its endpoints share a cluster.
inline long long ccc_cost(const CCCInstance& inst, const ChromaticClustering& cc) {
    const Clustering& c = cc.clustering;
    if (static_cast<int>(c.assignment.size()) != inst.n)
        throw std::invalid_argument("clustering/instance size mismatch");
    if (static_cast<int>(cc.cluster_color.size()) < c.num_clusters())
        throw std::invalid_argument("cluster color assignment misses a cluster");
    long long cost = 0;
    for (int u = 0; u < inst.n; ++u)
        for (int v = u + 1; v < inst.n; ++v) {
            int col = inst.color_of(u, v);
            if (col == CCCInstance::no_edge) continue;
            bool together = c.together(u, v);
            if (col == CCCInstance::gamma) {
                cost += together ? 1 : 0;
            } else {
                bool agree = together && cc.cluster_color[c.assignment[u]] == col;
                cost += agree ? 0 : 1;
            }
        }
    return cost;
}

// ---------------------------------------------------------------------------
// Text format
//
// header: `cc n m` | `wcc n` | `ccc n L m`
// edges:  `u v sign`  |  `u v sign weight`  |  `u v color-or-gamma`

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

inline int parse_vertex(const std::string& tok, int n, int line) {
    int v;
    try {
        v = std::stoi(tok);
    } catch (...) {
        throw ParseError(line, "expected vertex index, got '" + tok + "'");
    }
    if (v < 0 || v >= n) throw ParseError(line, "vertex " + tok + " out of range [0," + std::to_string(n) + ")");
    return v;
}

} // namespace detail

inline Instance parse_instance(std::istream& in) {
    std::string line;
    int lineno = 0;

    auto next_tokens = [&](std::vector<std::string>& toks) -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            toks = detail::tokenize(line);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_tokens(toks)) throw ParseError(lineno, "empty input");

    const std::string& kind = toks[0];
    if (kind == "cc") {
        if (toks.size() != 3) throw ParseError(lineno, "expected 'cc n m'");
        int n = std::stoi(toks[1]), m = std::stoi(toks[2]);
        if (n < 1) throw ParseError(lineno, "n must be >= 1");
        CCInstance inst(n);
        std::vector<bool> seen(pair_count(n), false);
        for (int e = 0; e < m; ++e) {
            if (!next_tokens(toks)) throw ParseError(lineno, "expected " + std::to_string(m) + " edge lines");
            if (toks.size() != 3) throw ParseError(lineno, "expected 'u v sign'");
            int u = detail::parse_vertex(toks[0], n, lineno);
            int v = detail::parse_vertex(toks[1], n, lineno);
            if (u == v) throw ParseError(lineno, "self-pair");
            if (seen[pair_index(n, u, v)]) throw ParseError(lineno, "duplicate pair");
            seen[pair_index(n, u, v)] = true;
            if (toks[2] == "+") inst.set_sign(u, v, EdgeSign::Positive);
            else if (toks[2] == "-") inst.set_sign(u, v, EdgeSign::Negative);
            else throw ParseError(lineno, "sign must be '+' or '-'");
        }
        return inst;
    }
    if (kind == "wcc") {
        if (toks.size() != 2) throw ParseError(lineno, "expected 'wcc n'");
        int n = std::stoi(toks[1]);
        if (n < 1) throw ParseError(lineno, "n must be >= 1");
        WCCInstance inst(n);
        std::vector<bool> seen(pair_count(n), false);
        for (int e = 0; e < pair_count(n); ++e) {
            if (!next_tokens(toks)) throw ParseError(lineno, "wcc requires all n(n-1)/2 edge lines");
            if (toks.size() != 4) throw ParseError(lineno, "expected 'u v sign weight'");
            int u = detail::parse_vertex(toks[0], n, lineno);
            int v = detail::parse_vertex(toks[1], n, lineno);
            if (u == v) throw ParseError(lineno, "self-pair");
            int pi = pair_index(n, u, v);
            if (seen[pi]) throw ParseError(lineno, "duplicate pair");
            seen[pi] = true;
            if (toks[2] == "+") inst.sign[pi] = EdgeSign::Positive;
            else if (toks[2] == "-") inst.sign[pi] = EdgeSign::Negative;
            else throw ParseError(lineno, "sign must be '+' or '-'");
            double w;
            try {
                w = std::stod(toks[3]);
            } catch (...) {
                throw ParseError(lineno, "bad weight '" + toks[3] + "'");
            }
            if (w < 0) throw ParseError(lineno, "negative weight");
            inst.weight[pi] = w;
        }
        if (auto bad = pseudometric_violation(inst)) {
            throw ParseError(lineno, "pseudometric violation on triple (" +
                                          std::to_string((*bad)[0]) + "," + std::to_string((*bad)[1]) +
                                          "," + std::to_string((*bad)[2]) + ")");
        }
        return inst;
    }
    if (kind == "ccc") {
        if (toks.size() != 4) throw ParseError(lineno, "expected 'ccc n L m'");
        int n = std::stoi(toks[1]), L = std::stoi(toks[2]), m = std::stoi(toks[3]);
        if (n < 1 || L < 1) throw ParseError(lineno, "need n >= 1 and L >= 1");
        CCCInstance inst(n, L);
        for (int e = 0; e < m; ++e) {
            if (!next_tokens(toks)) throw ParseError(lineno, "expected " + std::to_string(m) + " edge lines");
            if (toks.size() != 3) throw ParseError(lineno, "expected 'u v color'");
            int u = detail::parse_vertex(toks[0], n, lineno);
            int v = detail::parse_vertex(toks[1], n, lineno);
            if (u == v) throw ParseError(lineno, "self-pair");
            if (inst.has_edge(u, v)) throw ParseError(lineno, "duplicate pair");
            if (toks[2] == "gamma") {
                inst.set_color(u, v, CCCInstance::gamma);
            } else {
                int c = std::stoi(toks[2]);
                if (c < 1 || c > L) throw ParseError(lineno, "color out of range 1.." + std::to_string(L));
                inst.set_color(u, v, c);
            }
        }
        return inst;
    }
    throw ParseError(lineno, "unknown header '" + kind + "'");
}

inline Instance parse_instance(const std::string& text) {
    std::istringstream ss(text);
    return parse_instance(ss);
}

inline void serialize_instance(const Instance& inst, std::ostream& out) {
    if (auto* cc = std::get_if<CCInstance>(&inst)) {
        int m = 0;
        for (EdgeSign s : cc->sign) m += (s != EdgeSign::Neutral);
        out << "cc " << cc->n << " " << m << "\n";
        for (int u = 0; u < cc->n; ++u)
            for (int v = u + 1; v < cc->n; ++v) {
                EdgeSign s = cc->sign_of(u, v);
                if (s != EdgeSign::Neutral)
                    out << u << " " << v << " " << sign_char(s) << "\n";
            }
    } else if (auto* wcc = std::get_if<WCCInstance>(&inst)) {
        out << "wcc " << wcc->n << "\n";
        for (int u = 0; u < wcc->n; ++u)
            for (int v = u + 1; v < wcc->n; ++v)
                out << u << " " << v << " " << sign_char(wcc->sign_of(u, v)) << " "
                    << wcc->weight_of(u, v) << "\n";
    } else {
        const auto& ccc = std::get<CCCInstance>(inst);
        out << "ccc " << ccc.n << " " << ccc.num_colors << " " << ccc.edge_count() << "\n";
        for (int u = 0; u < ccc.n; ++u)
            for (int v = u + 1; v < ccc.n; ++v) {
                int c = ccc.color_of(u, v);
                if (c == CCCInstance::no_edge) continue;
                if (c == CCCInstance::gamma) out << u << " " << v << " gamma\n";
                else out << u << " " << v << " " << c << "\n";
            }
    }
}

inline std::string serialize_instance(const Instance& inst) {
    std::ostringstream ss;
    serialize_instance(inst, ss);
    return ss.str();
}

// ---------------------------------------------------------------------------
// Synthetic generation

struct PlantedInstance {
    Instance instance;
    Clustering planted;
    std::vector<int> planted_colors; // per cluster, ccc only
    double planted_cost = 0;
};

namespace detail {

/// Small deterministic generator for instance synthesis (not the pivot
/// RNG; see pivot.hpp for the counter-based one).
struct GenRng {
    uint64_t state;
    explicit GenRng(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    uint64_t next_u64() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    int next_below(int k) { return static_cast<int>(next_u64() % static_cast<uint64_t>(k)); }
};

/// All-pairs shortest-path (min-plus) closure; makes any nonnegative
/// symmetric weight map a pseudometric.
inline void metric_closure(std::vector<double>& w, int n) {
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int j = i + 1; j < n; ++j) {
                if (j == k) continue;
                double via = w[pair_index(n, i, k)] + w[pair_index(n, k, j)];
                double& d = w[pair_index(n, i, j)];
                if (via < d) d = via;
            }
        }
}

} // namespace detail

enum class Flavor { CC, WCC, CCC };

inline PlantedInstance generate_planted(int n, int k, double noise, uint64_t seed,
                                        Flavor flavor, int L = 1) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("need 1 <= k <= n");
    if (noise < 0 || noise > 1) throw std::invalid_argument("noise must be in [0,1]");
    if (flavor == Flavor::CCC && L < 1) throw std::invalid_argument("L must be >= 1");

    detail::GenRng rng(seed);
    PlantedInstance out;
    out.planted.assignment.resize(n);
    for (int v = 0; v < n; ++v) out.planted.assignment[v] = v % k;

    if (flavor == Flavor::CC) {
        CCInstance inst(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                bool intra = out.planted.together(u, v);
                if (rng.next_u01() < noise) intra = !intra;
                inst.set_sign(u, v, intra ? EdgeSign::Positive : EdgeSign::Negative);
            }
        out.instance = inst;
        out.planted_cost = cc_cost(inst, out.planted);
    } else if (flavor == Flavor::WCC) {
        WCCInstance inst(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int pi = pair_index(n, u, v);
                bool intra = out.planted.together(u, v);
                if (rng.next_u01() < noise) intra = !intra;
                inst.sign[pi] = intra ? EdgeSign::Positive : EdgeSign::Negative;
                // Integer weights stay exact through the min-plus closure.
                inst.weight[pi] = 1 + rng.next_below(3);
            }
        detail::metric_closure(inst.weight, n);
        out.instance = inst;
        out.planted_cost = cc_cost(inst, out.planted);
    } else {
        CCCInstance inst(n, L);
        out.planted_colors.resize(k);
        for (int c = 0; c < k; ++c) out.planted_colors[c] = c % L + 1;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int col = out.planted.together(u, v)
                              ? out.planted_colors[out.planted.assignment[u]]
                              : CCCInstance::gamma;
                if (rng.next_u01() < noise) col = rng.next_below(L + 1); // 0 = gamma
                inst.set_color(u, v, col);
            }
        out.instance = inst;
        ChromaticClustering cc{out.planted, out.planted_colors};
        out.planted_cost = static_cast<double>(ccc_cost(inst, cc));
    }
    return out;
}

} // namespace cclab
