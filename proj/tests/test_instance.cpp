#include <catch2/catch_amalgamated.hpp>

#include "cclab/instance.hpp"

using namespace cclab;

TEST_CASE("parse cc with neutral default") {
    Instance inst = parse_instance("cc 3 2\n0 1 +\n1 2 -\n");
    auto& cc = std::get<CCInstance>(inst);
    CHECK(cc.n == 3);
    CHECK(cc.sign_of(0, 1) == EdgeSign::Positive);
    CHECK(cc.sign_of(1, 2) == EdgeSign::Negative);
    CHECK(cc.sign_of(0, 2) == EdgeSign::Neutral);
}

TEST_CASE("parse wcc rejects pseudometric violation") {
    try {
        parse_instance("wcc 3\n0 1 + 1\n1 2 + 1\n0 2 - 3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("(0,2,1)") != std::string::npos);
    }
}

TEST_CASE("parse wcc accepts valid metric") {
    Instance inst = parse_instance("wcc 3\n0 1 + 1\n1 2 + 1\n0 2 - 2\n");
    auto& w = std::get<WCCInstance>(inst);
    CHECK(w.weight_of(0, 2) == 2.0);
    CHECK(w.sign_of(0, 2) == EdgeSign::Negative);
}

TEST_CASE("parse ccc with gamma") {
    Instance inst = parse_instance("ccc 3 2 3\n0 1 1\n1 2 1\n0 2 gamma\n");
    auto& c = std::get<CCCInstance>(inst);
    CHECK(c.num_colors == 2);
    CHECK(c.color_of(0, 1) == 1);
    CHECK(c.color_of(0, 2) == CCCInstance::gamma);
    CHECK(c.edge_count() == 3);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_instance(""), ParseError);
    CHECK_THROWS_AS(parse_instance("cc 3 1\n0 0 +\n"), ParseError);      // self-pair
    CHECK_THROWS_AS(parse_instance("cc 3 2\n0 1 +\n1 0 -\n"), ParseError); // duplicate
    CHECK_THROWS_AS(parse_instance("cc 3 1\n0 9 +\n"), ParseError);      // range
    CHECK_THROWS_AS(parse_instance("ccc 3 2 1\n0 1 5\n"), ParseError);   // bad color
    CHECK_THROWS_AS(parse_instance("zzz 3\n"), ParseError);
    try {
        parse_instance("cc 3 1\n0 0 +\n");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("comments and blank lines ignored") {
    Instance inst = parse_instance("# header comment\ncc 2 1\n\n0 1 + # trailing\n");
    CHECK(std::get<CCInstance>(inst).sign_of(0, 1) == EdgeSign::Positive);
}

TEST_CASE("parse of serialize is identity") {
    auto roundtrip = [](const Instance& inst) {
        std::string a = serialize_instance(inst);
        std::string b = serialize_instance(parse_instance(a));
        CHECK(a == b);
    };
    roundtrip(generate_planted(7, 3, 0.3, 11, Flavor::CC).instance);
    roundtrip(generate_planted(6, 2, 0.2, 12, Flavor::WCC).instance);
    roundtrip(generate_planted(7, 3, 0.25, 13, Flavor::CCC, 3).instance);
}

TEST_CASE("cc_cost on triangles") {
    Instance inst = parse_instance("cc 3 3\n0 1 +\n1 2 +\n0 2 -\n");
    auto& cc = std::get<CCInstance>(inst);
    Clustering one{{0, 0, 0}}, singletons{{0, 1, 2}};
    CHECK(cc_cost(cc, one) == 1.0);
    CHECK(cc_cost(cc, singletons) == 2.0);
}

TEST_CASE("weighted cost") {
    Instance inst = parse_instance("wcc 3\n0 1 + 1\n1 2 + 1\n0 2 - 2\n");
    auto& w = std::get<WCCInstance>(inst);
    Clustering one{{0, 0, 0}};
    CHECK(cc_cost(w, one) == 2.0);
}

TEST_CASE("ccc_cost") {
    // edges: (0,1) red, (1,2) red, (0,2) blue
    Instance inst = parse_instance("ccc 3 2 3\n0 1 1\n1 2 1\n0 2 2\n");
    auto& c = std::get<CCCInstance>(inst);
    ChromaticClustering one{{{0, 0, 0}}, {1}};
    CHECK(ccc_cost(c, one) == 1);
    ChromaticClustering singles{{{0, 1, 2}}, {1, 1, 1}};
    CHECK(ccc_cost(c, singles) == 3);
    // gamma edge costs only when co-clustered
    Instance g = parse_instance("ccc 2 1 1\n0 1 gamma\n");
    auto& gc = std::get<CCCInstance>(g);
    CHECK(ccc_cost(gc, {{{0, 0}}, {1}}) == 1);
    CHECK(ccc_cost(gc, {{{0, 1}}, {1, 1}}) == 0);
}

TEST_CASE("cost errors") {
    Instance inst = parse_instance("cc 2 1\n0 1 +\n");
    auto& cc = std::get<CCInstance>(inst);
    Clustering wrong{{0}};
    CHECK_THROWS_AS(cc_cost(cc, wrong), std::invalid_argument);
}

TEST_CASE("noiseless planted instances have planted cost zero") {
    CHECK(generate_planted(6, 2, 0.0, 5, Flavor::CC).planted_cost == 0.0);
    CHECK(generate_planted(6, 2, 0.0, 5, Flavor::WCC).planted_cost == 0.0);
    CHECK(generate_planted(6, 2, 0.0, 5, Flavor::CCC, 3).planted_cost == 0.0);
}

TEST_CASE("noiseless cc planted structure") {
    auto p = generate_planted(6, 2, 0.0, 5, Flavor::CC);
    auto& cc = std::get<CCInstance>(p.instance);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            CHECK(cc.sign_of(u, v) == (p.planted.together(u, v) ? EdgeSign::Positive
                                                                : EdgeSign::Negative));
}

TEST_CASE("generator determinism") {
    auto a = generate_planted(8, 3, 0.2, 7, Flavor::WCC);
    auto b = generate_planted(8, 3, 0.2, 7, Flavor::WCC);
    CHECK(serialize_instance(a.instance) == serialize_instance(b.instance));
}

TEST_CASE("generated wcc weights are pseudometric") {
    for (uint64_t seed : {1, 2, 3, 4, 5}) {
        auto p = generate_planted(8, 3, 0.3, seed, Flavor::WCC);
        CHECK_FALSE(pseudometric_violation(std::get<WCCInstance>(p.instance)).has_value());
    }
}

TEST_CASE("generator rejects bad parameters") {
    CHECK_THROWS_AS(generate_planted(3, 5, 0.0, 1, Flavor::CC), std::invalid_argument);
    CHECK_THROWS_AS(generate_planted(3, 2, 1.5, 1, Flavor::CC), std::invalid_argument);
}

TEST_CASE("clustering canonicalize") {
    Clustering c{{5, 3, 5, 7}};
    c.canonicalize();
    CHECK(c.assignment == std::vector<int>{0, 1, 0, 2});
    CHECK(c.num_clusters() == 3);
}

TEST_CASE("cost bounded by total weight") {
    auto p = generate_planted(7, 3, 0.4, 21, Flavor::WCC);
    auto& w = std::get<WCCInstance>(p.instance);
    double total = 0;
    for (double wt : w.weight) total += wt;
    detail::GenRng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Clustering c;
        for (int v = 0; v < w.n; ++v) c.assignment.push_back(rng.next_below(3));
        double cost = cc_cost(w, c);
        CHECK(cost >= 0);
        CHECK(cost <= total + 1e-12);
    }
}
