#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "hhsforge/cubes.hpp"

using namespace hhsforge;

namespace {

int vid(const Graph& g, const std::string& label) {
    auto it = std::find(g.labels.begin(), g.labels.end(), label);
    REQUIRE(it != g.labels.end());
    return static_cast<int>(it - g.labels.begin());
}

int hid(const CubeComplex& c, const std::string& label) {
    for (int h = 0; h < c.hyperplanes(); ++h)
        if (c.hyps[h].label == label) return h;
    FAIL("no hyperplane " << label);
    return -1;
}

Bits hyps_of(const CubeComplex& c, const std::vector<std::string>& labels) {
    Bits b = c.hset();
    for (const auto& l : labels) b.set(hid(c, l));
    return b;
}

// Nearest vertices of Y to x by brute force.
std::vector<int> nearest(const CubeComplex& c, int x, const Bits& Y) {
    int bd = kInf;
    std::vector<int> out;
    Y.for_each([&](int y) {
        int d = c.mg.D(x, y);
        if (d < bd) bd = d, out.clear();
        if (d == bd) out.push_back(y);
    });
    return out;
}

}  // namespace

TEST_CASE("median validation") {
    CHECK_NOTHROW(validate_median_graph(square_graph()));
    CHECK_NOTHROW(validate_median_graph(grid_graph(3, 3)));
    CHECK_NOTHROW(validate_median_graph(cube_graph()));
    try {
        validate_median_graph(triangle_graph());
        FAIL("triangle accepted");
    } catch (const HhsError& e) {
        auto w = e.witness();
        std::sort(w.begin(), w.end());
        CHECK(w == std::vector<std::string>{"0", "1", "2"});
    }
    // K_{2,3} is bipartite but two vertices have two medians.
    auto k23 = load_graph("vertex a\nvertex b\nvertex x\nvertex y\nvertex z\n"
                          "edge a x\nedge a y\nedge a z\nedge b x\nedge b y\nedge b z\n");
    CHECK_THROWS_AS(validate_median_graph(k23), HhsError);
}

TEST_CASE("graph file round trip") {
    auto g = grid_graph(3, 2);
    auto h = load_graph(dump_graph(g));
    CHECK(dump_graph(h) == dump_graph(g));
    CHECK_THROWS_AS(load_graph("vertex a\nedge a b\n"), HhsError);
}

TEST_CASE("hyperplane counts") {
    auto e = make_cube_complex(validate_median_graph(edge_graph()));
    REQUIRE(e.hyperplanes() == 1);
    CHECK(e.hyps[0].side_minus.count() == 1);
    CHECK(e.hyps[0].side_plus.count() == 1);
    auto sq = make_cube_complex(validate_median_graph(square_graph()));
    CHECK(sq.hyperplanes() == 2);
    auto q3 = make_cube_complex(validate_median_graph(cube_graph()));
    REQUIRE(q3.hyperplanes() == 3);
    for (const auto& h : q3.hyps) {
        CHECK(h.minus.count() == 4);
        CHECK(h.plus.count() == 4);
    }
    CHECK(grid_complex(7, 7).hyperplanes() == 12);
}

TEST_CASE("halfspaces are convex and gates idempotent") {
    for (auto c : {grid_complex(4, 3), make_cube_complex(validate_median_graph(cube_graph())), build_counterexample(2)}) {
        for (const auto& h : c.hyps) {
            CHECK(c.convex(h.plus));
            CHECK(c.convex(h.minus));
            CHECK(c.convex(h.side_plus));
            CHECK(c.convex(h.side_minus));
            CHECK(c.crossing(h.side_plus) == c.crossing(h.side_minus));
            for (int x = 0; x < c.vertices(); ++x) {
                int g = c.gate(x, h.plus);
                CHECK(c.gate(g, h.plus) == g);
            }
        }
    }
}

TEST_CASE("gates on the grid") {
    auto c = grid_complex(7, 7);
    const auto& g = c.mg.g;
    Bits col = c.vset();
    for (int y = 0; y <= 5; ++y) col.set(vid(g, "0_" + std::to_string(y)));
    REQUIRE(c.convex(col));
    CHECK(g.labels[c.gate(vid(g, "3_4"), col)] == "0_4");
    auto sq = grid_complex(2, 2);
    Bits edge = sq.vset();
    edge.set(vid(sq.mg.g, "0_1"));
    edge.set(vid(sq.mg.g, "1_1"));
    CHECK(sq.mg.g.labels[sq.gate(vid(sq.mg.g, "1_0"), edge)] == "1_1");
    Bits bad = c.vset();
    bad.set(vid(g, "0_0"));
    bad.set(vid(g, "2_0"));
    CHECK_FALSE(c.convex(bad));
}

TEST_CASE("gate uniqueness on random convex subsets of the grid") {
    auto c = grid_complex(7, 7);
    unsigned seed = 12345;
    auto next = [&] {
        seed = seed * 1103515245u + 12345u;
        return (seed >> 16) % 7;
    };
    for (int trial = 0; trial < 10; ++trial) {
        int x0 = next(), x1 = next(), y0 = next(), y1 = next();
        Bits seeds = c.vset();
        seeds.set(vid(c.mg.g, std::to_string(x0) + "_" + std::to_string(y0)));
        seeds.set(vid(c.mg.g, std::to_string(x1) + "_" + std::to_string(y1)));
        Bits Y = c.hull(seeds);
        REQUIRE(c.convex(Y));
        for (int x = 0; x < c.vertices(); ++x) {
            auto nn = nearest(c, x, Y);
            REQUIRE(nn.size() == 1);
            CHECK(c.gate(x, Y) == nn[0]);
            // Hyperplanes separating x from its gate separate x from all of Y.
            Bits s = c.sep(x, nn[0]);
            Y.for_each([&](int y) { CHECK(s.subset_of(c.sep(x, y))); });
        }
    }
}

TEST_CASE("parallel classes and orthogonal complements on the grid") {
    auto c = grid_complex(7, 7);
    const auto& g = c.mg.g;
    std::vector<Bits> cols;
    for (int x = 0; x < 7; ++x) {
        Bits col = c.vset();
        for (int y = 0; y < 7; ++y) col.set(vid(g, std::to_string(x) + "_" + std::to_string(y)));
        cols.push_back(col);
    }
    for (const auto& col : cols) CHECK(c.crossing(col) == c.crossing(cols[0]));
    auto copies = c.parallel_copies(c.crossing(cols[0]));
    CHECK(copies.size() == 7);
    CHECK(copies.front() == cols[0]);
    int f = vid(g, "3_2");
    Bits row = c.vset();
    for (int x = 0; x < 7; ++x) row.set(vid(g, std::to_string(x) + "_2"));
    CHECK(c.orthogonal_complement_at(cols[3], f) == row);
    Bits all = Bits::full(static_cast<std::size_t>(c.vertices()));
    Bits pt = c.vset();
    pt.set(f);
    CHECK(c.orthogonal_complement_at(all, f) == pt);
}

TEST_CASE("small hyperclosures") {
    auto e = make_cube_complex(validate_median_graph(edge_graph()));
    CHECK(hyperclosure(e).classes.size() == 1);
    auto sq = make_cube_complex(validate_median_graph(square_graph()));
    auto h = hyperclosure(sq);
    CHECK(h.classes.size() == 3);
    CHECK(h.rounds <= 2);
    auto q3 = make_cube_complex(validate_median_graph(cube_graph()));
    CHECK(hyperclosure(q3).classes.size() == 7);
    CHECK(hyperclosure(grid_complex(7, 7)).classes.size() == 3);
    CHECK_THROWS_AS(hyperclosure(build_counterexample(2), 1), HhsError);
}

TEST_CASE("hyperclosure matches the combinatorial closure") {
    for (auto c : {grid_complex(4, 4), make_cube_complex(validate_median_graph(cube_graph())), build_counterexample(2),
                   build_counterexample(3)}) {
        auto h = hyperclosure(c);
        std::set<Bits> geo, comb;
        for (const auto& pc : h.classes) geo.insert(pc.crossing);
        for (const auto& b : combinatorial_closure(c)) comb.insert(b);
        CHECK(geo == comb);
        // Gate composition on representatives.
        for (const auto& a : h.classes)
            for (const auto& b : h.classes)
                CHECK(c.crossing(c.gate_image(a.rep, b.rep)) == (a.crossing & b.crossing));
        // Parallel copies have equal size (isometric along gates).
        for (const auto& pc : h.classes)
            for (const auto& cp : c.parallel_copies(pc.crossing)) {
                CHECK(cp.count() == pc.rep.count());
                CHECK(c.gate_image(pc.rep, cp) == pc.rep);
            }
    }
}

TEST_CASE("hyperclosure is minimal on the square and the cube") {
    for (auto c : {make_cube_complex(validate_median_graph(square_graph())),
                   make_cube_complex(validate_median_graph(cube_graph()))}) {
        auto h = hyperclosure(c);
        // Each non-whole class is a combinatorial hyperplane or a gate image of two others.
        for (std::size_t i = 1; i < h.classes.size(); ++i) {
            bool generated = false;
            for (const auto& hp : c.hyps)
                if (hp.side_plus.count() > 1 && c.crossing(hp.side_plus) == h.classes[i].crossing) generated = true;
            for (std::size_t a = 0; a < h.classes.size(); ++a)
                for (std::size_t b = 0; b < h.classes.size(); ++b)
                    if (a != i && b != i && (h.classes[a].crossing & h.classes[b].crossing) == h.classes[i].crossing)
                        generated = true;
            CHECK(generated);
        }
    }
}

TEST_CASE("classes are complements of compact convex sets") {
    auto c = make_cube_complex(validate_median_graph(cube_graph()));
    auto h = hyperclosure(c);
    // Exhaustive search over convex sets (hulls of vertex pairs) and base points.
    for (const auto& pc : h.classes) {
        bool found = false;
        for (int a = 0; a < c.vertices() && !found; ++a)
            for (int b = 0; b < c.vertices() && !found; ++b) {
                Bits s = c.vset();
                s.set(a);
                s.set(b);
                Bits C = c.hull(s);
                if (c.crossing(c.orthogonal_complement_at(C, a)) == pc.crossing) found = true;
            }
        CHECK_MESSAGE(found, pc.name);
    }
}

TEST_CASE("square and grid models") {
    auto m = square_model();
    REQUIRE(m.domains() == 3);
    int v = m.index.id("V"), hh = m.index.id("H");
    CHECK(m.index.is_minimal(v));
    CHECK(m.index.is_minimal(hh));
    CHECK(m.index.orthogonal(v, hh));
    auto g = grid_model(7, 7);
    REQUIRE(g.domains() == 3);
    int gv = g.index.id("V");
    CHECK(g.coord[gv].size() == 7);
    CHECK(g.coord[gv].edge_count() == 6);
    CHECK(wedge(g.index, gv, g.index.id("H"), false) == kEmpty);
}

TEST_CASE("cube model index set is the boolean B3 set") {
    auto m = cube_model();
    auto b3 = load_index_set_file(std::string(HHSFORGE_FIXTURES) + "/b3.idx");
    REQUIRE(m.index.size() == 7);
    for (int u = 0; u < 7; ++u)
        for (int v = 0; v < 7; ++v)
            CHECK(m.index.relation(u, v) == b3.relation(b3.id(m.index.name(u)), b3.id(m.index.name(v))));
}

TEST_CASE("complement involution on cube fixtures") {
    for (auto c : {make_cube_complex(validate_median_graph(square_graph())), grid_complex(7, 7),
                   build_counterexample(3)})
        CHECK(check_complement_involution(c, hyperclosure(c)).verdict);
}

TEST_CASE("counterexample complex") {
    for (int d = 1; d <= 4; ++d) {
        auto c = build_counterexample(d);
        for (int n = 1; n <= 2 * d + 1; ++n) hid(c, std::to_string(n));
        // Crossing pattern of the Greek hyperplanes.
        for (int n = -1; n <= 2 * d + 1; ++n) {
            int h = hid(c, std::to_string(n));
            CHECK(c.crosses[h].test(hid(c, "Sigma")) == (n >= 0));
            CHECK(c.crosses[h].test(hid(c, "Delta")) == (n == -1 || n >= 1));
            CHECK(c.crosses[h].test(hid(c, "Gamma1")) == (n >= 1 && n % 2 == 1));
            CHECK(c.crosses[h].test(hid(c, "Gamma2")) == (n >= 2 && n % 2 == 0));
            CHECK(c.crosses[h].test(hid(c, "K" + std::to_string(n))));
            for (int k = -1; k <= 2 * d + 1; ++k) CHECK_FALSE(c.crosses[h].test(hid(c, std::to_string(k))));
        }
        CHECK_FALSE(c.crosses[hid(c, "Sigma")].test(hid(c, "Delta")));
    }
}

TEST_CASE("counterexample size snapshot") {
    auto c = build_counterexample(1);
    // Frozen from the construction at depth 1.
    CHECK(c.vertices() == 35);
    CHECK(c.mg.g.edge_count() == 52);
}

TEST_CASE("counterexample index set") {
    auto m = counterexample_model(4);
    const auto& s = m.index;
    CHECK(s.relation(s.id("[Gamma1]"), s.id("[3]")) == Rel::Orthogonal);
    CHECK(s.relation(s.id("[Sigma]"), s.id("[0]")) == Rel::Orthogonal);
    CHECK(s.relation(s.id("[Sigma]"), s.id("[Delta]")) == Rel::Transverse);
    int F = s.id("[F]");
    CHECK_FALSE(split_info(s, F).split);
    CHECK(check_property(s, "orthogonal_set").verdict);
    auto ons = check_property(s, "orthogonals_for_non_split");
    CHECK_FALSE(ons.verdict);
    CHECK(replay_failure(s, ons));
    CHECK(check_property(s, "complement_involution").verdict);
    // The complement of the Gamma1 class is its carrier class, which strictly contains [F].
    int G = orth_complement(s, {s.id("[Gamma1]")}, s.top());
    CHECK(s.name(G) == "[H_Gamma1]");
    CHECK(s.proper(F, G));
    CHECK(s.name(wedge(s, G, s.id("[H_Sigma]"), false)) == "[F]");
}

TEST_CASE("counterexample tripod complement") {
    auto c = build_counterexample(4);
    auto h = hyperclosure(c);
    int F = -1;
    Bits odd = hyps_of(c, {"1", "3", "5", "7", "9"});
    F = h.find(odd);
    REQUIRE(F >= 0);
    Bits tripod = hyps_of(c, {"Sigma", "Delta", "Gamma1"});
    bool found = false;
    for (const auto& cp : c.parallel_copies(odd))
        cp.for_each([&](int f) {
            if (c.crossing(c.orthogonal_complement_at(cp, f)) == tripod) found = true;
        });
    CHECK(found);
    CHECK(h.find(tripod) >= 0);
}

TEST_CASE("geometric orthogonality matches the crossing oracle") {
    for (auto c : {grid_complex(4, 4), make_cube_complex(validate_median_graph(cube_graph())), build_counterexample(3)}) {
        auto h = hyperclosure(c);
        auto s = index_set_from_classes(c, h);
        for (std::size_t a = 0; a < h.classes.size(); ++a)
            for (std::size_t b = 0; b < h.classes.size(); ++b) {
                bool oracle = h.classes[b].crossing.subset_of(c.crossing_all(h.classes[a].crossing));
                CHECK(s.orthogonal(static_cast<int>(a), static_cast<int>(b)) == oracle);
            }
    }
}

TEST_CASE("hyperclosure dump format") {
    auto c = make_cube_complex(validate_median_graph(square_graph()));
    auto text = dump_hyperclosure(c, hyperclosure(c));
    CHECK(text.find("class 0: name=Z crossing={h0,h1}") == 0);
    CHECK(text.find("minimal=true boundary=false") != std::string::npos);
}

TEST_CASE("counterexample four-point constant stays bounded in depth") {
    std::vector<double> deltas;
    for (int d = 2; d <= 6; ++d) {
        auto c = build_counterexample(d);
        deltas.push_back(four_point_delta(c.mg.D));
    }
    for (double x : deltas) CHECK(x <= deltas.front() + 1);
    MESSAGE("delta by depth 2..6: " << deltas[0] << " " << deltas[1] << " " << deltas[2] << " " << deltas[3] << " "
                                    << deltas[4]);
}

TEST_CASE("counterexample minimal orthogonality graph matches the expected pattern") {
    for (int d = 3; d <= 6; ++d) {
        auto s = counterexample_model(d).index;
        auto r = check_counterexample_minimal_graph(s, d);
        CHECK(r.verdict);
        auto g = minimal_orthogonality_graph(s);
        CHECK(g.size() == 4 + (2 * d + 3));
    }
    auto grid = check_counterexample_minimal_graph(grid_model(3, 3).index, 3);
    CHECK_FALSE(grid.verdict);
    CHECK(grid.witness.front() == "[Sigma]");
}
