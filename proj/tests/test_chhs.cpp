#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "hhsforge/chhs.hpp"
#include "hhsforge/cubes.hpp"

using namespace hhsforge;

namespace {

int xid(const BlowupGraph& x, const std::string& label) {
    const auto& l = x.blown.labels;
    auto it = std::find(l.begin(), l.end(), label);
    REQUIRE(it != l.end());
    return static_cast<int>(it - l.begin());
}

Simplex simplex(const BlowupGraph& x, std::initializer_list<const char*> labels) {
    Simplex s = x.empty();
    for (const char* l : labels) s.set(static_cast<std::size_t>(xid(x, l)));
    return s;
}

std::vector<int> base(const HHSModel& m, const BlowupGraph& x, std::initializer_list<const char*> names) {
    std::vector<int> out;
    for (const char* n : names) out.push_back(x.base_of[m.index.id(n)]);
    return out;
}

std::vector<HHSModel> fixtures() {
    return {cube_model(), square_model(), grid_model(7, 7), counterexample_model(4)};
}

}  // namespace

TEST_CASE("blow-up of small models") {
    auto star = blow_up(path_model(4, false));
    CHECK(star.size() == 5);
    CHECK(star.blown.edge_count() == 4);
    CHECK(star.blown.adj[star.apex[0]].size() == 4);

    auto g = blow_up(grid_model(3, 4));
    CHECK(g.size() == 9);
    CHECK(g.blown.edge_count() == 3 + 4 + 4 * 5);
    CHECK(g.max_orth_family == 2);

    // One-vertex coordinate graphs turn each minimal class into an edge.
    auto m = counterexample_model(4);
    auto cx = blow_up(m);
    CHECK(cx.size() == 2 * cx.base.size());
    for (int b = 0; b < cx.base.size(); ++b) CHECK(cx.cone_base[b].size() == 1);
    CHECK(cx.base.has_edge(cx.base_of[m.index.id("[Gamma1]")], cx.base_of[m.index.id("[3]")]));
    CHECK_FALSE(cx.base.has_edge(cx.base_of[m.index.id("[3]")], cx.base_of[m.index.id("[5]")]));
}

TEST_CASE("simplex enumeration against a clique oracle") {
    for (const auto& m : {grid_model(3, 3), cube_model(), counterexample_model(3)}) {
        auto x = blow_up(m);
        auto all = all_simplices(x);
        // Oracle: every vertex subset that is a clique, by brute force when small enough.
        std::set<Simplex> seen(all.begin(), all.end());
        CHECK(seen.size() == all.size());
        for (const auto& s : all) CHECK(is_simplex(x, s));
        if (x.size() <= 16) {
            std::size_t cliques = 0;
            for (unsigned mask = 0; mask < (1U << x.size()); ++mask) {
                Simplex s = x.empty();
                for (int v = 0; v < x.size(); ++v)
                    if (mask >> v & 1U) s.set(static_cast<std::size_t>(v));
                if (is_simplex(x, s)) {
                    ++cliques;
                    CHECK(seen.count(s) == 1);
                }
            }
            CHECK(cliques == all.size());
        }
        auto max = maximal_simplices(x);
        for (const auto& s : max) CHECK(link(x, s).none());
        std::size_t maximal = std::count_if(all.begin(), all.end(), [&](const Simplex& s) { return link(x, s).none(); });
        CHECK(maximal == max.size());
    }
    auto g = blow_up(grid_model(7, 7));
    CHECK(all_simplices(g).size() == 256);
    CHECK(maximal_simplices(g).size() == 49);
    auto c = blow_up(counterexample_model(4));
    CHECK(all_simplices(c).size() == 307);
    CHECK(maximal_simplices(c).size() == 29);
}

TEST_CASE("links, stars and saturations") {
    auto g = grid_model(7, 7);
    auto x = blow_up(g);
    auto c = simplex_classes(x);
    auto top = simplex(x, {"v:V", "V:0_3", "v:H", "H:2_0"});
    CHECK(link(x, top).none());
    CHECK(link(x, x.empty()).count() == static_cast<std::size_t>(x.size()));

    auto edge = simplex(x, {"v:V", "V:0_3"});
    auto ops = link_ops(x, c, edge);
    CHECK(ops.shape == LinkShape::AllEdges);
    CHECK(ops.link.count() == 8);  // the whole H cone
    CHECK(ops.star == (ops.link | edge));
    // Every V edge has the same link, so the saturation is the whole V cone.
    CHECK(ops.saturation.count() == 8);

    auto m = counterexample_model(4);
    auto cx = blow_up(m);
    auto cc = simplex_classes(cx);
    auto apex = simplex(cx, {"v:[Gamma1]"});
    auto lo = link_ops(cx, cc, apex);
    // Its own base vertex plus the cones over [1], [3], [5], [7], [9].
    CHECK(lo.link.count() == 11);
    CHECK(lo.saturation == apex);
    CHECK(lo.shape == LinkShape::PointOrJoin);
    CHECK_THROWS_AS(link_ops(cx, cc, simplex(cx, {"v:[3]", "v:[5]"})), HhsError);
}

TEST_CASE("class relations on the grid") {
    auto x = blow_up(grid_model(7, 7));
    auto c = simplex_classes(x);
    int v = c.by_link.at(link(x, simplex(x, {"v:V"})));
    int h = c.by_link.at(link(x, simplex(x, {"v:H"})));
    CHECK(class_relation(x, c, v, h) == Rel::Transverse);
    // Edge classes have the opposite cone as link, and those are orthogonal.
    int ve = c.by_link.at(link(x, simplex(x, {"v:V", "V:0_0"})));
    int he = c.by_link.at(link(x, simplex(x, {"v:H", "H:0_0"})));
    CHECK(class_relation(x, c, ve, he) == Rel::Orthogonal);
    CHECK(class_relation(x, c, ve, v) == Rel::NestedIn);
    CHECK(class_relation(x, c, v, v) == Rel::Equal);
    // [∅] has the largest link; it is the unique maximal class.
    REQUIRE(c.empty_class >= 0);
    for (int k = 0; k < c.classes(); ++k) {
        if (k == c.empty_class) continue;
        CHECK(class_relation(x, c, k, c.empty_class) == Rel::NestedIn);
    }
    int pt = c.by_link.at(link(x, simplex(x, {"V:0_2"})));
    CHECK(class_relation(x, c, pt, v) == Rel::Transverse);
}

TEST_CASE("simplex identities hold on every fixture") {
    for (const auto& m : fixtures()) {
        auto x = blow_up(m);
        auto c = simplex_classes(x);
        CHECK(check_link_decomposition(x, c).verdict);
        CHECK(check_link_shapes(x, c).verdict);
        CHECK(check_containment_reversal(x, c).verdict);
        CHECK(check_weak_complement_links(m, x).verdict);
        auto b = check_b_sigma(m, x);
        CHECK(b.verdict);
        CHECK(*b.constant <= 10 * m.E);
    }
}

TEST_CASE("shape tags follow the cone pieces") {
    auto x = blow_up(grid_model(7, 7));
    CHECK(link_shape(x, x.empty()) == LinkShape::AllEdges);
    CHECK(link_shape(x, simplex(x, {"v:V", "V:0_1", "v:H"})) == LinkShape::AlmostMaximal);
    CHECK(link_shape(x, simplex(x, {"V:0_1"})) == LinkShape::PointOrJoin);
    CHECK(link_shape(x, simplex(x, {"v:V"})) == LinkShape::PointOrJoin);
    CHECK(shape_holds(x, simplex(x, {"V:0_1", "H:3_0"}), LinkShape::PointOrJoin));
    CHECK_FALSE(shape_holds(x, simplex(x, {"v:V"}), LinkShape::AllEdges));
}

TEST_CASE("weak complements and the dichotomy") {
    auto b3 = cube_model();
    CHECK(check_weak_complement_dichotomy(b3, blow_up(b3)).verdict);
    auto g = grid_model(7, 7);
    auto gx = blow_up(g);
    CHECK(check_weak_complement_dichotomy(g, gx).verdict);
    CHECK(g.index.name(weak_complement(g, gx, base(g, gx, {"V"}))) == "H");
    CHECK(weak_complement(g, gx, base(g, gx, {"V", "H"})) == kEmpty);
    CHECK(simplex_complement(g, gx, {}) == g.index.top());

    auto m = counterexample_model(4);
    auto x = blow_up(m);
    auto gamma = base(m, x, {"[Gamma1]"});
    CHECK(m.index.name(weak_complement(m, x, gamma)) == "[F]");
    CHECK(m.index.name(simplex_complement(m, x, gamma)) == "[H_Gamma1]");
    CHECK_FALSE(split_info(m.index, m.index.id("[F]")).split);
    // The counterexample lacks orthogonals for non-split domains and the dichotomy fails.
    auto d = check_weak_complement_dichotomy(m, x);
    CHECK_FALSE(d.verdict);
    CHECK_FALSE(d.witness.empty());
}

TEST_CASE("b tuples and the W graph on the grid") {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto w = build_w(m, x);
    REQUIRE(w.g.size() == 49);
    for (std::size_t i = 0; i < w.b.size(); ++i) {
        CHECK(check_consistency(m, w.b[i], m.kappa).verdict);
        CHECK(w.f_defect[i] <= m.E);
    }
    // Frozen regression values for the default constants.
    CHECK(w.consts.M == 4);
    CHECK(w.consts.C0 == 0);
    CHECK(w.consts.M1 == 1);
    CHECK(w.consts.M0 == 1);
    CHECK(w.consts.lambda0 == 8);
    CHECK(w.consts.lambda2 == 9);
    CHECK(w.lambda == 9);
    CHECK(connected(w.g));

    // The realisation map hits every point.
    std::set<int> hit(w.f.begin(), w.f.end());
    CHECK(hit.size() == 49);

    // Edge rule recomputed directly.
    auto small = build_w(m, x, 1);
    for (int i = 0; i < small.g.size(); ++i) {
        CHECK_FALSE(small.g.has_edge(i, i));
        for (int j = i + 1; j < small.g.size(); ++j) {
            int d = 0;
            for (int u = 0; u < m.domains(); ++u) d = std::max(d, m.du(u, *small.b[i].coords[u], *small.b[j].coords[u]));
            CHECK(small.g.has_edge(i, j) == (d <= w_multiplier(m, small, i, j) * 1.0));
            if (small.g.has_edge(i, j)) CHECK(w.g.has_edge(i, j));
        }
    }
    // Equal full support: the multiplier is complexity + 1.
    CHECK(w_multiplier(m, small, 0, 1) == m.index.complexity() + 1);
    CHECK(connected(small.g));
    CHECK(small.g.edge_count() < w.g.edge_count());
    CHECK_THROWS_AS(b_sigma(m, x, simplex(x, {"v:V"})), HhsError);
}

TEST_CASE("multiplier grows with the common support") {
    auto m = counterexample_model(3);
    auto x = blow_up(m);
    auto w = build_w(m, x);
    const int n = w.g.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::vector<int> ab, ac;
                std::set_intersection(w.support[a].begin(), w.support[a].end(), w.support[b].begin(),
                                      w.support[b].end(), std::back_inserter(ab));
                std::set_intersection(w.support[a].begin(), w.support[a].end(), w.support[c].begin(),
                                      w.support[c].end(), std::back_inserter(ac));
                if (std::includes(ac.begin(), ac.end(), ab.begin(), ab.end()))
                    CHECK(w_multiplier(m, w, a, b) <= w_multiplier(m, w, a, c));
            }
}

TEST_CASE("coordinate graphs") {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto c = simplex_classes(x);
    auto w = build_w(m, x);
    auto top = coordinate_graph(x, c, w, c.empty_class, true);
    CHECK(top.c.size() == w.augmented.size());
    CHECK(top.c.edge_count() == w.augmented.edge_count());
    for (int k = 0; k < c.classes(); ++k) {
        auto cg = coordinate_graph(x, c, w, k, true);
        for (int d : cg.pi_meet_diam) CHECK(d <= 1);
        for (std::size_t i = 0; i < cg.pi_table.size(); ++i) {
            CHECK(cg.pi_table[i].subset_of(c.link[k] - c.sat[k]));
            CHECK(cg.pi_table[i].any());
        }
        for (const auto& [o, img] : cg.rho_up) {
            Rel r = class_relation(x, c, o, k);
            CHECK((r == Rel::Transverse || r == Rel::NestedIn));
        }
    }

    auto cm = counterexample_model(4);
    auto cx = blow_up(cm);
    auto cc = simplex_classes(cx);
    auto cw = build_w(cm, cx);
    for (double lambda : {cw.lambda, 10 * cw.lambda}) {
        auto wl = build_w(cm, cx, lambda);
        for (int k = 0; k < cc.classes(); ++k) CHECK(coordinate_graph(cx, cc, wl, k).diam_in_y <= 4);
    }
}

TEST_CASE("combinatorial HHS conditions") {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto c = simplex_classes(x);
    auto r = check_chhs(m, x, c, build_w(m, x));
    CHECK(r.condition1.verdict);
    CHECK(r.condition2.verdict);
    CHECK(r.condition3.verdict);
    CHECK(r.condition4.verdict);
    CHECK(r.simplicial_wedges.verdict);
    CHECK(r.simplicial_containers.verdict);
    CHECK(r.complexity == 5);
    CHECK(r.delta == 1);
    CHECK(r.lines().size() == 8);

    auto b3 = cube_model();
    auto bx = blow_up(b3);
    auto bc = simplex_classes(bx);
    auto br = check_chhs(b3, bx, bc, build_w(b3, bx));
    CHECK(br.simplicial_wedges.verdict);
    CHECK(br.simplicial_containers.verdict);
}

TEST_CASE("realisation is a quasi-isometry on the grid") {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto q = realisation_qi(m, build_w(m, x));
    CHECK(q.surjectivity_defect == 0);
    CHECK(q.w_connected);
    CHECK(q.lower.K <= 4);
    CHECK(q.lower.C <= 4 * m.E);
    CHECK(q.upper.K <= 4);
    CHECK(q.upper.C <= 4 * m.E);
    // Frozen regression values.
    CHECK(q.w_diameter == 1);
    CHECK(q.lipschitz == 12);
    CHECK(q.lower.K == 1);
    CHECK(q.lower.C == 0);
    CHECK(q.upper.K == 1);
    CHECK(q.upper.C == 11);
    CHECK(q.realisation_defect <= m.E);
}

TEST_CASE("constructive link intersection agrees with search") {
    for (const auto& m : {grid_model(7, 7), cube_model(), square_model()}) {
        auto x = blow_up(m);
        auto c = simplex_classes(x);
        LinkIntersector li(m, x);
        for (std::size_t i = 0; i < c.simplices.size(); ++i) {
            if (c.class_of[i] < 0) continue;
            const auto& s = c.simplices[i];
            for (std::size_t j = 0; j < c.simplices.size(); ++j) {
                if (c.class_of[j] < 0) continue;
                const auto& d = c.simplices[j];
                auto got = li(s, d);
                auto want = intersection_links_search(x, c, s, d);
                REQUIRE(want.has_value());
                CHECK((link(x, got.pi) | got.psi) == (link(x, want->pi) | want->psi));
                CHECK(decomposition_holds(x, s, d, got));
            }
            auto same = li(s, s);
            CHECK(same.pi == s);
            CHECK(same.psi.none());
        }
    }
    // Disjoint supports on the B3 cube: no join factor remains.
    auto b3 = cube_model();
    auto bx = blow_up(b3);
    auto bc = simplex_classes(bx);
    LinkIntersector bl(b3, bx);
    int disjoint = 0;
    for (std::size_t i = 0; i < bc.simplices.size(); ++i)
        for (std::size_t j = 0; j < bc.simplices.size(); ++j) {
            if (bc.class_of[i] < 0 || bc.class_of[j] < 0) continue;
            auto si = support(bx, bc.simplices[i]), sj = support(bx, bc.simplices[j]);
            if (si.empty() || sj.empty() || std::find_first_of(si.begin(), si.end(), sj.begin(), sj.end()) != si.end())
                continue;
            ++disjoint;
            auto d = bl(bc.simplices[i], bc.simplices[j]);
            CHECK(d.psi.none());
            CHECK(link(bx, d.pi) == (bc.simplex_link[i] & bc.simplex_link[j]));
        }
    CHECK(disjoint > 0);
    auto cx = counterexample_model(4);
    CHECK_THROWS_AS(LinkIntersector(cx, blow_up(cx)), HhsError);
}

TEST_CASE("equivariance under the grid transpose") {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto w = build_w(m, x);
    auto id = identity_automorphism(m);
    CHECK(check_automorphism(m, id).verdict);
    auto e0 = check_equivariance(m, x, w, id);
    CHECK(e0.verdict);
    CHECK(e0.realisation_defect == 0);

    auto t = grid_transpose(m);
    CHECK(check_automorphism(m, t).verdict);
    auto e = check_equivariance(m, x, w, t);
    CHECK(e.x_automorphism.verdict);
    CHECK(e.w_edges.verdict);
    CHECK(e.b_identity.verdict);
    CHECK(e.realisation_defect <= m.E);
    CHECK(e.verdict);

    auto tt = compose(t, t);
    CHECK(tt.domain == id.domain);
    CHECK(tt.coord == id.coord);
    CHECK(tt.point == id.point);

    // A point map that is not an isometry is rejected.
    auto bad = id;
    std::swap(bad.point[0], bad.point[1]);
    CHECK_FALSE(check_automorphism(m, bad).verdict);
    CHECK_FALSE(check_equivariance(m, x, w, bad).verdict);
    CHECK_THROWS_AS(grid_transpose(grid_model(3, 4)), HhsError);
}

TEST_CASE("dot exports") {
    auto m = grid_model(3, 3);
    auto x = blow_up(m);
    auto w = build_w(m, x);
    auto c = simplex_classes(x);
    CHECK(dot_base(x).find("graph") != std::string::npos);
    CHECK(dot_blowup(x).find("v:V") != std::string::npos);
    CHECK(dot_w(x, w).find("{v:H") != std::string::npos);
    auto cg = coordinate_graph(x, c, w, c.empty_class);
    CHECK(dot_coordinate(cg, x, "top").find("V:0_1") != std::string::npos);
}
