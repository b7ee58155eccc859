#include "doctest.h"

#include <algorithm>
#include <string>

#include "hhsforge/cubes.hpp"

using namespace hhsforge;

namespace {

int pid(const HHSModel& m, const std::string& label) {
    auto it = std::find(m.space.labels.begin(), m.space.labels.end(), label);
    REQUIRE(it != m.space.labels.end());
    return static_cast<int>(it - m.space.labels.begin());
}

int cid(const HHSModel& m, int u, const std::string& label) {
    const auto& l = m.coord[u].labels;
    auto it = std::find(l.begin(), l.end(), label);
    REQUIRE(it != l.end());
    return static_cast<int>(it - l.begin());
}

}  // namespace

TEST_CASE("point tuples are consistent and realise exactly") {
    for (const auto& m : {grid_model(7, 7), cube_model(), square_model(), counterexample_model(3), path_model(5, true)}) {
        for (int x = 0; x < m.points(); ++x) {
            auto t = point_tuple(m, x);
            auto r = check_consistency(m, t, m.E);
            CHECK(r.verdict);
            auto z = realise(m, t);
            CHECK(z.defect == 0);
            CHECK(z.point == x);
        }
    }
}

TEST_CASE("perturbed tuple fails consistency with a witness") {
    auto m = grid_model(7, 7);
    int V = m.index.id("V");
    auto t = point_tuple(m, pid(m, "0_0"));
    t.coords[V] = VSet{cid(m, V, "0_6")};
    // S sits one step from the column cones, so the defect is exactly 1.
    auto r = check_consistency(m, t, 0.5);
    CHECK_FALSE(r.verdict);
    CHECK(r.witness == std::vector<std::string>{"S", "V"});
    CHECK(*r.constant == 1);
    CHECK(check_consistency(m, t, m.E).verdict);
    t.coords[V].reset();
    CHECK_THROWS_AS(check_consistency(m, t, m.E), HhsError);
}

TEST_CASE("partial realisation on the grid") {
    auto m = grid_model(7, 7);
    int V = m.index.id("V"), H = m.index.id("H");
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            auto r = realise_partial(m, {{V, {cid(m, V, "0_" + std::to_string(j))}},
                                         {H, {cid(m, H, std::to_string(i) + "_0")}}});
            CHECK(m.space.labels[r.point] == std::to_string(i) + "_" + std::to_string(j));
            CHECK(r.defect == 0);
            CHECK(r.rho_defect <= m.E);
        }
    CHECK_THROWS_AS(realise_partial(m, {{V, {0}}, {m.index.top(), {0}}}), HhsError);
}

TEST_CASE("complexity-one realisation") {
    auto m = path_model(6, false);
    ConsistentTuple t;
    t.scope = 0;
    t.coords = {VSet{4}};
    CHECK(m.space.labels[realise(m, t).point] == "p4");
}

TEST_CASE("distance estimate") {
    auto m = grid_model(7, 7);
    int a = pid(m, "0_0"), b = pid(m, "5_3");
    for (double s : {1.0, 2.0, 10.0}) CHECK(distance_estimate(m, a, a, s) == 0);
    // 5 on H, 3 on V, and 4 on S (row cone then column cone).
    CHECK(m.dpoints(m.index.id("S"), a, b) == 4);
    CHECK(distance_estimate(m, a, b, 1) == 12);
    auto prof = distance_profile(m, 1);
    for (int x = 0; x < m.points(); ++x)
        for (int y = 0; y < m.points(); ++y) {
            double d = m.dz(x, y), e = static_cast<double>(distance_estimate(m, x, y, 1));
            CHECK(d <= prof.K * e + prof.C + 1e-9);
            CHECK(e <= prof.K * d + prof.C + 1e-9);
        }
}

TEST_CASE("metric properties") {
    auto g = grid_model(7, 7);
    auto dpr = check_metric_property(g, "dpr");
    CHECK(dpr.verdict);
    CHECK(*dpr.constant <= 1);
    auto bs = check_metric_property(g, "bounded_split");
    CHECK(bs.verdict);
    CHECK(*bs.constant == 0);
    CHECK(check_metric_property(g, "normalised").verdict);
    auto cx = counterexample_model(4);
    CHECK(check_metric_property(cx, "dpr").verdict);
    for (const auto& m : {g, cx, cube_model()}) {
        auto d = check_metric_property(m, "dpr");
        auto e = check_metric_property(m, "edpr");
        auto b = check_metric_property(m, "bounded_split");
        if (d.verdict) {
            CHECK(e.verdict);
            CHECK(*b.constant <= 2 * (*d.constant + 10 * m.E));
        }
    }
    CHECK_THROWS_AS(check_metric_property(g, "nonsense"), HhsError);
}

TEST_CASE("measured constants") {
    for (const auto& m : {grid_model(7, 7), cube_model(), counterexample_model(3), counterexample_model(5)}) {
        CHECK(m.E >= 1);
        CHECK(m.kappa == 20 * m.E);
        CHECK(m.e_parts.rho_orthogonal <= m.E);
        CHECK_FALSE(m.e_parts.witness.empty());
        for (std::size_t i = 1; i < m.uniqueness_profile.size(); ++i) {
            CHECK(m.uniqueness_profile[i].first > m.uniqueness_profile[i - 1].first);
            CHECK(m.uniqueness_profile[i].second >= m.uniqueness_profile[i - 1].second);
        }
    }
    // E does not grow with the counterexample depth.
    CHECK(counterexample_model(3).E == counterexample_model(6).E);
}

TEST_CASE("augmentation by point domains") {
    auto one = augment_point_domains(path_model(1, false));
    CHECK(one.domains() == 2);
    auto g = grid_model(3, 3);
    auto ga = augment_point_domains(g);
    CHECK(ga.domains() == 3 + 9);
    CHECK(check_property(ga.index, "clean_containers").verdict);
    CHECK(ga.index.complexity() == g.index.complexity());
    auto c = cube_model();
    auto ca = augment_point_domains(c);
    CHECK(ca.domains() == 7 + 8);
    for (int u = 7; u < ca.domains(); ++u) {
        CHECK(ca.index.is_minimal(u));
        CHECK(ca.index.name(u).rfind("T[123]", 0) == 0);
    }
    CHECK(ca.index.complexity() == c.index.complexity());
}

TEST_CASE("augmentation restores dense product regions") {
    auto m = path_model(10, true);
    CHECK(check_metric_property(m, "bounded_split").verdict);
    CHECK_FALSE(check_metric_property(m, "dpr").verdict);
    auto a = augment_point_domains(m);
    CHECK(check_metric_property(a, "dpr").verdict);
    for (const char* p : {"wedges", "clean_containers", "orthogonals_for_non_split"})
        CHECK(check_property(a.index, p).verdict == check_property(m.index, p).verdict);
}

TEST_CASE("model file round trip") {
    auto m = grid_model(3, 3);
    auto text = dump_model(m);
    auto back = load_model(text, ".");
    CHECK(dump_model(back) == text);
    CHECK(back.E == m.E);
    auto cut = text.substr(0, text.find("pi V"));
    CHECK_THROWS_AS(load_model(cut, "."), HhsError);
    CHECK_THROWS_AS(load_model(text + "bogus line\n", "."), HhsError);
}
