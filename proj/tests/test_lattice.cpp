#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "hhsforge/cubes.hpp"
#include "hhsforge/lattice.hpp"

using namespace hhsforge;

namespace {

IndexSet b3() { return load_index_set_file(std::string(HHSFORGE_FIXTURES) + "/b3.idx"); }

// Brute-force isomorphism of ortholattices: order and complement.
bool isomorphic(const OrthoLattice& a, const OrthoLattice& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> p(static_cast<std::size_t>(a.size()));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < a.size() && ok; ++u) {
            if (p[a.comp[u]] != b.comp[p[u]]) ok = false;
            for (int v = 0; v < a.size() && ok; ++v)
                if (a.le(u, v) != b.le(p[u], p[v])) ok = false;
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

}  // namespace

TEST_CASE("single domain gives the two element lattice") {
    auto s = IndexSet::build({"S"}, {}, {});
    auto l = to_ortholattice(s);
    CHECK(l.size() == 2);
    CHECK(l.comp[l.top] == l.bottom);
    CHECK(is_orthomodular(l).verdict);
}

TEST_CASE("B3 is the powerset lattice") {
    auto l = to_ortholattice(b3());
    CHECK(validate_ortholattice(l).verdict);
    CHECK(isomorphic(l, powerset_lattice(3)));
    CHECK(l.names[l.comp[l.id("1")]] == "23");
    CHECK(l.names[l.meet[l.id("12")][l.id("13")]] == "1");
    CHECK(l.names[l.join[l.id("1")][l.id("2")]] == "12");
    CHECK(l.names[l.meet[l.id("1")][l.id("2")]] == "EMPTY");
    CHECK(is_orthomodular(l).verdict);
}

TEST_CASE("lattice order and orthogonality agree with the index set") {
    for (const auto& s : {b3(), grid_model(7, 7).index, cube_model().index, square_model().index,
                          counterexample_model(4).index}) {
        auto l = to_ortholattice(s);
        CHECK(validate_ortholattice(l).verdict);
        for (int u = 0; u < s.size(); ++u)
            for (int v = 0; v < s.size(); ++v) {
                CHECK(s.nested(u, v) == (l.meet[u][v] == u));
                CHECK(s.orthogonal(u, v) == l.orth(u, v));
            }
        // Orthomodularity and strong orthogonality agree.
        CHECK(is_orthomodular(l).verdict == check_property(s, "strong_orth").verdict);
    }
}

TEST_CASE("counterexample lattice is not orthomodular") {
    auto s = counterexample_model(6).index;
    auto l = to_ortholattice(s);
    CHECK(validate_ortholattice(l).verdict);
    auto r = is_orthomodular(l);
    CHECK_FALSE(r.verdict);
    REQUIRE(r.witness.size() == 2);
    CHECK(replay_orthomodular(l, r));
    auto bad = orthomodular_violations(l);
    std::pair<int, int> fh{l.id("[F]"), l.id("[H_Sigma]")};
    CHECK(std::find(bad.begin(), bad.end(), fh) != bad.end());
    // Replay of a pair that satisfies the identity does not reproduce.
    PropertyReport fake{"orthomodular", false, {"[Sigma]", "[Sigma]"}, std::nullopt};
    CHECK_FALSE(replay_orthomodular(l, fake));
}

TEST_CASE("non orthogonal sets are rejected") {
    auto s = IndexSet::build({"S", "A", "B"}, {{1, 0}, {2, 0}}, {});
    CHECK_THROWS_AS(to_ortholattice(s), HhsError);
}

TEST_CASE("closed set lattices of orthogonality graphs") {
    CHECK(isomorphic(closed_set_lattice(3, {{0, 1}, {0, 2}, {1, 2}}), powerset_lattice(3)));
    auto mo2 = closed_set_lattice(4, {{0, 1}, {2, 3}});
    CHECK(mo2.size() == 6);
    CHECK(validate_ortholattice(mo2).verdict);
    CHECK(is_orthomodular(mo2).verdict);
    CHECK(closed_set_lattice(2, {}).size() == 2);
}

TEST_CASE("hexagon lattice") {
    auto o6 = hexagon_lattice();
    CHECK(o6.size() == 6);
    auto r = is_orthomodular(o6);
    CHECK_FALSE(r.verdict);
    CHECK(replay_orthomodular(o6, r));
    CHECK_THROWS_AS(make_ortholattice({"0", "a", "1"}, {{true, true, true}, {false, true, true}, {false, false, true}},
                                      {2, 1, 0}),
                    HhsError);
}

TEST_CASE("graph enumerator counts graphs up to isomorphism") {
    const long known[] = {1, 1, 2, 4, 11, 34, 156, 1044};
    for (int n = 1; n <= 7; ++n) CHECK(graph_count(n) == known[n]);
}

TEST_CASE("orthomodular extension search") {
    auto l = to_ortholattice(b3());
    auto same = search_orthomodular_extension(l, 10);
    CHECK(same.found);
    CHECK(same.graphs_examined == 0);
    CHECK(embedding_holds(l, same.target, same.embedding));

    auto o6 = hexagon_lattice();
    auto ext = search_orthomodular_extension(o6, 10);
    REQUIRE(ext.found);
    CHECK(ext.target.size() == 8);
    CHECK(is_orthomodular(ext.target).verdict);
    CHECK(embedding_holds(o6, ext.target, ext.embedding));
    CHECK(ext.lines(o6).size() == 7);

    // A chain of length three cannot sit in a six element orthomodular lattice.
    auto tight = search_orthomodular_extension(o6, 6);
    CHECK_FALSE(tight.found);
    CHECK(tight.graphs_examined == 1 + 2 + 4 + 11);
    CHECK(tight.orthomodular_candidates >= 1);
    CHECK_FALSE(tight.atom_cap_binding);

    CHECK_THROWS_AS(search_orthomodular_extension(o6, 25), HhsError);
    auto cx = to_ortholattice(counterexample_model(6).index);
    CHECK_THROWS_AS(search_orthomodular_extension(cx, 20), HhsError);
    std::vector<int> wrong{0, 1, 2, 3, 4, 4};
    CHECK_FALSE(embedding_holds(o6, ext.target, wrong));
}

TEST_CASE("lattice dump") {
    auto l = to_ortholattice(b3());
    auto text = dump_lattice(l);
    CHECK(std::count(text.begin(), text.end(), '\n') == 8);
    CHECK(text.find("element 123 covers={12,13,23} complement=EMPTY") != std::string::npos);
}
