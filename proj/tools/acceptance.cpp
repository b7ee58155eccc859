// Acceptance run: one PASS/FAIL line per criterion, thresholds and runtime limits fixed below.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hhsforge/chhs.hpp"
#include "hhsforge/cubes.hpp"
#include "hhsforge/lattice.hpp"

using namespace hhsforge;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << ";";
            pass = false;
            detail << " failed:" << what;
        }
    }
};

struct Criterion {
    int id;
    double limit_s;
    std::function<void(Outcome&)> run;
};

// Measured QI constants for the grid of 6x6 squares, frozen as regression values.
constexpr double kGridLowerK = 1, kGridLowerC = 0, kGridUpperK = 1, kGridUpperC = 11;
constexpr double kGridMaxK = 4;  // K bound; C bound is 4E

constexpr int kCounterexampleDepth = 6;
constexpr int kYDiameterBound = 4;
constexpr double kPerDepthLimit = 60;

void ac1(Outcome& o) {
    auto m = counterexample_model(kCounterexampleDepth);
    auto r = check_counterexample_minimal_graph(m.index, kCounterexampleDepth);
    o.require(r.verdict, r.line());
    o.detail << " depth=" << kCounterexampleDepth << " pairs_checked=" << r.constant.value_or(0);
}

void ac2(Outcome& o) {
    std::vector<std::vector<int>> wdiam, ydiam;  // [lambda index][depth]
    wdiam.resize(2);
    ydiam.resize(2);
    for (int depth = 3; depth <= 6; ++depth) {
        auto t0 = std::chrono::steady_clock::now();
        auto m = counterexample_model(depth);
        auto x = blow_up(m);
        auto c = simplex_classes(x);
        double base = build_w(m, x).lambda;
        for (int li = 0; li < 2; ++li) {
            double lambda = li == 0 ? base : 10 * base;
            auto w = build_w(m, x, lambda);
            int worst = 0;
            for (int k = 0; k < c.classes(); ++k) {
                auto cg = coordinate_graph(x, c, w, k);
                if (cg.diam_in_y > kYDiameterBound)
                    o.require(false, "depth " + std::to_string(depth) + " class " +
                                         simplex_name(x, c.simplices[c.rep[k]]) + " diam_in_y=" +
                                         std::to_string(cg.diam_in_y));
                worst = std::max(worst, cg.diam_in_y);
            }
            o.require(connected(w.g), "W disconnected at depth " + std::to_string(depth));
            wdiam[li].push_back(connected(w.g) ? diameter(all_pairs(w.g)) : kInf);
            ydiam[li].push_back(worst);
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs <= kPerDepthLimit, "depth " + std::to_string(depth) + " above per-depth limit");
    }
    for (const auto* series : {&wdiam, &ydiam}) {
        for (std::size_t d = 0; d < (*series)[0].size(); ++d)
            o.require((*series)[1][d] <= (*series)[0][d], "constant increases with lambda");
        for (const auto& row : *series) {
            auto [lo, hi] = std::minmax_element(row.begin(), row.end());
            o.require(*hi - *lo <= 1, "constant not flat in depth");
        }
    }
    auto show = [&](const char* name, const std::vector<std::vector<int>>& s) {
        o.detail << " " << name << "(depth3..6)=";
        for (int li = 0; li < 2; ++li) {
            o.detail << (li ? "/" : "");
            for (std::size_t d = 0; d < s[li].size(); ++d) o.detail << (d ? "," : "") << s[li][d];
        }
    };
    show("w_diameter", wdiam);
    show("max_diam_in_y", ydiam);
}

void ac3(Outcome& o) {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto c = simplex_classes(x);
    auto w = build_w(m, x);
    auto r = check_chhs(m, x, c, w);
    for (const auto* p : {&r.condition1, &r.condition2, &r.condition3, &r.condition4})
        o.require(p->verdict, p->line());
    const auto& q = r.qi;
    o.require(q.surjectivity_defect == 0, "surjectivity defect nonzero");
    o.require(q.lower.K <= kGridMaxK && q.upper.K <= kGridMaxK, "K above 4");
    o.require(q.lower.C <= 4 * m.E && q.upper.C <= 4 * m.E, "C above 4E");
    o.require(q.lower.K == kGridLowerK && q.lower.C == kGridLowerC && q.upper.K == kGridUpperK &&
                  q.upper.C == kGridUpperC,
              "QI constants differ from frozen values");
    o.detail << " E=" << m.E << " lower=(" << q.lower.K << "," << q.lower.C << ") upper=(" << q.upper.K << ","
             << q.upper.C << ") surjectivity_defect=" << q.surjectivity_defect;
}

void ac4(Outcome& o) {
    struct Fx {
        const char* name;
        HHSModel m;
    };
    std::vector<Fx> fixtures = {{"b3-cube", cube_model()},
                                {"square", square_model()},
                                {"grid6x6-squares", grid_model(7, 7)},
                                {"counterexample4", counterexample_model(4)}};
    int failures = 0;
    for (const auto& f : fixtures) {
        auto x = blow_up(f.m);
        auto c = simplex_classes(x);
        for (const auto& r : {check_link_decomposition(x, c), check_link_shapes(x, c),
                              check_containment_reversal(x, c), check_weak_complement_links(f.m, x),
                              check_weak_complement_dichotomy(f.m, x), check_b_sigma(f.m, x)}) {
            if (!r.verdict) {
                ++failures;
                std::string w;
                for (std::size_t i = 0; i < r.witness.size(); ++i) w += (i ? "," : "") + r.witness[i];
                o.require(false, std::string(f.name) + ":" + r.property + " witness=" + w);
            }
        }
    }
    o.detail << " fixtures=4 checks=24 failing=" << failures;
}

void ac5(Outcome& o) {
    long pairs = 0;
    for (const auto& m : {grid_model(7, 7), cube_model()}) {
        auto x = blow_up(m);
        auto c = simplex_classes(x);
        LinkIntersector li(m, x);
        // The decomposition is defined for non-maximal simplices only.
        for (std::size_t i = 0; i < c.simplices.size(); ++i)
            for (std::size_t j = 0; j < c.simplices.size(); ++j) {
                if (c.class_of[i] < 0 || c.class_of[j] < 0) continue;
                const auto& s = c.simplices[i];
                const auto& d = c.simplices[j];
                ++pairs;
                auto want = intersection_links_search(x, c, s, d);
                LinkDecomposition got;
                try {
                    got = li(s, d);
                } catch (const HhsError& e) {
                    o.require(false, simplex_name(x, s) + " " + simplex_name(x, d) + ": " + e.what());
                    return;
                }
                bool same = want && (link(x, got.pi) | got.psi) == (link(x, want->pi) | want->psi) &&
                            decomposition_holds(x, s, d, got);
                if (!same) {
                    o.require(false, simplex_name(x, s) + " " + simplex_name(x, d));
                    return;
                }
            }
    }
    o.detail << " pairs=" << pairs;
}

void ac6(Outcome& o) {
    std::vector<std::pair<std::string, IndexSet>> sets = {
        {"b3.idx", load_index_set_file(std::string(HHSFORGE_FIXTURES) + "/b3.idx")},
        {"b3-cube", cube_model().index},
        {"square", square_model().index},
        {"grid6x6-squares", grid_model(7, 7).index},
        {"counterexample4", counterexample_model(4).index},
        {"counterexample6", counterexample_model(6).index},
        {"path10", path_model(10, true).index},
        {"path10-augmented", augment_point_domains(path_model(10, true)).index}};
    for (const auto& [name, s] : sets) {
        auto v = [&](const char* p) { return check_property(s, p).verdict; };
        o.require(!v("strong_orth") || v("orthogonal_set"), name + ": strong_orth without orthogonal_set");
        o.require(v("complement_involution") == v("orth_determines_nesting"),
                  name + ": complement_involution differs from orth_determines_nesting");
    }
    auto m = path_model(10, true);
    auto a = augment_point_domains(m);
    o.require(check_metric_property(m, "bounded_split").verdict, "path10 not bounded-split");
    o.require(!check_metric_property(m, "dpr").verdict, "path10 already has dpr");
    o.require(check_metric_property(a, "dpr").verdict, "augmented path10 lacks dpr");
    for (const char* p : {"wedges", "clean_containers", "orthogonals_for_non_split"})
        o.require(check_property(a.index, p).verdict == check_property(m.index, p).verdict,
                  std::string(p) + " changed by augmentation");
    o.detail << " fixtures=" << sets.size();
}

void ac7(Outcome& o) {
    auto b3 = to_ortholattice(cube_model().index);
    o.require(is_orthomodular(b3).verdict, "b3 lattice not orthomodular");
    auto cx = to_ortholattice(counterexample_model(kCounterexampleDepth).index);
    auto r = is_orthomodular(cx);
    o.require(!r.verdict, "counterexample lattice orthomodular");
    o.require(!r.verdict && replay_orthomodular(cx, r), "witness replay did not reproduce");
    std::string w;
    for (std::size_t i = 0; i < r.witness.size(); ++i) w += (i ? "," : "") + r.witness[i];
    o.detail << " b3_elements=" << b3.size() << " counterexample_elements=" << cx.size() << " witness=" << w;
}

void ac8(Outcome& o) {
    auto m = grid_model(7, 7);
    auto x = blow_up(m);
    auto w = build_w(m, x);
    auto e = check_equivariance(m, x, w, grid_transpose(m));
    for (const auto* p : {&e.axioms, &e.x_automorphism, &e.w_edges, &e.b_identity})
        o.require(p->verdict, p->line());
    o.require(e.realisation_defect <= m.E, "realisation defect above E");
    o.detail << " maximal_simplices=" << w.simplices.size() << " realisation_defect=" << e.realisation_defect
             << " E=" << m.E;
}

void ac9(Outcome& o) {
    auto count = [](const Graph& g) { return make_cube_complex(validate_median_graph(g)).hyperplanes(); };
    o.require(count(edge_graph()) == 1, "edge hyperplanes");
    o.require(count(cube_graph()) == 3, "Q3 hyperplanes");
    o.require(count(square_graph()) == 2, "square hyperplanes");

    auto c = grid_complex(7, 7);
    std::mt19937 rng(20261015);
    std::uniform_int_distribution<int> pick(0, c.vertices() - 1);
    int subsets = 0;
    for (; subsets < 10; ++subsets) {
        Bits seeds = c.vset();
        seeds.set(pick(rng));
        seeds.set(pick(rng));
        Bits Y = c.hull(seeds);
        o.require(c.convex(Y), "hull not convex");
        for (int x = 0; x < c.vertices(); ++x) {
            int best = kInf, hits = 0, at = -1;
            Y.for_each([&](int y) {
                int d = c.mg.D(x, y);
                if (d < best) best = d, hits = 0;
                if (d == best) ++hits, at = y;
            });
            if (hits != 1 || c.gate(x, Y) != at) {
                o.require(false, "gate mismatch at " + c.vname(x));
                return;
            }
        }
    }
    auto sq = make_cube_complex(validate_median_graph(square_graph()));
    auto classes = hyperclosure(sq).classes.size();
    o.require(classes == 3, "square hyperclosure has " + std::to_string(classes) + " classes");
    o.detail << " random_convex_subsets=" << subsets << " square_classes=" << classes;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, 30, ac1}, {2, 4 * 60, ac2}, {3, 60, ac3}, {4, 120, ac4}, {5, 600, ac5},
        {6, 600, ac6}, {7, 600, ac7}, {8, 600, ac8}, {9, 10, ac9},
    };
    bool all = true;
    for (const auto& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(secs <= c.limit_s, "runtime above limit");
        char t[64];
        std::snprintf(t, sizeof t, " time=%.2fs limit=%.0fs", secs, c.limit_s);
        std::cout << "AC" << c.id << (o.pass ? " PASS" : " FAIL") << o.detail.str() << t << "\n";
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
