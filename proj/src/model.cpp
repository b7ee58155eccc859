#include "hhsforge/model.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hhsforge/parallel.hpp"

namespace hhsforge {

int HHSModel::du(int u, const VSet& a, const VSet& b) const { return set_distance(cdist[u], a, b); }

int HHSModel::diam_union(int u, const VSet& a, const VSet& b) const {
    VSet all = a;
    all.insert(all.end(), b.begin(), b.end());
    return set_diameter(cdist[u], all);
}

namespace {

VSet unite(const VSet& a, const VSet& b) {
    std::set<int> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return VSet(s.begin(), s.end());
}

// rho^U_V applied to a set of CU vertices, for V properly nested in U.
VSet rho_down_of(const HHSModel& m, int u, int v, const VSet& a) {
    VSet out;
    for (int x : a) out = unite(out, (*m.rho_down[u][v])[x]);
    return out;
}

// Maximal cliques of the orthogonality relation restricted to `cand`.
void cliques(const IndexSet& s, std::vector<int>& r, Bits p, Bits x, std::vector<std::vector<int>>& out) {
    if (p.none() && x.none()) {
        out.push_back(r);
        return;
    }
    for (int v : p.items()) {
        r.push_back(v);
        cliques(s, r, p & s.orth(v), x & s.orth(v), out);
        r.pop_back();
        p.reset(v);
        x.set(v);
    }
}

std::vector<std::vector<int>> maximal_orth_families(const IndexSet& s, const Bits& cand) {
    std::vector<std::vector<int>> out;
    std::vector<int> r;
    cliques(s, r, cand, Bits(static_cast<std::size_t>(s.size())), out);
    return out;
}

struct Defect {
    double value = 0;
    std::vector<std::string> witness;
    void take(double v, std::vector<std::string> w) {
        if (v > value) {
            value = v;
            witness = std::move(w);
        }
    }
};

// Largest point-consistency defect between domains u and v (nested or transverse).
int pair_consistency(const HHSModel& m, int u, int v, const VSet& bu, const VSet& bv) {
    const auto& S = m.index;
    if (S.transverse(u, v))
        return std::min(m.du(u, bu, *m.rho[v][u]), m.du(v, bv, *m.rho[u][v]));
    if (S.proper(v, u))
        return std::min(m.du(u, bu, *m.rho[v][u]), m.diam_union(v, bv, rho_down_of(m, u, v, bu)));
    return 0;
}

// Domains w for which rho^v_w is defined.
bool has_rho(const HHSModel& m, int v, int w) { return v != w && m.rho[v][w].has_value(); }

}  // namespace

EBreakdown measure_e(const HHSModel& m) {
    const auto& S = m.index;
    const int n = m.domains(), P = m.points();
    Defect diam, lip, cons, rn, ro, real;

    for (int u = 0; u < n; ++u) {
        for (int x = 0; x < P; ++x)
            diam.take(set_diameter(m.cdist[u], m.pi[u][x]), {"pi", S.name(u), m.space.labels[x]});
        for (int v = 0; v < n; ++v) {
            // Downward maps carry no diameter bound.
            if (m.rho[u][v]) diam.take(set_diameter(m.cdist[v], *m.rho[u][v]), {"rho", S.name(u), S.name(v)});
        }
    }
    for (int x = 0; x < P; ++x)
        for (int y : m.space.adj[x])
            if (x < y)
                for (int u = 0; u < n; ++u)
                    lip.take(m.diam_union(u, m.pi[u][x], m.pi[u][y]) / 2.0,
                             {"lipschitz", S.name(u), m.space.labels[x], m.space.labels[y]});

    std::vector<Defect> per(P);
    parallel_for(static_cast<std::size_t>(P), [&](std::size_t xi) {
        int x = static_cast<int>(xi);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                if (!(S.transverse(u, v) && u < v) && !S.proper(v, u)) continue;
                per[x].take(pair_consistency(m, u, v, m.pi[u][x], m.pi[v][x]),
                            {"consistency", S.name(u), S.name(v), m.space.labels[x]});
            }
    });
    for (auto& d : per) cons.take(d.value, d.witness);

    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (!S.proper(u, v)) continue;
            for (int w = 0; w < n; ++w) {
                if (!(S.proper(v, w) || S.transverse(v, w)) || S.orthogonal(w, u)) continue;
                if (!has_rho(m, u, w) || !has_rho(m, v, w)) continue;
                rn.take(m.du(w, *m.rho[u][w], *m.rho[v][w]), {"rho_nested", S.name(u), S.name(v), S.name(w)});
            }
        }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!S.orthogonal(u, v)) continue;
            for (int w = 0; w < n; ++w) {
                if (S.orthogonal(w, u) || S.orthogonal(w, v) || S.nested(w, u) || S.nested(w, v)) continue;
                if (!has_rho(m, u, w) || !has_rho(m, v, w)) continue;
                ro.take(m.du(w, *m.rho[u][w], *m.rho[v][w]) / 2.0,
                        {"rho_orthogonal", S.name(u), S.name(v), S.name(w)});
            }
        }

    // Partial realisation: maximal orthogonal families dominate their subfamilies.
    for (const auto& fam : maximal_orth_families(S, Bits::full(static_cast<std::size_t>(n)))) {
        std::vector<std::vector<VSet>> choices;
        for (int v : fam) {
            std::set<VSet> seen(m.pi[v].begin(), m.pi[v].end());
            choices.emplace_back(seen.begin(), seen.end());
        }
        std::size_t total = 1;
        for (const auto& c : choices) total *= c.size();
        std::vector<Defect> part(total);
        parallel_for(total, [&](std::size_t code) {
            std::vector<const VSet*> pick;
            std::size_t rest = code;
            for (const auto& c : choices) {
                pick.push_back(&c[rest % c.size()]);
                rest /= c.size();
            }
            int best = kInf;
            for (int z = 0; z < P && best > 0; ++z) {
                int worst = 0;
                for (std::size_t j = 0; j < fam.size() && worst < best; ++j) {
                    int v = fam[j];
                    worst = std::max(worst, m.du(v, m.pi[v][z], *pick[j]));
                    for (int w = 0; w < n && worst < best; ++w)
                        if (has_rho(m, v, w)) worst = std::max(worst, m.du(w, m.pi[w][z], *m.rho[v][w]));
                }
                best = std::min(best, worst);
            }
            std::vector<std::string> wit{"realisation"};
            for (int v : fam) wit.push_back(S.name(v));
            part[code].take(best, wit);
        });
        for (auto& d : part) real.take(d.value, d.witness);
    }

    EBreakdown e;
    e.diameters = diam.value;
    e.lipschitz = lip.value;
    e.consistency = cons.value;
    e.rho_nested = rn.value;
    e.rho_orthogonal = ro.value;
    e.realisation = real.value;
    Defect top;
    for (Defect* d : {&diam, &lip, &cons, &rn, &ro, &real}) top.take(d->value, d->witness);
    e.witness = top.witness;
    return e;
}

void finalize_model(HHSModel& m) {
    m.dz = all_pairs(m.space);
    m.cdist.resize(m.coord.size());
    for (std::size_t u = 0; u < m.coord.size(); ++u) m.cdist[u] = all_pairs(m.coord[u]);
    m.e_parts = measure_e(m);
    const auto& e = m.e_parts;
    m.E = std::max({1.0, e.diameters, e.lipschitz, e.consistency, e.rho_nested, e.rho_orthogonal, e.realisation});
    m.kappa = 20 * m.E;

    const int P = m.points(), n = m.domains();
    std::map<int, int> worst;
    for (int x = 0; x < P; ++x)
        for (int y = x + 1; y < P; ++y) {
            int k = 0;
            for (int u = 0; u < n; ++u) k = std::max(k, m.dpoints(u, x, y));
            int& w = worst[k];
            w = std::max(w, m.dz(x, y));
        }
    m.uniqueness_profile.clear();
    int run = 0;
    for (auto [k, d] : worst) {
        run = std::max(run, d);
        m.uniqueness_profile.emplace_back(k, run);
    }
}

ConsistentTuple point_tuple(const HHSModel& m, int x, int scope) {
    if (scope < 0) scope = m.index.top();
    ConsistentTuple t;
    t.scope = scope;
    t.coords.resize(m.domains());
    m.index.below(scope).for_each([&](int u) { t.coords[u] = m.pi[u][x]; });
    return t;
}

PropertyReport check_consistency(const HHSModel& m, const ConsistentTuple& t, double kappa) {
    const auto& S = m.index;
    PropertyReport r;
    r.property = "consistency";
    double worst = 0;
    std::vector<int> dom = S.below(t.scope).items();
    for (int u : dom)
        if (!t.coords[u] || t.coords[u]->empty())
            throw HhsError(ErrorKind::Precondition, "missing coordinate", {S.name(u)});
    for (int u : dom)
        for (int v : dom) {
            if (!(S.transverse(u, v) && u < v) && !S.proper(v, u)) continue;
            int d = pair_consistency(m, u, v, *t.coords[u], *t.coords[v]);
            worst = std::max(worst, static_cast<double>(d));
            if (d > kappa && r.verdict) {
                r.verdict = false;
                r.witness = {S.name(u), S.name(v)};
            }
        }
    r.constant = worst;
    return r;
}

namespace {

bool label_less(const HHSModel& m, int a, int b) { return m.space.labels[a] < m.space.labels[b]; }

}  // namespace

Realisation realise(const HHSModel& m, const ConsistentTuple& t) {
    auto rep = check_consistency(m, t, m.kappa);
    if (!rep.verdict) throw HhsError(ErrorKind::Precondition, "inconsistent tuple", rep.witness);
    std::vector<int> dom = m.index.below(t.scope).items();
    // Smallest worst-case defect, then smallest total defect, then label.
    Realisation best;
    best.defect = kInf;
    long best_sum = 0;
    for (int z = 0; z < m.points(); ++z) {
        int d = 0;
        long sum = 0;
        for (int u : dom) {
            int e = m.du(u, m.pi[u][z], *t.coords[u]);
            d = std::max(d, e);
            sum += e;
        }
        if (d < best.defect || (d == best.defect && (sum < best_sum || (sum == best_sum && label_less(m, z, best.point))))) {
            best.point = z;
            best.defect = d;
            best_sum = sum;
        }
    }
    return best;
}

Realisation realise_partial(const HHSModel& m, const std::vector<std::pair<int, VSet>>& family) {
    const auto& S = m.index;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (!S.orthogonal(family[i].first, family[j].first))
                throw HhsError(ErrorKind::Precondition, "family not pairwise orthogonal",
                               {S.name(family[i].first), S.name(family[j].first)});
    Realisation best;
    int best_total = kInf;
    best.defect = kInf;
    for (int z = 0; z < m.points(); ++z) {
        int d = 0, rd = 0;
        for (const auto& [v, p] : family) {
            d = std::max(d, m.du(v, m.pi[v][z], p));
            for (int w = 0; w < m.domains(); ++w)
                if (has_rho(m, v, w)) rd = std::max(rd, m.du(w, m.pi[w][z], *m.rho[v][w]));
        }
        int total = std::max(d, rd);
        bool better = total < best_total ||
                      (total == best_total && (d < best.defect || (d == best.defect && label_less(m, z, best.point))));
        if (better) {
            best_total = total;
            best.point = z;
            best.defect = d;
            best.rho_defect = rd;
        }
    }
    return best;
}

long distance_estimate(const HHSModel& m, int x, int y, double s) {
    long sum = 0;
    for (int u = 0; u < m.domains(); ++u) {
        int d = m.dpoints(u, x, y);
        if (d > s) sum += d;
    }
    return sum;
}

DistanceProfile distance_profile(const HHSModel& m, double s) {
    std::vector<std::pair<int, long>> pairs;
    for (int x = 0; x < m.points(); ++x)
        for (int y = x + 1; y < m.points(); ++y) pairs.emplace_back(m.dz(x, y), distance_estimate(m, x, y, s));
    DistanceProfile best{0, 0};
    double score = 1e300;
    for (double K = 1; K <= 20; K += 0.25) {
        double C = 0;
        for (auto [d, e] : pairs) C = std::max({C, d - K * e, e - K * d});
        if (K + C < score) {
            score = K + C;
            best = {K, C};
        }
    }
    return best;
}

PropertyReport check_metric_property(const HHSModel& m, const std::string& name) {
    const auto& S = m.index;
    const int n = m.domains();
    PropertyReport r;
    r.property = name;
    double c = 0;
    std::vector<std::string> wit;
    auto take = [&](double v, std::vector<std::string> w) {
        if (v > c) {
            c = v;
            wit = std::move(w);
        }
    };
    if (name == "dpr" || name == "dpr_minimal") {
        bool only_min = name == "dpr_minimal";
        for (int u = 0; u < n; ++u) {
            if (S.is_minimal(u)) continue;
            for (int a = 0; a < m.coord[u].size(); ++a) {
                int best = kInf;
                for (int v = 0; v < n; ++v)
                    if (S.proper(v, u) && (!only_min || S.is_minimal(v)))
                        best = std::min(best, m.du(u, {a}, *m.rho[v][u]));
                take(best, {S.name(u), m.coord[u].labels[a]});
            }
        }
        r.verdict = c <= m.E;
    } else if (name == "edpr") {
        for (int u = 0; u < n; ++u) {
            Bits mins(static_cast<std::size_t>(n));
            S.below(u).for_each([&](int v) {
                if (S.is_minimal(v)) mins.set(v);
            });
            auto fams = maximal_orth_families(S, mins);
            std::set<std::vector<VSet>> tuples;
            for (int x = 0; x < m.points(); ++x) {
                std::vector<VSet> key;
                S.below(u).for_each([&](int w) { key.push_back(m.pi[w][x]); });
                if (!tuples.insert(key).second) continue;
                int best = kInf;
                for (const auto& fam : fams) {
                    int worst = 0;
                    for (int v : fam)
                        S.below(u).for_each([&](int w) {
                            if (has_rho(m, v, w)) worst = std::max(worst, m.du(w, m.pi[w][x], *m.rho[v][w]));
                        });
                    best = std::min(best, worst);
                }
                take(best, {S.name(u), m.space.labels[x]});
            }
        }
        r.verdict = true;
    } else if (name == "bounded_split") {
        for (int u = 0; u < n; ++u)
            if (u != S.top() && !S.is_minimal(u) && split_info(S, u).split)
                take(diameter(m.cdist[u]), {S.name(u)});
        r.verdict = c < kInf;
    } else if (name == "normalised") {
        for (int u = 0; u < n; ++u) {
            VSet img;
            for (int x = 0; x < m.points(); ++x) img = unite(img, m.pi[u][x]);
            for (int a = 0; a < m.coord[u].size(); ++a) take(m.du(u, {a}, img), {S.name(u), m.coord[u].labels[a]});
        }
        r.verdict = c <= m.E;
    } else {
        throw HhsError(ErrorKind::Unknown, "unknown metric property " + name, {name});
    }
    r.constant = c;
    if (!r.verdict) r.witness = wit;
    return r;
}

HHSModel augment_point_domains(const HHSModel& m) {
    const auto& S = m.index;
    const int n = m.domains();
    struct Added {
        int u, x;
    };
    std::vector<Added> added;
    std::vector<std::string> names = S.names();
    for (int u = 0; u < n; ++u) {
        if (u != S.top() && split_info(S, u).split) continue;
        std::set<std::vector<VSet>> seen;
        for (int x = 0; x < m.points(); ++x) {
            std::vector<VSet> key;
            S.below(u).for_each([&](int w) { key.push_back(m.pi[w][x]); });
            if (!seen.insert(key).second) continue;
            names.push_back("T[" + S.name(u) + "]" + std::to_string(seen.size() - 1));
            added.push_back({u, x});
        }
    }
    const int N = static_cast<int>(names.size());
    std::vector<std::pair<int, int>> nest, orth;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (S.proper(a, b)) nest.emplace_back(a, b);
            if (S.orthogonal(a, b)) orth.emplace_back(a, b);
        }
    for (int i = 0; i < static_cast<int>(added.size()); ++i) {
        int t = n + i, u = added[i].u;
        for (int v = 0; v < n; ++v) {
            if (S.nested(u, v)) nest.emplace_back(t, v);
            if (S.orthogonal(u, v)) orth.emplace_back(t, v);
        }
        for (int j = 0; j < static_cast<int>(added.size()); ++j)
            if (S.orthogonal(u, added[j].u)) orth.emplace_back(t, n + j);
    }
    HHSModel out;
    out.index = IndexSet::build(names, nest, orth);
    const auto& T = out.index;
    out.space = m.space;
    out.coord = m.coord;
    out.pi = m.pi;
    Graph pt;
    pt.add_vertex("pt");
    for (int i = n; i < N; ++i) {
        out.coord.push_back(pt);
        out.pi.emplace_back(m.points(), VSet{0});
    }
    out.rho.assign(N, std::vector<std::optional<VSet>>(N));
    out.rho_down.assign(N, std::vector<std::optional<std::vector<VSet>>>(N));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            if (a == b) continue;
            if (T.proper(b, a)) {
                if (b >= n) out.rho_down[a][b] = std::vector<VSet>(out.coord[a].size(), VSet{0});
                else out.rho_down[a][b] = m.rho_down[a][b];
            }
            if (!(T.proper(a, b) || T.transverse(a, b))) continue;
            if (b >= n) {
                out.rho[a][b] = VSet{0};
            } else if (a < n) {
                out.rho[a][b] = m.rho[a][b];
            } else {
                auto [u, x] = added[a - n];
                if (b == u || S.proper(b, u)) out.rho[a][b] = m.pi[b][x];
                else out.rho[a][b] = m.rho[u][b];
            }
        }
    finalize_model(out);
    return out;
}

HHSModel path_model(int n, bool with_minimal) {
    HHSModel m;
    std::vector<std::string> names{"S"};
    std::vector<std::pair<int, int>> nest;
    if (with_minimal) {
        names.push_back("U");
        nest.emplace_back(1, 0);
    }
    m.index = IndexSet::build(names, nest, {});
    Graph path;
    for (int i = 0; i < n; ++i) {
        path.add_vertex("p" + std::to_string(i));
        if (i) path.add_edge(i - 1, i);
    }
    m.space = path;
    m.coord.push_back(path);
    m.pi.emplace_back();
    for (int i = 0; i < n; ++i) m.pi[0].push_back({i});
    const int k = static_cast<int>(names.size());
    m.rho.assign(k, std::vector<std::optional<VSet>>(k));
    m.rho_down.assign(k, std::vector<std::optional<std::vector<VSet>>>(k));
    if (with_minimal) {
        Graph pt;
        pt.add_vertex("pt");
        m.coord.push_back(pt);
        m.pi.emplace_back(n, VSet{0});
        m.rho[1][0] = VSet{0};
        m.rho_down[0][1] = std::vector<VSet>(n, VSet{0});
    }
    finalize_model(m);
    return m;
}

namespace {

std::vector<std::string> split_tokens(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    return tok;
}

}  // namespace

HHSModel load_model(const std::string& text, const std::string& base_dir) {
    std::string index_text;
    std::vector<std::vector<std::string>> lines;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        auto tok = split_tokens(raw);
        if (tok.empty()) continue;
        if (tok[0] == "index" && tok.size() == 2) {
            std::ifstream f(std::filesystem::path(base_dir) / tok[1]);
            if (!f) throw HhsError(ErrorKind::Parse, "cannot read " + tok[1]);
            std::stringstream ss;
            ss << f.rdbuf();
            index_text += ss.str() + "\n";
        } else if (tok[0] == "domain" || tok[0] == "nest" || tok[0] == "orth") {
            index_text += raw + "\n";
        } else {
            lines.push_back(tok);
        }
    }
    HHSModel m;
    m.index = load_index_set(index_text);
    const int n = m.index.size();
    std::map<std::string, int> pid;
    std::vector<std::map<std::string, int>> cid(n);
    m.coord.resize(n);
    auto bad = [](const std::string& why) { return HhsError(ErrorKind::Parse, "model: " + why); };
    auto point = [&](const std::string& p) {
        auto it = pid.find(p);
        if (it == pid.end()) throw bad("unknown point " + p);
        return it->second;
    };
    auto cvert = [&](int u, const std::string& v) {
        auto it = cid[u].find(v);
        if (it == cid[u].end()) throw bad("unknown coordinate vertex " + v + " of " + m.index.name(u));
        return it->second;
    };
    auto vset = [&](int u, const std::string& list) {
        VSet out;
        std::stringstream ss(list);
        for (std::string item; std::getline(ss, item, ',');) out.push_back(cvert(u, item));
        std::sort(out.begin(), out.end());
        return out;
    };
    // Two passes: declarations first, then tables.
    for (const auto& t : lines) {
        if (t[0] == "point" && t.size() == 2) pid[t[1]] = m.space.add_vertex(t[1]);
        else if (t[0] == "coord" && t.size() == 4 && t[2] == "vertex") {
            int u = m.index.id(t[1]);
            cid[u][t[3]] = m.coord[u].add_vertex(t[3]);
        }
    }
    m.pi.assign(n, std::vector<VSet>(m.space.size()));
    m.rho.assign(n, std::vector<std::optional<VSet>>(n));
    m.rho_down.assign(n, std::vector<std::optional<std::vector<VSet>>>(n));
    for (const auto& t : lines) {
        if (t[0] == "point" || (t[0] == "coord" && t.size() == 4 && t[2] == "vertex")) continue;
        if (t[0] == "adjacent" && t.size() == 3) {
            m.space.add_edge(point(t[1]), point(t[2]));
        } else if (t[0] == "coord" && t.size() == 5 && t[2] == "edge") {
            int u = m.index.id(t[1]);
            m.coord[u].add_edge(cvert(u, t[3]), cvert(u, t[4]));
        } else if (t[0] == "pi" && t.size() == 4) {
            int u = m.index.id(t[1]);
            m.pi[u][point(t[2])] = vset(u, t[3]);
        } else if (t[0] == "rho" && t.size() == 4) {
            int u = m.index.id(t[1]), v = m.index.id(t[2]);
            m.rho[u][v] = vset(v, t[3]);
        } else if (t[0] == "rho" && t.size() == 5 && t[3].size() > 1 && t[3][0] == '@') {
            int u = m.index.id(t[1]), v = m.index.id(t[2]);
            if (!m.rho_down[u][v]) m.rho_down[u][v] = std::vector<VSet>(m.coord[u].size());
            (*m.rho_down[u][v])[cvert(u, t[3].substr(1))] = vset(v, t[4]);
        } else {
            throw bad("unrecognised line starting with '" + t[0] + "'");
        }
    }
    const auto& S = m.index;
    if (m.space.size() == 0) throw bad("no points");
    for (int u = 0; u < n; ++u) {
        if (m.coord[u].size() == 0) throw bad("empty coordinate graph for " + S.name(u));
        if (!connected(m.coord[u])) throw bad("disconnected coordinate graph for " + S.name(u));
        for (int x = 0; x < m.space.size(); ++x)
            if (m.pi[u][x].empty()) throw bad("missing pi for " + S.name(u) + " at " + m.space.labels[x]);
        for (int v = 0; v < n; ++v) {
            if ((S.proper(u, v) || S.transverse(u, v)) && (!m.rho[u][v] || m.rho[u][v]->empty()))
                throw bad("missing rho " + S.name(u) + " " + S.name(v));
            if (S.proper(v, u)) {
                if (!m.rho_down[u][v]) throw bad("missing rho " + S.name(u) + " " + S.name(v) + " @...");
                for (const auto& img : *m.rho_down[u][v])
                    if (img.empty()) throw bad("incomplete rho " + S.name(u) + " " + S.name(v) + " @...");
            }
        }
    }
    if (!connected(m.space)) throw bad("model points are disconnected");
    finalize_model(m);
    return m;
}

std::string dump_model(const HHSModel& m) {
    const auto& S = m.index;
    std::ostringstream os;
    os << dump_index_set(S);
    for (int x = 0; x < m.points(); ++x) os << "point " << m.space.labels[x] << "\n";
    for (int x = 0; x < m.points(); ++x)
        for (int y : m.space.adj[x])
            if (x < y) os << "adjacent " << m.space.labels[x] << " " << m.space.labels[y] << "\n";
    auto list = [&](int u, const VSet& s) {
        std::string out;
        for (int v : s) out += (out.empty() ? "" : ",") + m.coord[u].labels[v];
        return out;
    };
    for (int u = 0; u < m.domains(); ++u) {
        const auto& g = m.coord[u];
        for (int a = 0; a < g.size(); ++a) os << "coord " << S.name(u) << " vertex " << g.labels[a] << "\n";
        for (int a = 0; a < g.size(); ++a)
            for (int b : g.adj[a])
                if (a < b) os << "coord " << S.name(u) << " edge " << g.labels[a] << " " << g.labels[b] << "\n";
        for (int x = 0; x < m.points(); ++x)
            os << "pi " << S.name(u) << " " << m.space.labels[x] << " " << list(u, m.pi[u][x]) << "\n";
    }
    for (int u = 0; u < m.domains(); ++u)
        for (int v = 0; v < m.domains(); ++v) {
            if (m.rho[u][v]) os << "rho " << S.name(u) << " " << S.name(v) << " " << list(v, *m.rho[u][v]) << "\n";
            if (m.rho_down[u][v])
                for (int a = 0; a < m.coord[u].size(); ++a)
                    os << "rho " << S.name(u) << " " << S.name(v) << " @" << m.coord[u].labels[a] << " "
                       << list(v, (*m.rho_down[u][v])[a]) << "\n";
        }
    return os.str();
}

}  // namespace hhsforge
