#include "hhsforge/cubes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <climits>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hhsforge/parallel.hpp"

namespace hhsforge {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw HhsError(ErrorKind::Parse, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> tokens(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    return tok;
}

}  // namespace

Graph load_graph(const std::string& text) {
    Graph g;
    std::map<std::string, int> idx;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = tokens(raw);
        if (tok.empty()) continue;
        auto bad = [&](const std::string& why) {
            return HhsError(ErrorKind::Parse, "parse error at line " + std::to_string(lineno) + ": " + why);
        };
        if (tok[0] == "vertex" && tok.size() == 2) {
            if (idx.count(tok[1])) throw bad("duplicate vertex " + tok[1]);
            idx[tok[1]] = g.add_vertex(tok[1]);
        } else if (tok[0] == "edge" && tok.size() == 3) {
            auto a = idx.find(tok[1]), b = idx.find(tok[2]);
            if (a == idx.end() || b == idx.end()) throw bad("edge uses undeclared vertex");
            if (a->second == b->second) throw bad("loop at " + tok[1]);
            g.add_edge(a->second, b->second);
        } else {
            throw bad("expected `vertex <id>` or `edge <a> <b>`");
        }
    }
    return g;
}

Graph load_graph_file(const std::string& path) { return load_graph(slurp(path)); }

std::string dump_graph(const Graph& g) {
    std::ostringstream os;
    for (int v = 0; v < g.size(); ++v) os << "vertex " << g.labels[v] << "\n";
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.adj[v])
            if (v < w) os << "edge " << g.labels[v] << " " << g.labels[w] << "\n";
    return os.str();
}

MedianGraph validate_median_graph(const Graph& g) {
    const int n = g.size();
    if (n == 0) throw HhsError(ErrorKind::Precondition, "not median: empty graph");
    if (!connected(g)) throw HhsError(ErrorKind::Precondition, "not median: disconnected");
    MedianGraph mg{g, all_pairs(g)};
    const auto& D = mg.D;
    // Bipartite pre-filter: adjacent vertices never share a distance from vertex 0.
    for (int v = 0; v < n; ++v)
        for (int w : g.adj[v])
            if (D(0, v) == D(0, w)) {
                int third = 0;
                for (int u : g.adj[v])
                    if (g.has_edge(u, w)) third = u;
                throw HhsError(ErrorKind::Precondition, "not median",
                               {g.labels[v], g.labels[w], g.labels[third]});
            }
    std::vector<Bits> iv(static_cast<std::size_t>(n) * n, Bits(static_cast<std::size_t>(n)));
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t a) {
        for (int b = 0; b < n; ++b) {
            Bits& I = iv[a * n + b];
            for (int m = 0; m < n; ++m)
                if (D(static_cast<int>(a), m) + D(m, b) == D(static_cast<int>(a), b)) I.set(m);
        }
    });
    std::vector<std::array<int, 3>> bad(n, {-1, -1, -1});
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ai) {
        int a = static_cast<int>(ai);
        for (int b = a + 1; b < n && bad[a][0] < 0; ++b)
            for (int c = b + 1; c < n; ++c) {
                Bits m = iv[a * n + b] & iv[b * n + c] & iv[a * n + c];
                if (m.count() != 1) {
                    bad[a] = {a, b, c};
                    break;
                }
            }
    });
    for (const auto& t : bad)
        if (t[0] >= 0)
            throw HhsError(ErrorKind::Precondition, "not median",
                           {g.labels[t[0]], g.labels[t[1]], g.labels[t[2]]});
    return mg;
}

CubeComplex make_cube_complex(MedianGraph mg) {
    CubeComplex c;
    c.mg = std::move(mg);
    const auto& g = c.mg.g;
    const auto& D = c.mg.D;
    const int n = g.size();
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
        for (int w : g.adj[v])
            if (v < w) edges.emplace_back(v, w);
    std::map<std::pair<int, int>, int> cls;
    for (auto [a, b] : edges) {
        if (cls.count({a, b})) continue;
        Hyperplane h;
        h.minus = Bits(n);
        h.plus = Bits(n);
        for (int x = 0; x < n; ++x) (D(x, a) < D(x, b) ? h.minus : h.plus).set(x);
        h.side_minus = Bits(n);
        h.side_plus = Bits(n);
        int id = static_cast<int>(c.hyps.size());
        for (auto [u, v] : edges) {
            int lo = -1, hi = -1;
            if (h.minus.test(u) && h.plus.test(v)) lo = u, hi = v;
            if (h.minus.test(v) && h.plus.test(u)) lo = v, hi = u;
            if (lo < 0) continue;
            cls[{u, v}] = id;
            h.edges.emplace_back(lo, hi);
            h.side_minus.set(lo);
            h.side_plus.set(hi);
        }
        h.label = "h" + std::to_string(id);
        c.hyps.push_back(std::move(h));
    }
    const int H = c.hyperplanes();
    c.orient.assign(n, Bits(H));
    for (int h = 0; h < H; ++h) c.hyps[h].plus.for_each([&](int v) { c.orient[v].set(h); });
    c.crosses.assign(H, Bits(H));
    for (int h = 0; h < H; ++h)
        for (int k = h + 1; k < H; ++k) {
            const auto &A = c.hyps[h], &B = c.hyps[k];
            if (A.plus.intersects(B.plus) && A.plus.intersects(B.minus) && A.minus.intersects(B.plus) &&
                A.minus.intersects(B.minus)) {
                c.crosses[h].set(k);
                c.crosses[k].set(h);
            }
        }
    return c;
}

Bits CubeComplex::sep(int x, int y) const { return (orient[x] - orient[y]) | (orient[y] - orient[x]); }

Bits CubeComplex::crossing(const Bits& verts) const {
    Bits out = hset();
    for (int h = 0; h < hyperplanes(); ++h)
        if (verts.intersects(hyps[h].plus) && verts.intersects(hyps[h].minus)) out.set(h);
    return out;
}

Bits CubeComplex::hull(const Bits& verts) const {
    Bits out = Bits::full(static_cast<std::size_t>(vertices()));
    for (const auto& h : hyps) {
        if (verts.subset_of(h.plus)) out &= h.plus;
        else if (verts.subset_of(h.minus)) out &= h.minus;
    }
    return out;
}

int CubeComplex::gate(int x, const Bits& Y) const {
    int best = -1, bd = kInf, ties = 0;
    Y.for_each([&](int y) {
        int d = mg.D(x, y);
        if (d < bd) bd = d, best = y, ties = 1;
        else if (d == bd) ++ties;
    });
    if (best < 0) throw HhsError(ErrorKind::Precondition, "gate onto an empty set");
    if (ties > 1) throw HhsError(ErrorKind::Precondition, "gate onto a non-convex set", {vname(x)});
    return best;
}

Bits CubeComplex::gate_image(const Bits& Y, const Bits& source) const {
    Bits out = vset();
    source.for_each([&](int s) { out.set(gate(s, Y)); });
    return out;
}

std::vector<Bits> CubeComplex::parallel_copies(const Bits& A) const {
    std::map<Bits, Bits> blocks;
    for (int v = 0; v < vertices(); ++v) {
        Bits key = orient[v] - A;
        auto it = blocks.find(key);
        if (it == blocks.end()) it = blocks.emplace(key, vset()).first;
        it->second.set(v);
    }
    std::vector<Bits> out;
    for (auto& [k, b] : blocks)
        if (crossing(b) == A) out.push_back(b);
    std::sort(out.begin(), out.end(), [](const Bits& a, const Bits& b) { return a.first() < b.first(); });
    return out;
}

Bits CubeComplex::crossing_all(const Bits& A) const {
    Bits out = hset();
    for (int k = 0; k < hyperplanes(); ++k)
        if (!A.test(k) && A.subset_of(crosses[k])) out.set(k);
    return out;
}

Bits CubeComplex::orthogonal_complement_at(const Bits& F, int f) const {
    if (!F.test(f)) throw HhsError(ErrorKind::Precondition, "base vertex not in F", {vname(f)});
    if (!convex(F)) throw HhsError(ErrorKind::Precondition, "F is not convex");
    Bits cr = crossing_all(crossing(F));
    Bits out = vset();
    for (int w = 0; w < vertices(); ++w)
        if (sep(f, w).subset_of(cr)) out.set(w);
    return out;
}

int Hyperclosure::find(const Bits& crossing) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].crossing == crossing) return static_cast<int>(i);
    return -1;
}

int Hyperclosure::find(const std::string& name) const {
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<Bits> combinatorial_closure(const CubeComplex& c) {
    std::set<Bits> fam;
    Bits all = Bits::full(static_cast<std::size_t>(c.hyperplanes()));
    fam.insert(all);
    for (const auto& cr : c.crosses)
        if (cr.any()) fam.insert(cr);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Bits> cur(fam.begin(), fam.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                Bits x = cur[i] & cur[j];
                if (x.any() && fam.insert(x).second) grew = true;
            }
    }
    return {fam.begin(), fam.end()};
}

Hyperclosure hyperclosure(const CubeComplex& c, int depth_cap) {
    if (depth_cap <= 0) depth_cap = 10 * std::max(1, c.hyperplanes());
    std::vector<Bits> cr, rep;
    std::set<Bits> seen;
    auto add = [&](const Bits& set) {
        if (set.count() <= 1) return false;  // singletons are excluded
        Bits x = c.crossing(set);
        if (!seen.insert(x).second) return false;
        cr.push_back(x);
        rep.push_back(set);
        return true;
    };
    add(Bits::full(static_cast<std::size_t>(c.vertices())));
    for (const auto& h : c.hyps) {
        add(h.side_minus);
        add(h.side_plus);
    }
    Hyperclosure out;
    std::size_t done = 0;
    while (done < cr.size()) {
        if (++out.rounds > depth_cap)
            throw HhsError(ErrorKind::Cap, "did not stabilize within depth_cap");
        std::size_t n = cr.size();
        std::vector<Bits> images;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (std::max(i, j) >= done && i != j) images.push_back(c.gate_image(rep[i], rep[j]));
        done = n;
        for (const auto& img : images) add(img);
    }

    std::vector<int> order(cr.size());
    for (std::size_t i = 0; i < cr.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cr[a].count() != cr[b].count()) return cr[a].count() > cr[b].count();
        return cr[a] < cr[b];
    });
    Bits boundary = c.hset();
    for (int h = 0; h < c.hyperplanes(); ++h)
        if (c.hyps[h].boundary) boundary.set(h);
    for (int i : order) {
        ParallelClass pc;
        pc.crossing = cr[i];
        pc.rep = c.parallel_copies(cr[i]).front();
        pc.boundary = cr[i].intersects(boundary);
        out.classes.push_back(std::move(pc));
    }
    const int k = static_cast<int>(out.classes.size());
    std::vector<int> chain(k, 1);
    for (int i = k - 1; i >= 0; --i) {
        auto& ci = out.classes[i];
        ci.minimal = true;
        for (int j = i + 1; j < k; ++j)
            if (out.classes[j].crossing.subset_of(ci.crossing)) {
                ci.minimal = false;
                chain[i] = std::max(chain[i], chain[j] + 1);
            }
        out.longest_chain = std::max(out.longest_chain, chain[i]);
    }
    out.weak_factor_system = true;  // stabilized, so chains and multiplicities are finite

    for (int i = 0; i < k; ++i) {
        auto& pc = out.classes[i];
        if (i == 0) {
            pc.name = "Z";
        } else if (pc.crossing.count() == 1) {
            pc.name = "[" + c.hyps[pc.crossing.first()].label + "]";
        } else {
            pc.name = "C" + std::to_string(i);
            for (int h = 0; h < c.hyperplanes(); ++h)
                if (c.crosses[h] == pc.crossing) {
                    pc.name = "[H_" + c.hyps[h].label + "]";
                    break;
                }
        }
    }
    return out;
}

std::string dump_hyperclosure(const CubeComplex& c, const Hyperclosure& h) {
    std::ostringstream os;
    for (std::size_t k = 0; k < h.classes.size(); ++k) {
        const auto& pc = h.classes[k];
        os << "class " << k << ": name=" << pc.name << " crossing={";
        bool first = true;
        pc.crossing.for_each([&](int x) {
            os << (first ? "" : ",") << c.hyps[x].label;
            first = false;
        });
        os << "} rep={";
        first = true;
        pc.rep.for_each([&](int v) {
            os << (first ? "" : " ") << c.vname(v);
            first = false;
        });
        os << "} minimal=" << (pc.minimal ? "true" : "false")
           << " boundary=" << (pc.boundary ? "true" : "false") << "\n";
    }
    return os.str();
}

IndexSet index_set_from_classes(const CubeComplex& c, const Hyperclosure& h) {
    const int k = static_cast<int>(h.classes.size());
    std::vector<std::string> names;
    for (const auto& pc : h.classes) names.push_back(pc.name);
    std::vector<std::pair<int, int>> nest, orth;
    for (int i = 0; i < k; ++i) {
        const auto& A = h.classes[i];
        Bits perp = c.crossing(c.orthogonal_complement_at(A.rep, A.rep.first()));
        for (int j = 0; j < k; ++j) {
            if (i != j && h.classes[i].crossing.subset_of(h.classes[j].crossing)) nest.emplace_back(i, j);
            if (h.classes[j].crossing.subset_of(perp)) orth.emplace_back(i, j);
        }
    }
    return IndexSet::build(names, nest, orth);
}

namespace {

struct CoordBuild {
    Graph g;
    std::vector<int> vmap;            // complex vertex -> coordinate vertex, -1 outside rep
    std::map<Bits, int> cone_of;      // coned image -> cone vertex
    std::vector<Bits> coned;          // coordinate vertex -> coned complex set (empty for rep vertices)
};

}  // namespace

HHSModel index_set_from_hyperclosure(const CubeComplex& c, const Hyperclosure& h) {
    if (!h.weak_factor_system)
        throw HhsError(ErrorKind::Precondition, "not a weak factor system",
                       {"longest_chain=" + std::to_string(h.longest_chain)});
    HHSModel m;
    m.index = index_set_from_classes(c, h);
    m.space = c.mg.g;
    const int k = static_cast<int>(h.classes.size());
    const int n = c.vertices();

    std::vector<std::vector<Bits>> copies(k);
    for (int i = 0; i < k; ++i) copies[i] = c.parallel_copies(h.classes[i].crossing);

    std::vector<CoordBuild> cb(k);
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t ui) {
        const int u = static_cast<int>(ui);
        const Bits& R = h.classes[u].rep;
        auto& b = cb[u];
        b.vmap.assign(n, -1);
        if (R.count() == 2) {
            // A single edge collapses to one vertex.
            std::string lab;
            R.for_each([&](int v) { lab += (lab.empty() ? "" : "|") + c.vname(v); });
            int x = b.g.add_vertex(lab);
            R.for_each([&](int v) { b.vmap[v] = x; });
            b.coned.push_back(R);
            return;
        }
        R.for_each([&](int v) {
            b.vmap[v] = b.g.add_vertex(c.vname(v));
            b.coned.emplace_back();
        });
        R.for_each([&](int v) {
            for (int w : c.mg.g.adj[v])
                if (R.test(w)) b.g.add_edge(b.vmap[v], b.vmap[w]);
        });
        for (int j = 0; j < k; ++j)
            for (const auto& cp : copies[j]) {
                Bits img = c.gate_image(R, cp);
                if (img.count() <= 1 || img == R || b.cone_of.count(img)) continue;
                int x = b.g.add_vertex("cone" + std::to_string(b.cone_of.size()));
                b.cone_of[img] = x;
                b.coned.push_back(img);
                img.for_each([&](int v) { b.g.add_edge(x, b.vmap[v]); });
            }
    });

    m.coord.resize(k);
    m.pi.assign(k, std::vector<VSet>(n));
    for (int u = 0; u < k; ++u) {
        m.coord[u] = cb[u].g;
        for (int x = 0; x < n; ++x) m.pi[u][x] = {cb[u].vmap[c.gate(x, h.classes[u].rep)]};
    }
    m.rho.assign(k, std::vector<std::optional<VSet>>(k));
    m.rho_down.assign(k, std::vector<std::optional<std::vector<VSet>>>(k));
    const auto& S = m.index;
    parallel_for(static_cast<std::size_t>(k), [&](std::size_t vi) {
        const int v = static_cast<int>(vi);
        const Bits& RV = h.classes[v].rep;
        for (int u = 0; u < k; ++u) {
            if (u == v) continue;
            auto rel = S.relation(u, v);
            if (rel == Rel::NestedIn || rel == Rel::Transverse) {
                std::set<int> out;
                for (const auto& cp : copies[u]) {
                    Bits img = c.gate_image(RV, cp);
                    auto it = cb[v].cone_of.find(img);
                    if (it != cb[v].cone_of.end()) out.insert(it->second);
                    else img.for_each([&](int p) { out.insert(cb[v].vmap[p]); });
                }
                m.rho[u][v] = VSet(out.begin(), out.end());
            }
        }
    });
    for (int u = 0; u < k; ++u)
        for (int v = 0; v < k; ++v) {
            if (!S.proper(v, u)) continue;
            std::vector<VSet> table(m.coord[u].size());
            for (int a = 0; a < m.coord[u].size(); ++a) {
                std::set<int> out;
                const Bits& src = cb[u].coned[a];
                if (src.none()) {
                    // Rep vertex: find it.
                    for (int p = 0; p < n; ++p)
                        if (cb[u].vmap[p] == a) out.insert(m.pi[v][p].begin(), m.pi[v][p].end());
                } else {
                    src.for_each([&](int p) { out.insert(m.pi[v][p].begin(), m.pi[v][p].end()); });
                }
                table[a] = VSet(out.begin(), out.end());
            }
            m.rho_down[u][v] = std::move(table);
        }
    finalize_model(m);
    return m;
}

PropertyReport check_complement_involution(const CubeComplex& c, const Hyperclosure& h) {
    PropertyReport r;
    r.property = "complement_involution";
    for (const auto& pc : h.classes) {
        if (pc.crossing == Bits::full(static_cast<std::size_t>(c.hyperplanes()))) continue;
        int f = pc.rep.first();
        Bits perp = c.orthogonal_complement_at(pc.rep, f);
        if (perp.count() <= 1) {
            r.verdict = false;
            r.witness = {pc.name, "complement is a point"};
            return r;
        }
        if (h.find(c.crossing(perp)) < 0) {
            r.verdict = false;
            r.witness = {pc.name, "complement outside the hyperclosure"};
            return r;
        }
        Bits back = c.orthogonal_complement_at(perp, f);
        if (!(c.crossing(back) == pc.crossing)) {
            r.verdict = false;
            r.witness = {pc.name, "double complement not parallel"};
            return r;
        }
    }
    return r;
}

Graph edge_graph() {
    Graph g;
    g.add_vertex("0");
    g.add_vertex("1");
    g.add_edge(0, 1);
    return g;
}

Graph triangle_graph() {
    Graph g;
    for (int i = 0; i < 3; ++i) g.add_vertex(std::to_string(i));
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
}

Graph grid_graph(int w, int h) {
    Graph g;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) g.add_vertex(std::to_string(x) + "_" + std::to_string(y));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int v = y * w + x;
            if (x + 1 < w) g.add_edge(v, v + 1);
            if (y + 1 < h) g.add_edge(v, v + w);
        }
    return g;
}

Graph square_graph() { return grid_graph(2, 2); }

Graph cube_graph() {
    Graph g;
    for (int v = 0; v < 8; ++v) {
        std::string s;
        for (int i = 0; i < 3; ++i) s += ((v >> i) & 1) ? '1' : '0';
        g.add_vertex(s);
    }
    for (int v = 0; v < 8; ++v)
        for (int i = 0; i < 3; ++i)
            if (!((v >> i) & 1)) g.add_edge(v, v | (1 << i));
    return g;
}

CubeComplex grid_complex(int w, int h) {
    auto c = make_cube_complex(validate_median_graph(grid_graph(w, h)));
    for (auto& hp : c.hyps) {
        auto [a, b] = hp.edges.front();
        // Vertices are numbered y * w + x.
        if (b - a == 1 || a - b == 1) hp.label = "x" + std::to_string(std::min(a, b) % w);
        else hp.label = "y" + std::to_string(std::min(a, b) / w);
    }
    return c;
}

namespace {

enum class PRel { Cross, Sub, Sup, Disj };

// The pocset whose dual cube complex realises the counterexample.
struct Pocset {
    std::vector<std::string> labels;
    std::vector<int> number;  // label number for numeric and fin hyperplanes, else INT_MIN
    std::vector<std::vector<PRel>> rel;
};

Pocset counterexample_pocset(int depth) {
    Pocset p;
    const int top = 2 * depth + 1;
    std::map<std::string, int> id;
    auto add = [&](const std::string& l, int num) {
        id[l] = static_cast<int>(p.labels.size());
        p.labels.push_back(l);
        p.number.push_back(num);
    };
    for (int n = -1; n <= top; ++n) add(std::to_string(n), n);
    for (const char* g : {"Sigma", "Delta", "Gamma1", "Gamma2"}) add(g, INT_MIN);
    for (int n = -1; n <= top; ++n) add("K" + std::to_string(n), n);
    add("KGamma1", INT_MIN);
    add("KGamma2", INT_MIN);
    const int N = static_cast<int>(p.labels.size());
    p.rel.assign(N, std::vector<PRel>(N, PRel::Disj));
    auto cross = [&](const std::string& a, const std::string& b) {
        p.rel[id[a]][id[b]] = p.rel[id[b]][id[a]] = PRel::Cross;
    };
    auto sub = [&](const std::string& a, const std::string& b) {  // a+ inside b+
        p.rel[id[a]][id[b]] = PRel::Sub;
        p.rel[id[b]][id[a]] = PRel::Sup;
    };
    for (int n = -1; n <= top; ++n) {
        std::string s = std::to_string(n);
        if (n >= 0) cross("Sigma", s);
        if (n == -1 || n >= 1) cross("Delta", s);
        if (n >= 1 && n % 2 == 1) cross("Gamma1", s);
        if (n >= 2 && n % 2 == 0) cross("Gamma2", s);
        cross("K" + s, s);
    }
    cross("KGamma1", "Gamma1");
    cross("KGamma2", "Gamma2");
    for (int a = 1; a <= top; ++a)
        for (int b = a + 2; b <= top; b += 2) {
            sub(std::to_string(b), std::to_string(a));
            sub("K" + std::to_string(b), std::to_string(a));
        }
    return p;
}

bool consistent(const Pocset& p, const std::vector<char>& o) {
    const int N = static_cast<int>(o.size());
    for (int i = 0; i < N; ++i) {
        if (!o[i]) continue;
        for (int j = 0; j < N; ++j) {
            switch (p.rel[i][j]) {
                case PRel::Sub:
                    if (!o[j]) return false;
                    break;
                case PRel::Disj:
                    if (j != i && o[j]) return false;
                    break;
                default: break;
            }
        }
    }
    return true;
}

}  // namespace

CubeComplex build_counterexample(int depth) {
    if (depth < 1) throw HhsError(ErrorKind::Precondition, "depth must be at least 1");
    Pocset p = counterexample_pocset(depth);
    const int N = static_cast<int>(p.labels.size());
    std::map<std::vector<char>, int> seen;
    std::vector<std::vector<char>> verts;
    Graph g;
    std::vector<char> start(N, 0);
    seen[start] = 0;
    verts.push_back(start);
    g.add_vertex("v0");
    std::deque<int> q{0};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int i = 0; i < N; ++i) {
            auto o = verts[v];
            o[i] = !o[i];
            if (!consistent(p, o)) continue;
            auto it = seen.find(o);
            int w;
            if (it == seen.end()) {
                w = static_cast<int>(verts.size());
                seen[o] = w;
                verts.push_back(o);
                g.add_vertex("v" + std::to_string(w));
                q.push_back(w);
            } else {
                w = it->second;
            }
            g.add_edge(v, w);
        }
    }
    auto c = make_cube_complex(validate_median_graph(g));
    for (auto& hp : c.hyps) {
        auto [a, b] = hp.edges.front();
        int j = 0;
        while (verts[a][j] == verts[b][j]) ++j;
        hp.label = p.labels[j];
        hp.boundary = p.number[j] != INT_MIN && p.number[j] >= 2 * depth - 2;
    }
    return c;
}

HHSModel grid_model(int w, int h) {
    auto c = grid_complex(w, h);
    auto hc = hyperclosure(c);
    for (auto& pc : hc.classes) {
        if (pc.name == "Z") pc.name = "S";
        // Vertical class: columns, crossed by the horizontal cuts.
        else if (c.hyps[pc.crossing.first()].label[0] == 'y') pc.name = "V";
        else pc.name = "H";
    }
    return index_set_from_hyperclosure(c, hc);
}

HHSModel square_model() { return grid_model(2, 2); }

HHSModel cube_model() {
    auto c = make_cube_complex(validate_median_graph(cube_graph()));
    for (auto& hp : c.hyps) {
        auto [a, b] = hp.edges.front();
        int bit = 0;
        while (c.mg.g.labels[a][bit] == c.mg.g.labels[b][bit]) ++bit;
        hp.label = std::to_string(bit + 1);
    }
    auto hc = hyperclosure(c);
    for (auto& pc : hc.classes) {
        std::string nm;
        pc.crossing.for_each([&](int x) { nm += c.hyps[x].label; });
        std::sort(nm.begin(), nm.end());
        pc.name = nm;
    }
    return index_set_from_hyperclosure(c, hc);
}

HHSModel counterexample_model(int depth) {
    auto c = build_counterexample(depth);
    auto hc = hyperclosure(c);
    Bits odd = c.hset();
    for (int k = 0; k < c.hyperplanes(); ++k) {
        const auto& l = c.hyps[k].label;
        if (std::isdigit(static_cast<unsigned char>(l[0])) && std::stoi(l) % 2 == 1) odd.set(k);
    }
    int f = hc.find(odd);
    if (f >= 0) hc.classes[f].name = "[F]";
    return index_set_from_hyperclosure(c, hc);
}

HHSModel load_model_file(const std::string& path) {
    std::string text = slurp(path);
    std::string dir = std::filesystem::path(path).parent_path().string();
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        auto tok = tokens(raw);
        if (tok.size() == 2 && tok[0] == "median") {
            auto file = std::filesystem::path(dir) / tok[1];
            auto c = make_cube_complex(validate_median_graph(load_graph_file(file.string())));
            return index_set_from_hyperclosure(c, hyperclosure(c));
        }
    }
    return load_model(text, dir);
}

Graph minimal_orthogonality_graph(const IndexSet& s) {
    Graph g;
    auto mins = s.minimal();
    for (int u : mins) g.add_vertex(s.name(u));
    for (std::size_t i = 0; i < mins.size(); ++i)
        for (std::size_t j = i + 1; j < mins.size(); ++j)
            if (s.orthogonal(mins[i], mins[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

PropertyReport check_counterexample_minimal_graph(const IndexSet& s, int depth) {
    PropertyReport r{"counterexample_minimal_graph", true, {}, std::nullopt};
    struct Node {
        std::string name;
        int label;  // numeric label, or one of the Greek markers below
    };
    constexpr int kSigma = -100, kDelta = -101, kGamma1 = -102, kGamma2 = -103;
    std::vector<Node> nodes{{"[Sigma]", kSigma}, {"[Delta]", kDelta}, {"[Gamma1]", kGamma1}, {"[Gamma2]", kGamma2}};
    for (int n = -1; n <= 2 * depth - 3; ++n) nodes.push_back({"[" + std::to_string(n) + "]", n});
    auto expected = [&](int a, int b) {
        if (a >= -1 && b >= -1) return false;
        if (a < -1 && b < -1) return false;
        int g = std::min(a, b), n = std::max(a, b);
        switch (g) {
            case kSigma: return n >= 0;
            case kDelta: return n == -1 || n >= 1;
            case kGamma1: return n >= 1 && n % 2 == 1;
            case kGamma2: return n >= 2 && n % 2 == 0;
        }
        return false;
    };
    std::vector<int> ids;
    for (const auto& nd : nodes) {
        auto u = s.find(nd.name);
        if (!u || !s.is_minimal(*u)) {
            r.verdict = false;
            r.witness = {nd.name, "missing or not minimal"};
            return r;
        }
        ids.push_back(*u);
    }
    long pairs = 0;
    for (std::size_t i = 0; i < nodes.size() && r.verdict; ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            ++pairs;
            bool want = expected(nodes[i].label, nodes[j].label);
            if (s.orthogonal(ids[i], ids[j]) != want) {
                r.verdict = false;
                r.witness = {nodes[i].name, nodes[j].name, want ? "edge expected" : "no edge expected"};
                break;
            }
        }
    r.constant = static_cast<double>(pairs);
    return r;
}

}  // namespace hhsforge
