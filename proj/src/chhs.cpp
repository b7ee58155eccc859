#include "hhsforge/chhs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "hhsforge/parallel.hpp"

namespace hhsforge {

namespace {

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

VSet sorted(VSet v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> base_link(const BlowupGraph& x, const std::vector<int>& bs) {
    std::vector<int> out;
    for (int b = 0; b < x.base.size(); ++b) {
        if (std::find(bs.begin(), bs.end(), b) != bs.end()) continue;
        bool ok = true;
        for (int a : bs)
            if (!x.base_nbr[a].test(sz(b))) ok = false;
        if (ok) out.push_back(b);
    }
    return out;
}

std::vector<int> domains_of(const BlowupGraph& x, const std::vector<int>& bs) {
    std::vector<int> out;
    for (int b : bs) out.push_back(x.base_domain[b]);
    return out;
}

// Unique maximal domain orthogonal to all of `doms`; top for none, kEmpty if nothing qualifies.
int complement_of(const HHSModel& m, const std::vector<int>& doms) {
    if (doms.empty()) return m.index.top();
    Bits cand = m.index.below(m.index.top());
    for (int d : doms) cand &= m.index.orth(d);
    if (cand.none()) return kEmpty;
    return orth_complement(m.index, doms, m.index.top());
}

// The piece of s inside the cone over base vertex b.
struct Piece {
    bool apex = false;
    int base = -1;  // X vertex
    bool empty() const { return !apex && base < 0; }
    bool edge() const { return apex && base >= 0; }
};

Piece piece(const BlowupGraph& x, const Simplex& s, int b) {
    Piece pc;
    s.for_each([&](int v) {
        if (x.p[v] != b) return;
        if (x.coord_of[v] < 0)
            pc.apex = true;
        else
            pc.base = v;
    });
    return pc;
}

Bits local_link(const BlowupGraph& x, int b, const Piece& pc) {
    Bits out = x.empty();
    if (pc.edge() || pc.empty()) return out;
    if (pc.apex) {
        for (int v : x.cone_base[b]) out.set(sz(v));
    } else {
        out.set(sz(x.apex[b]));
    }
    return out;
}

bool nontrivial_join(const BlowupGraph& x, const Bits& l) {
    auto vs = l.items();
    if (vs.size() < 2) return false;
    // A join splits into two parts iff the complement graph is disconnected.
    std::vector<int> comp(vs.size(), -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    std::size_t seen = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (comp[j] < 0 && !x.nbr[vs[i]].test(sz(vs[j]))) {
                comp[j] = 0;
                ++seen;
                stack.push_back(static_cast<int>(j));
            }
    }
    return seen < vs.size();
}

std::string dom_list(const IndexSet& s, const std::vector<int>& doms) {
    std::string out = "{";
    for (std::size_t i = 0; i < doms.size(); ++i) out += (i ? "," : "") + s.name(doms[i]);
    return out + "}";
}

std::string dom_or_empty(const IndexSet& s, int u) { return u == kEmpty ? "EMPTY" : s.name(u); }

// Best (K, C) with lhs <= K rhs + C, K on a quarter grid in [1, 20], minimising K + C.
DistanceProfile fit(const std::vector<std::pair<double, double>>& pairs) {
    DistanceProfile best{1, 0};
    double score = std::numeric_limits<double>::infinity();
    for (double K = 1; K <= 20; K += 0.25) {
        double C = 0;
        for (auto [lhs, rhs] : pairs) C = std::max(C, lhs - K * rhs);
        if (K + C < score) {
            score = K + C;
            best = {K, C};
        }
    }
    return best;
}

}  // namespace

BlowupGraph blow_up(const HHSModel& m) {
    const IndexSet& S = m.index;
    BlowupGraph x;
    auto mins = S.minimal();
    if (mins.empty()) throw HhsError(ErrorKind::Precondition, "model has no minimal domains");
    x.base_of.assign(sz(S.size()), -1);
    for (int u : mins) {
        x.base_of[u] = x.base.add_vertex(S.name(u));
        x.base_domain.push_back(u);
    }
    const int nb = x.base.size();
    for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b)
            if (S.orthogonal(x.base_domain[a], x.base_domain[b])) x.base.add_edge(a, b);
    x.base_nbr.assign(sz(nb), Bits(sz(nb)));
    for (int a = 0; a < nb; ++a)
        for (int b : x.base.adj[a]) x.base_nbr[a].set(sz(b));

    x.apex.resize(sz(nb));
    x.cone_base.resize(sz(nb));
    for (int b = 0; b < nb; ++b) {
        int u = x.base_domain[b];
        x.apex[b] = x.blown.add_vertex("v:" + S.name(u));
        x.p.push_back(b);
        x.coord_of.push_back(-1);
        const Graph& cu = m.coord[u];
        for (int c = 0; c < cu.size(); ++c) {
            std::string lab = cu.labels.empty() || cu.labels[c].empty() ? std::to_string(c) : cu.labels[c];
            int v = x.blown.add_vertex(S.name(u) + ":" + lab);
            x.p.push_back(b);
            x.coord_of.push_back(c);
            x.cone_base[b].push_back(v);
            x.blown.add_edge(x.apex[b], v);
        }
    }
    auto cone = [&](int b) {
        std::vector<int> vs{x.apex[b]};
        vs.insert(vs.end(), x.cone_base[b].begin(), x.cone_base[b].end());
        return vs;
    };
    for (int a = 0; a < nb; ++a)
        for (int b : x.base.adj[a])
            if (a < b)
                for (int v : cone(a))
                    for (int w : cone(b)) x.blown.add_edge(v, w);
    x.nbr.assign(sz(x.size()), x.empty());
    for (int v = 0; v < x.size(); ++v)
        for (int w : x.blown.adj[v]) x.nbr[v].set(sz(w));
    for (const auto& c : base_cliques(x, true))
        x.max_orth_family = std::max(x.max_orth_family, static_cast<int>(c.size()));
    return x;
}

bool is_simplex(const BlowupGraph& x, const Simplex& s) {
    auto vs = s.items();
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (!x.nbr[vs[i]].test(sz(vs[j]))) return false;
    return true;
}

std::vector<int> support(const BlowupGraph& x, const Simplex& s) {
    std::vector<int> out;
    s.for_each([&](int v) { out.push_back(x.p[v]); });
    return sorted(out);
}

Bits link_of_set(const BlowupGraph& x, const Bits& set) {
    Bits out = Bits::full(sz(x.size()));
    set.for_each([&](int v) { out &= x.nbr[v]; });
    return out - set;
}

Bits link(const BlowupGraph& x, const Simplex& s) { return link_of_set(x, s); }

Bits link_decomposed(const BlowupGraph& x, const Simplex& s) {
    auto sup = support(x, s);
    Bits out = x.empty();
    for (int b : base_link(x, sup)) {
        out.set(sz(x.apex[b]));
        for (int v : x.cone_base[b]) out.set(sz(v));
    }
    for (int b : sup) out |= local_link(x, b, piece(x, s, b));
    return out;
}

std::vector<std::vector<int>> base_cliques(const BlowupGraph& x, bool maximal_only) {
    std::vector<std::vector<int>> out;
    const int nb = x.base.size();
    std::vector<int> r;
    if (maximal_only) {
        std::function<void(Bits, Bits)> bk = [&](Bits p, Bits ex) {
            if (p.none() && ex.none()) {
                out.push_back(r);
                return;
            }
            for (int v : p.items()) {
                r.push_back(v);
                bk(p & x.base_nbr[v], ex & x.base_nbr[v]);
                r.pop_back();
                p.reset(sz(v));
                ex.set(sz(v));
            }
        };
        bk(Bits::full(sz(nb)), Bits(sz(nb)));
    } else {
        std::function<void(const Bits&)> grow = [&](const Bits& cand) {
            out.push_back(r);
            cand.for_each([&](int v) {
                if (!r.empty() && v < r.back()) return;
                r.push_back(v);
                grow(cand & x.base_nbr[v]);
                r.pop_back();
            });
        };
        grow(Bits::full(sz(nb)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Simplex> maximal_simplices(const BlowupGraph& x) {
    std::vector<Simplex> out;
    for (const auto& cl : base_cliques(x, true)) {
        std::vector<std::size_t> idx(cl.size(), 0);
        bool empty_cone = false;
        for (int b : cl)
            if (x.cone_base[b].empty()) empty_cone = true;
        if (empty_cone) throw HhsError(ErrorKind::Precondition, "minimal domain with empty coordinate graph");
        while (true) {
            Simplex s = x.empty();
            for (std::size_t i = 0; i < cl.size(); ++i) {
                s.set(sz(x.apex[cl[i]]));
                s.set(sz(x.cone_base[cl[i]][idx[i]]));
            }
            out.push_back(s);
            std::size_t i = 0;
            while (i < cl.size() && ++idx[i] == x.cone_base[cl[i]].size()) idx[i++] = 0;
            if (i == cl.size()) break;
        }
    }
    return out;
}

std::vector<Simplex> all_simplices(const BlowupGraph& x) {
    std::vector<Simplex> out;
    for (const auto& cl : base_cliques(x, false)) {
        // Option 0 is the apex, 1..k a base vertex, k+1..2k an edge.
        std::vector<std::size_t> idx(cl.size(), 0);
        while (true) {
            Simplex s = x.empty();
            for (std::size_t i = 0; i < cl.size(); ++i) {
                int b = cl[i];
                std::size_t k = x.cone_base[b].size();
                if (idx[i] == 0) {
                    s.set(sz(x.apex[b]));
                } else if (idx[i] <= k) {
                    s.set(sz(x.cone_base[b][idx[i] - 1]));
                } else {
                    s.set(sz(x.apex[b]));
                    s.set(sz(x.cone_base[b][idx[i] - k - 1]));
                }
            }
            out.push_back(s);
            std::size_t i = 0;
            while (i < cl.size() && ++idx[i] == 2 * x.cone_base[cl[i]].size() + 1) idx[i++] = 0;
            if (i == cl.size()) break;
        }
    }
    return out;
}

const char* shape_name(LinkShape s) {
    switch (s) {
        case LinkShape::PointOrJoin: return "point-or-join";
        case LinkShape::AllEdges: return "all-edges";
        case LinkShape::AlmostMaximal: return "almost-maximal";
    }
    return "?";
}

LinkShape link_shape(const BlowupGraph& x, const Simplex& s) {
    auto sup = support(x, s);
    bool outer = !base_link(x, sup).empty();
    int nonempty = outer ? 1 : 0;
    int last = -1;
    for (int b : sup)
        if (local_link(x, b, piece(x, s, b)).any()) {
            ++nonempty;
            last = b;
        }
    if (nonempty >= 2) return LinkShape::PointOrJoin;
    if (nonempty == 0 || outer) return LinkShape::AllEdges;
    Piece pc = piece(x, s, last);
    return pc.apex ? LinkShape::AlmostMaximal : LinkShape::PointOrJoin;
}

bool shape_holds(const BlowupGraph& x, const Simplex& s, LinkShape tag) {
    auto sup = support(x, s);
    switch (tag) {
        case LinkShape::PointOrJoin: {
            Bits l = link(x, s);
            return l.count() == 1 || nontrivial_join(x, l);
        }
        case LinkShape::AllEdges:
            for (int b : sup)
                if (!piece(x, s, b).edge()) return false;
            return true;
        case LinkShape::AlmostMaximal: {
            if (!base_link(x, sup).empty()) return false;
            int apexes = 0;
            for (int b : sup) {
                Piece pc = piece(x, s, b);
                if (pc.apex && pc.base < 0)
                    ++apexes;
                else if (!pc.edge())
                    return false;
            }
            return apexes == 1;
        }
    }
    return false;
}

SimplexClasses simplex_classes(const BlowupGraph& x) {
    SimplexClasses c;
    c.simplices = all_simplices(x);
    c.simplex_link.resize(c.simplices.size());
    parallel_for(c.simplices.size(), [&](std::size_t i) { c.simplex_link[i] = link(x, c.simplices[i]); });
    c.class_of.assign(c.simplices.size(), -1);
    for (std::size_t i = 0; i < c.simplices.size(); ++i) {
        const Bits& l = c.simplex_link[i];
        if (l.none()) continue;
        auto [it, fresh] = c.by_link.emplace(l, c.classes());
        if (fresh) {
            c.link.push_back(l);
            c.sat.push_back(x.empty());
            c.rep.push_back(static_cast<int>(i));
        }
        c.class_of[i] = it->second;
        c.sat[it->second] |= c.simplices[i];
        if (c.simplices[i].none()) c.empty_class = it->second;
    }
    return c;
}

LinkOps link_ops(const BlowupGraph& x, const SimplexClasses& c, const Simplex& s) {
    if (!is_simplex(x, s)) throw HhsError(ErrorKind::Precondition, "not a simplex", {simplex_name(x, s)});
    LinkOps r;
    r.link = link(x, s);
    r.star = r.link | s;
    r.shape = link_shape(x, s);
    auto it = c.by_link.find(r.link);
    if (it != c.by_link.end()) {
        r.class_id = it->second;
        r.saturation = c.sat[it->second];
    } else {
        r.saturation = x.empty();
        for (std::size_t i = 0; i < c.simplices.size(); ++i)
            if (c.class_of[i] < 0) r.saturation |= c.simplices[i];
    }
    return r;
}

Rel class_relation(const BlowupGraph& x, const SimplexClasses& c, int a, int b) {
    const Bits& la = c.link[a];
    const Bits& lb = c.link[b];
    if (la == lb) return Rel::Equal;
    if (la.subset_of(lb)) return Rel::NestedIn;
    if (lb.subset_of(la)) return Rel::Contains;
    if (lb.subset_of(link_of_set(x, la))) return Rel::Orthogonal;
    return Rel::Transverse;
}

int simplex_complement(const HHSModel& m, const BlowupGraph& x, const std::vector<int>& base_simplex) {
    return complement_of(m, domains_of(x, base_simplex));
}

int weak_complement(const HHSModel& m, const BlowupGraph& x, const std::vector<int>& base_simplex) {
    const IndexSet& S = m.index;
    auto lk = base_link(x, base_simplex);
    if (lk.empty()) return kEmpty;
    Bits cand = Bits::full(sz(S.size()));
    for (int d : domains_of(x, base_simplex)) cand &= S.orth(d);
    for (int d : domains_of(x, lk)) cand &= S.above(d);
    std::vector<int> mins;
    cand.for_each([&](int t) {
        bool minimal = true;
        cand.for_each([&](int o) {
            if (o != t && S.nested(o, t)) minimal = false;
        });
        if (minimal) mins.push_back(t);
    });
    if (mins.size() != 1)
        throw HhsError(ErrorKind::Precondition, "weak complement undefined", S.ids(mins));
    return mins[0];
}

int co_level(const IndexSet& s, int u) { return depth_stats(s, u).co_level; }

ConsistentTuple b_sigma(const HHSModel& m, const BlowupGraph& x, const Simplex& sigma) {
    if (!is_simplex(x, sigma) || link(x, sigma).any())
        throw HhsError(ErrorKind::Precondition, "simplex is not maximal", {simplex_name(x, sigma)});
    const IndexSet& S = m.index;
    std::vector<std::pair<int, int>> parts;  // (domain, CU vertex)
    for (int b : support(x, sigma)) parts.emplace_back(x.base_domain[b], x.coord_of[piece(x, sigma, b).base]);
    ConsistentTuple t;
    t.scope = S.top();
    t.coords.assign(sz(S.size()), std::nullopt);
    for (int v = 0; v < S.size(); ++v) {
        VSet out;
        bool own = false;
        for (auto [u, c] : parts) {
            if (u == v) {
                out = {c};
                own = true;
                break;
            }
            if (S.orthogonal(u, v)) continue;
            if (!m.rho[u][v]) throw HhsError(ErrorKind::Precondition, "missing rho", {S.name(u), S.name(v)});
            out.insert(out.end(), m.rho[u][v]->begin(), m.rho[u][v]->end());
        }
        if (!own) out = sorted(out);
        if (out.empty()) throw HhsError(ErrorKind::Precondition, "empty b coordinate", {S.name(v)});
        t.coords[v] = out;
    }
    return t;
}

namespace {

int tuple_distance(const HHSModel& m, const ConsistentTuple& a, const ConsistentTuple& b) {
    int d = 0;
    for (int u = 0; u < m.domains(); ++u) d = std::max(d, m.du(u, *a.coords[u], *b.coords[u]));
    return d;
}

}  // namespace

LambdaConstants lambda_constants(const HHSModel& m, const std::vector<ConsistentTuple>& b,
                                 const std::vector<int>& f) {
    LambdaConstants k;
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i)
        for (int u = 0; u < m.domains(); ++u)
            k.M = std::max<double>(k.M, m.diam_union(u, *b[i].coords[u], m.pi[u][f[i]]));
    for (int z = 0; z < m.points(); ++z) {
        int best = kInf;
        for (int p : f) best = std::min(best, m.dz(z, p));
        k.C0 = std::max<double>(k.C0, best);
    }
    std::vector<std::pair<int, int>> part(n, {0, 0});
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int dz = m.dz(f[i], f[j]);
            if (dz > 4 * k.C0 + 1) continue;
            int d = tuple_distance(m, b[i], b[j]);
            part[i].first = std::max(part[i].first, d);
            if (dz <= 2 * k.C0 + 2) part[i].second = std::max(part[i].second, d);
        }
    });
    for (auto [a, c] : part) {
        k.M1 = std::max<double>(k.M1, a);
        k.M0 = std::max<double>(k.M0, c);
    }
    k.lambda0 = 2 * k.M;
    k.lambda1 = std::max(k.M1, k.lambda0);
    k.lambda2 = std::max(k.M0 + 2 * m.E, k.lambda1);
    return k;
}

int WGraph::index_of(const Simplex& s) const {
    auto it = std::find(simplices.begin(), simplices.end(), s);
    return it == simplices.end() ? -1 : static_cast<int>(it - simplices.begin());
}

int w_multiplier(const HHSModel& m, const WGraph& w, int a, int b) {
    std::vector<int> common;
    std::set_intersection(w.support[a].begin(), w.support[a].end(), w.support[b].begin(), w.support[b].end(),
                          std::back_inserter(common));
    if (common.empty()) return 1;
    int t = complement_of(m, common);
    int k = t == kEmpty ? w.complexity : co_level(m.index, t);
    return k + 1;
}

WGraph build_w(const HHSModel& m, const BlowupGraph& x, double lambda) {
    auto cc = check_property(m.index, "clean_containers");
    if (!cc.verdict) throw HhsError(ErrorKind::Precondition, "clean containers property fails", cc.witness);
    WGraph w;
    w.simplices = maximal_simplices(x);
    w.complexity = m.index.complexity();
    const std::size_t n = w.simplices.size();
    w.support.resize(n);
    w.b.resize(n);
    w.f.assign(n, -1);
    w.f_defect.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) w.support[i] = sorted(domains_of(x, support(x, w.simplices[i])));
    parallel_for(n, [&](std::size_t i) {
        w.b[i] = b_sigma(m, x, w.simplices[i]);
        auto r = realise(m, w.b[i]);
        w.f[i] = r.point;
        w.f_defect[i] = r.defect;
    });
    w.consts = lambda_constants(m, w.b, w.f);
    w.lambda = lambda > 0 ? lambda : w.consts.lambda2;
    if (w.lambda <= 0) w.lambda = 1;
    for (std::size_t i = 0; i < n; ++i) w.g.add_vertex(simplex_name(x, w.simplices[i]));
    std::vector<std::vector<int>> nb(n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double bound = w_multiplier(m, w, static_cast<int>(i), static_cast<int>(j)) * w.lambda;
            bool ok = true;
            for (int u = 0; u < m.domains() && ok; ++u)
                if (m.du(u, *w.b[i].coords[u], *w.b[j].coords[u]) > bound) ok = false;
            if (ok) nb[i].push_back(static_cast<int>(j));
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        for (int j : nb[i]) w.g.add_edge(static_cast<int>(i), j);

    std::vector<Bits> aug = x.nbr;
    for (std::size_t i = 0; i < n; ++i)
        for (int j : w.g.adj[i])
            if (static_cast<int>(i) < j)
                w.simplices[i].for_each([&](int v) {
                    w.simplices[j].for_each([&](int u) {
                        if (u == v) return;
                        aug[v].set(sz(u));
                        aug[u].set(sz(v));
                    });
                });
    for (int v = 0; v < x.size(); ++v) w.augmented.add_vertex(x.blown.labels[v]);
    for (int v = 0; v < x.size(); ++v)
        aug[v].for_each([&](int u) {
            if (v < u) w.augmented.add_edge(v, u);
        });
    return w;
}

CoordinateGraph coordinate_graph(const BlowupGraph& x, const SimplexClasses& c, const WGraph& w, int cls,
                                 bool with_rho) {
    CoordinateGraph cg;
    const Bits& sat = c.sat[cls];
    std::vector<int> yidx(sz(x.size()), -1);
    for (int v = 0; v < x.size(); ++v)
        if (!sat.test(sz(v))) {
            yidx[v] = static_cast<int>(cg.y_vertices.size());
            cg.y_vertices.push_back(v);
        }
    cg.y = w.augmented.induced(cg.y_vertices);
    cg.dy = all_pairs(cg.y);
    Bits lk = c.link[cls] - sat;
    cg.c_vertices = lk.items();
    std::vector<int> cy;
    for (int v : cg.c_vertices) cy.push_back(yidx[v]);
    cg.c = cg.y.induced(cy);
    cg.dc = all_pairs(cg.c);
    cg.diam_in_y = set_diameter(cg.dy, cy);
    cg.diam = cg.c_vertices.empty() ? 0 : diameter(cg.dc);

    // Coarse closest point projection of an X vertex set onto the link.
    auto project = [&](const Bits& a) {
        Bits out = x.empty();
        std::vector<int> src;
        a.for_each([&](int v) {
            if (yidx[v] >= 0) src.push_back(yidx[v]);
        });
        if (src.empty() || cy.empty()) return out;
        std::vector<int> d(cy.size(), kInf);
        int best = kInf;
        for (std::size_t i = 0; i < cy.size(); ++i) {
            for (int s : src) d[i] = std::min(d[i], cg.dy(s, cy[i]));
            best = std::min(best, d[i]);
        }
        if (best >= kInf) return out;
        for (std::size_t i = 0; i < cy.size(); ++i)
            if (d[i] <= best + 1) out.set(sz(cg.c_vertices[i]));
        return out;
    };

    for (const auto& s : w.simplices) {
        std::vector<int> meet;
        s.for_each([&](int v) {
            if (yidx[v] >= 0) meet.push_back(yidx[v]);
        });
        cg.pi_meet_diam.push_back(meet.empty() ? -1 : set_diameter(cg.dy, meet));
        cg.pi_table.push_back(project(s));
    }
    if (with_rho) {
        for (int o = 0; o < c.classes(); ++o) {
            if (o == cls) continue;
            Rel r = class_relation(x, c, o, cls);
            if (r == Rel::Transverse || r == Rel::NestedIn) {
                cg.rho_up.emplace_back(o, project(c.sat[o]));
            } else if (r == Rel::Contains) {
                std::vector<std::pair<int, Bits>> table;
                (c.link[o] - c.sat[o]).for_each([&](int v) {
                    if (yidx[v] < 0) return;
                    Bits one = x.empty();
                    one.set(sz(v));
                    table.emplace_back(v, project(one));
                });
                cg.rho_down.emplace_back(o, std::move(table));
            }
        }
    }
    return cg;
}

QiReport realisation_qi(const HHSModel& m, const WGraph& w) {
    QiReport q;
    const int n = w.g.size();
    for (int i = 0; i < n; ++i)
        for (int j : w.g.adj[i]) q.lipschitz = std::max<double>(q.lipschitz, m.dz(w.f[i], w.f[j]));
    for (int z = 0; z < m.points(); ++z) {
        int best = kInf;
        for (int p : w.f) best = std::min(best, m.dz(z, p));
        q.surjectivity_defect = std::max<double>(q.surjectivity_defect, best);
    }
    for (double d : w.f_defect) q.realisation_defect = std::max(q.realisation_defect, d);
    DistMatrix dw = all_pairs(w.g);
    q.w_connected = connected(w.g);
    q.w_diameter = n == 0 ? 0 : diameter(dw);
    if (!q.w_connected) {
        q.lower = {20, std::numeric_limits<double>::infinity()};
        q.upper = {20, std::numeric_limits<double>::infinity()};
        return q;
    }
    std::vector<std::pair<double, double>> lower, upper;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double a = dw(i, j), b = m.dz(w.f[i], w.f[j]);
            lower.emplace_back(a, b);
            upper.emplace_back(b, a);
        }
    q.lower = fit(lower);
    q.upper = fit(upper);
    q.qi = true;
    return q;
}

std::vector<std::string> ChhsReport::lines() const {
    std::vector<std::string> out;
    std::ostringstream os;
    os << "complexity=" << complexity << " delta=" << delta;
    out.push_back(os.str());
    for (const auto* r : {&condition1, &condition2, &condition3, &condition4, &simplicial_containers,
                          &simplicial_wedges})
        out.push_back(r->line());
    std::ostringstream q;
    q << "realisation lipschitz=" << qi.lipschitz << " surjectivity_defect=" << qi.surjectivity_defect
      << " realisation_defect=" << qi.realisation_defect << " w_connected=" << (qi.w_connected ? "true" : "false")
      << " w_diameter=" << qi.w_diameter << " lower_K=" << qi.lower.K << " lower_C=" << qi.lower.C
      << " upper_K=" << qi.upper.K << " upper_C=" << qi.upper.C;
    out.push_back(q.str());
    return out;
}

ChhsReport check_chhs(const HHSModel& m, const BlowupGraph& x, const SimplexClasses& c, const WGraph& w) {
    ChhsReport r;
    const int nc = c.classes();
    const std::size_t ns = c.simplices.size();

    // Condition 1: longest strict chain of links, the empty link included.
    {
        std::vector<Bits> links = c.link;
        links.push_back(x.empty());
        std::sort(links.begin(), links.end(), [](const Bits& a, const Bits& b) { return a.count() < b.count(); });
        std::vector<int> len(links.size(), 1);
        for (std::size_t i = 0; i < links.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (links[j].count() < links[i].count() && links[j].subset_of(links[i]))
                    len[i] = std::max(len[i], len[j] + 1);
        r.complexity = *std::max_element(len.begin(), len.end());
        r.condition1 = {"condition1_complexity", true, {}, static_cast<double>(r.complexity)};
    }

    // Condition 2: exact four point constant and embedding distortion per class.
    r.class_delta.assign(sz(nc), 0);
    r.class_diam.assign(sz(nc), 0);
    r.class_diam_y.assign(sz(nc), 0);
    r.condition2.property = "condition2_hyperbolic_links";
    for (int k = 0; k < nc; ++k) {
        auto cg = coordinate_graph(x, c, w, k);
        r.class_diam[k] = cg.diam;
        r.class_diam_y[k] = cg.diam_in_y;
        if (cg.diam >= kInf) {
            r.class_delta[k] = std::numeric_limits<double>::infinity();
            if (r.condition2.verdict) {
                r.condition2.verdict = false;
                r.condition2.witness = {simplex_name(x, c.simplices[c.rep[k]]), "disconnected"};
            }
            continue;
        }
        double fp = four_point_delta(cg.dc);
        double emb = 0;
        for (std::size_t i = 0; i < cg.c_vertices.size(); ++i)
            for (std::size_t j = i + 1; j < cg.c_vertices.size(); ++j) {
                int yi = static_cast<int>(std::find(cg.y_vertices.begin(), cg.y_vertices.end(), cg.c_vertices[i]) -
                                          cg.y_vertices.begin());
                int yj = static_cast<int>(std::find(cg.y_vertices.begin(), cg.y_vertices.end(), cg.c_vertices[j]) -
                                          cg.y_vertices.begin());
                emb = std::max(emb, cg.dc(static_cast<int>(i), static_cast<int>(j)) / (cg.dy(yi, yj) + 1.0));
            }
        r.class_delta[k] = std::max(fp, emb);
        r.delta = std::max(r.delta, r.class_delta[k]);
    }
    r.delta = std::max(r.delta, 1.0);
    r.condition2.constant = r.delta;

    // Superset classes of every simplex.
    std::unordered_map<Bits, int, BitsHash> index;
    for (std::size_t i = 0; i < ns; ++i) index.emplace(c.simplices[i], static_cast<int>(i));
    std::vector<std::vector<int>> ext(ns);
    std::vector<char> ext_max(ns, 0);
    for (std::size_t i = 0; i < ns; ++i) {
        auto vs = c.simplices[i].items();
        for (std::size_t mask = 0; mask < (std::size_t{1} << vs.size()); ++mask) {
            Bits sub = x.empty();
            for (std::size_t b = 0; b < vs.size(); ++b)
                if (mask >> b & 1U) sub.set(sz(vs[b]));
            int j = index.at(sub);
            if (c.class_of[i] >= 0)
                ext[j].push_back(c.class_of[i]);
            else
                ext_max[j] = 1;
        }
    }
    for (auto& e : ext) e = sorted(e);

    // Condition 3 over classes of Delta and simplices Sigma.
    {
        r.condition3.property = "condition3_wedge_extension";
        std::vector<int> big;
        for (int k = 0; k < nc; ++k)
            if (r.class_diam[k] >= r.delta) big.push_back(k);
        std::vector<std::string> fail;
        std::vector<char> bad(sz(nc), 0);
        std::vector<std::vector<std::string>> wit(sz(nc));
        parallel_for(sz(nc), [&](std::size_t d) {
            for (std::size_t s = 0; s < ns && !bad[d]; ++s) {
                if (c.class_of[s] < 0) continue;
                Bits inter = c.link[d] & c.simplex_link[s];
                Bits need = x.empty();
                bool any = false;
                for (int g : big)
                    if (c.link[g].subset_of(inter)) {
                        need |= c.link[g];
                        any = true;
                    }
                if (!any) continue;
                bool found = false;
                for (int e : ext[s])
                    if (need.subset_of(c.link[e]) && c.link[e].subset_of(c.link[d])) {
                        found = true;
                        break;
                    }
                if (!found) {
                    bad[d] = 1;
                    wit[d] = {simplex_name(x, c.simplices[c.rep[d]]), simplex_name(x, c.simplices[s])};
                }
            }
        });
        for (int d = 0; d < nc; ++d)
            if (bad[d]) {
                r.condition3.verdict = false;
                r.condition3.witness = wit[d];
                break;
            }
        r.condition3.constant = static_cast<double>(big.size());
    }

    // Condition 4 with bitsets over maximal simplices.
    {
        r.condition4.property = "condition4_edges_in_links";
        const std::size_t nm = w.simplices.size();
        std::vector<Bits> cont(sz(x.size()), Bits(nm)), wadj(nm, Bits(nm));
        for (std::size_t i = 0; i < nm; ++i) {
            w.simplices[i].for_each([&](int v) { cont[v].set(i); });
            for (int j : w.g.adj[i]) wadj[i].set(sz(j));
        }
        auto reach = [&](const Bits& from) {
            Bits out(nm);
            from.for_each([&](int i) { out |= wadj[i]; });
            return out;
        };
        std::vector<Bits> near(sz(x.size()));
        for (int v = 0; v < x.size(); ++v) near[v] = reach(cont[v]);
        std::vector<std::vector<std::string>> wit(ns);
        parallel_for(ns, [&](std::size_t s) {
            if (c.class_of[s] < 0) return;
            Bits cd = Bits::full(nm);
            c.simplices[s].for_each([&](int v) { cd &= cont[v]; });
            auto lk = c.simplex_link[s].items();
            for (std::size_t i = 0; i < lk.size(); ++i)
                for (std::size_t j = 0; j < lk.size(); ++j) {
                    int v = lk[i], u = lk[j];
                    if (v == u || x.nbr[v].test(sz(u)) || !near[v].intersects(cont[u])) continue;
                    Bits av = cd & cont[v], au = cd & cont[u];
                    if (!reach(av).intersects(au)) {
                        wit[s] = {simplex_name(x, c.simplices[s]), x.blown.labels[v], x.blown.labels[u]};
                        return;
                    }
                }
        });
        for (std::size_t s = 0; s < ns; ++s)
            if (!wit[s].empty()) {
                r.condition4.verdict = false;
                r.condition4.witness = wit[s];
                break;
            }
    }

    // Simplicial containers and wedges.
    {
        r.simplicial_containers.property = "simplicial_containers";
        std::vector<Bits> links = c.link;
        links.push_back(x.empty());
        for (const auto& l : links) {
            Bits ll = link_of_set(x, link_of_set(x, l));
            if (ll.any() && !c.by_link.count(ll)) {
                r.simplicial_containers.verdict = false;
                r.simplicial_containers.witness = {simplex_name(x, l)};
                break;
            }
        }
        r.simplicial_wedges.property = "simplicial_wedges";
        std::vector<std::vector<std::string>> wit(ns);
        parallel_for(ns, [&](std::size_t s) {
            for (const auto& l : links) {
                Bits inter = l & c.simplex_link[s];
                bool ok;
                if (inter.none()) {
                    ok = ext_max[s] != 0;
                } else {
                    auto it = c.by_link.find(inter);
                    ok = it != c.by_link.end() && std::binary_search(ext[s].begin(), ext[s].end(), it->second);
                }
                if (!ok) {
                    wit[s] = {simplex_name(x, l), simplex_name(x, c.simplices[s])};
                    return;
                }
            }
        });
        for (std::size_t s = 0; s < ns; ++s)
            if (!wit[s].empty()) {
                r.simplicial_wedges.verdict = false;
                r.simplicial_wedges.witness = wit[s];
                break;
            }
    }
    r.qi = realisation_qi(m, w);
    return r;
}

LinkIntersector::LinkIntersector(const HHSModel& m, const BlowupGraph& x) : m_(m), x_(x) {
    for (const char* p : {"weak_wedges", "clean_containers", "orthogonals_for_non_split"}) {
        auto r = check_property(m.index, p);
        if (!r.verdict) {
            auto w = r.witness;
            w.insert(w.begin(), p);
            throw HhsError(ErrorKind::Precondition, std::string("hypothesis fails: ") + p, w);
        }
    }
    auto e = check_metric_property(m, "edpr");
    if (!e.verdict) throw HhsError(ErrorKind::Precondition, "hypothesis fails: edpr", e.witness);
}

LinkDecomposition LinkIntersector::operator()(const Simplex& sigma, const Simplex& delta) const {
    const BlowupGraph& x = x_;
    const IndexSet& S = m_.index;
    for (const auto* s : {&sigma, &delta})
        if (!is_simplex(x, *s) || link(x, *s).none())
            throw HhsError(ErrorKind::Precondition, "expected a non-maximal simplex", {simplex_name(x, *s)});
    // Nested links: the intersection is Lk(Sigma) itself.
    if (link(x, sigma).subset_of(link(x, delta))) return {sigma, x.empty()};
    auto sb = support(x, sigma), db = support(x, delta);
    auto lks = base_link(x, sb), lkd = base_link(x, db);
    auto in = [](const std::vector<int>& v, int a) { return std::find(v.begin(), v.end(), a) != v.end(); };
    std::vector<int> phi;
    for (int b : db)
        if (in(lks, b)) phi.push_back(b);

    int sperp = simplex_complement(m_, x, sb);
    int dperp = simplex_complement(m_, x, db);
    std::vector<int> sp = sb;
    sp.insert(sp.end(), phi.begin(), phi.end());
    int y = simplex_complement(m_, x, sp);
    int w = kEmpty;
    if (sperp != kEmpty && dperp != kEmpty) w = wedge(S, sperp, dperp, true);
    auto inside = [&](int part, int amb) {
        if (amb == kEmpty) return kEmpty;
        if (!S.nested(part, amb))
            throw HhsError(ErrorKind::Precondition, "domain outside its container", {S.name(part), S.name(amb)});
        return orth_complement(S, {part}, amb);
    };

    // Peel Samaritans off the weak wedge of the complements.
    std::vector<int> psi;
    while (w != kEmpty) {
        auto info = split_info(S, w);
        if (!info.split) break;
        int u = info.samaritans.front();
        psi.push_back(x.base_of[u]);
        w = inside(u, w);
        y = inside(u, y);
    }
    // Fill the gap between the peeled wedge and the container with orthogonal minimal domains.
    std::vector<int> theta;
    if (w == kEmpty) {
        if (y != kEmpty) {
            Bits chosen(sz(S.size()));
            for (int b = 0; b < x.base.size(); ++b) {
                int u = x.base_domain[b];
                if (!S.nested(u, y)) continue;
                bool ok = true;
                chosen.for_each([&](int o) {
                    if (!S.orthogonal(o, u)) ok = false;
                });
                if (ok) {
                    chosen.set(sz(u));
                    theta.push_back(b);
                }
            }
        }
    } else {
        while (y != w) {
            if (y == kEmpty || !S.nested(w, y))
                throw HhsError(ErrorKind::Precondition, "peeled wedge not nested in container",
                               {dom_or_empty(S, w), dom_or_empty(S, y)});
            int found = -1;
            for (int b = 0; b < x.base.size() && found < 0; ++b) {
                int u = x.base_domain[b];
                if (S.nested(u, y) && S.orthogonal(u, w)) found = b;
            }
            if (found < 0)
                throw HhsError(ErrorKind::Precondition, "no orthogonal minimal domain", {S.name(w), S.name(y)});
            theta.push_back(found);
            y = inside(x.base_domain[found], y);
        }
    }

    // Assemble Pi cone by cone.
    LinkDecomposition out{x.empty(), x.empty()};
    Simplex& pi = out.pi;
    auto set_edge = [&](int b, int base_vertex) {
        pi.set(sz(x.apex[b]));
        pi.set(sz(base_vertex >= 0 ? base_vertex : x.cone_base[b].front()));
    };
    for (int b : sb) {
        Piece ps = piece(x, sigma, b);
        if (!in(db, b) && !in(lkd, b)) {
            set_edge(b, ps.base);
        } else if (in(lkd, b)) {
            pi |= sigma & Bits::of(sz(x.size()), [&] {
                std::vector<int> v{x.apex[b]};
                v.insert(v.end(), x.cone_base[b].begin(), x.cone_base[b].end());
                return v;
            }());
        } else {
            Piece pd = piece(x, delta, b);
            bool same_kind = !ps.edge() && !pd.edge() && ps.apex == pd.apex;
            if (ps.edge()) {
                set_edge(b, ps.base);
            } else if (same_kind) {
                if (ps.apex)
                    pi.set(sz(x.apex[b]));
                else
                    pi.set(sz(ps.base));
            } else {
                set_edge(b, ps.base >= 0 ? ps.base : pd.base);
            }
        }
    }
    for (int b : phi) {
        Piece pd = piece(x, delta, b);
        if (pd.apex) pi.set(sz(x.apex[b]));
        if (pd.base >= 0) pi.set(sz(pd.base));
    }
    for (int b : psi) {
        pi.set(sz(x.apex[b]));
        out.psi.set(sz(x.apex[b]));
    }
    for (int b : theta) set_edge(b, -1);
    // Fold Psi back in when dropping its apexes from Pi already yields the joined link.
    if (out.psi.any() && link(x, pi - out.psi) == (link(x, pi) | out.psi)) {
        pi = pi - out.psi;
        out.psi = x.empty();
    }
    if (!decomposition_holds(x, sigma, delta, out))
        throw HhsError(ErrorKind::Precondition, "constructed decomposition does not match the intersection",
                       {simplex_name(x, sigma), simplex_name(x, delta)});
    return out;
}

LinkDecomposition intersection_links_constructive(const BlowupGraph& x, const HHSModel& m, const Simplex& sigma,
                                                  const Simplex& delta) {
    return LinkIntersector(m, x)(sigma, delta);
}

bool decomposition_holds(const BlowupGraph& x, const Simplex& sigma, const Simplex& delta,
                         const LinkDecomposition& d) {
    if (!is_simplex(x, d.pi) || !is_simplex(x, d.psi) || !sigma.subset_of(d.pi)) return false;
    Bits lp = link(x, d.pi);
    if (lp.intersects(d.psi)) return false;
    bool joined = true;
    d.psi.for_each([&](int v) {
        if (!lp.subset_of(x.nbr[v])) joined = false;
    });
    return joined && (lp | d.psi) == (link(x, sigma) & link(x, delta));
}

std::optional<LinkDecomposition> intersection_links_search(const BlowupGraph& x, const SimplexClasses& c,
                                                           const Simplex& sigma, const Simplex& delta) {
    Bits inter = link(x, sigma) & link(x, delta);
    for (std::size_t i = 0; i < c.simplices.size(); ++i) {
        if (!sigma.subset_of(c.simplices[i]) || !c.simplex_link[i].subset_of(inter)) continue;
        LinkDecomposition d{c.simplices[i], inter - c.simplex_link[i]};
        if (decomposition_holds(x, sigma, delta, d)) return d;
    }
    return std::nullopt;
}

PropertyReport check_link_decomposition(const BlowupGraph& x, const SimplexClasses& c) {
    PropertyReport r{"link_decomposition", true, {}, std::nullopt};
    for (std::size_t i = 0; i < c.simplices.size(); ++i)
        if (!(link_decomposed(x, c.simplices[i]) == c.simplex_link[i])) {
            r.verdict = false;
            r.witness = {simplex_name(x, c.simplices[i])};
            break;
        }
    r.constant = static_cast<double>(c.simplices.size());
    return r;
}

PropertyReport check_link_shapes(const BlowupGraph& x, const SimplexClasses& c) {
    PropertyReport r{"link_trichotomy", true, {}, std::nullopt};
    for (const auto& s : c.simplices) {
        LinkShape t = link_shape(x, s);
        if (!shape_holds(x, s, t)) {
            r.verdict = false;
            r.witness = {simplex_name(x, s), shape_name(t)};
            break;
        }
    }
    r.constant = static_cast<double>(c.simplices.size());
    return r;
}

PropertyReport check_containment_reversal(const BlowupGraph& x, const SimplexClasses& c) {
    PropertyReport r{"containment_reversal", true, {}, std::nullopt};
    std::unordered_map<Bits, int, BitsHash> index;
    for (std::size_t i = 0; i < c.simplices.size(); ++i) index.emplace(c.simplices[i], static_cast<int>(i));
    long pairs = 0;
    for (std::size_t i = 0; i < c.simplices.size() && r.verdict; ++i) {
        auto vs = c.simplices[i].items();
        for (std::size_t mask = 0; mask < (std::size_t{1} << vs.size()); ++mask) {
            Bits sub = x.empty();
            for (std::size_t b = 0; b < vs.size(); ++b)
                if (mask >> b & 1U) sub.set(sz(vs[b]));
            int j = index.at(sub);
            ++pairs;
            bool ok;
            if (c.class_of[i] < 0)
                ok = true;  // the empty link is below every link
            else {
                Rel rel = class_relation(x, c, c.class_of[i], c.class_of[j]);
                ok = rel == Rel::NestedIn || rel == Rel::Equal;
            }
            if (!ok) {
                r.verdict = false;
                r.witness = {simplex_name(x, sub), simplex_name(x, c.simplices[i])};
                break;
            }
        }
    }
    r.constant = static_cast<double>(pairs);
    return r;
}

PropertyReport check_weak_complement_links(const HHSModel& m, const BlowupGraph& x) {
    PropertyReport r{"weak_complement_links", true, {}, std::nullopt};
    auto cl = base_cliques(x, false);
    std::vector<int> wc;
    std::vector<Bits> lk;
    for (const auto& a : cl) {
        wc.push_back(weak_complement(m, x, a));
        lk.push_back(Bits::of(sz(x.base.size()), base_link(x, a)));
    }
    auto below = [&](int a, int b) {
        if (a == kEmpty) return true;
        if (b == kEmpty) return false;
        return m.index.nested(a, b);
    };
    for (std::size_t i = 0; i < cl.size() && r.verdict; ++i)
        for (std::size_t j = 0; j < cl.size(); ++j)
            if (lk[i].subset_of(lk[j]) != below(wc[i], wc[j])) {
                r.verdict = false;
                r.witness = {dom_list(m.index, domains_of(x, cl[i])), dom_list(m.index, domains_of(x, cl[j]))};
                break;
            }
    r.constant = static_cast<double>(cl.size() * cl.size());
    return r;
}

PropertyReport check_weak_complement_dichotomy(const HHSModel& m, const BlowupGraph& x) {
    PropertyReport r{"weak_complement_dichotomy", true, {}, std::nullopt};
    auto cl = base_cliques(x, false);
    for (const auto& a : cl) {
        int t = weak_complement(m, x, a);
        int c = simplex_complement(m, x, a);
        bool split = t != kEmpty && split_info(m.index, t).split;
        bool ok = t == c || split;
        if (ok && split) {
            auto lk = base_link(x, a);
            bool cone = false;
            for (int v : lk) {
                bool all = true;
                for (int u : lk)
                    if (u != v && !x.base_nbr[v].test(sz(u))) all = false;
                if (all) cone = true;
            }
            ok = cone;
        }
        if (!ok) {
            r.verdict = false;
            r.witness = {dom_list(m.index, domains_of(x, a)), dom_or_empty(m.index, t), dom_or_empty(m.index, c)};
            break;
        }
    }
    r.constant = static_cast<double>(cl.size());
    return r;
}

PropertyReport check_b_sigma(const HHSModel& m, const BlowupGraph& x) {
    PropertyReport r{"b_sigma_bounds", true, {}, std::nullopt};
    double worst = 0;
    for (const auto& s : maximal_simplices(x)) {
        auto b = b_sigma(m, x, s);
        for (int u = 0; u < m.domains(); ++u) {
            double d = set_diameter(m.cdist[u], *b.coords[u]);
            worst = std::max(worst, d);
            if (d > 10 * m.E && r.verdict) {
                r.verdict = false;
                r.witness = {simplex_name(x, s), m.index.name(u)};
            }
        }
        auto cons = check_consistency(m, b, 20 * m.E);
        if (!cons.verdict && r.verdict) {
            r.verdict = false;
            r.witness = {simplex_name(x, s), "inconsistent"};
        }
    }
    r.constant = worst;
    return r;
}

Automorphism identity_automorphism(const HHSModel& m) {
    Automorphism g;
    for (int u = 0; u < m.domains(); ++u) {
        g.domain.push_back(u);
        std::vector<int> id(sz(m.coord[u].size()));
        for (int c = 0; c < m.coord[u].size(); ++c) id[c] = c;
        g.coord.push_back(id);
    }
    for (int z = 0; z < m.points(); ++z) g.point.push_back(z);
    return g;
}

Automorphism derive_automorphism(const HHSModel& m, const std::vector<int>& domain, const std::vector<int>& point) {
    Automorphism g;
    g.domain = domain;
    g.point = point;
    std::map<std::string, int> pid;
    for (int z = 0; z < m.points(); ++z) pid[m.space.labels[z]] = z;
    auto image_label = [&](const std::string& l) -> std::optional<std::string> {
        auto it = pid.find(l);
        if (it == pid.end()) return std::nullopt;
        return m.space.labels[point[it->second]];
    };
    for (int u = 0; u < m.domains(); ++u) {
        const Graph& cu = m.coord[u];
        const Graph& cv = m.coord[domain[u]];
        std::map<std::string, int> target;
        for (int c = 0; c < cv.size(); ++c) target[cv.labels[c]] = c;
        std::vector<int> map(sz(cu.size()), -1);
        std::vector<char> used(sz(cv.size()), 0);
        auto assign = [&](int c, const std::string& l) {
            auto it = target.find(l);
            if (it == target.end() || used[it->second]) return false;
            map[c] = it->second;
            used[it->second] = 1;
            return true;
        };
        for (int c = 0; c < cu.size(); ++c) {
            const std::string& l = cu.labels[c];
            if (auto t = image_label(l)) {
                assign(c, *t);
                continue;
            }
            auto bar = l.find('|');
            if (bar == std::string::npos) continue;
            auto a = image_label(l.substr(0, bar)), b = image_label(l.substr(bar + 1));
            if (a && b && !assign(c, *a + "|" + *b)) assign(c, *b + "|" + *a);
        }
        for (bool progress = true; progress;) {
            progress = false;
            for (int c = 0; c < cu.size(); ++c) {
                if (map[c] >= 0) continue;
                VSet img;
                bool known = true;
                for (int n : cu.adj[c]) {
                    if (map[n] < 0) known = false;
                    img.push_back(map[n]);
                }
                if (!known || img.empty()) continue;
                img = sorted(img);
                for (int t = 0; t < cv.size(); ++t)
                    if (!used[t] && sorted(cv.adj[t]) == img) {
                        map[c] = t;
                        used[t] = 1;
                        progress = true;
                        break;
                    }
            }
        }
        for (int c = 0; c < cu.size(); ++c)
            if (map[c] < 0)
                throw HhsError(ErrorKind::Precondition, "coordinate map not determined",
                               {m.index.name(u), cu.labels[c]});
        g.coord.push_back(map);
    }
    return g;
}

Automorphism compose(const Automorphism& g, const Automorphism& h) {
    Automorphism r;
    for (std::size_t u = 0; u < h.domain.size(); ++u) {
        int hu = h.domain[u];
        r.domain.push_back(g.domain[hu]);
        std::vector<int> map;
        for (int c : h.coord[u]) map.push_back(g.coord[hu][c]);
        r.coord.push_back(map);
    }
    for (int z : h.point) r.point.push_back(g.point[z]);
    return r;
}

Automorphism grid_transpose(const HHSModel& m) {
    std::vector<int> domain(sz(m.domains()));
    for (int u = 0; u < m.domains(); ++u) domain[u] = u;
    int v = m.index.id("V"), h = m.index.id("H");
    domain[v] = h;
    domain[h] = v;
    std::map<std::string, int> pid;
    for (int z = 0; z < m.points(); ++z) pid[m.space.labels[z]] = z;
    std::vector<int> point(sz(m.points()));
    for (int z = 0; z < m.points(); ++z) {
        const std::string& l = m.space.labels[z];
        auto us = l.find('_');
        if (us == std::string::npos) throw HhsError(ErrorKind::Precondition, "not a grid label", {l});
        auto it = pid.find(l.substr(us + 1) + "_" + l.substr(0, us));
        if (it == pid.end()) throw HhsError(ErrorKind::Precondition, "grid is not square", {l});
        point[z] = it->second;
    }
    return derive_automorphism(m, domain, point);
}

PropertyReport check_automorphism(const HHSModel& m, const Automorphism& g) {
    PropertyReport r{"automorphism", true, {}, std::nullopt};
    auto fail = [&](std::vector<std::string> w) {
        if (!r.verdict) return;
        r.verdict = false;
        r.witness = std::move(w);
    };
    const IndexSet& S = m.index;
    const int n = m.domains();
    auto bijective = [](const std::vector<int>& f, int size) {
        if (static_cast<int>(f.size()) != size) return false;
        std::vector<char> hit(sz(size), 0);
        for (int v : f) {
            if (v < 0 || v >= size || hit[v]) return false;
            hit[v] = 1;
        }
        return true;
    };
    if (!bijective(g.domain, n)) return fail({"domain map"}), r;
    if (!bijective(g.point, m.points())) return fail({"point map"}), r;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (S.nested(u, v) != S.nested(g.domain[u], g.domain[v])) fail({"nesting", S.name(u), S.name(v)});
            if (S.orthogonal(u, v) != S.orthogonal(g.domain[u], g.domain[v]))
                fail({"orthogonality", S.name(u), S.name(v)});
        }
    for (int a = 0; a < m.points(); ++a)
        for (int b = 0; b < m.points(); ++b)
            if (m.dz(a, b) != m.dz(g.point[a], g.point[b]))
                fail({"point isometry", m.space.labels[a], m.space.labels[b]});
    auto img = [&](int u, const VSet& s) {
        VSet out;
        for (int c : s) out.push_back(g.coord[u][c]);
        return sorted(out);
    };
    for (int u = 0; u < n; ++u) {
        int gu = g.domain[u];
        const Graph& cu = m.coord[u];
        if (!bijective(g.coord[u], m.coord[gu].size())) {
            fail({"coordinate map", S.name(u)});
            continue;
        }
        if (cu.edge_count() != m.coord[gu].edge_count()) fail({"coordinate isometry", S.name(u)});
        for (int c = 0; c < cu.size(); ++c)
            for (int d : cu.adj[c])
                if (!m.coord[gu].has_edge(g.coord[u][c], g.coord[u][d])) fail({"coordinate isometry", S.name(u)});
        for (int z = 0; z < m.points(); ++z)
            if (img(u, m.pi[u][z]) != sorted(m.pi[gu][g.point[z]]))
                fail({"pi", S.name(u), m.space.labels[z]});
        for (int v = 0; v < n; ++v) {
            int gv = g.domain[v];
            if (m.rho[u][v].has_value() != m.rho[gu][gv].has_value()) {
                fail({"rho", S.name(u), S.name(v)});
                continue;
            }
            if (m.rho[u][v] && img(v, *m.rho[u][v]) != sorted(*m.rho[gu][gv])) fail({"rho", S.name(u), S.name(v)});
            const auto& down = m.rho_down[u][v];
            if (down.has_value() != m.rho_down[gu][gv].has_value()) {
                fail({"rho_down", S.name(u), S.name(v)});
                continue;
            }
            if (down)
                for (int c = 0; c < cu.size(); ++c)
                    if (img(v, (*down)[c]) != sorted((*m.rho_down[gu][gv])[g.coord[u][c]]))
                        fail({"rho_down", S.name(u), S.name(v), cu.labels[c]});
        }
    }
    return r;
}

EquivarianceReport check_equivariance(const HHSModel& m, const BlowupGraph& x, const WGraph& w,
                                      const Automorphism& g) {
    EquivarianceReport e;
    e.axioms = check_automorphism(m, g);
    e.x_automorphism = {"x_automorphism", true, {}, std::nullopt};
    e.w_edges = {"w_edges_preserved", true, {}, std::nullopt};
    e.b_identity = {"b_equivariant", true, {}, std::nullopt};
    if (!e.axioms.verdict) return e;

    std::vector<int> xv(sz(x.size()));
    for (int v = 0; v < x.size(); ++v) {
        int u = x.base_domain[x.p[v]];
        int gb = x.base_of[g.domain[u]];
        xv[v] = x.coord_of[v] < 0 ? x.apex[gb] : x.cone_base[gb][g.coord[u][x.coord_of[v]]];
    }
    for (int v = 0; v < x.size() && e.x_automorphism.verdict; ++v)
        for (int u = 0; u < x.size(); ++u)
            if (x.nbr[v].test(sz(u)) != x.nbr[xv[v]].test(sz(xv[u]))) {
                e.x_automorphism.verdict = false;
                e.x_automorphism.witness = {x.blown.labels[v], x.blown.labels[u]};
                break;
            }
    if (!e.x_automorphism.verdict) return e;

    const int n = w.g.size();
    std::vector<int> gs(sz(n));
    for (int i = 0; i < n; ++i) {
        Simplex s = x.empty();
        w.simplices[i].for_each([&](int v) { s.set(sz(xv[v])); });
        gs[i] = w.index_of(s);
        if (gs[i] < 0) {
            e.w_edges.verdict = false;
            e.w_edges.witness = {simplex_name(x, w.simplices[i]), "image not maximal"};
            return e;
        }
    }
    for (int i = 0; i < n && e.w_edges.verdict; ++i)
        for (int j = i + 1; j < n; ++j)
            if (w.g.has_edge(i, j) != w.g.has_edge(gs[i], gs[j])) {
                e.w_edges.verdict = false;
                e.w_edges.witness = {simplex_name(x, w.simplices[i]), simplex_name(x, w.simplices[j])};
                break;
            }
    for (int i = 0; i < n; ++i) {
        for (int v = 0; v < m.domains(); ++v) {
            VSet img;
            for (int c : *w.b[i].coords[v]) img.push_back(g.coord[v][c]);
            if (sorted(img) != sorted(*w.b[gs[i]].coords[g.domain[v]]) && e.b_identity.verdict) {
                e.b_identity.verdict = false;
                e.b_identity.witness = {simplex_name(x, w.simplices[i]), m.index.name(v)};
            }
        }
        e.realisation_defect =
            std::max<double>(e.realisation_defect, m.dz(g.point[w.f[i]], w.f[gs[i]]));
    }
    e.verdict = e.w_edges.verdict && e.b_identity.verdict && e.realisation_defect <= m.E;
    return e;
}

std::string simplex_name(const BlowupGraph& x, const Simplex& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int v) {
        out += (first ? "" : ",") + x.blown.labels[v];
        first = false;
    });
    return out + "}";
}

std::string dot_base(const BlowupGraph& x) { return to_dot(x.base, "minimal_orthogonality"); }
std::string dot_blowup(const BlowupGraph& x) { return to_dot(x.blown, "blowup"); }
std::string dot_w(const BlowupGraph&, const WGraph& w) { return to_dot(w.g, "W"); }

std::string dot_coordinate(const CoordinateGraph& cg, const BlowupGraph& x, const std::string& name) {
    Graph g = cg.c;
    for (std::size_t i = 0; i < cg.c_vertices.size(); ++i) g.labels[i] = x.blown.labels[cg.c_vertices[i]];
    return to_dot(g, name);
}

}  // namespace hhsforge
