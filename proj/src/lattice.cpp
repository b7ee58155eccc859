#include "hhsforge/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>

namespace hhsforge {

namespace {

std::size_t sz(int n) { return static_cast<std::size_t>(n); }

std::string set_name(unsigned mask, int n) {
    if (mask == 0) return "0";
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
        if (mask >> i & 1U) {
            out += (first ? "" : ",") + std::to_string(i + 1);
            first = false;
        }
    return out + "}";
}

// Edge bit of the pair i < j.
int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

// Smallest edge encoding over relabellings that respect colour refinement.
std::uint32_t canonical_form(int n, std::uint32_t mask) {
    std::vector<unsigned> nb(sz(n), 0);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (mask >> pair_bit(i, j) & 1U) {
                nb[i] |= 1U << j;
                nb[j] |= 1U << i;
            }
    std::vector<int> colour(sz(n));
    for (int v = 0; v < n; ++v) colour[v] = __builtin_popcount(nb[v]);
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<int>> sig(sz(n));
        for (int v = 0; v < n; ++v) {
            sig[v].push_back(colour[v]);
            std::vector<int> around;
            for (int u = 0; u < n; ++u)
                if (nb[v] >> u & 1U) around.push_back(colour[u]);
            std::sort(around.begin(), around.end());
            sig[v].insert(sig[v].end(), around.begin(), around.end());
        }
        auto keys = sig;
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<int> next(sz(n));
        for (int v = 0; v < n; ++v)
            next[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
        bool same = std::set<int>(next.begin(), next.end()).size() == std::set<int>(colour.begin(), colour.end()).size();
        colour = next;
        if (same) break;
    }
    std::vector<int> order(sz(n));
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return colour[a] != colour[b] ? colour[a] < colour[b] : a < b; });
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && colour[order[j]] == colour[order[i]]) ++j;
        cells.emplace_back(i, j);
        i = j;
    }
    std::uint32_t best = UINT32_MAX;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == cells.size()) {
            std::uint32_t code = 0;
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i)
                    if (nb[order[i]] >> order[j] & 1U) code |= 1U << pair_bit(i, j);
            best = std::min(best, code);
            return;
        }
        auto [a, b] = cells[c];
        std::sort(order.begin() + a, order.begin() + b);
        do rec(c + 1);
        while (std::next_permutation(order.begin() + a, order.begin() + b));
    };
    rec(0);
    return best;
}

// Graphs on n vertices up to isomorphism from those on n - 1 vertices.
std::vector<std::uint32_t> grow_graphs(const std::vector<std::uint32_t>& prev, int n) {
    std::set<std::uint32_t> seen;
    int base = pair_bit(0, n - 1);
    for (std::uint32_t g : prev)
        for (std::uint32_t s = 0; s < (1U << (n - 1)); ++s) seen.insert(canonical_form(n, g | (s << base)));
    return {seen.begin(), seen.end()};
}

bool find_embedding(const OrthoLattice& src, const OrthoLattice& dst, std::vector<int>& phi) {
    std::vector<int> order(sz(src.size()));
    for (int i = 0; i < src.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto ca = src.down[a].count(), cb = src.down[b].count();
        return ca != cb ? ca < cb : a < b;
    });
    phi.assign(sz(src.size()), -1);
    std::vector<char> used(sz(dst.size()), 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) return true;
        int u = order[k];
        for (int c = 0; c < dst.size(); ++c) {
            if (used[c]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                int w = order[j], d = phi[w];
                ok = src.le(u, w) == dst.le(c, d) && src.le(w, u) == dst.le(d, c) && src.orth(u, w) == dst.orth(c, d);
            }
            if (ok && src.orth(u, u) != dst.orth(c, c)) ok = false;
            if (!ok) continue;
            phi[u] = c;
            used[c] = 1;
            if (rec(k + 1)) return true;
            used[c] = 0;
            phi[u] = -1;
        }
        return false;
    };
    return rec(0);
}

}  // namespace

int OrthoLattice::id(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw HhsError(ErrorKind::Unknown, "unknown lattice element", {name});
    return static_cast<int>(it - names.begin());
}

OrthoLattice make_ortholattice(std::vector<std::string> names, const std::vector<std::vector<bool>>& le,
                               std::vector<int> comp, bool validate) {
    OrthoLattice l;
    const int n = static_cast<int>(names.size());
    l.names = std::move(names);
    l.comp = std::move(comp);
    l.down.assign(sz(n), Bits(sz(n)));
    std::vector<Bits> up(sz(n), Bits(sz(n)));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (le[u][v]) {
                l.down[v].set(sz(u));
                up[u].set(sz(v));
            }
    for (int u = 0; u < n; ++u) {
        if (l.down[u].count() == sz(n)) l.top = u;
        if (up[u].count() == sz(n)) l.bottom = u;
    }
    if (l.top < 0 || l.bottom < 0) throw HhsError(ErrorKind::Axiom, "order has no top or no bottom");
    l.meet.assign(sz(n), std::vector<int>(sz(n), -1));
    l.join.assign(sz(n), std::vector<int>(sz(n), -1));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            Bits lower = l.down[u] & l.down[v];
            Bits upper = up[u] & up[v];
            lower.for_each([&](int g) {
                if (lower.subset_of(l.down[g])) l.meet[u][v] = g;
            });
            upper.for_each([&](int g) {
                if (upper.subset_of(up[g])) l.join[u][v] = g;
            });
            if (l.meet[u][v] < 0 || l.join[u][v] < 0)
                throw HhsError(ErrorKind::Axiom, "order is not a lattice", {l.names[u], l.names[v]});
        }
    if (validate) {
        auto r = validate_ortholattice(l);
        if (!r.verdict) throw HhsError(ErrorKind::Axiom, "ortholattice invariant fails", r.witness);
    }
    return l;
}

PropertyReport validate_ortholattice(const OrthoLattice& l) {
    PropertyReport r{"ortholattice", true, {}, std::nullopt};
    const int n = l.size();
    auto fail = [&](const std::string& what, std::vector<int> els) {
        if (!r.verdict) return;
        r.verdict = false;
        r.witness = {what};
        for (int e : els) r.witness.push_back(l.names[e]);
    };
    const auto& M = l.meet;
    const auto& J = l.join;
    for (int u = 0; u < n; ++u) {
        if (M[u][u] != u || J[u][u] != u) fail("idempotent", {u});
        if (l.comp[l.comp[u]] != u) fail("involution", {u});
        if (M[u][l.comp[u]] != l.bottom || J[u][l.comp[u]] != l.top) fail("complement", {u});
        for (int v = 0; v < n; ++v) {
            if (M[u][v] != M[v][u] || J[u][v] != J[v][u]) fail("commutative", {u, v});
            if (l.le(u, v) != (M[u][v] == u)) fail("order", {u, v});
            if (l.le(u, v) && !l.le(l.comp[v], l.comp[u])) fail("order reversing", {u, v});
            for (int w = 0; w < n; ++w)
                if (M[M[u][v]][w] != M[u][M[v][w]] || J[J[u][v]][w] != J[u][J[v][w]]) fail("associative", {u, v, w});
        }
    }
    if (l.comp[l.top] != l.bottom) fail("top complement", {l.top});
    r.constant = n;
    return r;
}

OrthoLattice to_ortholattice(const IndexSet& s) {
    auto os = check_property(s, "orthogonal_set");
    if (!os.verdict) throw HhsError(ErrorKind::Precondition, "not an orthogonal set", os.witness);
    const int n = s.size();
    auto names = s.names();
    names.push_back("EMPTY");
    std::vector<std::vector<bool>> le(sz(n + 1), std::vector<bool>(sz(n + 1), false));
    for (int u = 0; u <= n; ++u) le[n][u] = true;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) le[u][v] = s.nested(u, v);
    std::vector<int> comp(sz(n + 1));
    comp[n] = s.top();
    for (int u = 0; u < n; ++u) {
        if (u == s.top()) {
            comp[u] = n;
            continue;
        }
        int c = orth_complement(s, {u}, s.top());
        comp[u] = c == kEmpty ? n : c;
    }
    return make_ortholattice(std::move(names), le, std::move(comp));
}

PropertyReport is_orthomodular(const OrthoLattice& l) {
    PropertyReport r{"orthomodular", true, {}, std::nullopt};
    // Pairs in order of height so the reported witness is as low as possible.
    std::vector<int> order(sz(l.size()));
    for (int i = 0; i < l.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return l.down[a].count() < l.down[b].count(); });
    long pairs = 0;
    for (int u : order) {
        if (!r.verdict) break;
        for (int v : order) {
            if (!l.le(u, v)) continue;
            ++pairs;
            if (l.join[l.meet[l.comp[u]][v]][u] != v) {
                r.verdict = false;
                r.witness = {l.names[u], l.names[v]};
                break;
            }
        }
    }
    r.constant = static_cast<double>(pairs);
    return r;
}

std::vector<std::pair<int, int>> orthomodular_violations(const OrthoLattice& l) {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < l.size(); ++u)
        for (int v = 0; v < l.size(); ++v)
            if (l.le(u, v) && l.join[l.meet[l.comp[u]][v]][u] != v) out.emplace_back(u, v);
    return out;
}

bool replay_orthomodular(const OrthoLattice& l, const PropertyReport& r) {
    if (r.witness.size() != 2) return false;
    int u = l.id(r.witness[0]), v = l.id(r.witness[1]);
    return l.le(u, v) && l.join[l.meet[l.comp[u]][v]][u] != v;
}

OrthoLattice hexagon_lattice() {
    // 0 < a < b' < 1 and 0 < b < a' < 1.
    std::vector<std::string> names{"0", "a", "b", "a'", "b'", "1"};
    std::vector<std::vector<bool>> le(6, std::vector<bool>(6, false));
    auto set = [&](int u, int v) { le[u][v] = true; };
    for (int u = 0; u < 6; ++u) {
        set(0, u);
        set(u, 5);
        set(u, u);
    }
    set(1, 4);
    set(2, 3);
    return make_ortholattice(names, le, {5, 3, 4, 1, 2, 0});
}

OrthoLattice powerset_lattice(int n) {
    const unsigned size = 1U << n;
    std::vector<std::string> names;
    std::vector<std::vector<bool>> le(size, std::vector<bool>(size, false));
    std::vector<int> comp;
    for (unsigned a = 0; a < size; ++a) {
        names.push_back(set_name(a, n));
        comp.push_back(static_cast<int>((size - 1) & ~a));
        for (unsigned b = 0; b < size; ++b) le[a][b] = (a & b) == a;
    }
    return make_ortholattice(names, le, comp);
}

OrthoLattice closed_set_lattice(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<unsigned> nb(sz(n), 0);
    for (auto [a, b] : edges) {
        nb[a] |= 1U << b;
        nb[b] |= 1U << a;
    }
    const unsigned all = (1U << n) - 1;
    auto perp = [&](unsigned a) {
        unsigned out = all;
        for (int i = 0; i < n; ++i)
            if (a >> i & 1U) out &= nb[i];
        return out;
    };
    std::set<unsigned> closed;
    for (unsigned a = 0; a <= all; ++a) closed.insert(perp(perp(a)));
    std::vector<unsigned> els(closed.begin(), closed.end());
    std::vector<std::string> names;
    std::vector<int> comp;
    std::vector<std::vector<bool>> le(els.size(), std::vector<bool>(els.size(), false));
    for (std::size_t i = 0; i < els.size(); ++i) {
        names.push_back(set_name(els[i], n));
        comp.push_back(static_cast<int>(std::lower_bound(els.begin(), els.end(), perp(els[i])) - els.begin()));
        for (std::size_t j = 0; j < els.size(); ++j) le[i][j] = (els[i] & els[j]) == els[i];
    }
    return make_ortholattice(names, le, comp, false);
}

long graph_count(int n) {
    std::vector<std::uint32_t> graphs{0};
    for (int k = 1; k <= n; ++k) graphs = grow_graphs(graphs, k);
    return static_cast<long>(graphs.size());
}

bool embedding_holds(const OrthoLattice& src, const OrthoLattice& dst, const std::vector<int>& phi) {
    if (static_cast<int>(phi.size()) != src.size()) return false;
    std::set<int> image(phi.begin(), phi.end());
    if (static_cast<int>(image.size()) != src.size()) return false;
    for (int p : phi)
        if (p < 0 || p >= dst.size()) return false;
    for (int u = 0; u < src.size(); ++u)
        for (int v = 0; v < src.size(); ++v)
            if (src.le(u, v) != dst.le(phi[u], phi[v]) || src.orth(u, v) != dst.orth(phi[u], phi[v])) return false;
    return true;
}

ExtensionReport search_orthomodular_extension(const OrthoLattice& l, int max_size, int hard_cap, int max_atoms) {
    if (max_size > hard_cap)
        throw HhsError(ErrorKind::Cap, "max_size exceeds the hard cap",
                       {std::to_string(max_size), std::to_string(hard_cap)});
    if (max_size < l.size())
        throw HhsError(ErrorKind::Precondition, "max_size is smaller than the lattice",
                       {std::to_string(max_size), std::to_string(l.size())});
    ExtensionReport rep;
    rep.atom_cap = max_atoms;
    rep.atom_cap_binding = max_size - 2 > max_atoms;
    if (is_orthomodular(l).verdict) {
        rep.found = true;
        rep.target = l;
        for (int u = 0; u < l.size(); ++u) rep.embedding.push_back(u);
        return rep;
    }
    // A lattice with k atoms has at least k + 2 elements.
    int atoms = std::min(max_atoms, max_size - 2);
    std::vector<std::uint32_t> graphs{0};
    for (int n = 1; n <= atoms; ++n) {
        graphs = grow_graphs(graphs, n);
        for (std::uint32_t g : graphs) {
            ++rep.graphs_examined;
            std::vector<std::pair<int, int>> edges;
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i)
                    if (g >> pair_bit(i, j) & 1U) edges.emplace_back(i, j);
            auto m = closed_set_lattice(n, edges);
            if (m.size() < l.size() || m.size() > max_size) continue;
            ++rep.lattices_in_range;
            if (!is_orthomodular(m).verdict) continue;
            ++rep.orthomodular_candidates;
            std::vector<int> phi;
            if (find_embedding(l, m, phi)) {
                rep.found = true;
                rep.target = m;
                rep.embedding = phi;
                return rep;
            }
        }
    }
    return rep;
}

std::vector<std::string> ExtensionReport::lines(const OrthoLattice& src) const {
    std::vector<std::string> out;
    std::ostringstream os;
    os << "found=" << (found ? "true" : "false") << " graphs=" << graphs_examined << " lattices=" << lattices_in_range
       << " orthomodular=" << orthomodular_candidates << " atom_cap=" << atom_cap
       << " atom_cap_binding=" << (atom_cap_binding ? "true" : "false");
    if (found) os << " target_size=" << target.size();
    out.push_back(os.str());
    if (found)
        for (int u = 0; u < src.size(); ++u) out.push_back("map " + src.names[u] + " -> " + target.names[embedding[u]]);
    return out;
}

std::string dump_lattice(const OrthoLattice& l) {
    std::ostringstream os;
    for (int v = 0; v < l.size(); ++v) {
        os << "element " << l.names[v] << " covers={";
        bool first = true;
        l.down[v].for_each([&](int u) {
            if (u == v) return;
            bool cover = true;
            l.down[v].for_each([&](int w) {
                if (w != v && w != u && l.le(u, w)) cover = false;
            });
            if (!cover) return;
            os << (first ? "" : ",") << l.names[u];
            first = false;
        });
        os << "} complement=" << l.names[l.comp[v]] << " key=" << v << "\n";
    }
    return os.str();
}

}  // namespace hhsforge
