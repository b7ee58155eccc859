#include "hhsforge/indexset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

namespace hhsforge {

const char* rel_name(Rel r) {
    switch (r) {
        case Rel::Equal: return "Equal";
        case Rel::NestedIn: return "NestedIn";
        case Rel::Contains: return "Contains";
        case Rel::Orthogonal: return "Orthogonal";
        case Rel::Transverse: return "Transverse";
    }
    return "?";
}

std::string PropertyReport::line() const {
    std::ostringstream os;
    os << "property=" << property << " verdict=" << (verdict ? "true" : "false") << " witness=";
    for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
    if (constant) os << " constant=" << *constant;
    return os.str();
}

int IndexSet::id(const std::string& name) const {
    auto f = find(name);
    if (!f) throw HhsError(ErrorKind::Unknown, "unknown domain id " + name, {name});
    return *f;
}

std::optional<int> IndexSet::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Rel IndexSet::relation(int u, int v) const {
    if (u == v) return Rel::Equal;
    if (nested(u, v)) return Rel::NestedIn;
    if (nested(v, u)) return Rel::Contains;
    if (orthogonal(u, v)) return Rel::Orthogonal;
    return Rel::Transverse;
}

std::vector<int> IndexSet::minimal() const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (is_minimal(u)) out.push_back(u);
    return out;
}

std::vector<std::string> IndexSet::ids(const std::vector<int>& us) const {
    std::vector<std::string> out;
    for (int u : us) out.push_back(u == kEmpty ? std::string("EMPTY") : names_[u]);
    return out;
}

int IndexSet::complexity() const {
    // Longest chain ending at each domain, by increasing size of the down-set.
    std::vector<int> order(size());
    for (int i = 0; i < size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return below_[a].count() < below_[b].count(); });
    std::vector<int> len(size(), 1);
    int best = 0;
    for (int v : order) {
        below_[v].for_each([&](int u) {
            if (u != v) len[v] = std::max(len[v], len[u] + 1);
        });
        best = std::max(best, len[v]);
    }
    return best;
}

IndexSet IndexSet::build(std::vector<std::string> names, const std::vector<std::pair<int, int>>& nest,
                         const std::vector<std::pair<int, int>>& orth) {
    IndexSet s;
    const int n = static_cast<int>(names.size());
    if (n == 0) throw HhsError(ErrorKind::Axiom, "index set has no domains");
    s.names_ = std::move(names);
    s.below_.assign(n, Bits(n));
    for (int i = 0; i < n; ++i) s.below_[i].set(i);
    for (auto [a, b] : nest) s.below_[b].set(a);
    for (int k = 0; k < n; ++k)
        for (int v = 0; v < n; ++v)
            if (s.below_[v].test(k)) s.below_[v] |= s.below_[k];
    s.above_.assign(n, Bits(n));
    for (int v = 0; v < n; ++v) s.below_[v].for_each([&](int u) { s.above_[u].set(v); });

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (s.nested(u, v) && s.nested(v, u))
                throw HhsError(ErrorKind::Axiom, "nesting antisymmetry violated",
                               {s.names_[u], s.names_[v]});

    std::vector<int> maxima;
    for (int u = 0; u < n; ++u)
        if (s.above_[u].count() == 1) maxima.push_back(u);
    if (maxima.size() != 1)
        throw HhsError(ErrorKind::Axiom, "no unique maximal element", s.ids(maxima));
    s.top_ = maxima[0];

    for (auto [a, b] : orth)
        if (a == b)
            throw HhsError(ErrorKind::Axiom, "orthogonality anti-reflexive violated", {s.names_[a]});
    s.orth_.assign(n, Bits(n));
    for (auto [a, b] : orth) {
        s.below_[a].for_each([&](int v) {
            s.below_[b].for_each([&](int w) {
                s.orth_[v].set(w);
                s.orth_[w].set(v);
            });
        });
    }
    for (int u = 0; u < n; ++u)
        if (s.orth_[u].test(u))
            throw HhsError(ErrorKind::Axiom, "orthogonality anti-reflexive violated", {s.names_[u]});
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (s.orth_[u].test(v) && (s.nested(u, v) || s.nested(v, u)))
                throw HhsError(ErrorKind::Axiom, "orthogonal domains are comparable",
                               {s.names_[u], s.names_[v]});

    // Container axiom: orthogonal sets inside T sit in a proper subdomain of T.
    for (int t = 0; t < n; ++t) {
        for (int u : s.below_[t].items()) {
            Bits a = s.below_[t] & s.orth_[u];
            if (a.none()) continue;
            bool found = false;
            for (int w : s.below_[t].items()) {
                if (w == t) continue;
                if (a.subset_of(s.below_[w])) {
                    found = true;
                    break;
                }
            }
            if (!found)
                throw HhsError(ErrorKind::Axiom, "container axiom violated",
                               {s.names_[u], s.names_[t]});
        }
    }
    return s;
}

IndexSet load_index_set(const std::string& text) {
    static const std::regex id_re(R"([A-Za-z0-9_\[\]\-]+)");
    std::vector<std::string> names;
    std::map<std::string, int> index;
    std::vector<std::pair<std::string, std::string>> nest_s, orth_s;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto bad = [&](const std::string& why) {
            return HhsError(ErrorKind::Parse,
                            "parse error at line " + std::to_string(lineno) + ": " + why);
        };
        for (std::size_t i = 1; i < tok.size(); ++i)
            if (!std::regex_match(tok[i], id_re)) throw bad("invalid id '" + tok[i] + "'");
        if (tok[0] == "domain") {
            if (tok.size() != 2) throw bad("expected: domain <id>");
            if (index.count(tok[1])) throw bad("duplicate domain " + tok[1]);
            index[tok[1]] = static_cast<int>(names.size());
            names.push_back(tok[1]);
        } else if (tok[0] == "nest" || tok[0] == "orth") {
            if (tok.size() != 3) throw bad("expected: " + tok[0] + " <a> <b>");
            (tok[0] == "nest" ? nest_s : orth_s).emplace_back(tok[1], tok[2]);
        } else {
            throw bad("unknown directive '" + tok[0] + "'");
        }
    }
    auto lookup = [&](const std::string& k) {
        auto it = index.find(k);
        if (it == index.end())
            throw HhsError(ErrorKind::Parse, "undeclared domain " + k, {k});
        return it->second;
    };
    std::vector<std::pair<int, int>> nest, orth;
    for (auto& [a, b] : nest_s) nest.emplace_back(lookup(a), lookup(b));
    for (auto& [a, b] : orth_s) orth.emplace_back(lookup(a), lookup(b));
    return IndexSet::build(names, nest, orth);
}

IndexSet load_index_set_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw HhsError(ErrorKind::Parse, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return load_index_set(ss.str());
}

std::string dump_index_set(const IndexSet& s) {
    std::ostringstream os;
    for (int u = 0; u < s.size(); ++u) os << "domain " << s.name(u) << "\n";
    for (int u = 0; u < s.size(); ++u)
        for (int v = 0; v < s.size(); ++v)
            if (s.proper(u, v)) os << "nest " << s.name(u) << " " << s.name(v) << "\n";
    for (int u = 0; u < s.size(); ++u)
        for (int v = u + 1; v < s.size(); ++v)
            if (s.orthogonal(u, v)) os << "orth " << s.name(u) << " " << s.name(v) << "\n";
    return os.str();
}

Rel relation(const IndexSet& s, const std::string& u, const std::string& v) {
    return s.relation(s.id(u), s.id(v));
}

namespace {

std::vector<int> maxima_of(const IndexSet& s, const Bits& set) {
    std::vector<int> out;
    set.for_each([&](int u) {
        Bits up = s.above(u) & set;
        if (up.count() == 1) out.push_back(u);
    });
    return out;
}

std::vector<int> minima_of(const IndexSet& s, const Bits& set) {
    std::vector<int> out;
    set.for_each([&](int u) {
        Bits down = s.below(u) & set;
        if (down.count() == 1) out.push_back(u);
    });
    return out;
}

Bits minimal_below(const IndexSet& s, const Bits& set) {
    Bits out(static_cast<std::size_t>(s.size()));
    set.for_each([&](int u) {
        if (s.is_minimal(u)) out.set(u);
    });
    return out;
}

// Domains nested in both u and v that contain every minimal common lower bound.
Bits weak_wedge_family(const IndexSet& s, int u, int v) {
    Bits lower = s.below(u) & s.below(v);
    Bits mins = minimal_below(s, lower);
    Bits fam(static_cast<std::size_t>(s.size()));
    lower.for_each([&](int t) {
        if (mins.subset_of(s.below(t))) fam.set(t);
    });
    return fam;
}

}  // namespace

int wedge(const IndexSet& s, int u, int v, bool weak) {
    Bits lower = s.below(u) & s.below(v);
    if (lower.none()) return kEmpty;
    if (!weak) {
        auto mx = maxima_of(s, lower);
        if (mx.size() != 1)
            throw HhsError(ErrorKind::Precondition, "wedge undefined", s.ids(mx));
        return mx[0];
    }
    Bits fam = weak_wedge_family(s, u, v);
    auto mn = minima_of(s, fam);
    if (mn.size() != 1) throw HhsError(ErrorKind::Precondition, "wedge undefined", s.ids(mn));
    return mn[0];
}

int clean_container(const IndexSet& s, int u, int t) {
    Bits a = s.below(t) & s.orth(u);
    a.reset(static_cast<std::size_t>(t));
    if (a.none()) return kEmpty;
    auto mx = maxima_of(s, a);
    if (mx.size() != 1)
        throw HhsError(ErrorKind::Precondition, "clean containers property fails",
                       {s.name(u), s.name(t)});
    return mx[0];
}

int orth_complement(const IndexSet& s, const std::vector<int>& parts, int ambient) {
    if (parts.empty()) return ambient;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!s.nested(parts[i], ambient))
            throw HhsError(ErrorKind::Precondition, "part not nested in ambient",
                           {s.name(parts[i]), s.name(ambient)});
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!s.orthogonal(parts[i], parts[j]))
                throw HhsError(ErrorKind::Precondition, "parts not pairwise orthogonal",
                               {s.name(parts[i]), s.name(parts[j])});
    }
    int cur = ambient;
    for (int p : parts) {
        if (cur == kEmpty) break;
        if (p == cur) {
            cur = kEmpty;
            break;
        }
        cur = clean_container(s, p, cur);
    }
    // The fold must agree with the direct characterisation.
    Bits cand = s.below(ambient);
    for (int p : parts) cand &= s.orth(p);
    int direct = kEmpty;
    if (cand.any()) {
        auto mx = maxima_of(s, cand);
        if (mx.size() != 1)
            throw HhsError(ErrorKind::Precondition, "clean containers property fails", s.ids(mx));
        direct = mx[0];
    }
    if (direct != cur)
        throw HhsError(ErrorKind::Precondition, "clean containers property fails",
                       s.ids({direct, cur}));
    return cur;
}

DepthStats depth_stats(const IndexSet& s, int u) {
    const int n = s.size();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    // Longest strict chain above u and below u, by dynamic programming on down-set sizes.
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return s.below(a).count() < s.below(b).count(); });
    std::vector<int> down(n, 0);
    for (int v : order)
        s.below(v).for_each([&](int w) {
            if (w != v) down[v] = std::max(down[v], down[w] + 1);
        });
    std::vector<int> up(n, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        s.above(v).for_each([&](int w) {
            if (w != v) up[v] = std::max(up[v], up[w] + 1);
        });
    }
    return {up[u], down[u]};
}

SplitInfo split_info(const IndexSet& s, int u) {
    SplitInfo info;
    s.below(u).for_each([&](int w) {
        if (!s.is_minimal(w)) return;
        bool friendly = true;
        s.below(u).for_each([&](int v) {
            if (!(s.nested(w, v) || s.orthogonal(w, v))) friendly = false;
        });
        if (friendly) info.samaritans.push_back(w);
    });
    info.split = !info.samaritans.empty();
    return info;
}

namespace {

// Each property is a conjunction of instances over tuples of domains.
// An instance check returns true when the instance holds.
bool inst_wedges(const IndexSet& s, int u, int v) {
    Bits lower = s.below(u) & s.below(v);
    return lower.none() || maxima_of(s, lower).size() == 1;
}

bool inst_weak_wedges(const IndexSet& s, int u, int v) {
    Bits lower = s.below(u) & s.below(v);
    return lower.none() || weak_wedge_family(s, u, v).any();
}

bool inst_clean_containers(const IndexSet& s, int u, int t) {
    if (!s.proper(u, t)) return true;
    Bits a = s.below(t) & s.orth(u);
    a.reset(static_cast<std::size_t>(t));
    if (a.none()) return true;
    return maxima_of(s, a).size() == 1;
}

bool exists_orth_inside(const IndexSet& s, int u, int v) {
    Bits a = s.below(v) & s.orth(u);
    a.reset(static_cast<std::size_t>(v));
    return a.any();
}

bool inst_ons(const IndexSet& s, int u, int v) {
    if (!s.proper(u, v)) return true;
    return split_info(s, u).split || exists_orth_inside(s, u, v);
}

bool inst_strong_orth(const IndexSet& s, int u, int v) {
    if (!s.proper(u, v)) return true;
    return exists_orth_inside(s, u, v);
}

bool inst_weak_orth(const IndexSet& s, int u, int v) {
    if (!s.proper(u, v) || s.is_minimal(u)) return true;
    return exists_orth_inside(s, u, v);
}

// U^perp inside S, or kEmpty when undefined.
int complement_or_empty(const IndexSet& s, int u) {
    if (u == s.top()) return kEmpty;
    Bits a = s.orth(u);
    if (a.none()) return kEmpty;
    auto mx = maxima_of(s, a);
    return mx.size() == 1 ? mx[0] : kEmpty;
}

bool inst_involution(const IndexSet& s, int u) {
    if (u == s.top()) return true;
    int c = complement_or_empty(s, u);
    if (c == kEmpty) return false;
    return complement_or_empty(s, c) == u;
}

bool inst_odn(const IndexSet& s, int u, int v) {
    if (u == s.top() || v == s.top()) return true;
    int cu = complement_or_empty(s, u), cv = complement_or_empty(s, v);
    if (cu == kEmpty || cv == kEmpty) return false;
    return s.proper(u, v) == s.proper(cv, cu);
}

// The six bullets of the orthogonal-set definition, checked for one pair (u, v).
bool inst_orthogonal_set(const IndexSet& s, int u, int v) {
    const int n = s.size();
    if (s.orthogonal(u, u)) return false;
    if (s.orthogonal(u, v)) {
        bool ok = true;
        s.below(u).for_each([&](int w) {
            if (!s.orthogonal(w, v)) ok = false;
        });
        if (!ok) return false;
    }
    if (!inst_wedges(s, u, v)) return false;
    if (u == v && s.orth(u).any()) {
        auto mx = maxima_of(s, s.orth(u));
        if (mx.size() != 1) return false;
        int c = mx[0];
        for (int w = 0; w < n; ++w)
            if (s.orthogonal(w, c) != s.nested(w, u)) return false;
    }
    bool incl = s.orth(v).subset_of(s.orth(u));
    if (s.nested(u, v) != incl) return false;
    bool strict = incl && !(s.orth(v) == s.orth(u));
    if (s.proper(u, v) != strict) return false;
    return true;
}

struct PropertyRule {
    int arity;
    bool (*unary)(const IndexSet&, int);
    bool (*binary)(const IndexSet&, int, int);
};

std::optional<PropertyRule> rule_of(const std::string& name) {
    if (name == "wedges") return PropertyRule{2, nullptr, inst_wedges};
    if (name == "weak_wedges") return PropertyRule{2, nullptr, inst_weak_wedges};
    if (name == "clean_containers") return PropertyRule{2, nullptr, inst_clean_containers};
    if (name == "orthogonals_for_non_split") return PropertyRule{2, nullptr, inst_ons};
    if (name == "strong_orth") return PropertyRule{2, nullptr, inst_strong_orth};
    if (name == "weak_orth") return PropertyRule{2, nullptr, inst_weak_orth};
    if (name == "complement_involution") return PropertyRule{1, inst_involution, nullptr};
    if (name == "orth_determines_nesting") return PropertyRule{2, nullptr, inst_odn};
    if (name == "orthogonal_set") return PropertyRule{2, nullptr, inst_orthogonal_set};
    return std::nullopt;
}

}  // namespace

PropertyReport check_property(const IndexSet& s, const std::string& name) {
    auto sp = rule_of(name);
    if (!sp) throw HhsError(ErrorKind::Unknown, "unknown property " + name, {name});
    PropertyReport r;
    r.property = name;
    const int n = s.size();
    if (sp->arity == 1) {
        for (int u = 0; u < n; ++u)
            if (!sp->unary(s, u)) {
                r.verdict = false;
                r.witness = {s.name(u)};
                return r;
            }
        return r;
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (!sp->binary(s, u, v)) {
                r.verdict = false;
                r.witness = {s.name(u), s.name(v)};
                return r;
            }
    return r;
}

bool replay_failure(const IndexSet& s, const PropertyReport& r) {
    if (r.verdict) return false;
    auto sp = rule_of(r.property);
    if (!sp || r.witness.size() != static_cast<std::size_t>(sp->arity)) return false;
    if (sp->arity == 1) return !sp->unary(s, s.id(r.witness[0]));
    return !sp->binary(s, s.id(r.witness[0]), s.id(r.witness[1]));
}

}  // namespace hhsforge
