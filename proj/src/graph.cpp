#include "hhsforge/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "hhsforge/parallel.hpp"

namespace hhsforge {

int Graph::add_vertex(std::string label) {
    adj.emplace_back();
    labels.push_back(std::move(label));
    return size() - 1;
}

void Graph::add_edge(int a, int b) {
    if (a == b || has_edge(a, b)) return;
    adj[a].push_back(b);
    adj[b].push_back(a);
}

bool Graph::has_edge(int a, int b) const {
    const auto& na = adj[a];
    return std::find(na.begin(), na.end(), b) != na.end();
}

std::size_t Graph::edge_count() const {
    std::size_t s = 0;
    for (const auto& n : adj) s += n.size();
    return s / 2;
}

Graph Graph::induced(const std::vector<int>& keep) const {
    Graph h;
    std::vector<int> idx(adj.size(), -1);
    for (int v : keep) idx[v] = h.add_vertex(labels.empty() ? std::string{} : labels[v]);
    for (int v : keep)
        for (int w : adj[v])
            if (idx[w] >= 0 && v < w) h.add_edge(idx[v], idx[w]);
    return h;
}

std::vector<int> bfs(const Graph& g, int src) {
    std::vector<int> dist(g.size(), kInf);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : g.adj[v])
            if (dist[w] == kInf) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

DistMatrix all_pairs(const Graph& g) {
    DistMatrix D;
    D.n = g.size();
    D.d.assign(static_cast<std::size_t>(D.n) * D.n, kInf);
    parallel_for(static_cast<std::size_t>(D.n), [&](std::size_t s) {
        auto row = bfs(g, static_cast<int>(s));
        std::copy(row.begin(), row.end(), D.d.begin() + static_cast<std::ptrdiff_t>(s * D.n));
    });
    return D;
}

int set_distance(const DistMatrix& D, const std::vector<int>& A, const std::vector<int>& B) {
    int best = kInf;
    for (int a : A)
        for (int b : B) best = std::min(best, D(a, b));
    return best;
}

int set_diameter(const DistMatrix& D, const std::vector<int>& A) {
    int best = 0;
    for (int a : A)
        for (int b : A) best = std::max(best, D(a, b));
    return best;
}

int diameter(const DistMatrix& D) {
    int best = 0;
    for (int v : D.d) best = std::max(best, v);
    return best;
}

bool connected(const Graph& g) {
    if (g.size() == 0) return true;
    auto d = bfs(g, 0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x == kInf; });
}

double four_point_delta(const DistMatrix& D, const std::vector<int>& verts) {
    std::vector<int> v = verts;
    if (v.empty())
        for (int i = 0; i < D.n; ++i) v.push_back(i);
    const std::size_t n = v.size();
    int twice = parallel_max<int>(n, 0, [&](std::size_t ia) {
        int best = 0;
        int a = v[ia];
        for (std::size_t ib = ia + 1; ib < n; ++ib)
            for (std::size_t ic = ib + 1; ic < n; ++ic)
                for (std::size_t id = ic + 1; id < n; ++id) {
                    int b = v[ib], c = v[ic], d = v[id];
                    int s[3] = {D(a, b) + D(c, d), D(a, c) + D(b, d), D(a, d) + D(b, c)};
                    std::sort(s, s + 3);
                    best = std::max(best, s[2] - s[1]);
                }
        return best;
    });
    return twice / 2.0;
}

std::string to_dot(const Graph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int v = 0; v < g.size(); ++v) {
        os << "  n" << v;
        if (!g.labels.empty() && !g.labels[v].empty()) os << " [label=\"" << g.labels[v] << "\"]";
        os << ";\n";
    }
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.adj[v])
            if (v < w) os << "  n" << v << " -- n" << w << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace hhsforge
