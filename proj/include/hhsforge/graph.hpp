#pragma once

#include <climits>
#include <string>
#include <vector>

#include "hhsforge/bits.hpp"

namespace hhsforge {

inline constexpr int kInf = INT_MAX / 4;

// Simple undirected graph with optional vertex labels.
struct Graph {
    std::vector<std::vector<int>> adj;
    std::vector<std::string> labels;

    int size() const { return static_cast<int>(adj.size()); }
    int add_vertex(std::string label = {});
    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    std::size_t edge_count() const;
    Graph induced(const std::vector<int>& keep) const;
};

std::vector<int> bfs(const Graph& g, int src);

// Dense all-pairs distances; kInf marks disconnected pairs.
struct DistMatrix {
    int n = 0;
    std::vector<int> d;
    int operator()(int a, int b) const { return d[static_cast<std::size_t>(a) * n + b]; }
};

DistMatrix all_pairs(const Graph& g);

int set_distance(const DistMatrix& D, const std::vector<int>& A, const std::vector<int>& B);
int set_diameter(const DistMatrix& D, const std::vector<int>& A);
int diameter(const DistMatrix& D);
bool connected(const Graph& g);

// Exact four-point Gromov constant over the given vertices (all if empty).
double four_point_delta(const DistMatrix& D, const std::vector<int>& verts = {});

std::string to_dot(const Graph& g, const std::string& name);

}  // namespace hhsforge
