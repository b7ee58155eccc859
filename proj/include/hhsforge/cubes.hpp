#pragma once

#include <string>
#include <vector>

#include "hhsforge/bits.hpp"
#include "hhsforge/graph.hpp"
#include "hhsforge/model.hpp"

namespace hhsforge {

// Graph text format: `vertex <id>` and `edge <a> <b>` lines, `#` comments.
Graph load_graph(const std::string& text);
Graph load_graph_file(const std::string& path);
std::string dump_graph(const Graph& g);

struct MedianGraph {
    Graph g;
    DistMatrix D;
    int size() const { return g.size(); }
};

// Throws "not median" with a witness triple.
MedianGraph validate_median_graph(const Graph& g);

struct Hyperplane {
    std::vector<std::pair<int, int>> edges;  // (minus end, plus end)
    Bits minus, plus;                        // halfspaces
    Bits side_minus, side_plus;              // combinatorial hyperplanes
    std::string label;
    bool boundary = false;
};

class CubeComplex {
public:
    MedianGraph mg;
    std::vector<Hyperplane> hyps;
    std::vector<Bits> orient;   // orient[v]: hyperplanes whose plus side holds v
    std::vector<Bits> crosses;  // crosses[h]: hyperplanes crossing h

    int vertices() const { return mg.size(); }
    int hyperplanes() const { return static_cast<int>(hyps.size()); }
    Bits vset() const { return Bits(static_cast<std::size_t>(vertices())); }
    Bits hset() const { return Bits(static_cast<std::size_t>(hyperplanes())); }

    Bits sep(int x, int y) const;
    Bits crossing(const Bits& verts) const;
    // Smallest convex set containing verts (intersection of halfspaces).
    Bits hull(const Bits& verts) const;
    bool convex(const Bits& verts) const { return hull(verts) == verts; }
    int gate(int x, const Bits& Y) const;
    Bits gate_image(const Bits& Y, const Bits& source) const;
    // All convex sets whose crossing set is exactly `crossing`.
    std::vector<Bits> parallel_copies(const Bits& crossing) const;
    // Hyperplanes crossing every member of A and not in A.
    Bits crossing_all(const Bits& A) const;
    Bits orthogonal_complement_at(const Bits& F, int f) const;
    std::string vname(int v) const { return mg.g.labels[v]; }
};

// Hyperplanes as Theta-classes; labels default to h0, h1, ...
CubeComplex make_cube_complex(MedianGraph mg);

struct ParallelClass {
    Bits crossing;
    Bits rep;
    bool minimal = false;
    bool boundary = false;
    std::string name;
};

struct Hyperclosure {
    std::vector<ParallelClass> classes;  // classes[0] is the whole complex
    int rounds = 0;
    int longest_chain = 0;
    bool weak_factor_system = false;
    int find(const Bits& crossing) const;
    int find(const std::string& name) const;
};

// depth_cap <= 0 means 10 x number of hyperplanes.
Hyperclosure hyperclosure(const CubeComplex& c, int depth_cap = 0);
std::string dump_hyperclosure(const CubeComplex& c, const Hyperclosure& h);

// Closure of crossing sets under intersection, computed without geometry.
std::vector<Bits> combinatorial_closure(const CubeComplex& c);

IndexSet index_set_from_classes(const CubeComplex& c, const Hyperclosure& h);
HHSModel index_set_from_hyperclosure(const CubeComplex& c, const Hyperclosure& h);

PropertyReport check_complement_involution(const CubeComplex& c, const Hyperclosure& h);

// Fixtures.
Graph edge_graph();
Graph square_graph();
Graph cube_graph();                 // Q3
Graph grid_graph(int w, int h);     // w x h vertices, labels "x_y"
Graph triangle_graph();

CubeComplex build_counterexample(int depth);

// Minimal domains with an edge for each orthogonal pair.
Graph minimal_orthogonality_graph(const IndexSet& s);
// Compares the counterexample's minimal classes against the expected pattern for labels
// -1..2*depth-3: [Sigma] meets n >= 0, [Delta] meets -1 and n >= 1, [Gamma1] odd n,
// [Gamma2] even n >= 2, and no other pair is orthogonal.
PropertyReport check_counterexample_minimal_graph(const IndexSet& s, int depth);
CubeComplex grid_complex(int w, int h);

// Cube models with readable domain names (grid: S, V, H).
HHSModel grid_model(int w, int h);
HHSModel cube_model();
HHSModel square_model();
HHSModel counterexample_model(int depth);

// Model file: `index <file>` plus explicit tables, or `median <file>` to derive via hyperclosure.
HHSModel load_model_file(const std::string& path);

}  // namespace hhsforge
