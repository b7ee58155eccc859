#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hhsforge/model.hpp"

namespace hhsforge {

// The minimal orthogonality graph and its blow-up X.
struct BlowupGraph {
    Graph base;                     // vertices = minimal domains, edges = orthogonality
    std::vector<int> base_domain;   // base vertex -> domain
    std::vector<int> base_of;       // domain -> base vertex, or -1
    std::vector<Bits> base_nbr;

    Graph blown;
    std::vector<Bits> nbr;
    std::vector<int> p;             // X vertex -> base vertex
    std::vector<int> coord_of;      // X vertex -> vertex of CU, -1 for the apex
    std::vector<int> apex;          // base vertex -> apex in X
    std::vector<std::vector<int>> cone_base;  // base vertex -> X vertex of each CU vertex
    int max_orth_family = 0;

    int size() const { return blown.size(); }
    Bits empty() const { return Bits(static_cast<std::size_t>(size())); }
};

BlowupGraph blow_up(const HHSModel& m);

// A simplex is a vertex set of X.
using Simplex = Bits;

bool is_simplex(const BlowupGraph& x, const Simplex& s);
std::vector<int> support(const BlowupGraph& x, const Simplex& s);
// Vertices outside `set` adjacent to every vertex of it; all of X for the empty set.
Bits link_of_set(const BlowupGraph& x, const Bits& set);
Bits link(const BlowupGraph& x, const Simplex& s);
// Link recomputed from the join decomposition over the support.
Bits link_decomposed(const BlowupGraph& x, const Simplex& s);

std::vector<std::vector<int>> base_cliques(const BlowupGraph& x, bool maximal_only);
// Support first: a maximal family of the base graph, then one CU vertex per member.
std::vector<Simplex> maximal_simplices(const BlowupGraph& x);
std::vector<Simplex> all_simplices(const BlowupGraph& x);

enum class LinkShape { PointOrJoin, AllEdges, AlmostMaximal };
const char* shape_name(LinkShape s);
LinkShape link_shape(const BlowupGraph& x, const Simplex& s);
// True when the statement attached to the shape tag holds for s.
bool shape_holds(const BlowupGraph& x, const Simplex& s, LinkShape tag);

// Simplices grouped by link; classes of non-maximal simplices.
struct SimplexClasses {
    std::vector<Simplex> simplices;
    std::vector<Bits> simplex_link;
    std::vector<int> class_of;      // -1 for maximal simplices
    std::vector<Bits> link;         // per class
    std::vector<Bits> sat;
    std::vector<int> rep;           // a simplex of each class
    int empty_class = -1;
    std::unordered_map<Bits, int, BitsHash> by_link;

    int classes() const { return static_cast<int>(link.size()); }
};

SimplexClasses simplex_classes(const BlowupGraph& x);

struct LinkOps {
    Bits link, star, saturation;
    int class_id = -1;
    LinkShape shape = LinkShape::PointOrJoin;
};
LinkOps link_ops(const BlowupGraph& x, const SimplexClasses& c, const Simplex& s);

Rel class_relation(const BlowupGraph& x, const SimplexClasses& c, int a, int b);

// Orthogonal complement of a base simplex in the top domain; kEmpty when none exists.
int simplex_complement(const HHSModel& m, const BlowupGraph& x, const std::vector<int>& base_simplex);
// Minimal domain orthogonal to the simplex and containing every minimal domain of its link.
int weak_complement(const HHSModel& m, const BlowupGraph& x, const std::vector<int>& base_simplex);
int co_level(const IndexSet& s, int u);

ConsistentTuple b_sigma(const HHSModel& m, const BlowupGraph& x, const Simplex& sigma);

struct LambdaConstants {
    double M = 0, M1 = 0, M0 = 0, C0 = 0;
    double lambda0 = 0, lambda1 = 0, lambda2 = 0;
};

struct WGraph {
    std::vector<Simplex> simplices;
    std::vector<std::vector<int>> support;  // domains
    std::vector<ConsistentTuple> b;
    std::vector<int> f;
    std::vector<double> f_defect;
    Graph g;
    Graph augmented;
    double lambda = 0;
    int complexity = 0;
    LambdaConstants consts;

    int index_of(const Simplex& s) const;
};

LambdaConstants lambda_constants(const HHSModel& m, const std::vector<ConsistentTuple>& b,
                                 const std::vector<int>& f);
// lambda <= 0 selects the computed default lambda2.
WGraph build_w(const HHSModel& m, const BlowupGraph& x, double lambda = 0);
// Threshold multiplier k + 1 for a pair of maximal simplices.
int w_multiplier(const HHSModel& m, const WGraph& w, int a, int b);

struct CoordinateGraph {
    std::vector<int> y_vertices;   // X vertices kept in Y
    Graph y;
    DistMatrix dy;
    std::vector<int> c_vertices;   // X vertices of the link
    Graph c;
    DistMatrix dc;
    int diam_in_y = 0;
    int diam = 0;                  // intrinsic, kInf when disconnected
    std::vector<Bits> pi_table;    // per maximal simplex, X vertices
    std::vector<int> pi_meet_diam; // diameter of the simplex inside Y
    std::vector<std::pair<int, Bits>> rho_up;  // classes transverse or properly nested
    std::vector<std::pair<int, std::vector<std::pair<int, Bits>>>> rho_down;  // properly containing classes
};

CoordinateGraph coordinate_graph(const BlowupGraph& x, const SimplexClasses& c, const WGraph& w,
                                 int cls, bool with_rho = false);

struct QiReport {
    double lipschitz = 0;
    double surjectivity_defect = 0;
    double realisation_defect = 0;
    bool w_connected = false;
    int w_diameter = 0;
    DistanceProfile lower;  // d_W <= K d_Z + C
    DistanceProfile upper;  // d_Z <= K d_W + C
    bool qi = false;
};
QiReport realisation_qi(const HHSModel& m, const WGraph& w);

struct ChhsReport {
    int complexity = 0;
    double delta = 0;
    std::vector<double> class_delta;   // per class, four point and embedding combined
    std::vector<int> class_diam;       // intrinsic diameter per class
    std::vector<int> class_diam_y;     // diameter inside Y per class
    PropertyReport condition1, condition2, condition3, condition4;
    PropertyReport simplicial_containers, simplicial_wedges;
    QiReport qi;
    std::vector<std::string> lines() const;
};
ChhsReport check_chhs(const HHSModel& m, const BlowupGraph& x, const SimplexClasses& c, const WGraph& w);

struct LinkDecomposition {
    Simplex pi;
    Simplex psi;
};

// Builds Pi and Psi with Lk(Sigma) ∩ Lk(Delta) = Lk(Pi) ⋆ Psi by the peel, fill and
// assemble procedure. Hypotheses on the index set are validated once on construction.
class LinkIntersector {
public:
    LinkIntersector(const HHSModel& m, const BlowupGraph& x);
    LinkDecomposition operator()(const Simplex& sigma, const Simplex& delta) const;

private:
    const HHSModel& m_;
    const BlowupGraph& x_;
};
LinkDecomposition intersection_links_constructive(const BlowupGraph& x, const HHSModel& m,
                                                  const Simplex& sigma, const Simplex& delta);
// Exhaustive search for some Pi containing Sigma and Psi with the same identity.
std::optional<LinkDecomposition> intersection_links_search(const BlowupGraph& x, const SimplexClasses& c,
                                                           const Simplex& sigma, const Simplex& delta);
bool decomposition_holds(const BlowupGraph& x, const Simplex& sigma, const Simplex& delta,
                         const LinkDecomposition& d);

// Checks over the base graph and all simplices.
PropertyReport check_link_decomposition(const BlowupGraph& x, const SimplexClasses& c);
PropertyReport check_link_shapes(const BlowupGraph& x, const SimplexClasses& c);
PropertyReport check_containment_reversal(const BlowupGraph& x, const SimplexClasses& c);
PropertyReport check_weak_complement_links(const HHSModel& m, const BlowupGraph& x);
PropertyReport check_weak_complement_dichotomy(const HHSModel& m, const BlowupGraph& x);
PropertyReport check_b_sigma(const HHSModel& m, const BlowupGraph& x);

// Domain permutation with compatible coordinate and point maps.
struct Automorphism {
    std::vector<int> domain;
    std::vector<std::vector<int>> coord;  // coord[U][c] is a vertex of C(gU)
    std::vector<int> point;
};
Automorphism identity_automorphism(const HHSModel& m);
// Coordinate maps are derived from vertex labels, then from neighbourhoods.
Automorphism derive_automorphism(const HHSModel& m, const std::vector<int>& domain,
                                 const std::vector<int>& point);
Automorphism compose(const Automorphism& g, const Automorphism& h);  // g after h
Automorphism grid_transpose(const HHSModel& m);
PropertyReport check_automorphism(const HHSModel& m, const Automorphism& g);

struct EquivarianceReport {
    PropertyReport axioms, x_automorphism, w_edges, b_identity;
    double realisation_defect = 0;
    bool verdict = false;
};
EquivarianceReport check_equivariance(const HHSModel& m, const BlowupGraph& x, const WGraph& w,
                                      const Automorphism& g);

std::string simplex_name(const BlowupGraph& x, const Simplex& s);
std::string dot_base(const BlowupGraph& x);
std::string dot_blowup(const BlowupGraph& x);
std::string dot_w(const BlowupGraph& x, const WGraph& w);
std::string dot_coordinate(const CoordinateGraph& cg, const BlowupGraph& x, const std::string& name);

}  // namespace hhsforge
