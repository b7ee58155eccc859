#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhsforge/graph.hpp"
#include "hhsforge/indexset.hpp"

namespace hhsforge {

using VSet = std::vector<int>;

// Per-source breakdown of the measured constant E.
struct EBreakdown {
    double diameters = 0;
    double lipschitz = 0;
    double consistency = 0;
    double rho_nested = 0;
    double rho_orthogonal = 0;  // already halved
    double realisation = 0;
    std::vector<std::string> witness;  // instance attaining the maximum
};

class HHSModel {
public:
    IndexSet index;
    Graph space;  // model points and their adjacency
    std::vector<Graph> coord;
    std::vector<std::vector<VSet>> pi;  // pi[U][x]
    // rho[U][V]: set in CV, defined for U proper in V or U transverse to V.
    std::vector<std::vector<std::optional<VSet>>> rho;
    // rho_down[U][V]: for V proper in U, image in CV of each CU vertex.
    std::vector<std::vector<std::optional<std::vector<VSet>>>> rho_down;

    double E = 1;
    double kappa = 20;
    EBreakdown e_parts;
    // (k, largest model distance among point pairs whose coordinates are all within k)
    std::vector<std::pair<int, int>> uniqueness_profile;

    DistMatrix dz;
    std::vector<DistMatrix> cdist;

    int domains() const { return index.size(); }
    int points() const { return space.size(); }

    // Set distance in CU.
    int du(int u, const VSet& a, const VSet& b) const;
    // Diameter of a union of sets in CU.
    int diam_union(int u, const VSet& a, const VSet& b) const;
    int dpoints(int u, int x, int y) const { return du(u, pi[u][x], pi[u][y]); }
};

// Computes distance tables, measures E and the uniqueness profile. kappa = 20E.
void finalize_model(HHSModel& m);
EBreakdown measure_e(const HHSModel& m);

struct ConsistentTuple {
    int scope = -1;
    std::vector<std::optional<VSet>> coords;  // indexed by domain; set for domains in scope
};

ConsistentTuple point_tuple(const HHSModel& m, int x, int scope = -1);
PropertyReport check_consistency(const HHSModel& m, const ConsistentTuple& t, double kappa);

struct Realisation {
    int point = -1;
    double defect = 0;
    double rho_defect = 0;  // partial families only
};

Realisation realise(const HHSModel& m, const ConsistentTuple& t);
Realisation realise_partial(const HHSModel& m, const std::vector<std::pair<int, VSet>>& family);

long distance_estimate(const HHSModel& m, int x, int y, double s);

struct DistanceProfile {
    double K = 1;
    double C = 0;
};
DistanceProfile distance_profile(const HHSModel& m, double s);

PropertyReport check_metric_property(const HHSModel& m, const std::string& name);
inline const std::vector<std::string> kMetricProperties = {"dpr", "dpr_minimal", "edpr",
                                                           "bounded_split", "normalised"};

HHSModel augment_point_domains(const HHSModel& m);

// One domain whose coordinate space is the path on n vertices, plus one minimal
// domain U projecting to a point with rho^U_S at the path's start.
HHSModel path_model(int n, bool with_minimal);

HHSModel load_model(const std::string& text, const std::string& base_dir);
std::string dump_model(const HHSModel& m);

}  // namespace hhsforge
