#pragma once

#include <string>
#include <vector>

#include "hhsforge/indexset.hpp"

namespace hhsforge {

// Finite ortholattice given by its order, meet/join tables and complement.
struct OrthoLattice {
    std::vector<std::string> names;
    std::vector<Bits> down;                 // down[v] = elements below v
    std::vector<std::vector<int>> meet, join;
    std::vector<int> comp;
    int top = -1, bottom = -1;

    int size() const { return static_cast<int>(names.size()); }
    bool le(int u, int v) const { return down[v].test(static_cast<std::size_t>(u)); }
    bool orth(int u, int v) const { return le(u, comp[v]); }
    int id(const std::string& name) const;
};

// Builds tables from an order relation (le[u][v] = u <= v) and a complement map.
// Throws Axiom when the order is not a lattice or the invariants fail.
OrthoLattice make_ortholattice(std::vector<std::string> names, const std::vector<std::vector<bool>>& le,
                               std::vector<int> comp, bool validate = true);

// Domains plus a fresh bottom "EMPTY"; the index set must be an orthogonal set.
OrthoLattice to_ortholattice(const IndexSet& s);

// Table checks of the lattice and complement invariants.
PropertyReport validate_ortholattice(const OrthoLattice& l);

// (U^⊥ ∧ V) ∨ U = V for all U ⊑ V; witness is the first violating pair.
PropertyReport is_orthomodular(const OrthoLattice& l);
// Every violating pair (U, V) with U ⊑ V.
std::vector<std::pair<int, int>> orthomodular_violations(const OrthoLattice& l);
// True when the pair named in the witness still violates the identity.
bool replay_orthomodular(const OrthoLattice& l, const PropertyReport& r);

OrthoLattice hexagon_lattice();
OrthoLattice powerset_lattice(int n);
// Biorthogonally closed atom sets of an orthogonality graph on n atoms.
OrthoLattice closed_set_lattice(int n, const std::vector<std::pair<int, int>>& edges);

// Number of graphs on n vertices up to isomorphism, as produced by the search enumerator.
long graph_count(int n);

// Injective map preserving ⊑, ⊥ and their negations.
bool embedding_holds(const OrthoLattice& src, const OrthoLattice& dst, const std::vector<int>& phi);

struct ExtensionReport {
    bool found = false;
    OrthoLattice target;
    std::vector<int> embedding;
    long graphs_examined = 0;       // atom orthogonality graphs up to isomorphism
    long lattices_in_range = 0;     // closed-set lattices within the size bounds
    long orthomodular_candidates = 0;
    int atom_cap = 0;
    bool atom_cap_binding = false;  // larger atom counts could still fit in max_size
    std::vector<std::string> lines(const OrthoLattice& src) const;
};

// Throws Cap when max_size exceeds hard_cap and Precondition when max_size < |L|.
ExtensionReport search_orthomodular_extension(const OrthoLattice& l, int max_size, int hard_cap = 24,
                                              int max_atoms = 8);

std::string dump_lattice(const OrthoLattice& l);

}  // namespace hhsforge
