#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhsforge/bits.hpp"

namespace hhsforge {

// Marker for the formal empty domain returned by wedges and complements.
inline constexpr int kEmpty = -1;

enum class ErrorKind { Parse, Axiom, Precondition, Cap, Unknown };

class HhsError : public std::runtime_error {
public:
    HhsError(ErrorKind kind, const std::string& msg, std::vector<std::string> witness = {})
        : std::runtime_error(msg), kind_(kind), witness_(std::move(witness)) {}
    ErrorKind kind() const { return kind_; }
    const std::vector<std::string>& witness() const { return witness_; }

private:
    ErrorKind kind_;
    std::vector<std::string> witness_;
};

enum class Rel { Equal, NestedIn, Contains, Orthogonal, Transverse };
const char* rel_name(Rel r);

struct PropertyReport {
    std::string property;
    bool verdict = true;
    std::vector<std::string> witness;
    std::optional<double> constant;
    std::string line() const;
};

class IndexSet {
public:
    int size() const { return static_cast<int>(names_.size()); }
    int top() const { return top_; }
    const std::string& name(int u) const { return names_[u]; }
    const std::vector<std::string>& names() const { return names_; }
    int id(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;

    bool nested(int u, int v) const { return below_[v].test(u); }  // u ⊑ v
    bool proper(int u, int v) const { return u != v && nested(u, v); }
    bool orthogonal(int u, int v) const { return orth_[u].test(v); }
    bool transverse(int u, int v) const { return relation(u, v) == Rel::Transverse; }
    Rel relation(int u, int v) const;

    const Bits& below(int u) const { return below_[u]; }
    const Bits& above(int u) const { return above_[u]; }
    const Bits& orth(int u) const { return orth_[u]; }
    bool is_minimal(int u) const { return below_[u].count() == 1; }
    std::vector<int> minimal() const;
    std::vector<std::string> ids(const std::vector<int>& us) const;

    // Longest chain (number of domains) in the nesting order.
    int complexity() const;

    // Builds a validated index set; nesting and orthogonality are closed first.
    static IndexSet build(std::vector<std::string> names,
                          const std::vector<std::pair<int, int>>& nest,
                          const std::vector<std::pair<int, int>>& orth);

private:
    std::vector<std::string> names_;
    std::vector<Bits> below_, above_, orth_;
    int top_ = -1;
};

IndexSet load_index_set(const std::string& text);
IndexSet load_index_set_file(const std::string& path);
std::string dump_index_set(const IndexSet& s);

Rel relation(const IndexSet& s, const std::string& u, const std::string& v);

// Strict wedge or weak wedge; kEmpty when there is no common lower bound.
int wedge(const IndexSet& s, int u, int v, bool weak);

// Clean container of u inside t, kEmpty if nothing inside t is orthogonal to u.
int clean_container(const IndexSet& s, int u, int t);

// Iterated orthogonal complement of pairwise orthogonal parts inside ambient.
int orth_complement(const IndexSet& s, const std::vector<int>& parts, int ambient);

struct DepthStats {
    int co_level = 0;
    int level = 0;
};
DepthStats depth_stats(const IndexSet& s, int u);

struct SplitInfo {
    bool split = false;
    std::vector<int> samaritans;
};
SplitInfo split_info(const IndexSet& s, int u);

inline const std::vector<std::string> kIndexProperties = {
    "wedges",         "weak_wedges",           "clean_containers",
    "orthogonals_for_non_split", "strong_orth", "weak_orth",
    "complement_involution",     "orth_determines_nesting", "orthogonal_set"};

PropertyReport check_property(const IndexSet& s, const std::string& name);

// Re-evaluates the single instance named by a failing report's witness.
// Returns true when the failure reproduces.
bool replay_failure(const IndexSet& s, const PropertyReport& r);

}  // namespace hhsforge
