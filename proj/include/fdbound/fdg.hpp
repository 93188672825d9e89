#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdbound/network.hpp"

namespace fdbound {

enum class VarKind { Source, Edge };

// One pseudo-variable of a functional dependence graph. Indices are dense
// 0..N-1; display numbers are 1-based so network-derived graphs match the
// paper's node labels (sessions first, then edges, in declaration order).
struct VarId {
    int index = 0;
    VarKind kind = VarKind::Edge;
    std::string ref; // session id or edge id for network-derived graphs

    int display() const { return index + 1; }
    // "Y<display>" for sources, "U<display>" for edge variables.
    std::string label() const;
};

// Subset of the variables of one FdGraph, as a bitmask over VarId::index.
struct VarSubset {
    std::uint64_t bits = 0;

    VarSubset() = default;
    explicit VarSubset(std::uint64_t b) : bits(b) {}

    static VarSubset single(int i) { return VarSubset(std::uint64_t{1} << i); }
    static VarSubset of(std::initializer_list<int> ix) {
        VarSubset s;
        for (int i : ix) s.add(i);
        return s;
    }
    static VarSubset full(int n) {
        return VarSubset(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    bool empty() const { return bits == 0; }
    bool contains(int i) const { return (bits >> i) & 1; }
    bool subset_of(VarSubset o) const { return (bits & ~o.bits) == 0; }
    int count() const { return __builtin_popcountll(bits); }
    void add(int i) { bits |= std::uint64_t{1} << i; }
    void remove(int i) { bits &= ~(std::uint64_t{1} << i); }

    friend VarSubset operator|(VarSubset a, VarSubset b) { return VarSubset(a.bits | b.bits); }
    friend VarSubset operator&(VarSubset a, VarSubset b) { return VarSubset(a.bits & b.bits); }
    friend VarSubset operator-(VarSubset a, VarSubset b) { return VarSubset(a.bits & ~b.bits); }
    bool operator==(const VarSubset&) const = default;

    // Members in ascending index order.
    std::vector<int> members() const {
        std::vector<int> m;
        for (std::uint64_t b = bits; b;) {
            int i = __builtin_ctzll(b);
            m.push_back(i);
            b &= b - 1;
        }
        return m;
    }
};

enum class GraphKind {
    Acyclic, // no directed cycle
    Cyclic,  // every node lies on a directed cycle
    Neither, // has cycles but some node is on none (excluded by the theory)
};

// Functional dependence graph with AND-OR parent groups: a node is a
// function of each of its groups; it becomes determined as soon as any one
// whole group is determined. Network-derived graphs have one group per edge
// variable (encoding) and one group per demanding sink of each source
// variable (decoding). Immutable after construction; all queries are pure.
class FdGraph {
public:
    // Hand-built graph for tests and generic use. groups[v] lists the
    // parent groups of v; kinds may be empty (all variables VarKind::Edge).
    FdGraph(int n, std::vector<std::vector<VarSubset>> groups,
            std::vector<VarKind> kinds = {});

    int size() const { return static_cast<int>(vars_.size()); }
    const std::vector<VarId>& variables() const { return vars_; }
    const VarId& var(int i) const { return vars_[i]; }
    const std::vector<VarSubset>& groups(int i) const { return groups_[i]; }
    GraphKind kind() const { return kind_; }
    bool cyclic_flag() const { return kind_ == GraphKind::Cyclic; }
    VarSubset all() const { return VarSubset::full(size()); }
    // Variables on no directed cycle (nonempty iff kind() != Cyclic).
    VarSubset off_cycle() const { return off_cycle_; }
    // Union of all source-kind variables.
    VarSubset source_vars() const { return source_vars_; }

private:
    friend FdGraph build_fdg(const NetworkSpec&);
    FdGraph() = default;
    void finish(); // computes kind_, off_cycle_, source_vars_

    std::vector<VarId> vars_;
    std::vector<std::vector<VarSubset>> groups_;
    GraphKind kind_ = GraphKind::Acyclic;
    VarSubset off_cycle_;
    VarSubset source_vars_;
};

// Derives the FDG of a valid network: one variable per session (Y) and per
// edge (U); encoding groups from tail-incident sources and in-edges,
// decoding groups from each demanding sink's in-edges.
FdGraph build_fdg(const NetworkSpec& spec);

// The determination closure: least fixpoint D of "v is in D when some
// parent group of v is contained in a | D, or v has no groups and is in a".
// Equals the deleted-node set of the edge-deletion procedure (parentless
// nodes deleted only when seeded). Monotone in a.
VarSubset phi_closure(const FdGraph& g, VarSubset a);

// a -> b: every member of b is eliminated by the procedure started from a.
// Throws ContractError unless a and b are disjoint.
bool determines(const FdGraph& g, VarSubset a, VarSubset b);

// An(a): all variables outside a with a directed path into a, where every
// parent-group membership p in gamma(v) contributes an edge p -> v.
// Requires an acyclic graph.
VarSubset ancestors(const FdGraph& g, VarSubset a);

// No member of b is determined by the rest of b. Throws ContractError on
// an empty argument.
bool is_irreducible(const FdGraph& g, VarSubset b);

// Graphviz digraph; one edge per parent-group membership, with group=k
// labels only on variables carrying more than one group.
std::string export_dot(const FdGraph& g);

} // namespace fdbound
