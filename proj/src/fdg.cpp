#include "fdbound/fdg.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "fdbound/error.hpp"

namespace fdbound {

std::string VarId::label() const {
    return (kind == VarKind::Source ? "Y" : "U") + std::to_string(display());
}

FdGraph::FdGraph(int n, std::vector<std::vector<VarSubset>> groups, std::vector<VarKind> kinds) {
    if (n < 1 || n > 64) throw SizeCapError("FdGraph supports 1..64 variables, got " + std::to_string(n));
    if (static_cast<int>(groups.size()) != n)
        throw ContractError("parent-group list size does not match variable count");
    VarSubset universe = VarSubset::full(n);
    for (int v = 0; v < n; ++v) {
        for (const auto& grp : groups[v]) {
            if (!grp.subset_of(universe))
                throw ContractError("parent group of variable " + std::to_string(v + 1) +
                                    " references indices >= N");
            if (grp.contains(v))
                throw ContractError("parent group of variable " + std::to_string(v + 1) +
                                    " contains its own node");
        }
    }
    vars_.resize(n);
    for (int v = 0; v < n; ++v) {
        vars_[v].index = v;
        vars_[v].kind = kinds.empty() ? VarKind::Edge : kinds.at(v);
    }
    groups_ = std::move(groups);
    finish();
}

namespace {

// Tarjan SCC over the parent-group digraph (edges p -> v). A node is on a
// directed cycle iff its SCC has more than one member (self-loops are
// impossible here).
VarSubset nodes_on_cycles(const std::vector<std::vector<VarSubset>>& groups, int n) {
    std::vector<std::vector<int>> children(n);
    for (int v = 0; v < n; ++v)
        for (const auto& grp : groups[v])
            for (int p : grp.members()) children[p].push_back(v);

    std::vector<int> index(n, -1), low(n, 0), scc_size_of(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    VarSubset cyclic;

    // Iterative Tarjan to keep deep graphs off the call stack.
    struct Frame {
        int v;
        std::size_t child = 0;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < children[f.v].size()) {
                int w = children[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    if (comp.size() > 1)
                        for (int w : comp) cyclic.add(w);
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
    return cyclic;
}

} // namespace

void FdGraph::finish() {
    int n = size();
    VarSubset cyc = nodes_on_cycles(groups_, n);
    off_cycle_ = all() - cyc;
    if (cyc.empty())
        kind_ = GraphKind::Acyclic;
    else if (off_cycle_.empty())
        kind_ = GraphKind::Cyclic;
    else
        kind_ = GraphKind::Neither;
    source_vars_ = VarSubset{};
    for (const auto& v : vars_)
        if (v.kind == VarKind::Source) source_vars_.add(v.index);
}

FdGraph build_fdg(const NetworkSpec& spec) {
    auto violations = validate_network(spec);
    if (!violations.empty())
        throw InvalidNetworkError("build_fdg requires a valid network ([" + violations.front().code +
                                  "] " + violations.front().detail + ")");

    int ns = static_cast<int>(spec.sessions.size());
    int ne = static_cast<int>(spec.edges.size());
    int n = ns + ne;
    if (n < 1) throw ContractError("network yields no variables");
    if (n > 64) throw SizeCapError("FDG would have " + std::to_string(n) + " variables; cap is 64");

    std::unordered_map<std::string, std::vector<int>> sources_at;  // node -> session positions
    std::unordered_map<std::string, std::vector<int>> edges_into;  // node -> edge positions
    std::unordered_map<std::string, std::vector<int>> edges_outof; // node -> edge positions
    for (int s = 0; s < ns; ++s) sources_at[spec.sessions[s].source_node].push_back(s);
    for (int e = 0; e < ne; ++e) {
        edges_into[spec.edges[e].head].push_back(e);
        edges_outof[spec.edges[e].tail].push_back(e);
    }

    FdGraph g;
    g.vars_.resize(n);
    g.groups_.resize(n);
    for (int s = 0; s < ns; ++s) {
        g.vars_[s] = VarId{s, VarKind::Source, spec.sessions[s].id};
        for (const auto& sink : spec.sessions[s].sinks) {
            VarSubset grp;
            if (auto it = edges_into.find(sink); it != edges_into.end())
                for (int e : it->second) grp.add(ns + e);
            g.groups_[s].push_back(grp);
        }
    }
    for (int e = 0; e < ne; ++e) {
        int v = ns + e;
        g.vars_[v] = VarId{v, VarKind::Edge, spec.edges[e].id};
        VarSubset grp;
        const std::string& tail = spec.edges[e].tail;
        if (auto it = sources_at.find(tail); it != sources_at.end())
            for (int s : it->second) grp.add(s);
        if (auto it = edges_into.find(tail); it != edges_into.end())
            for (int f : it->second) grp.add(ns + f);
        g.groups_[v].push_back(grp);
    }
    g.finish();
    return g;
}

VarSubset phi_closure(const FdGraph& g, VarSubset a) {
    if (!a.subset_of(g.all())) throw ContractError("phi_closure argument is not a subset of the graph");
    VarSubset deleted;
    // Parentless nodes enter only when seeded; an explicitly empty group is
    // a function of nothing and is always determined.
    for (int v = 0; v < g.size(); ++v)
        if (g.groups(v).empty() && a.contains(v)) deleted.add(v);
    bool changed = true;
    while (changed) {
        changed = false;
        VarSubset known = a | deleted;
        for (int v = 0; v < g.size(); ++v) {
            if (deleted.contains(v)) continue;
            for (const auto& grp : g.groups(v)) {
                if (grp.subset_of(known)) {
                    deleted.add(v);
                    changed = true;
                    break;
                }
            }
        }
    }
    return deleted;
}

bool determines(const FdGraph& g, VarSubset a, VarSubset b) {
    if (!(a & b).empty())
        throw ContractError("determines requires disjoint arguments");
    return b.subset_of(phi_closure(g, a));
}

VarSubset ancestors(const FdGraph& g, VarSubset a) {
    if (g.kind() != GraphKind::Acyclic)
        throw NotAcyclicError("ancestors is defined on acyclic graphs only");
    if (!a.subset_of(g.all())) throw ContractError("ancestors argument is not a subset of the graph");
    // Walk parent edges backwards to a fixpoint.
    VarSubset reach = a;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.size(); ++v) {
            if (!reach.contains(v)) continue;
            for (const auto& grp : g.groups(v)) {
                VarSubset missing = grp - reach;
                if (!missing.empty()) {
                    reach = reach | grp;
                    changed = true;
                }
            }
        }
    }
    return reach - a;
}

bool is_irreducible(const FdGraph& g, VarSubset b) {
    if (b.empty()) throw ContractError("is_irreducible requires a nonempty set");
    if (!b.subset_of(g.all())) throw ContractError("is_irreducible argument is not a subset of the graph");
    for (int v : b.members()) {
        VarSubset rest = b;
        rest.remove(v);
        if (phi_closure(g, rest).contains(v)) return false;
    }
    return true;
}

std::string export_dot(const FdGraph& g) {
    std::ostringstream os;
    os << "digraph fdg {\n";
    os << "  rankdir=LR;\n";
    for (int v = 0; v < g.size(); ++v) {
        const VarId& id = g.var(v);
        os << "  v" << id.display() << " [label=\"" << id.label();
        if (!id.ref.empty()) os << " (" << id.ref << ")";
        os << "\"";
        if (id.kind == VarKind::Source) os << " shape=doublecircle";
        os << "];\n";
    }
    for (int v = 0; v < g.size(); ++v) {
        bool multi = g.groups(v).size() > 1;
        for (std::size_t k = 0; k < g.groups(v).size(); ++k) {
            for (int p : g.groups(v)[k].members()) {
                os << "  v" << g.var(p).display() << " -> v" << g.var(v).display();
                if (multi) os << " [label=\"group=" << k << "\"]";
                os << ";\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace fdbound
