#include <algorithm>
#include <deque>
#include <unordered_map>

#include "fdbound/bounds.hpp"
#include "fdbound/error.hpp"

namespace fdbound {

namespace {

struct Arc {
    int to;
    Rational cap; // residual
    int twin;     // index of the reverse arc
    int edge_pos; // position in spec.edges for forward arcs, -1 for reverse
};

} // namespace

FlowValue max_flow(const NetworkSpec& spec, const std::string& source, const std::string& sink) {
    if (source == sink) throw ContractError("max_flow requires source != sink");
    std::unordered_map<std::string, int> node_ix;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i)
        node_ix.emplace(spec.nodes[i], static_cast<int>(i));
    auto s_it = node_ix.find(source);
    auto t_it = node_ix.find(sink);
    if (s_it == node_ix.end()) throw ContractError("max_flow: unknown source node '" + source + "'");
    if (t_it == node_ix.end()) throw ContractError("max_flow: unknown sink node '" + sink + "'");
    int s = s_it->second, t = t_it->second;
    int n = static_cast<int>(spec.nodes.size());

    std::vector<std::vector<int>> adj(n);
    std::vector<Arc> arcs;
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
        const auto& es = spec.edges[e];
        int u = node_ix.at(es.tail), v = node_ix.at(es.head);
        int fwd = static_cast<int>(arcs.size());
        arcs.push_back({v, es.capacity, fwd + 1, static_cast<int>(e)});
        arcs.push_back({u, Rational(0), fwd, -1});
        adj[u].push_back(fwd);
        adj[v].push_back(fwd + 1);
    }

    Rational total(0);
    for (;;) {
        // BFS for a shortest augmenting path.
        std::vector<int> pred_arc(n, -1);
        std::deque<int> queue{s};
        std::vector<bool> seen(n, false);
        seen[s] = true;
        while (!queue.empty() && !seen[t]) {
            int u = queue.front();
            queue.pop_front();
            for (int a : adj[u]) {
                if (arcs[a].cap > 0 && !seen[arcs[a].to]) {
                    seen[arcs[a].to] = true;
                    pred_arc[arcs[a].to] = a;
                    queue.push_back(arcs[a].to);
                }
            }
        }
        if (!seen[t]) break;
        Rational push = arcs[pred_arc[t]].cap;
        for (int v = t; v != s; v = arcs[arcs[pred_arc[v]].twin].to)
            push = std::min(push, arcs[pred_arc[v]].cap);
        for (int v = t; v != s; v = arcs[arcs[pred_arc[v]].twin].to) {
            arcs[pred_arc[v]].cap -= push;
            arcs[arcs[pred_arc[v]].twin].cap += push;
        }
        total += push;
    }

    // Minimum cut: saturated forward arcs leaving the residual-reachable set.
    std::vector<bool> reach(n, false);
    std::deque<int> queue{s};
    reach[s] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int a : adj[u]) {
            if (arcs[a].cap > 0 && !reach[arcs[a].to]) {
                reach[arcs[a].to] = true;
                queue.push_back(arcs[a].to);
            }
        }
    }
    FlowValue out;
    out.value = total;
    Rational cut_cap(0);
    if (total > 0) {
        for (std::size_t e = 0; e < spec.edges.size(); ++e) {
            int u = node_ix.at(spec.edges[e].tail), v = node_ix.at(spec.edges[e].head);
            if (reach[u] && !reach[v]) {
                out.min_cut.push_back(spec.edges[e].id);
                cut_cap += spec.edges[e].capacity;
            }
        }
        if (cut_cap != total)
            throw NumericError("max-flow/min-cut mismatch (internal)"); // unreachable with exact arithmetic
    }
    return out;
}

} // namespace fdbound
