#include "fdbound/maxsets.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "fdbound/error.hpp"

namespace fdbound {

bool canonical_less(VarSubset a, VarSubset b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    while (a.bits && b.bits) {
        int ia = __builtin_ctzll(a.bits);
        int ib = __builtin_ctzll(b.bits);
        if (ia != ib) return ia < ib;
        a.bits &= a.bits - 1;
        b.bits &= b.bits - 1;
    }
    return false;
}

namespace {

std::vector<VarSubset> canonicalize(std::vector<std::uint64_t> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<VarSubset> sets;
    sets.reserve(raw.size());
    for (auto m : raw) sets.emplace_back(m);
    std::sort(sets.begin(), sets.end(), canonical_less);
    return sets;
}

// Both enumeration algorithms are searches over a memoized state graph
// (state = the recursion argument). `expand` maps a state to either an
// output set or a list of successor states; the driver deduplicates states
// and, with threads > 1, fans the frontier out over a small worker pool.
// The result is scheduling-independent because each state is processed
// exactly once and outputs are canonicalized at the end.
template <typename Expand>
std::vector<VarSubset> run_search(std::uint64_t root, const Expand& expand, int threads) {
    std::vector<std::uint64_t> outputs;
    std::unordered_set<std::uint64_t> visited;
    visited.insert(root);

    if (threads <= 1) {
        std::vector<std::uint64_t> stack{root};
        while (!stack.empty()) {
            std::uint64_t state = stack.back();
            stack.pop_back();
            std::vector<std::uint64_t> children;
            bool is_output = expand(state, children);
            if (is_output) outputs.push_back(state);
            for (auto c : children)
                if (visited.insert(c).second) stack.push_back(c);
        }
        return canonicalize(std::move(outputs));
    }

    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::uint64_t> work{root};
    int in_flight = 0;
    auto worker = [&] {
        std::unique_lock<std::mutex> lk(mu);
        for (;;) {
            cv.wait(lk, [&] { return !work.empty() || in_flight == 0; });
            if (work.empty()) {
                if (in_flight == 0) return;
                continue;
            }
            std::uint64_t state = work.front();
            work.pop_front();
            ++in_flight;
            lk.unlock();
            std::vector<std::uint64_t> children;
            bool is_output = expand(state, children);
            lk.lock();
            if (is_output) outputs.push_back(state);
            for (auto c : children)
                if (visited.insert(c).second) work.push_back(c);
            --in_flight;
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return canonicalize(std::move(outputs));
}

} // namespace

MaxSetCollection all_max_sets_acyclic(const FdGraph& g, int threads) {
    if (g.kind() != GraphKind::Acyclic)
        throw NotAcyclicError("all_max_sets_acyclic requires an acyclic graph");
    VarSubset universe = g.all();
    // State = accumulated set A. Remainder excludes A itself so augmenting
    // never re-adds a member and the recursion terminates.
    auto expand = [&](std::uint64_t state, std::vector<std::uint64_t>& children) {
        VarSubset a(state);
        VarSubset b = universe - phi_closure(g, a) - ancestors(g, a) - a;
        if (b.empty()) return a.bits != 0; // output A (never the empty set)
        for (int v : b.members()) children.push_back(a.bits | (std::uint64_t{1} << v));
        return false;
    };
    MaxSetCollection out;
    out.graph_kind = GraphKind::Acyclic;
    out.sets = run_search(0, expand, threads);
    return out;
}

MaxSetCollection all_max_sets_cyclic(const FdGraph& g, int threads) {
    if (g.kind() != GraphKind::Cyclic) {
        std::string offending;
        for (int v : g.off_cycle().members()) {
            if (!offending.empty()) offending += ", ";
            offending += g.var(v).label();
        }
        throw NotCyclicError("all_max_sets_cyclic requires a cyclic graph" +
                             (offending.empty() ? std::string{}
                                                : "; variables on no cycle: " + offending));
    }
    VarSubset universe = g.all();
    // State = the excluded set A; the candidate is its complement.
    auto expand = [&](std::uint64_t state, std::vector<std::uint64_t>& children) {
        VarSubset candidate = universe - VarSubset(state);
        if (candidate.empty()) return false;
        bool maximal = true;
        for (int v : candidate.members()) {
            VarSubset rest = candidate;
            rest.remove(v);
            if (phi_closure(g, rest).contains(v)) {
                maximal = false;
                children.push_back(state | (std::uint64_t{1} << v));
            }
        }
        return maximal;
    };
    MaxSetCollection out;
    out.graph_kind = GraphKind::Cyclic;
    auto excluded = run_search(0, expand, threads);
    out.sets.clear();
    std::vector<std::uint64_t> raw;
    raw.reserve(excluded.size());
    for (const auto& e : excluded) raw.push_back((universe - e).bits);
    // run_search canonicalized the exclusion masks; re-canonicalize the
    // complements, which is the order that matters.
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (auto m : raw) out.sets.emplace_back(m);
    std::sort(out.sets.begin(), out.sets.end(), canonical_less);
    return out;
}

MaxSetCollection all_max_sets(const FdGraph& g, int threads) {
    switch (g.kind()) {
    case GraphKind::Acyclic:
        return all_max_sets_acyclic(g, threads);
    case GraphKind::Cyclic:
        return all_max_sets_cyclic(g, threads);
    default:
        break;
    }
    std::string offending;
    for (int v : g.off_cycle().members()) {
        if (!offending.empty()) offending += ", ";
        offending += g.var(v).label();
    }
    throw DomainError("graph is neither cyclic nor acyclic (variables on no cycle: " + offending +
                      "); no enumeration is defined");
}

MaxSetCollection brute_force_max_sets(const FdGraph& g) {
    if (g.size() > 20)
        throw SizeCapError("brute_force_max_sets scans 2^N subsets; cap is 20 variables");
    GraphKind kind = g.kind();
    if (kind == GraphKind::Neither)
        throw DomainError("graph is neither cyclic nor acyclic; no maximality predicate applies");

    VarSubset universe = g.all();
    MaxSetCollection out;
    out.graph_kind = kind;
    std::uint64_t full = universe.bits;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        VarSubset s(mask);
        bool maximal;
        if (kind == GraphKind::Cyclic) {
            maximal = phi_closure(g, s) == universe;
        } else {
            maximal = (universe - phi_closure(g, s) - ancestors(g, s) - s).empty();
        }
        if (!maximal) continue;
        bool irreducible = true;
        for (int v : s.members()) {
            VarSubset rest = s;
            rest.remove(v);
            if (phi_closure(g, rest).contains(v)) {
                irreducible = false;
                break;
            }
        }
        if (irreducible) out.sets.push_back(s);
    }
    std::sort(out.sets.begin(), out.sets.end(), canonical_less);
    return out;
}

MaxSetCollection filter_sourceless(const MaxSetCollection& c, const FdGraph& g) {
    MaxSetCollection out;
    out.graph_kind = c.graph_kind;
    VarSubset sources = g.source_vars();
    for (const auto& s : c.sets)
        if ((s & sources).empty()) out.sets.push_back(s);
    return out;
}

} // namespace fdbound
