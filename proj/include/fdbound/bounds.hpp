#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fdbound/maxsets.hpp"
#include "fdbound/network.hpp"

namespace fdbound {

// One term of the functional dependence bound: a source-free maximal
// irreducible set and its capacity sum.
struct BoundTerm {
    VarSubset set;       // edge variables only
    Rational capacity;   // sum of C_e over the set
    std::string symbols; // e.g. "C3+C7" (display numbers)
};

struct BoundReport {
    Rational bound_value;
    std::vector<BoundTerm> terms;        // canonical collection order
    std::vector<VarSubset> argmin_sets;  // all terms achieving the min
    std::string symbolic;                // "min{C3+C7, ...}" or the single term
};

struct FlowValue {
    Rational value;
    std::vector<std::string> min_cut; // edge ids witnessing a minimum cut
};

struct CompareReport {
    BoundReport fd;
    std::optional<Rational> maxflow_bound; // single-session instances only
    bool maxflow_equals_fd = false;
    std::optional<double> lp_value;        // when requested and within caps
    bool lp_dominated = false;             // lp_value <= fd + tolerance
    std::string lp_note;                   // reason when lp_value is absent
};

// The functional dependence bound on the sum rate: min over source-free
// maximal irreducible sets of the sum of member edge capacities. Requires
// the derived FDG to be cyclic; exact rational arithmetic throughout.
BoundReport fd_bound(const NetworkSpec& spec, int threads = 1);

// Maximum s-t flow under edge capacities (augmenting paths over exact
// rationals) with a witnessing minimum cut. Disconnected pairs yield value
// 0 and an empty cut.
FlowValue max_flow(const NetworkSpec& spec, const std::string& source, const std::string& sink);

// min over the session's sinks of max_flow(source, sink). Errors unless the
// instance has exactly one session.
Rational maxflow_multicast_bound(const NetworkSpec& spec);

// fd_bound plus the max-flow comparison (single-session) and optionally the
// polymatroid LP bound with the dominance flag.
CompareReport compare_bounds(const NetworkSpec& spec, bool with_lp = false, int threads = 1);

} // namespace fdbound
