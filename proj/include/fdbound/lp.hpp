#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fdbound/fdg.hpp"
#include "fdbound/network.hpp"
#include "fdbound/rational.hpp"

namespace fdbound {

// Bijection between nonempty subsets of a ground set of n pseudo-variables
// and LP variable indices 0..2^n-2. The subset's bitmask is index+1, so no
// enumeration is ever needed. g(empty) = 0 is baked in: the empty set has
// no variable.
struct SubsetIndex {
    int n = 0;

    explicit SubsetIndex(int ground_size);

    int variable_count() const { return (1 << n) - 1; }
    int index(VarSubset s) const;       // s nonempty
    VarSubset subset(int index) const;  // inverse
    std::string name(int index) const;  // "h_1_3_7": sorted 1-based members
};

enum class ConstraintTag { Elemental, Ingleton, C1, C2, C3, C4 };

enum class Sense { Ge, Le, Eq };

// Sparse row: sum of coeff * variable (sense) rhs.
struct LpConstraint {
    std::vector<std::pair<int, double>> coeffs; // ascending variable index
    Sense sense = Sense::Ge;
    Rational rhs = Rational(0);
    ConstraintTag tag = ConstraintTag::Elemental;
};

// Pseudo-entropy LP over one free variable per nonempty subset. Objective
// is always maximized.
struct LinearProgram {
    int variable_count = 0;
    std::vector<std::pair<int, double>> objective;
    std::vector<LpConstraint> constraints;

    std::size_t count(ConstraintTag tag) const;
};

// The minimal Shannon generating set: n full-conditioning monotonicities
// g(X_N) - g(X_N\{i}) >= 0 and C(n,2)*2^(n-2) conditional pairwise
// submodularities. Exactly n + C(n,2)*2^(n-2) rows.
std::vector<LpConstraint> elemental_inequalities(int n);

// Distinct Ingleton instances Ing(A,B,C,D) >= 0 over subset tuples in the
// canonical form, deduplicated over the A<->B and C<->D symmetries. The
// emitted count must equal (1/4)6^n - 5^n + (3/2)4^n - 3^n + (1/4)2^n; a
// mismatch throws rather than proceeding.
std::vector<LpConstraint> ingleton_inequalities(int n);

// Network constraint rows over the session+edge variable ordering of
// build_fdg: C1 as the single full-independence equality (skipped for one
// session), one C2 encoding equality per edge, one C3 decoding equality per
// (session, sink) demand pair, one C4 capacity inequality per edge.
std::vector<LpConstraint> network_constraints(const NetworkSpec& spec, const SubsetIndex& idx);

// Local FDG constraints g(v | gamma) = 0 for every parent group of every
// variable; the generic-graph counterpart of C2/C3.
std::vector<LpConstraint> local_fdg_constraints(const FdGraph& g, const SubsetIndex& idx);

// Coefficients of g(b | a) = g(a|b) ... = g(a union b) - g(a): +1 on the
// union, -1 on a (omitted when a is empty). b must be nonempty.
std::vector<std::pair<int, double>> conditional_expr(const SubsetIndex& idx, VarSubset b, VarSubset a);

// Objective maximize sum_s g(Y_s) subject to elemental (plus Ingleton when
// requested) and network constraints. Caps: 12 variables plain, 8 with
// Ingleton.
LinearProgram build_lp_bound(const NetworkSpec& spec, bool use_ingleton);

// CPLEX LP text: named rows, h_<members> variables, a Bounds section
// declaring every variable free, deterministic ordering.
std::string export_lp_file(const LinearProgram& lp, const SubsetIndex& idx);

} // namespace fdbound
