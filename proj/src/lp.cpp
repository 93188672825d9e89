#include "fdbound/lp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fdbound/error.hpp"

namespace fdbound {

SubsetIndex::SubsetIndex(int ground_size) : n(ground_size) {
    if (n < 1 || n > 16)
        throw SizeCapError("SubsetIndex supports 1..16 pseudo-variables, got " + std::to_string(n));
}

int SubsetIndex::index(VarSubset s) const {
    if (s.empty()) throw ContractError("the empty set has no LP variable (g(empty) = 0)");
    if (!s.subset_of(VarSubset::full(n))) throw ContractError("subset exceeds the ground set");
    return static_cast<int>(s.bits) - 1;
}

VarSubset SubsetIndex::subset(int index) const {
    if (index < 0 || index >= variable_count()) throw ContractError("LP variable index out of range");
    return VarSubset(static_cast<std::uint64_t>(index) + 1);
}

std::string SubsetIndex::name(int index) const {
    std::string s = "h";
    for (int m : subset(index).members()) s += "_" + std::to_string(m + 1);
    return s;
}

std::size_t LinearProgram::count(ConstraintTag tag) const {
    std::size_t k = 0;
    for (const auto& c : constraints)
        if (c.tag == tag) ++k;
    return k;
}

namespace {

void push_coeff(std::vector<std::pair<int, double>>& coeffs, int var, double c) {
    coeffs.emplace_back(var, c);
}

std::vector<std::pair<int, double>> normalize(std::vector<std::pair<int, double>> coeffs) {
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> out;
    for (const auto& [v, c] : coeffs) {
        if (!out.empty() && out.back().first == v)
            out.back().second += c;
        else
            out.emplace_back(v, c);
    }
    std::erase_if(out, [](const auto& p) { return p.second == 0.0; });
    return out;
}

} // namespace

std::vector<std::pair<int, double>> conditional_expr(const SubsetIndex& idx, VarSubset b, VarSubset a) {
    if (b.empty()) throw ContractError("conditional_expr requires a nonempty conditioned set");
    std::vector<std::pair<int, double>> coeffs;
    push_coeff(coeffs, idx.index(a | b), +1.0);
    if (!a.empty()) push_coeff(coeffs, idx.index(a), -1.0);
    return normalize(std::move(coeffs));
}

std::vector<LpConstraint> elemental_inequalities(int n) {
    if (n < 1 || n > 16)
        throw SizeCapError("elemental_inequalities supports 1..16 variables, got " + std::to_string(n));
    SubsetIndex idx(n);
    VarSubset full = VarSubset::full(n);
    std::vector<LpConstraint> rows;

    // g(X_N) - g(X_N \ {i}) >= 0
    for (int i = 0; i < n; ++i) {
        LpConstraint row;
        row.tag = ConstraintTag::Elemental;
        VarSubset rest = full;
        rest.remove(i);
        push_coeff(row.coeffs, idx.index(full), +1.0);
        if (!rest.empty()) push_coeff(row.coeffs, idx.index(rest), -1.0);
        row.coeffs = normalize(std::move(row.coeffs));
        rows.push_back(std::move(row));
    }

    // g(K+i) + g(K+j) - g(K+i+j) - g(K) >= 0 for i < j, K subset of N\{i,j}
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            VarSubset others = full;
            others.remove(i);
            others.remove(j);
            std::uint64_t om = others.bits;
            // enumerate K over all subsets of `others`, empty set included
            std::uint64_t k = 0;
            for (;;) {
                VarSubset K(k);
                LpConstraint row;
                row.tag = ConstraintTag::Elemental;
                VarSubset ki = K, kj = K, kij = K;
                ki.add(i);
                kj.add(j);
                kij.add(i);
                kij.add(j);
                push_coeff(row.coeffs, idx.index(ki), +1.0);
                push_coeff(row.coeffs, idx.index(kj), +1.0);
                push_coeff(row.coeffs, idx.index(kij), -1.0);
                if (!K.empty()) push_coeff(row.coeffs, idx.index(K), -1.0);
                row.coeffs = normalize(std::move(row.coeffs));
                rows.push_back(std::move(row));
                if (k == om) break;
                k = (k - om) & om; // next subset of om
            }
        }
    }
    return rows;
}

namespace {

// Ing(A,B,C,D) >= 0 in joint pseudo-entropies:
//   g(AB)+g(AC)+g(AD)+g(BC)+g(BD) - g(A) - g(B) - g(CD) - g(ABC) - g(ABD) >= 0
LpConstraint ingleton_row(const SubsetIndex& idx, VarSubset a, VarSubset b, VarSubset c, VarSubset d) {
    LpConstraint row;
    row.tag = ConstraintTag::Ingleton;
    push_coeff(row.coeffs, idx.index(a | b), +1.0);
    push_coeff(row.coeffs, idx.index(a | c), +1.0);
    push_coeff(row.coeffs, idx.index(a | d), +1.0);
    push_coeff(row.coeffs, idx.index(b | c), +1.0);
    push_coeff(row.coeffs, idx.index(b | d), +1.0);
    push_coeff(row.coeffs, idx.index(a), -1.0);
    push_coeff(row.coeffs, idx.index(b), -1.0);
    push_coeff(row.coeffs, idx.index(c | d), -1.0);
    push_coeff(row.coeffs, idx.index(a | b | c), -1.0);
    push_coeff(row.coeffs, idx.index(a | b | d), -1.0);
    row.coeffs = normalize(std::move(row.coeffs));
    return row;
}

// subsets of mask, including the empty set
template <typename F>
void for_each_subset(std::uint64_t mask, F&& f) {
    std::uint64_t k = 0;
    for (;;) {
        f(k);
        if (k == mask) break;
        k = (k - mask) & mask;
    }
}

std::uint64_t ingleton_formula_count(int n) {
    // (1/4)6^n - 5^n + (3/2)4^n - 3^n + (1/4)2^n, integral for all n
    auto p = [](std::uint64_t base, int e) {
        std::uint64_t r = 1;
        while (e--) r *= base;
        return r;
    };
    return p(6, n) / 4 - p(5, n) + 3 * p(4, n) / 2 - p(3, n) + p(2, n) / 4;
}

} // namespace

std::vector<LpConstraint> ingleton_inequalities(int n) {
    if (n < 4 || n > 8)
        throw SizeCapError("ingleton_inequalities supports 4..8 variables, got " + std::to_string(n));
    SubsetIndex idx(n);
    std::uint64_t full = VarSubset::full(n).bits;

    // Tuples (A, B, C, D): A, B nonempty and disjoint from each other and
    // from C|D; C and D overlap freely but neither contains the other.
    // Canonical representative per symmetry orbit: A < B and C < D.
    std::vector<LpConstraint> rows;
    std::uint64_t expected = ingleton_formula_count(n);
    for_each_subset(full, [&](std::uint64_t a) {
        if (!a) return;
        for_each_subset(full & ~a, [&](std::uint64_t b) {
            if (!b || b <= a) return;
            std::uint64_t rest = full & ~(a | b);
            for_each_subset(rest, [&](std::uint64_t c) {
                if (!c) return;
                for_each_subset(rest, [&](std::uint64_t d) {
                    if (!d || d <= c) return;
                    if ((c & ~d) == 0 || (d & ~c) == 0) return;
                    rows.push_back(
                        ingleton_row(idx, VarSubset(a), VarSubset(b), VarSubset(c), VarSubset(d)));
                });
            });
        });
    });

    // Syntactic dedup; the paper's count formula is the only oracle for the
    // enumeration scheme, so mismatches must fail loudly.
    std::map<std::vector<std::pair<int, double>>, int> seen;
    std::vector<LpConstraint> unique_rows;
    for (auto& r : rows) {
        if (seen.emplace(r.coeffs, 1).second) unique_rows.push_back(std::move(r));
    }
    if (unique_rows.size() != expected)
        throw NumericError("ingleton generator emitted " + std::to_string(unique_rows.size()) +
                           " distinct rows for n=" + std::to_string(n) + ", formula says " +
                           std::to_string(expected));
    return unique_rows;
}

std::vector<LpConstraint> network_constraints(const NetworkSpec& spec, const SubsetIndex& idx) {
    auto violations = validate_network(spec);
    if (!violations.empty())
        throw InvalidNetworkError("network_constraints requires a valid network ([" +
                                  violations.front().code + "] " + violations.front().detail + ")");
    int ns = static_cast<int>(spec.sessions.size());
    int ne = static_cast<int>(spec.edges.size());
    if (idx.n != ns + ne)
        throw ContractError("SubsetIndex sized for " + std::to_string(idx.n) +
                            " variables, network has " + std::to_string(ns + ne));

    FdGraph g = build_fdg(spec);
    std::vector<LpConstraint> rows;

    // C1: g(Y_S) = sum_s g(Y_s); degenerate (omitted) for one session.
    if (ns >= 2) {
        LpConstraint row;
        row.tag = ConstraintTag::C1;
        row.sense = Sense::Eq;
        VarSubset all_sources;
        for (int s = 0; s < ns; ++s) all_sources.add(s);
        push_coeff(row.coeffs, idx.index(all_sources), +1.0);
        for (int s = 0; s < ns; ++s) push_coeff(row.coeffs, idx.index(VarSubset::single(s)), -1.0);
        row.coeffs = normalize(std::move(row.coeffs));
        rows.push_back(std::move(row));
    }

    // C2: g(U_e | parents) = 0, one equality per edge.
    for (int e = 0; e < ne; ++e) {
        int v = ns + e;
        LpConstraint row;
        row.tag = ConstraintTag::C2;
        row.sense = Sense::Eq;
        row.coeffs = conditional_expr(idx, VarSubset::single(v), g.groups(v).front());
        rows.push_back(std::move(row));
    }

    // C3: g(Y_s | In(u)) = 0, one equality per demand pair (s, u).
    for (int s = 0; s < ns; ++s) {
        for (const auto& grp : g.groups(s)) {
            LpConstraint row;
            row.tag = ConstraintTag::C3;
            row.sense = Sense::Eq;
            row.coeffs = conditional_expr(idx, VarSubset::single(s), grp);
            rows.push_back(std::move(row));
        }
    }

    // C4: g(U_e) <= C_e.
    for (int e = 0; e < ne; ++e) {
        LpConstraint row;
        row.tag = ConstraintTag::C4;
        row.sense = Sense::Le;
        row.rhs = spec.edges[e].capacity;
        push_coeff(row.coeffs, idx.index(VarSubset::single(ns + e)), +1.0);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<LpConstraint> local_fdg_constraints(const FdGraph& g, const SubsetIndex& idx) {
    if (idx.n != g.size()) throw ContractError("SubsetIndex does not match the graph size");
    std::vector<LpConstraint> rows;
    for (int v = 0; v < g.size(); ++v) {
        for (const auto& grp : g.groups(v)) {
            LpConstraint row;
            row.tag = ConstraintTag::C2;
            row.sense = Sense::Eq;
            row.coeffs = conditional_expr(idx, VarSubset::single(v), grp);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

LinearProgram build_lp_bound(const NetworkSpec& spec, bool use_ingleton) {
    int n = static_cast<int>(spec.sessions.size() + spec.edges.size());
    if (!use_ingleton && n > 12)
        throw SizeCapError("LP bound without Ingleton caps at 12 variables, instance has " +
                           std::to_string(n));
    if (use_ingleton && (n > 8 || n < 4))
        throw SizeCapError("LP bound with Ingleton caps at 4..8 variables, instance has " +
                           std::to_string(n));

    SubsetIndex idx(n);
    LinearProgram lp;
    lp.variable_count = idx.variable_count();
    lp.constraints = elemental_inequalities(n);
    if (use_ingleton) {
        auto ing = ingleton_inequalities(n);
        lp.constraints.insert(lp.constraints.end(), std::make_move_iterator(ing.begin()),
                              std::make_move_iterator(ing.end()));
    }
    auto net = network_constraints(spec, idx);
    lp.constraints.insert(lp.constraints.end(), std::make_move_iterator(net.begin()),
                          std::make_move_iterator(net.end()));
    for (std::size_t s = 0; s < spec.sessions.size(); ++s)
        lp.objective.emplace_back(idx.index(VarSubset::single(static_cast<int>(s))), 1.0);
    return lp;
}

namespace {

std::string format_coeff(double c, bool first) {
    std::ostringstream os;
    double a = c < 0 ? -c : c;
    if (first)
        os << (c < 0 ? "- " : "");
    else
        os << (c < 0 ? " - " : " + ");
    if (a != 1.0) os << a << " ";
    return os.str();
}

std::string row_name(const LpConstraint& c, std::size_t serial) {
    const char* prefix = "";
    switch (c.tag) {
    case ConstraintTag::Elemental: prefix = "el"; break;
    case ConstraintTag::Ingleton: prefix = "ing"; break;
    case ConstraintTag::C1: prefix = "c1"; break;
    case ConstraintTag::C2: prefix = "c2"; break;
    case ConstraintTag::C3: prefix = "c3"; break;
    case ConstraintTag::C4: prefix = "c4"; break;
    }
    return std::string(prefix) + "_" + std::to_string(serial);
}

} // namespace

std::string export_lp_file(const LinearProgram& lp, const SubsetIndex& idx) {
    if (idx.variable_count() != lp.variable_count)
        throw ContractError("SubsetIndex does not match the LP variable count");
    std::ostringstream os;
    os << "\\ pseudo-entropy LP, " << lp.variable_count << " variables, " << lp.constraints.size()
       << " constraints\n";
    os << "Maximize\n obj:";
    bool first = true;
    for (const auto& [v, c] : lp.objective) {
        os << " " << format_coeff(c, first) << idx.name(v);
        first = false;
    }
    if (first) os << " 0 " << idx.name(0);
    os << "\nSubject To\n";
    std::size_t serial = 0;
    for (const auto& row : lp.constraints) {
        os << " " << row_name(row, serial++) << ":";
        bool f = true;
        for (const auto& [v, c] : row.coeffs) {
            os << " " << format_coeff(c, f) << idx.name(v);
            f = false;
        }
        switch (row.sense) {
        case Sense::Ge: os << " >= "; break;
        case Sense::Le: os << " <= "; break;
        case Sense::Eq: os << " = "; break;
        }
        if (row.rhs.get_den() == 1) {
            os << row.rhs.get_num().get_str();
        } else {
            std::ostringstream val;
            val.precision(17);
            val << to_double(row.rhs);
            os << val.str();
        }
        os << "\n";
    }
    os << "Bounds\n";
    for (int v = 0; v < lp.variable_count; ++v) os << " " << idx.name(v) << " free\n";
    os << "End\n";
    return os.str();
}

} // namespace fdbound
