#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apxscc/apx.hpp"
#include "apxscc/constraint.hpp"
#include "apxscc/scc.hpp"

namespace apxscc {

// Boolean combination of constraints
struct Formula {
    enum class Kind { True, False, Atom, Not, And, Or };
    Kind kind = Kind::True;
    Constraint atom;
    std::vector<Formula> args;

    static Formula constant(bool b);
    static Formula make_atom(Constraint c);
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> fs);
    static Formula disjunction(std::vector<Formula> fs);

    // nullopt when an atom is not evaluable at the point
    std::optional<bool> evaluate(std::span<const RealValue> point) const;
    Var level() const;
    friend bool operator==(const Formula&, const Formula&) = default;
};

struct Problem {
    VariableOrder vars;
    Formula formula;
};

struct Cnf {
    std::vector<Clause> clauses;
    unsigned selectors = 0;  // fresh Boolean atoms with ids first_selector .. first_selector + selectors - 1
};

// negations pushed to the atoms; a disjunct that is a conjunction of several clauses gets a selector b
// with clauses (not b or C_i)
Cnf to_cnf(const Formula& f, unsigned first_selector = 0);

class FeasibleSet {
public:
    struct Interval {
        ExtendedReal lo = ExtendedReal::neg_inf(), hi = ExtendedReal::pos_inf();
        bool lo_closed = false, hi_closed = false;

        bool is_point() const { return lo_closed && hi_closed && compare(lo, hi) == 0; }
    };

    static FeasibleSet all();
    static FeasibleSet none() { return {}; }
    // sorts, drops empty pieces and merges touching ones
    static FeasibleSet from_intervals(std::vector<Interval> parts);

    bool empty() const { return parts_.empty(); }
    const std::vector<Interval>& intervals() const { return parts_; }
    bool contains(const RealValue& v) const;
    FeasibleSet intersect(const FeasibleSet& o) const;
    std::string to_string() const;

private:
    std::vector<Interval> parts_;
};

// solution set over x_j of one literal of level j, j = |prefix| + 1
FeasibleSet solution_set(const Literal& lit, std::span<const RealValue> prefix);
FeasibleSet feasible_set(std::span<const Literal> lits, std::span<const RealValue> prefix);

RealValue decide_value(const FeasibleSet& f);

struct ExplainResult {
    Clause clause;
    std::optional<CellDescription> cell;  // nullopt on point exclusion
    std::string failure;
    CellStats stats;
};

// core literals share one level j; only s_1 .. s_{j-1} are used
ExplainResult explain(std::span<const Literal> core, std::span<const RealValue> s, const ApproxConfig& config,
                      ApxState& state);

// not (x_1 = s_1) or ... as section literals
Clause point_exclusion(std::span<const RealValue> s);

struct SolverLimits {
    unsigned long max_conflicts = 100000;
    std::optional<double> timeout_ms;
    unsigned fallback_budget = 100;
};

struct SolverStats {
    unsigned long scc_calls = 0;
    unsigned long apx_cells = 0;
    unsigned long fallbacks = 0;
    unsigned max_resultant_degree = 0;
    unsigned long mult_proxy = 0;
    unsigned long resultants = 0;
    unsigned long learned_clauses = 0;
    unsigned long conflicts = 0;
    unsigned long decisions = 0;
    double wall_ms = 0;
};

enum class Status { Sat, Unsat, Unknown };
std::string to_string(Status s);

struct SolveResult {
    Status status = Status::Unknown;
    std::vector<RealValue> model;  // one value per variable when Sat
    std::string reason;            // Unknown only
    SolverStats stats;
};

// called for each clause learned from a constructed cell
using ExplanationObserver = std::function<void(std::span<const Literal> core, const CellDescription& cell)>;

SolveResult solve(const Problem& problem, const ApproxConfig& config, const SolverLimits& limits = {},
                  const ExplanationObserver& observer = {});

}  // namespace apxscc
