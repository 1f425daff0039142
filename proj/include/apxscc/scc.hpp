#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "apxscc/constraint.hpp"
#include "apxscc/poly.hpp"
#include "apxscc/roots.hpp"

namespace apxscc {

struct CellStats {
    unsigned resultants = 0;
    unsigned discriminants = 0;
    unsigned max_resultant_degree = 0;  // total degree of raw resultants
    unsigned long mult_proxy = 0;       // sum of deg(p) * deg(q) over resultants
    unsigned aux_polys = 0;
    unsigned degree_bound_violations = 0;

    void merge(const CellStats& o);
};

// Piecewise linear bound over the domain variable x_{j-1}. Piece k is used for
// from <= x_{j-1} <= to; a missing end is unbounded. Each line is linear in x_j.
struct PiecewiseBound {
    struct Piece {
        Polynomial line;
        std::optional<Rational> from, to;
    };
    Var level = 0;
    std::vector<Piece> pieces;

    Var domain_var() const { return level - 1; }
    // index of the piece whose domain contains v
    std::size_t piece_at(const RealValue& v) const;
    std::string to_string(const VariableOrder* names = nullptr) const;
};

using Bound = std::variant<IndexedRoot, PiecewiseBound>;

std::optional<RealValue> eval_bound(const Bound& b, std::span<const RealValue> r);
std::string to_string(const Bound& b, const VariableOrder* names = nullptr);

struct SymbolicInterval {
    enum class Kind { Section, Sector };
    Kind kind = Kind::Sector;
    std::optional<Bound> lower, upper;  // a section keeps its root in lower

    static SymbolicInterval section(IndexedRoot xi);
    static SymbolicInterval sector(std::optional<Bound> lo, std::optional<Bound> hi);
    bool is_section() const { return kind == Kind::Section; }
    bool is_full() const { return !is_section() && !lower && !upper; }
    const IndexedRoot& section_root() const { return std::get<IndexedRoot>(*lower); }
    std::string to_string(Var j, const VariableOrder* names = nullptr) const;
};

struct CellDescription {
    std::vector<SymbolicInterval> intervals;
    std::vector<RealValue> sample;
    CellStats stats;

    std::string to_string(const VariableOrder* names = nullptr) const;
};

// nullopt when a bound is undefined at r
std::optional<bool> cell_contains(const CellDescription& cell, std::span<const RealValue> r);
// concrete interval of level j over the prefix r; nullopt when a bound is undefined
struct ConcreteInterval {
    ExtendedReal lo = ExtendedReal::neg_inf(), hi = ExtendedReal::pos_inf();
    bool point = false;
};
std::optional<ConcreteInterval> concrete_interval(const SymbolicInterval& I, std::span<const RealValue> r);

struct PickedInterval {
    std::optional<std::size_t> section, lower, upper;  // indices into the root list
};

PickedInterval pick_interval(const std::vector<RootEntry>& roots, const RealValue& s_j);
SymbolicInterval make_interval(const std::vector<RootEntry>& roots, const PickedInterval& pick);

struct ProjectionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// disc, ldcf and the coefficients needed against a vanishing leading coefficient; constants dropped
std::vector<Polynomial> delineability_polys(const Polynomial& p, std::span<const RealValue> s,
                                            CellStats* stats = nullptr);

using ResultantTask = std::pair<Polynomial, Polynomial>;

// chain to the nearest bound; roots of pivot polynomials lying beyond a bound take over as
// the bound for the roots further out
std::vector<ResultantTask> ordering_resultants(const std::vector<RootEntry>& roots, const PickedInterval& pick,
                                               const std::set<Polynomial>& pivots = {});

// disc/ldcf of every polynomial plus resultants of adjacent roots of distinct polynomials:
// keeps the whole root order over the line x_j, j = |prefix| + 1
std::vector<Polynomial> full_line_projection(std::span<const Polynomial> polys, std::span<const RealValue> prefix,
                                             CellStats& stats);

struct LevelContext {
    Var level;
    std::span<const RealValue> sample;
    const std::vector<RootEntry>& roots;
    const PickedInterval& pick;
};

struct LevelApproximation {
    std::vector<Polynomial> aux;
    std::optional<PiecewiseBound> lower_compound, upper_compound;
};

// called on every sector level, before the interval is fixed
class LevelHook {
public:
    virtual ~LevelHook() = default;
    virtual void begin_cell() {}
    virtual LevelApproximation at_level(const LevelContext& ctx) = 0;
    virtual void end_cell(bool /*success*/) {}
};

struct SccResult {
    std::optional<CellDescription> cell;
    std::string failure;
    CellStats stats;

    bool ok() const { return cell.has_value(); }
};

SccResult construct_cell(std::span<const Polynomial> P, std::span<const RealValue> s, LevelHook* hook);
SccResult levelwise_scc(std::span<const Polynomial> P, std::span<const RealValue> s);

// (not C or not phi_S); piecewise bounds contribute the pieces around the sample plus domain literals
Clause explanation_clause(std::span<const Constraint> core, const CellDescription& cell);

}  // namespace apxscc
