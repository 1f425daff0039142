#include "doctest.h"

#include <functional>
#include <random>

#include "apxscc/nlsat.hpp"
#include "cell_sampling.hpp"
#include "oracles.hpp"

using namespace apxscc;
using namespace apxscc::oracle;

namespace {

const Polynomial x1 = Polynomial::variable(1);
const Polynomial x2 = Polynomial::variable(2);

RealValue sqrt2() { return RealValue(RealAlgebraic(UPoly({-2, 0, 1}), 1, 2)); }

Formula atom(const Polynomial& p, Relation r) { return Formula::make_atom(Constraint::polynomial(p, r)); }
Literal lit(const Polynomial& p, Relation r, bool positive = true) {
    return Literal{Constraint::polynomial(p, r), positive};
}

Problem problem(unsigned n, Formula f) { return Problem{VariableOrder::standard(n), std::move(f)}; }

ApproxConfig forced(Variant v) {
    ApproxConfig c;
    c.variant = v;
    c.force_criteria = true;
    c.max_apx_cells.reset();
    return c;
}

// truth value over Boolean atoms given by the bits of mask (atom id i -> bit i)
bool eval_bool(const Formula& f, unsigned mask) {
    using K = Formula::Kind;
    switch (f.kind) {
        case K::True: return true;
        case K::False: return false;
        case K::Atom: return (mask >> f.atom.id) & 1u;
        case K::Not: return !eval_bool(f.args[0], mask);
        case K::And:
            return std::all_of(f.args.begin(), f.args.end(), [&](const Formula& a) { return eval_bool(a, mask); });
        case K::Or:
            return std::any_of(f.args.begin(), f.args.end(), [&](const Formula& a) { return eval_bool(a, mask); });
    }
    return false;
}

bool eval_clauses(const std::vector<Clause>& cs, unsigned mask) {
    return std::all_of(cs.begin(), cs.end(), [&](const Clause& c) {
        return std::any_of(c.begin(), c.end(),
                           [&](const Literal& l) { return (((mask >> l.atom.id) & 1u) != 0) == l.positive; });
    });
}

Formula random_bool_formula(std::mt19937_64& rng, unsigned atoms, int depth) {
    if (depth == 0 || rng() % 4 == 0) {
        Formula a = Formula::make_atom(Constraint::boolean(static_cast<unsigned>(rng() % atoms)));
        return rng() % 3 == 0 ? Formula::negation(a) : a;
    }
    std::vector<Formula> args;
    unsigned k = 2 + rng() % 2;
    for (unsigned i = 0; i < k; ++i) args.push_back(random_bool_formula(rng, atoms, depth - 1));
    Formula f = rng() % 2 ? Formula::conjunction(std::move(args)) : Formula::disjunction(std::move(args));
    return rng() % 4 == 0 ? Formula::negation(f) : f;
}

// candidate values for x_j over the prefix: roots of the core polynomials plus points between and beyond
std::vector<RealValue> line_candidates(std::span<const Literal> core, std::span<const RealValue> prefix) {
    std::vector<RealValue> roots;
    for (const auto& l : core) {
        auto iso = real_roots(l.atom.defining_poly(), prefix);
        roots.insert(roots.end(), iso.roots.begin(), iso.roots.end());
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    std::vector<RealValue> out = roots;
    if (roots.empty()) {
        out.emplace_back(Rational(0));
        return out;
    }
    out.emplace_back(Rational(roots.front().lower() - 1));
    out.emplace_back(Rational(roots.back().upper() + 1));
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) out.emplace_back(rational_between(roots[i], roots[i + 1]));
    return out;
}

Formula random_problem(std::mt19937_64& rng, unsigned n) {
    std::vector<Formula> clauses;
    unsigned m = 2 + rng() % 3;
    const Relation rels[] = {Relation::LT, Relation::LE, Relation::EQ, Relation::NE, Relation::GE, Relation::GT};
    for (unsigned i = 0; i < m; ++i) {
        std::vector<Formula> lits;
        unsigned k = 1 + rng() % 2;
        for (unsigned t = 0; t < k; ++t) {
            Relation r = rels[rng() % 6];
            if (r == Relation::EQ && rng() % 2) r = Relation::LT;
            lits.push_back(atom(random_polynomial(rng, 1 + rng() % n, 1 + rng() % 3, 3), r));
        }
        clauses.push_back(lits.size() == 1 ? lits[0] : Formula::disjunction(std::move(lits)));
    }
    return Formula::conjunction(std::move(clauses));
}

}  // namespace

TEST_CASE("to_cnf on small formulas") {
    Constraint A = Constraint::boolean(0), B = Constraint::boolean(1);
    Formula a = Formula::make_atom(A), b = Formula::make_atom(B);
    Cnf c1 = to_cnf(Formula::disjunction({a, b}), 10);
    REQUIRE(c1.clauses.size() == 1);
    CHECK(c1.clauses[0] == Clause{Literal{A, true}, Literal{B, true}});
    CHECK(c1.selectors == 0);
    Cnf c2 = to_cnf(Formula::negation(Formula::conjunction({a, b})), 10);
    REQUIRE(c2.clauses.size() == 1);
    CHECK(c2.clauses[0] == Clause{Literal{A, false}, Literal{B, false}});
    CHECK(to_cnf(Formula::constant(true)).clauses.empty());
    CHECK(to_cnf(Formula::constant(false)).clauses == std::vector<Clause>{Clause{}});
}

TEST_CASE("to_cnf is equisatisfiable against a truth table") {
    std::mt19937_64 rng(31);
    const unsigned atoms = 4;
    for (int iter = 0; iter < 300; ++iter) {
        Formula f = random_bool_formula(rng, atoms, 3);
        Cnf cnf = to_cnf(f, atoms);
        REQUIRE(atoms + cnf.selectors <= 20);
        for (unsigned mask = 0; mask < (1u << atoms); ++mask) {
            bool extends = false;
            for (unsigned sel = 0; sel < (1u << cnf.selectors) && !extends; ++sel)
                extends = eval_clauses(cnf.clauses, mask | (sel << atoms));
            CHECK(extends == eval_bool(f, mask));
        }
    }
}

TEST_CASE("feasible sets") {
    Polynomial circle = x1 * x1 + x2 * x2 - 1;
    std::vector<RealValue> s = {RealValue(2)};
    std::vector<Literal> c1 = {lit(circle, Relation::LT)};
    CHECK(feasible_set(c1, s).empty());

    std::vector<Literal> c2 = {lit(x2, Relation::GT)};
    FeasibleSet f2 = feasible_set(c2, s);
    REQUIRE(f2.intervals().size() == 1);
    CHECK(compare(f2.intervals()[0].lo, ExtendedReal(Rational(0))) == 0);
    CHECK(!f2.intervals()[0].lo_closed);
    CHECK(f2.intervals()[0].hi.kind() == ExtendedReal::Kind::PosInf);

    std::vector<Literal> c3 = {lit(x2 * x2 - 2, Relation::LT), lit(x2, Relation::GE)};
    FeasibleSet f3 = feasible_set(c3, s);
    REQUIRE(f3.intervals().size() == 1);
    const auto& I = f3.intervals()[0];
    CHECK(compare(I.lo, ExtendedReal(Rational(0))) == 0);
    CHECK(I.lo_closed);
    CHECK(compare(I.hi, ExtendedReal(sqrt2())) == 0);
    CHECK(!I.hi_closed);
    CHECK(f3.contains(RealValue(Rational(7, 5))));
    CHECK(!f3.contains(sqrt2()));

    // negated literal: not (x2^2 - 2 < 0) gives (-inf, -sqrt2] u [sqrt2, inf)
    std::vector<Literal> c4 = {lit(x2 * x2 - 2, Relation::LT, false)};
    FeasibleSet f4 = feasible_set(c4, s);
    REQUIRE(f4.intervals().size() == 2);
    CHECK(f4.contains(sqrt2()));
    CHECK(!f4.contains(RealValue(1)));

    // x2 != 0 and x2 >= 0 gives (0, inf)
    std::vector<Literal> c5 = {lit(x2, Relation::NE), lit(x2, Relation::GE)};
    CHECK(feasible_set(c5, s).to_string() == feasible_set(c2, s).to_string());
}

TEST_CASE("feasible set matches pointwise evaluation") {
    std::mt19937_64 rng(5);
    const Relation rels[] = {Relation::LT, Relation::LE, Relation::EQ, Relation::NE, Relation::GE, Relation::GT};
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<Literal> lits;
        for (unsigned k = 0; k < 1 + rng() % 3; ++k)
            lits.push_back(lit(random_polynomial(rng, 2, 1 + rng() % 3, 3), rels[rng() % 6], rng() % 3 != 0));
        std::vector<RealValue> s = {RealValue(random_small_rational(rng))};
        FeasibleSet f = feasible_set(lits, s);
        for (const auto& v : line_candidates(lits, s)) {
            std::vector<RealValue> p = {s[0], v};
            bool all = std::all_of(lits.begin(), lits.end(), [&](const Literal& l) { return *l.evaluate(p); });
            CHECK(f.contains(v) == all);
        }
    }
}

TEST_CASE("decide_value") {
    FeasibleSet pos = FeasibleSet::from_intervals({{ExtendedReal(Rational(0)), ExtendedReal::pos_inf(), false, false}});
    CHECK(decide_value(pos) == RealValue(1));
    CHECK(decide_value(FeasibleSet::all()) == RealValue(0));
    FeasibleSet pt = FeasibleSet::from_intervals({{sqrt2(), sqrt2(), true, true}});
    CHECK(decide_value(pt) == sqrt2());
    FeasibleSet closed =
        FeasibleSet::from_intervals({{ExtendedReal(Rational(1)), ExtendedReal(Rational(5, 2)), true, false}});
    CHECK(decide_value(closed) == RealValue(1));
    FeasibleSet narrow = FeasibleSet::from_intervals(
        {{ExtendedReal(Rational(1, 3)), ExtendedReal(Rational(1, 2)), false, false},
         {ExtendedReal(Rational(3)), ExtendedReal(Rational(7)), false, false}});
    CHECK(decide_value(narrow) == RealValue(4));
}

TEST_CASE("explain reproduces the circle lemma") {
    std::vector<Literal> core = {lit(x1 * x1 + x2 * x2 - 1, Relation::LT)};
    std::vector<RealValue> s = {RealValue(2), RealValue(0)};
    ApxState st;
    ExplainResult ex = explain(core, s, ApproxConfig{}, st);
    REQUIRE(ex.cell);
    CHECK(ex.cell->to_string() == "x1 > root(x1^2 - 1, 2)");
    CHECK(to_string(ex.clause) == "[!(x2^2 + x1^2 - 1 < 0) | !(x1 > root(x1^2 - 1, 2))]");
}

TEST_CASE("explain on linear cores matches baseline") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<Literal> core;
        for (unsigned k = 0; k < 2; ++k) core.push_back(lit(random_polynomial(rng, 2, 1, 3), Relation::GT));
        if (core[0].atom.poly.level() != 2 || core[1].atom.poly.level() != 2) continue;
        std::vector<RealValue> s = {RealValue(random_small_rational(rng))};
        ApxState a, b;
        ExplainResult base = explain(core, s, ApproxConfig{}, a);
        for (const char* name : {"simple-3", "taylor", "pwl-2", "outside"}) {
            ExplainResult other = explain(core, s, ApproxConfig::preset(name), b);
            CHECK(to_string(other.clause) == to_string(base.clause));
        }
    }
}

TEST_CASE("nullification in explain gives point exclusion") {
    Polynomial x3 = Polynomial::variable(3);
    std::vector<Literal> core = {lit(x1 * x3 + x2, Relation::GT)};
    std::vector<RealValue> s = {RealValue(0), RealValue(0)};
    ApxState st;
    ExplainResult ex = explain(core, s, ApproxConfig{}, st);
    CHECK(!ex.cell);
    CHECK(ex.failure.rfind("nullified", 0) == 0);
    REQUIRE(ex.clause.size() == 3);
    CHECK(to_string(ex.clause) == "[!(x1*x3 + x2 > 0) | !(x1 = root(x1, 1)) | !(x2 = root(x2, 1))]");
    // the exclusion literals are jointly false exactly at the sample prefix
    std::vector<Rational> grid = {Rational(-1), Rational(0), Rational(1, 3), Rational(2)};
    for (const auto& a : grid)
        for (const auto& b : grid) {
            std::vector<RealValue> p = {RealValue(a), RealValue(b)};
            bool excluded = !*ex.clause[1].evaluate(p) && !*ex.clause[2].evaluate(p);
            CHECK(excluded == (a == 0 && b == 0));
        }
    std::vector<RealValue> alg = {sqrt2()};
    Clause pe = point_exclusion(alg);
    REQUIRE(pe.size() == 1);
    CHECK(pe[0].to_string() == "!(x1 = root(x1^2 - 2, 2))");
}

TEST_CASE("solve small formulas") {
    Formula circle = atom(x1 * x1 + x2 * x2 - 1, Relation::LT);
    SolveResult r1 = solve(problem(2, Formula::disjunction({circle, atom(x2, Relation::GT)})), ApproxConfig{});
    CHECK(r1.status == Status::Sat);
    REQUIRE(r1.model.size() == 2);

    SolveResult r2 = solve(problem(1, atom(x1 * x1, Relation::LT)), ApproxConfig{});
    CHECK(r2.status == Status::Unsat);

    SolveResult r3 = solve(
        problem(1, Formula::conjunction({atom(x1 * x1 - 2, Relation::EQ), atom(x1, Relation::GT)})), ApproxConfig{});
    REQUIRE(r3.status == Status::Sat);
    CHECK(r3.model[0] == sqrt2());

    // circle with both x1 >= 2 forced: unsat through the lemma
    SolveResult r4 =
        solve(problem(2, Formula::conjunction({circle, atom(x1 - 2, Relation::GE)})), ApproxConfig{});
    CHECK(r4.status == Status::Unsat);
    CHECK(r4.stats.scc_calls >= 1);

    CHECK(solve(problem(0, Formula::constant(true)), ApproxConfig{}).status == Status::Sat);
    CHECK(solve(problem(1, Formula::constant(false)), ApproxConfig{}).status == Status::Unsat);
}

TEST_CASE("looping instance and its dynamic termination") {
    Polynomial q = x1 * x1 * x1 + x1 - 1;
    Formula f = Formula::conjunction({atom(q, Relation::LT), atom(x2 * x2 - q, Relation::LT)});
    SolverLimits limits;
    limits.max_conflicts = 1100;
    SolveResult loop = solve(problem(2, f), forced(Variant::Simple), limits);
    CHECK(loop.status == Status::Unknown);
    CHECK(loop.reason == "step budget");
    CHECK(loop.stats.apx_cells > 1000);

    SolveResult dyn = solve(problem(2, f), ApproxConfig::preset("dynamic"), limits);
    CHECK(dyn.status == Status::Unsat);
    CHECK(dyn.stats.apx_cells >= 1);
    CHECK(dyn.stats.apx_cells <= 5 * (3 - 3) + 1);

    CHECK(solve(problem(2, f), ApproxConfig{}, limits).status == Status::Unsat);
}

TEST_CASE("learned clauses exclude only infeasible lines") {
    std::mt19937_64 rng(71);
    std::size_t checked = 0;
    for (int iter = 0; iter < 60; ++iter) {
        unsigned n = 2 + rng() % 2;
        Problem pb = problem(n, random_problem(rng, n));
        for (const char* name : {"baseline", "simple-2", "pwl-2"}) {
            ExplanationObserver obs = [&](std::span<const Literal> core, const CellDescription& cell) {
                std::mt19937_64 prng(checked);
                for (int k = 0; k < 100; ++k) {
                    CellSample cs = sample_in_cell(prng, cell);
                    REQUIRE(!cs.undefined);
                    for (const auto& v : line_candidates(core, cs.point)) {
                        std::vector<RealValue> p = cs.point;
                        p.push_back(v);
                        bool violated =
                            std::any_of(core.begin(), core.end(), [&](const Literal& l) { return !*l.evaluate(p); });
                        CHECK(violated);
                    }
                }
                ++checked;
            };
            SolverLimits limits;
            limits.max_conflicts = 2000;
            solve(pb, ApproxConfig::preset(name), limits, obs);
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("variants agree on random problems") {
    std::mt19937_64 rng(2024);
    int decided = 0;
    for (int iter = 0; iter < 80; ++iter) {
        unsigned n = 1 + rng() % 3;
        Problem pb = problem(n, random_problem(rng, n));
        SolverLimits limits;
        limits.max_conflicts = 5000;
        SolveResult base = solve(pb, ApproxConfig{}, limits);
        if (base.status == Status::Sat) {
            CHECK(*pb.formula.evaluate(base.model));
        }
        if (base.status != Status::Unknown) ++decided;
        for (const char* name : {"simple-3", "dynamic", "taylor", "pwl-2", "outside"}) {
            SolveResult r = solve(pb, ApproxConfig::preset(name), limits);
            if (r.status == Status::Unknown || base.status == Status::Unknown) continue;
            CHECK(r.status == base.status);
            if (r.status == Status::Sat) CHECK(*pb.formula.evaluate(r.model));
            if (r.stats.apx_cells > 0 && ApproxConfig::preset(name).max_apx_cells)
                CHECK(r.stats.apx_cells <= *ApproxConfig::preset(name).max_apx_cells);
        }
    }
    CHECK(decided >= 70);
}
