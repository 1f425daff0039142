#include "apxscc/nlsat.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace apxscc {

// ---------------------------------------------------------------- formulas

Formula Formula::constant(bool b) {
    Formula f;
    f.kind = b ? Kind::True : Kind::False;
    return f;
}

Formula Formula::make_atom(Constraint c) {
    Formula f;
    f.kind = Kind::Atom;
    f.atom = std::move(c);
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.args.push_back(std::move(g));
    return f;
}

Formula Formula::conjunction(std::vector<Formula> fs) {
    Formula f;
    f.kind = Kind::And;
    f.args = std::move(fs);
    return f;
}

Formula Formula::disjunction(std::vector<Formula> fs) {
    Formula f;
    f.kind = Kind::Or;
    f.args = std::move(fs);
    return f;
}

std::optional<bool> Formula::evaluate(std::span<const RealValue> point) const {
    switch (kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return atom.evaluate(point);
        case Kind::Not: {
            auto v = args[0].evaluate(point);
            if (!v) return std::nullopt;
            return !*v;
        }
        case Kind::And:
        case Kind::Or: {
            const bool absorbing = kind == Kind::Or;
            bool unknown = false;
            for (const auto& a : args) {
                auto v = a.evaluate(point);
                if (!v)
                    unknown = true;
                else if (*v == absorbing)
                    return absorbing;
            }
            if (unknown) return std::nullopt;
            return !absorbing;
        }
    }
    return std::nullopt;
}

Var Formula::level() const {
    if (kind == Kind::Atom) return atom.level();
    Var l = 0;
    for (const auto& a : args) l = std::max(l, a.level());
    return l;
}

namespace {

class CnfBuilder {
public:
    explicit CnfBuilder(unsigned first) : next_(first) {}

    // clauses of f under the given polarity
    std::vector<Clause> convert(const Formula& f, bool positive) {
        using K = Formula::Kind;
        switch (f.kind) {
            case K::True: return positive ? std::vector<Clause>{} : std::vector<Clause>{Clause{}};
            case K::False: return positive ? std::vector<Clause>{Clause{}} : std::vector<Clause>{};
            case K::Atom: return {Clause{Literal{f.atom, positive}}};
            case K::Not: return convert(f.args[0], !positive);
            case K::And:
            case K::Or: break;
        }
        const bool conj = (f.kind == K::And) == positive;
        if (conj) {
            std::vector<Clause> out;
            for (const auto& a : f.args) {
                auto cs = convert(a, positive);
                out.insert(out.end(), cs.begin(), cs.end());
            }
            return out;
        }
        Clause disj;
        std::vector<Clause> side;
        for (const auto& a : f.args) {
            auto cs = convert(a, positive);
            if (cs.empty()) return {};
            if (cs.size() == 1) {
                disj.insert(disj.end(), cs[0].begin(), cs[0].end());
                continue;
            }
            Constraint b = Constraint::boolean(next_++);
            for (auto& c : cs) {
                c.insert(c.begin(), Literal{b, false});
                side.push_back(std::move(c));
            }
            disj.push_back(Literal{b, true});
        }
        Clause dedup;
        for (auto& l : disj) {
            if (std::find(dedup.begin(), dedup.end(), Literal{l.atom, !l.positive}) != dedup.end()) return side;
            if (std::find(dedup.begin(), dedup.end(), l) == dedup.end()) dedup.push_back(std::move(l));
        }
        side.insert(side.begin(), std::move(dedup));
        return side;
    }

    unsigned next() const { return next_; }

private:
    unsigned next_;
};

}  // namespace

Cnf to_cnf(const Formula& f, unsigned first_selector) {
    CnfBuilder b(first_selector);
    Cnf out;
    out.clauses = b.convert(f, true);
    out.selectors = b.next() - first_selector;
    return out;
}

// ---------------------------------------------------------------- feasible sets

namespace {

using Interval = FeasibleSet::Interval;

bool interval_empty(const Interval& I) {
    int c = compare(I.lo, I.hi);
    return c > 0 || (c == 0 && !(I.lo_closed && I.hi_closed));
}

bool below_hi(const RealValue& v, const Interval& I) {
    if (!I.hi.finite()) return I.hi.kind() == ExtendedReal::Kind::PosInf;
    int c = compare(v, I.hi.value());
    return c < 0 || (c == 0 && I.hi_closed);
}

bool above_lo(const RealValue& v, const Interval& I) {
    if (!I.lo.finite()) return I.lo.kind() == ExtendedReal::Kind::NegInf;
    int c = compare(I.lo.value(), v);
    return c < 0 || (c == 0 && I.lo_closed);
}

Interval point_interval(const RealValue& v) { return Interval{v, v, true, true}; }

}  // namespace

FeasibleSet FeasibleSet::all() {
    FeasibleSet f;
    f.parts_.push_back(Interval{});
    return f;
}

FeasibleSet FeasibleSet::from_intervals(std::vector<Interval> parts) {
    std::erase_if(parts, interval_empty);
    std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
        int c = compare(a.lo, b.lo);
        if (c != 0) return c < 0;
        return a.lo_closed && !b.lo_closed;
    });
    FeasibleSet out;
    for (auto& I : parts) {
        if (!out.parts_.empty()) {
            Interval& cur = out.parts_.back();
            int c = compare(I.lo, cur.hi);
            if (c < 0 || (c == 0 && (cur.hi_closed || I.lo_closed))) {
                int h = compare(I.hi, cur.hi);
                if (h > 0) {
                    cur.hi = I.hi;
                    cur.hi_closed = I.hi_closed;
                } else if (h == 0) {
                    cur.hi_closed = cur.hi_closed || I.hi_closed;
                }
                continue;
            }
        }
        out.parts_.push_back(std::move(I));
    }
    return out;
}

bool FeasibleSet::contains(const RealValue& v) const {
    return std::any_of(parts_.begin(), parts_.end(),
                       [&](const Interval& I) { return above_lo(v, I) && below_hi(v, I); });
}

FeasibleSet FeasibleSet::intersect(const FeasibleSet& o) const {
    std::vector<Interval> out;
    for (const auto& a : parts_)
        for (const auto& b : o.parts_) {
            Interval I;
            int c = compare(a.lo, b.lo);
            I.lo = c >= 0 ? a.lo : b.lo;
            I.lo_closed = c > 0 ? a.lo_closed : c < 0 ? b.lo_closed : a.lo_closed && b.lo_closed;
            c = compare(a.hi, b.hi);
            I.hi = c <= 0 ? a.hi : b.hi;
            I.hi_closed = c < 0 ? a.hi_closed : c > 0 ? b.hi_closed : a.hi_closed && b.hi_closed;
            out.push_back(std::move(I));
        }
    return from_intervals(std::move(out));
}

std::string FeasibleSet::to_string() const {
    if (parts_.empty()) return "{}";
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& I = parts_[i];
        if (i) os << " u ";
        if (I.is_point()) {
            os << "{" << I.lo.to_string() << "}";
            continue;
        }
        os << (I.lo_closed ? "[" : "(") << I.lo.to_string() << ", " << I.hi.to_string() << (I.hi_closed ? "]" : ")");
    }
    return os.str();
}

namespace {

FeasibleSet relation_set(Relation r, const RealValue& v) {
    const ExtendedReal lo = ExtendedReal::neg_inf(), hi = ExtendedReal::pos_inf();
    switch (r) {
        case Relation::LT: return FeasibleSet::from_intervals({Interval{lo, v, false, false}});
        case Relation::LE: return FeasibleSet::from_intervals({Interval{lo, v, false, true}});
        case Relation::EQ: return FeasibleSet::from_intervals({point_interval(v)});
        case Relation::NE:
            return FeasibleSet::from_intervals({Interval{lo, v, false, false}, Interval{v, hi, false, false}});
        case Relation::GE: return FeasibleSet::from_intervals({Interval{v, hi, true, false}});
        case Relation::GT: return FeasibleSet::from_intervals({Interval{v, hi, false, false}});
    }
    return FeasibleSet::none();
}

int sign_with(const Polynomial& p, std::span<const RealValue> prefix, const Rational& q) {
    std::vector<RealValue> point(prefix.begin(), prefix.end());
    point.emplace_back(q);
    return sign_at_point(p, point);
}

}  // namespace

FeasibleSet solution_set(const Literal& lit, std::span<const RealValue> prefix) {
    const Constraint& c = lit.atom;
    const Var j = static_cast<Var>(prefix.size() + 1);
    if (c.kind == Constraint::Kind::Bool) throw std::invalid_argument("solution_set: Boolean selector");
    if (c.level() < j) {
        auto v = lit.evaluate(prefix);
        return *v ? FeasibleSet::all() : FeasibleSet::none();
    }
    if (c.level() > j) throw std::invalid_argument("solution_set: literal above level");
    const Relation rel = lit.positive ? c.rel : negate(c.rel);
    if (c.kind == Constraint::Kind::Root) {
        auto v = eval_irexp(c.root, prefix);
        if (!v) return lit.positive ? FeasibleSet::none() : FeasibleSet::all();
        return relation_set(rel, *v);
    }
    RootIsolation iso = real_roots(c.poly, prefix);
    if (iso.nullified) return holds(rel, 0) ? FeasibleSet::all() : FeasibleSet::none();
    const auto& r = iso.roots;
    std::vector<Interval> parts;
    if (r.empty()) {
        if (holds(rel, sign_with(c.poly, prefix, Rational(0)))) parts.push_back(Interval{});
        return FeasibleSet::from_intervals(std::move(parts));
    }
    const bool zero_ok = holds(rel, 0);
    for (std::size_t i = 0; i <= r.size(); ++i) {
        ExtendedReal lo = i == 0 ? ExtendedReal::neg_inf() : ExtendedReal(r[i - 1]);
        ExtendedReal hi = i == r.size() ? ExtendedReal::pos_inf() : ExtendedReal(r[i]);
        if (holds(rel, sign_with(c.poly, prefix, rational_between(lo, hi)))) parts.push_back(Interval{lo, hi, false, false});
        if (i < r.size() && zero_ok) parts.push_back(point_interval(r[i]));
    }
    return FeasibleSet::from_intervals(std::move(parts));
}

FeasibleSet feasible_set(std::span<const Literal> lits, std::span<const RealValue> prefix) {
    FeasibleSet f = FeasibleSet::all();
    for (const auto& l : lits) {
        f = f.intersect(solution_set(l, prefix));
        if (f.empty()) break;
    }
    return f;
}

RealValue decide_value(const FeasibleSet& f) {
    if (f.empty()) throw std::invalid_argument("decide_value: empty set");
    if (f.contains(RealValue(0))) return RealValue(0);
    const Interval* best = nullptr;
    double best_width = -1;
    for (const auto& I : f.intervals()) {
        if (I.is_point()) continue;
        double w = (!I.lo.finite() || !I.hi.finite()) ? std::numeric_limits<double>::infinity()
                                                      : I.hi.value().approx() - I.lo.value().approx();
        if (!best || w > best_width) {
            best = &I;
            best_width = w;
        }
    }
    if (best) {
        Rational q = rational_between(best->lo, best->hi);
        for (auto [end, closed] : {std::pair{&best->lo, best->lo_closed}, std::pair{&best->hi, best->hi_closed}})
            if (closed && end->value().is_rational() && simpler(end->value().rational(), q)) q = end->value().rational();
        return RealValue(q);
    }
    const RealValue* pick = nullptr;
    for (const auto& I : f.intervals()) {
        const RealValue& v = I.lo.value();
        if (!pick) {
            pick = &v;
        } else if (v.is_rational() && (!pick->is_rational() || simpler(v.rational(), pick->rational()))) {
            pick = &v;
        }
    }
    return *pick;
}

// ---------------------------------------------------------------- explanations

Clause point_exclusion(std::span<const RealValue> s) {
    Clause out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Var j = static_cast<Var>(i + 1);
        IndexedRoot xi;
        if (s[i].is_rational()) {
            xi = IndexedRoot{(Polynomial::variable(j) - Polynomial(s[i].rational())).normalized(), 1};
        } else {
            const UPoly& m = s[i].algebraic().defining();
            auto roots = real_roots(m);
            auto it = std::find(roots.begin(), roots.end(), s[i]);
            xi = IndexedRoot{Polynomial::from_upoly(m, j).normalized(), static_cast<unsigned>(it - roots.begin() + 1)};
        }
        out.push_back(Literal{Constraint::extended(j, Relation::EQ, std::move(xi)), false});
    }
    return out;
}

ExplainResult explain(std::span<const Literal> core, std::span<const RealValue> s, const ApproxConfig& config,
                      ApxState& state) {
    Var j = 0;
    for (const auto& l : core) j = std::max(j, l.atom.level());
    if (j == 0 || s.size() + 1 < j) throw std::invalid_argument("explain: sample does not reach the core level");
    auto prefix = s.first(j - 1);
    ExplainResult out;
    for (const auto& l : core) out.clause.push_back(Literal{l.atom, !l.positive});
    std::vector<Polynomial> polys;
    for (const auto& l : core)
        if (l.atom.kind != Constraint::Kind::Bool && l.atom.level() == j) polys.push_back(l.atom.defining_poly());
    try {
        std::vector<Polynomial> projected = full_line_projection(polys, prefix, out.stats);
        SccResult r = apx_scc(projected, prefix, config, state);
        out.stats.merge(r.stats);
        if (r.ok()) {
            for (auto& l : explanation_clause({}, *r.cell))
                if (std::find(out.clause.begin(), out.clause.end(), l) == out.clause.end()) out.clause.push_back(l);
            out.cell = std::move(r.cell);
            return out;
        }
        out.failure = r.failure;
    } catch (const ProjectionFailure& e) {
        out.failure = e.what();
    }
    for (auto& l : point_exclusion(prefix)) out.clause.push_back(std::move(l));
    return out;
}

// ---------------------------------------------------------------- solver

std::string to_string(Status s) {
    switch (s) {
        case Status::Sat: return "sat";
        case Status::Unsat: return "unsat";
        default: return "unknown";
    }
}

namespace {

struct Lit {
    unsigned atom;
    bool positive;
    friend bool operator==(const Lit&, const Lit&) = default;
};

struct Unknown {
    std::string reason;
};

class Solver {
public:
    Solver(const Problem& problem, const ApproxConfig& config, const SolverLimits& limits,
           const ExplanationObserver& observer)
        : problem_(problem), config_(config), limits_(limits), observer_(observer), n_(problem.vars.size()) {
        unsigned max_sel = 0;
        collect_selectors(problem.formula, max_sel);
        Cnf cnf = to_cnf(problem.formula, max_sel);
        for (const auto& c : cnf.clauses) add_clause(intern(c), false);
    }

    SolveResult run() {
        const auto start = std::chrono::steady_clock::now();
        SolveResult out;
        try {
            out.status = search(start);
            if (out.status == Status::Sat) {
                out.model = assignment_;
                auto ok = problem_.formula.evaluate(out.model);
                if (!ok || !*ok) throw std::logic_error("model check failed");
            }
        } catch (const Unknown& u) {
            out.status = Status::Unknown;
            out.reason = u.reason;
        } catch (const PrecisionExhausted& e) {
            ++stats_.fallbacks;
            out.status = Status::Unknown;
            out.reason = std::string("precision: ") + e.what();
        }
        stats_.apx_cells = apx_.n_cells;
        stats_.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out.stats = stats_;
        return out;
    }

private:
    struct Entry {
        bool theory;
        Lit lit;
    };

    static void collect_selectors(const Formula& f, unsigned& max_sel) {
        if (f.kind == Formula::Kind::Atom && f.atom.kind == Constraint::Kind::Bool)
            max_sel = std::max(max_sel, f.atom.id + 1);
        for (const auto& a : f.args) collect_selectors(a, max_sel);
    }

    unsigned atom_of(const Constraint& c) {
        auto [it, fresh] = index_.try_emplace(c, static_cast<unsigned>(atoms_.size()));
        if (fresh) {
            atoms_.push_back(c);
            level_.push_back(c.level());
            bval_.push_back(-1);
            reason_.push_back(-1);
            eval_.push_back(-1);
            feasible_cache_.emplace_back();
            if (c.kind != Constraint::Kind::Bool && c.level() <= assignment_.size()) evaluate_atom(it->second);
        }
        return it->second;
    }

    std::vector<Lit> intern(const Clause& c) {
        std::vector<Lit> out;
        for (const auto& l : c) {
            Lit x{atom_of(l.atom), l.positive};
            if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
        }
        return out;
    }

    void add_clause(std::vector<Lit> c, bool learned) {
        clauses_.push_back(std::move(c));
        if (learned) ++stats_.learned_clauses;
    }

    void evaluate_atom(unsigned a) {
        auto v = atoms_[a].evaluate(std::span<const RealValue>(assignment_).first(level_[a]));
        eval_[a] = *v ? 1 : 0;
        if (bval_[a] >= 0 && bval_[a] != eval_[a]) throw std::logic_error("asserted literal violated by assignment");
    }

    int value(const Lit& l) const {
        int v = bval_[l.atom] >= 0 ? bval_[l.atom] : eval_[l.atom];
        if (v < 0) return -1;
        return (v == 1) == l.positive ? 1 : 0;
    }

    void assign(const Lit& l, int reason) {
        bval_[l.atom] = l.positive ? 1 : 0;
        reason_[l.atom] = reason;
        trail_.push_back(Entry{false, l});
    }

    void assign_theory(RealValue v) {
        assignment_.push_back(std::move(v));
        trail_.push_back(Entry{true, {}});
        const Var k = static_cast<Var>(assignment_.size());
        for (unsigned a = 0; a < atoms_.size(); ++a)
            if (level_[a] == k && atoms_[a].kind != Constraint::Kind::Bool) evaluate_atom(a);
        invalidate_above(k);
    }

    void pop() {
        Entry e = trail_.back();
        trail_.pop_back();
        if (e.theory) {
            const Var k = static_cast<Var>(assignment_.size());
            assignment_.pop_back();
            for (unsigned a = 0; a < atoms_.size(); ++a)
                if (level_[a] == k) eval_[a] = -1;
            invalidate_above(k);
        } else {
            bval_[e.lit.atom] = -1;
            reason_[e.lit.atom] = -1;
        }
    }

    // index of a conflicting clause or -1
    int propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < clauses_.size(); ++i) {
                const auto& c = clauses_[i];
                int undef = 0;
                const Lit* last = nullptr;
                bool sat = false;
                for (const auto& l : c) {
                    int v = value(l);
                    if (v == 1) {
                        sat = true;
                        break;
                    }
                    if (v < 0) {
                        ++undef;
                        last = &l;
                    }
                }
                if (sat) continue;
                if (undef == 0) return static_cast<int>(i);
                if (undef == 1) {
                    assign(*last, static_cast<int>(i));
                    changed = true;
                }
            }
        }
        return -1;
    }

    // chronological conflict resolution; false when the empty clause is derived
    bool resolve(std::vector<Lit> c) {
        ++stats_.conflicts;
        if (stats_.conflicts > limits_.max_conflicts) throw Unknown{"step budget"};
        for (;;) {
            if (c.empty() || trail_.empty()) return false;
            const Entry e = trail_.back();
            if (e.theory) {
                const Var k = static_cast<Var>(assignment_.size());
                bool depends = std::any_of(c.begin(), c.end(), [&](const Lit& l) {
                    return level_[l.atom] == k && bval_[l.atom] < 0 && atoms_[l.atom].kind != Constraint::Kind::Bool;
                });
                pop();
                if (depends) return learn(std::move(c));
                continue;
            }
            const Lit neg{e.lit.atom, !e.lit.positive};
            auto it = std::find(c.begin(), c.end(), neg);
            if (it == c.end()) {
                pop();
                continue;
            }
            const int r = reason_[e.lit.atom];
            pop();
            if (r < 0) return learn(std::move(c));
            c.erase(it);
            for (const auto& l : clauses_[static_cast<std::size_t>(r)])
                if (l.atom != e.lit.atom && std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
        }
    }

    bool learn(std::vector<Lit> c) {
        bool open = std::any_of(c.begin(), c.end(), [&](const Lit& l) { return value(l) < 0; });
        if (!open) throw std::logic_error("learned clause still falsified after backtracking");
        add_clause(std::move(c), true);
        return true;
    }

    const FeasibleSet& literal_set(const Lit& l) {
        auto& slot = feasible_cache_[l.atom][l.positive ? 1 : 0];
        if (!slot) slot = solution_set(Literal{atoms_[l.atom], l.positive}, assignment_);
        return *slot;
    }

    // cached solution sets of atoms above level k depend on x_k
    void invalidate_above(Var k) {
        for (unsigned a = 0; a < atoms_.size(); ++a)
            if (level_[a] > k) feasible_cache_[a] = {};
    }

    std::vector<Lit> asserted_at(Var j) const {
        std::vector<Lit> out;
        for (const auto& e : trail_)
            if (!e.theory && level_[e.lit.atom] == j) out.push_back(e.lit);
        return out;
    }

    FeasibleSet intersect_all(const std::vector<Lit>& lits) {
        FeasibleSet f = FeasibleSet::all();
        for (const auto& l : lits) {
            f = f.intersect(literal_set(l));
            if (f.empty()) break;
        }
        return f;
    }

    std::vector<Lit> minimize_core(std::vector<Lit> core) {
        for (std::size_t i = 0; i < core.size();) {
            std::vector<Lit> rest = core;
            rest.erase(rest.begin() + static_cast<long>(i));
            if (intersect_all(rest).empty())
                core = std::move(rest);
            else
                ++i;
        }
        return core;
    }

    std::vector<Lit> theory_conflict(const std::vector<Lit>& asserted) {
        std::vector<Lit> core = minimize_core(asserted);
        std::vector<Literal> lits;
        for (const auto& l : core) lits.push_back(Literal{atoms_[l.atom], l.positive});
        ++stats_.scc_calls;
        ExplainResult ex = explain(lits, assignment_, config_, apx_);
        stats_.resultants += ex.stats.resultants;
        stats_.mult_proxy += ex.stats.mult_proxy;
        stats_.max_resultant_degree = std::max(stats_.max_resultant_degree, ex.stats.max_resultant_degree);
        if (ex.cell) {
            if (observer_) observer_(lits, *ex.cell);
        } else {
            ++stats_.fallbacks;
            if (stats_.fallbacks > limits_.fallback_budget) throw Unknown{"fallback budget: " + ex.failure};
        }
        std::vector<Lit> c = intern(ex.clause);
        if (std::any_of(c.begin(), c.end(), [&](const Lit& l) { return value(l) != 0; }))
            throw std::logic_error("explanation is not falsified by the current trail");
        return c;
    }

    void check_time(std::chrono::steady_clock::time_point start) const {
        if (!limits_.timeout_ms) return;
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (ms > *limits_.timeout_ms) throw Unknown{"timeout"};
    }

    // first unassigned literal of the first unsatisfied clause whose unassigned literals all have level <= j
    std::optional<Lit> pick_decision(Var j) const {
        for (std::size_t i = 0; i < clauses_.size(); ++i) {
            const auto& c = clauses_[i];
            if (std::any_of(c.begin(), c.end(), [&](const Lit& l) { return value(l) == 1; })) continue;
            if (std::any_of(c.begin(), c.end(), [&](const Lit& l) { return value(l) < 0 && level_[l.atom] > j; }))
                continue;
            for (const auto& l : c)
                if (value(l) < 0) return l;
        }
        return std::nullopt;
    }

    Status search(std::chrono::steady_clock::time_point start) {
        for (unsigned a = 0; a < atoms_.size(); ++a)
            if (level_[a] == 0 && atoms_[a].kind != Constraint::Kind::Bool) evaluate_atom(a);
        for (;;) {
            check_time(start);
            int conflict = propagate();
            if (conflict >= 0) {
                if (!resolve(clauses_[static_cast<std::size_t>(conflict)])) return Status::Unsat;
                continue;
            }
            const Var k = static_cast<Var>(assignment_.size());
            const Var j = k + 1;
            std::optional<FeasibleSet> f;
            if (k < n_) {
                std::vector<Lit> asserted = asserted_at(j);
                f = intersect_all(asserted);
                if (f->empty()) {
                    if (!resolve(theory_conflict(asserted))) return Status::Unsat;
                    continue;
                }
            }
            if (auto d = pick_decision(std::min<Var>(j, n_))) {
                ++stats_.decisions;
                assign(*d, -1);
                continue;
            }
            if (k == n_) return Status::Sat;
            assign_theory(decide_value(*f));
        }
    }

    const Problem& problem_;
    const ApproxConfig& config_;
    const SolverLimits& limits_;
    const ExplanationObserver& observer_;
    const Var n_;
    ApxState apx_;
    SolverStats stats_;

    std::vector<Constraint> atoms_;
    std::map<Constraint, unsigned> index_;
    std::vector<Var> level_;
    std::vector<signed char> bval_, eval_;
    std::vector<int> reason_;
    std::vector<std::vector<Lit>> clauses_;
    std::vector<RealValue> assignment_;
    std::vector<Entry> trail_;
    std::vector<std::array<std::optional<FeasibleSet>, 2>> feasible_cache_;
};

}  // namespace

SolveResult solve(const Problem& problem, const ApproxConfig& config, const SolverLimits& limits,
                  const ExplanationObserver& observer) {
    Solver s(problem, config, limits, observer);
    return s.run();
}

}  // namespace apxscc
