#include "apxscc/scc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace apxscc {

void CellStats::merge(const CellStats& o) {
    resultants += o.resultants;
    discriminants += o.discriminants;
    max_resultant_degree = std::max(max_resultant_degree, o.max_resultant_degree);
    mult_proxy += o.mult_proxy;
    aux_polys += o.aux_polys;
    degree_bound_violations += o.degree_bound_violations;
}

// ---------------------------------------------------------------- bounds and intervals

namespace {

std::string var_name(Var j, const VariableOrder* names) {
    return names && j <= names->size() ? names->name(j) : "x" + std::to_string(j);
}

std::string end_text(const std::optional<Rational>& q, const char* inf) {
    return q ? to_string(*q) : std::string(inf);
}

}  // namespace

std::size_t PiecewiseBound::piece_at(const RealValue& v) const {
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& pc = pieces[k];
        if (pc.from && compare(*pc.from, v) > 0) continue;
        if (pc.to && compare(*pc.to, v) < 0) continue;
        return k;
    }
    throw std::logic_error("piecewise bound does not cover the point");
}

std::string PiecewiseBound::to_string(const VariableOrder* names) const {
    std::string out = "pwl(" + var_name(domain_var(), names);
    for (const auto& pc : pieces)
        out += "; [" + end_text(pc.from, "-oo") + ", " + end_text(pc.to, "+oo") + "]: root(" +
               pc.line.to_string(names) + ", 1)";
    return out + ")";
}

std::optional<RealValue> eval_bound(const Bound& b, std::span<const RealValue> r) {
    if (const auto* xi = std::get_if<IndexedRoot>(&b)) return eval_irexp(*xi, r);
    const auto& pw = std::get<PiecewiseBound>(b);
    const auto& line = pw.pieces[pw.piece_at(r[pw.domain_var() - 1])].line;
    RootIsolation iso = real_roots(line, r);
    if (iso.nullified || iso.roots.size() != 1) return std::nullopt;
    return iso.roots[0];
}

std::string to_string(const Bound& b, const VariableOrder* names) {
    if (const auto* xi = std::get_if<IndexedRoot>(&b)) return xi->to_string(names);
    return std::get<PiecewiseBound>(b).to_string(names);
}

SymbolicInterval SymbolicInterval::section(IndexedRoot xi) {
    SymbolicInterval I;
    I.kind = Kind::Section;
    I.lower = Bound(std::move(xi));
    return I;
}

SymbolicInterval SymbolicInterval::sector(std::optional<Bound> lo, std::optional<Bound> hi) {
    SymbolicInterval I;
    I.kind = Kind::Sector;
    I.lower = std::move(lo);
    I.upper = std::move(hi);
    return I;
}

std::string SymbolicInterval::to_string(Var j, const VariableOrder* names) const {
    const std::string v = var_name(j, names);
    if (is_section()) return v + " = " + apxscc::to_string(*lower, names);
    if (lower && upper)
        return apxscc::to_string(*lower, names) + " < " + v + " < " + apxscc::to_string(*upper, names);
    if (lower) return v + " > " + apxscc::to_string(*lower, names);
    if (upper) return v + " < " + apxscc::to_string(*upper, names);
    return "true";
}

std::string CellDescription::to_string(const VariableOrder* names) const {
    std::string out;
    for (std::size_t j = 0; j < intervals.size(); ++j) {
        if (j > 0) out += "\n";
        out += intervals[j].to_string(static_cast<Var>(j + 1), names);
    }
    return out;
}

std::optional<ConcreteInterval> concrete_interval(const SymbolicInterval& I, std::span<const RealValue> r) {
    ConcreteInterval c;
    if (I.is_section()) {
        auto v = eval_bound(*I.lower, r);
        if (!v) return std::nullopt;
        c.lo = ExtendedReal(*v);
        c.hi = ExtendedReal(*v);
        c.point = true;
        return c;
    }
    if (I.lower) {
        auto v = eval_bound(*I.lower, r);
        if (!v) return std::nullopt;
        c.lo = ExtendedReal(*v);
    }
    if (I.upper) {
        auto v = eval_bound(*I.upper, r);
        if (!v) return std::nullopt;
        c.hi = ExtendedReal(*v);
    }
    return c;
}

std::optional<bool> cell_contains(const CellDescription& cell, std::span<const RealValue> r) {
    if (r.size() < cell.intervals.size()) throw std::invalid_argument("cell_contains: point too short");
    for (std::size_t j = 0; j < cell.intervals.size(); ++j) {
        auto ci = concrete_interval(cell.intervals[j], r.first(j));
        if (!ci) return std::nullopt;
        ExtendedReal x(r[j]);
        if (ci->point) {
            if (compare(x, ci->lo) != 0) return false;
        } else if (compare(ci->lo, x) >= 0 || compare(x, ci->hi) >= 0) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- interval selection

PickedInterval pick_interval(const std::vector<RootEntry>& roots, const RealValue& s_j) {
    PickedInterval pick;
    std::size_t i = 0;
    int c = -1;
    for (; i < roots.size(); ++i) {
        c = compare(roots[i].value, s_j);
        if (c >= 0) break;
    }
    if (i < roots.size() && c == 0) {
        pick.section = i;
        return pick;
    }
    if (i < roots.size()) pick.upper = i;
    if (i > 0) {
        std::size_t k = i - 1;
        while (k > 0 && compare(roots[k - 1].value, roots[i - 1].value) == 0) --k;
        pick.lower = k;
    }
    return pick;
}

SymbolicInterval make_interval(const std::vector<RootEntry>& roots, const PickedInterval& pick) {
    if (pick.section) return SymbolicInterval::section(roots[*pick.section].root);
    std::optional<Bound> lo, hi;
    if (pick.lower) lo = Bound(roots[*pick.lower].root);
    if (pick.upper) hi = Bound(roots[*pick.upper].root);
    return SymbolicInterval::sector(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------- projection

namespace {

void push_unique(std::vector<Polynomial>& out, Polynomial p) {
    p = p.normalized();
    if (p.is_constant()) return;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
}

bool is_vertical_line(const Polynomial& a, Var j) {
    return a.level() == j && a.degree(j) == 1 && a.total_degree() == 1 && a.terms().size() <= 2 &&
           std::all_of(a.terms().begin(), a.terms().end(), [j](const Term& t) { return t.mono.empty() || t.mono.size() == j; });
}

// resultant with statistics; aux marks operands inserted by approximation
Polynomial tracked_resultant(const Polynomial& a, const Polynomial& b, Var j, CellStats& stats, bool a_aux,
                             bool b_aux) {
    Polynomial r = resultant(a, b, j);
    ++stats.resultants;
    stats.mult_proxy += static_cast<unsigned long>(a.degree(j)) * b.degree(j);
    stats.max_resultant_degree = std::max(stats.max_resultant_degree, r.total_degree());
    if (r.is_zero() || a_aux == b_aux) return r;
    const Polynomial& aux = a_aux ? a : b;
    const Polynomial& other = a_aux ? b : a;
    bool ok = true;
    if (is_vertical_line(aux, j)) {
        for (Var v = 1; v < j; ++v)
            if (r.degree(v) > other.degree(v)) ok = false;
    } else {
        ok = r.total_degree() <= other.total_degree();
    }
    if (!ok) ++stats.degree_bound_violations;
    return r;
}

// resultants keeping the roots of a and b ordered; a common factor g is split off and
// the coprime parts are paired instead
std::vector<Polynomial> pair_projection(const Polynomial& a, const Polynomial& b, Var j, CellStats& stats,
                                        bool a_aux, bool b_aux) {
    Polynomial r = tracked_resultant(a, b, j, stats, a_aux, b_aux);
    if (!r.is_zero()) return {r};
    Polynomial g = primitive_part(gcd(a, b), j);
    Polynomial fa = exact_divide(a, g), fb = exact_divide(b, g);
    std::vector<Polynomial> out;
    auto pair = [&](const Polynomial& p, const Polynomial& q, bool p_aux, bool q_aux) {
        if (p.degree(j) == 0 || q.degree(j) == 0) return;
        for (auto& x : pair_projection(p, q, j, stats, p_aux, q_aux)) out.push_back(std::move(x));
    };
    pair(fa, fb, a_aux, b_aux);
    pair(fa, g, a_aux, false);
    pair(fb, g, b_aux, false);
    return out;
}

class TaskList {
public:
    void add(const Polynomial& a, const Polynomial& b) {
        if (a == b) return;
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (seen_.insert(key).second) tasks_.emplace_back(a, b);
    }
    std::vector<ResultantTask> take() { return std::move(tasks_); }

private:
    std::set<std::pair<Polynomial, Polynomial>> seen_;
    std::vector<ResultantTask> tasks_;
};

void chain_side(const std::vector<RootEntry>& roots, std::size_t bound, const std::vector<std::size_t>& beyond,
                const std::set<Polynomial>& pivots, TaskList& tasks) {
    const Polynomial* pivot = &roots[bound].root.poly;
    for (std::size_t k : beyond) {
        const Polynomial& q = roots[k].root.poly;
        if (pivots.count(q)) {
            tasks.add(*pivot, q);
            pivot = &q;
        } else {
            tasks.add(q, *pivot);
        }
    }
}

std::vector<std::size_t> beyond_upper(const std::vector<RootEntry>& roots, std::size_t u) {
    std::vector<std::size_t> out;
    for (std::size_t k = u + 1; k < roots.size(); ++k) out.push_back(k);
    return out;
}

std::vector<std::size_t> beyond_lower(const std::vector<RootEntry>& roots, std::size_t l) {
    std::vector<std::size_t> out;
    for (std::size_t k = l + 1; k < roots.size() && compare(roots[k].value, roots[l].value) == 0; ++k) out.push_back(k);
    for (std::size_t k = l; k-- > 0;) out.push_back(k);
    return out;
}

void sort_entries(std::vector<RootEntry>& entries, Var j) {
    std::stable_sort(entries.begin(), entries.end(), [j](const RootEntry& a, const RootEntry& b) {
        int c = compare(a.value, b.value);
        if (c != 0) return c < 0;
        unsigned da = a.root.poly.degree(j), db = b.root.poly.degree(j);
        if (da != db) return da < db;
        std::string ta = a.root.poly.to_string(), tb = b.root.poly.to_string();
        if (ta != tb) return ta < tb;
        return a.root.index < b.root.index;
    });
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const RootEntry& a, const RootEntry& b) { return a.root == b.root; }),
                  entries.end());
}

void append_roots(std::vector<RootEntry>& entries, const Polynomial& p, std::span<const RealValue> prefix) {
    RootIsolation iso = real_roots(p, prefix);
    if (iso.nullified) throw ProjectionFailure("nullified: " + p.to_string());
    for (std::size_t k = 0; k < iso.roots.size(); ++k)
        entries.push_back(RootEntry{IndexedRoot{p, static_cast<unsigned>(k + 1)}, iso.roots[k]});
}

}  // namespace

std::vector<Polynomial> delineability_polys(const Polynomial& p, std::span<const RealValue> s, CellStats* stats) {
    const Var j = p.level();
    std::vector<Polynomial> out;
    if (j == 0) return out;
    auto prefix = s.first(j - 1);
    const unsigned d = p.degree(j);
    auto disc = [&](const Polynomial& q) {
        Polynomial r = discriminant(q, j);
        if (stats) ++stats->discriminants;
        if (r.is_zero()) {
            Polynomial sq = squarefree_part(q, j);
            if (sq.degree(j) < 2) return;
            r = discriminant(sq, j);
            if (stats) ++stats->discriminants;
        }
        push_unique(out, std::move(r));
    };
    if (d >= 2) disc(p);
    auto coeffs = p.coefficients(j);
    push_unique(out, coeffs[d]);
    if (sign_at_point(coeffs[d], prefix) == 0) {
        int k = static_cast<int>(d) - 1;
        for (; k >= 0; --k) {
            push_unique(out, coeffs[k]);
            if (sign_at_point(coeffs[k], prefix) != 0) break;
        }
        if (k >= 2) disc(Polynomial::from_coefficients(j, {coeffs.begin(), coeffs.begin() + k + 1}));
    }
    return out;
}

std::vector<ResultantTask> ordering_resultants(const std::vector<RootEntry>& roots, const PickedInterval& pick,
                                               const std::set<Polynomial>& pivots) {
    TaskList tasks;
    if (pick.section) {
        const Polynomial& sp = roots[*pick.section].root.poly;
        for (const auto& e : roots) tasks.add(e.root.poly, sp);
        return tasks.take();
    }
    if (pick.upper) chain_side(roots, *pick.upper, beyond_upper(roots, *pick.upper), pivots, tasks);
    if (pick.lower) chain_side(roots, *pick.lower, beyond_lower(roots, *pick.lower), pivots, tasks);
    if (pick.lower && pick.upper) tasks.add(roots[*pick.lower].root.poly, roots[*pick.upper].root.poly);
    return tasks.take();
}

std::vector<Polynomial> full_line_projection(std::span<const Polynomial> polys, std::span<const RealValue> prefix,
                                             CellStats& stats) {
    const Var j = static_cast<Var>(prefix.size() + 1);
    std::set<Polynomial> P;
    std::vector<Polynomial> out;
    for (const auto& p : polys) {
        if (p.level() != j) continue;
        push_unique(out, content(p, j));
        P.insert(squarefree_part(p, j));
    }
    std::vector<RootEntry> entries;
    for (const auto& p : P) {
        for (auto& d : delineability_polys(p, prefix, &stats)) push_unique(out, std::move(d));
        append_roots(entries, p, prefix);
    }
    sort_entries(entries, j);
    TaskList tasks;
    for (std::size_t k = 0; k + 1 < entries.size(); ++k) tasks.add(entries[k].root.poly, entries[k + 1].root.poly);
    for (const auto& [a, b] : tasks.take())
        for (auto& r : pair_projection(a, b, j, stats, false, false)) push_unique(out, std::move(r));
    return out;
}

// ---------------------------------------------------------------- construction

namespace {

struct Filtered {
    Polynomial poly;
    std::optional<Rational> from, to;
};

class ProjectionState {
public:
    explicit ProjectionState(Var n) : raw_(n + 1), basis_(n + 1) {}

    // keeps p for the nullification check and its content and square-free part as the basis
    void add(const Polynomial& p) {
        Polynomial n = p.normalized();
        Var l = n.level();
        if (l == 0) return;
        if (l >= raw_.size()) throw std::invalid_argument("polynomial above the sample dimension: " + p.to_string());
        if (!raw_[l].insert(n).second) return;
        add(content(n, l));
        basis_[l].insert(squarefree_part(n, l));
    }

    // false when the polynomial was already present
    bool add_aux(const Polynomial& p) {
        Var l = p.level();
        raw_[l].insert(p);
        return basis_[l].insert(p).second;
    }

    void add_filtered(const Polynomial& p, const std::optional<Rational>& from, const std::optional<Rational>& to) {
        Polynomial n = p.normalized();
        if (n.level() == 0) return;
        add(content(n, n.level()));
        n = squarefree_part(n, n.level());
        for (const auto& f : filtered_)
            if (f.poly == n && f.from == from && f.to == to) return;
        filtered_.push_back(Filtered{std::move(n), from, to});
    }

    const std::set<Polynomial>& raw(Var j) const { return raw_[j]; }
    const std::set<Polynomial>& basis(Var j) const { return basis_[j]; }
    const std::vector<Filtered>& filtered() const { return filtered_; }

private:
    std::vector<std::set<Polynomial>> raw_, basis_;
    std::vector<Filtered> filtered_;  // level-1 polynomials whose roots count only inside [from, to]
};

bool in_slab(const RealValue& v, const Filtered& f) {
    if (f.from && compare(*f.from, v) > 0) return false;
    if (f.to && compare(*f.to, v) < 0) return false;
    return true;
}

}  // namespace

SccResult construct_cell(std::span<const Polynomial> P, std::span<const RealValue> s, LevelHook* hook) {
    const Var n = static_cast<Var>(s.size());
    SccResult res;
    CellStats stats;
    if (hook) hook->begin_cell();
    try {
        ProjectionState st(n);
        for (const auto& p : P)
            if (!p.is_zero()) st.add(p);
        std::vector<SymbolicInterval> intervals(n);
        for (Var j = n; j >= 1; --j) {
            auto prefix = s.first(j - 1);
            for (const auto& p : st.raw(j))
                if (real_roots(p, prefix).nullified) throw ProjectionFailure("nullified: " + p.to_string());
            std::vector<RootEntry> entries;
            for (const auto& p : st.basis(j)) append_roots(entries, p, prefix);
            if (j == 1)
                for (const auto& f : st.filtered()) {
                    RootIsolation iso = real_roots(f.poly, prefix);
                    for (std::size_t k = 0; k < iso.roots.size(); ++k)
                        if (in_slab(iso.roots[k], f))
                            entries.push_back(RootEntry{IndexedRoot{f.poly, static_cast<unsigned>(k + 1)}, iso.roots[k]});
                }
            sort_entries(entries, j);
            PickedInterval pick = pick_interval(entries, s[j - 1]);

            LevelApproximation apx;
            std::set<Polynomial> aux;
            if (hook && !pick.section) {
                apx = hook->at_level(LevelContext{j, s, entries, pick});
                for (const auto& a : apx.aux) {
                    Polynomial na = a.normalized();
                    if (st.basis(j).count(na) || !aux.insert(na).second) continue;
                    st.add_aux(na);
                    ++stats.aux_polys;
                    append_roots(entries, na, prefix);
                }
                if (!aux.empty()) {
                    sort_entries(entries, j);
                    pick = pick_interval(entries, s[j - 1]);
                }
            }
            SymbolicInterval I = make_interval(entries, pick);
            if (apx.lower_compound) {
                I.lower = Bound(*apx.lower_compound);
                stats.aux_polys += apx.lower_compound->pieces.size();
            }
            if (apx.upper_compound) {
                I.upper = Bound(*apx.upper_compound);
                stats.aux_polys += apx.upper_compound->pieces.size();
            }
            intervals[j - 1] = I;
            if (j == 1) continue;

            for (const auto& p : st.basis(j))
                for (const auto& d : delineability_polys(p, prefix, &stats)) st.add(d);

            auto project = [&](const Polynomial& a, const Polynomial& b) {
                for (const auto& r : pair_projection(a, b, j, stats, aux.count(a) > 0, aux.count(b) > 0)) st.add(r);
            };
            if (!apx.lower_compound && !apx.upper_compound) {
                for (const auto& [a, b] : ordering_resultants(entries, pick, aux)) project(a, b);
                continue;
            }
            // one side (or both) bounded by a piecewise linear bound
            PickedInterval plain;
            if (!apx.lower_compound) plain.lower = pick.lower;
            if (!apx.upper_compound) plain.upper = pick.upper;
            for (const auto& [a, b] : ordering_resultants(entries, plain, aux)) project(a, b);

            auto project_piece = [&](const PiecewiseBound::Piece& pc, const Polynomial& q) {
                for (const auto& r : pair_projection(pc.line, q, j, stats, true, false)) {
                    if (j == 2)
                        st.add_filtered(r, pc.from, pc.to);
                    else
                        st.add(r);
                }
            };
            auto compound_side = [&](const PiecewiseBound& pw, bool upper) {
                std::set<Polynomial> beyond;
                for (const auto& e : entries) {
                    int c = compare(e.value, s[j - 1]);
                    if (upper ? c > 0 : c < 0) beyond.insert(e.root.poly);
                }
                for (const auto& pc : pw.pieces)
                    for (const auto& q : beyond) project_piece(pc, q);
            };
            if (apx.upper_compound) compound_side(*apx.upper_compound, true);
            if (apx.lower_compound) compound_side(*apx.lower_compound, false);
            // bound pair
            if (apx.upper_compound && apx.lower_compound) {
                for (const auto& a : apx.upper_compound->pieces)
                    for (const auto& b : apx.lower_compound->pieces) {
                        for (const auto& r : pair_projection(a.line, b.line, j, stats, true, true)) st.add(r);
                    }
            } else if (apx.upper_compound && pick.lower) {
                for (const auto& pc : apx.upper_compound->pieces) project_piece(pc, entries[*pick.lower].root.poly);
            } else if (apx.lower_compound && pick.upper) {
                for (const auto& pc : apx.lower_compound->pieces) project_piece(pc, entries[*pick.upper].root.poly);
            }
        }
        res.cell = CellDescription{std::move(intervals), std::vector<RealValue>(s.begin(), s.end()), stats};
    } catch (const ProjectionFailure& e) {
        res.failure = e.what();
    } catch (const PrecisionExhausted& e) {
        res.failure = std::string("precision: ") + e.what();
    }
    res.stats = stats;
    if (hook) hook->end_cell(res.ok());
    return res;
}

SccResult levelwise_scc(std::span<const Polynomial> P, std::span<const RealValue> s) {
    return construct_cell(P, s, nullptr);
}

// ---------------------------------------------------------------- explanation clause

namespace {

void compound_literals(const PiecewiseBound& pw, bool upper, std::span<const RealValue> s, Clause& out) {
    const Var j = pw.level;
    auto prefix = s.first(j - 1);
    auto beyond_sample = [&](std::size_t k) {
        RootIsolation iso = real_roots(pw.pieces[k].line, prefix);
        if (iso.roots.size() != 1) return false;
        int c = compare(iso.roots[0], s[j - 1]);
        return upper ? c > 0 : c < 0;
    };
    std::size_t a = pw.piece_at(s[pw.domain_var() - 1]), b = a;
    while (a > 0 && beyond_sample(a - 1)) --a;
    while (b + 1 < pw.pieces.size() && beyond_sample(b + 1)) ++b;
    for (std::size_t k = a; k <= b; ++k)
        out.push_back(Literal{Constraint::extended(j, upper ? Relation::LT : Relation::GT,
                                                   IndexedRoot{pw.pieces[k].line, 1}),
                              false});
    const Polynomial x = Polynomial::variable(pw.domain_var());
    if (pw.pieces[a].from)
        out.push_back(Literal{Constraint::polynomial((x - *pw.pieces[a].from).normalized(), Relation::GE), false});
    if (pw.pieces[b].to)
        out.push_back(Literal{Constraint::polynomial((x - *pw.pieces[b].to).normalized(), Relation::LE), false});
}

}  // namespace

Clause explanation_clause(std::span<const Constraint> core, const CellDescription& cell) {
    Clause out;
    for (const auto& c : core) out.push_back(Literal{c, false});
    for (std::size_t i = 0; i < cell.intervals.size(); ++i) {
        const Var j = static_cast<Var>(i + 1);
        const auto& I = cell.intervals[i];
        if (I.is_section()) {
            out.push_back(Literal{Constraint::extended(j, Relation::EQ, I.section_root()), false});
            continue;
        }
        if (I.lower) {
            if (const auto* xi = std::get_if<IndexedRoot>(&*I.lower))
                out.push_back(Literal{Constraint::extended(j, Relation::GT, *xi), false});
            else
                compound_literals(std::get<PiecewiseBound>(*I.lower), false, cell.sample, out);
        }
        if (I.upper) {
            if (const auto* xi = std::get_if<IndexedRoot>(&*I.upper))
                out.push_back(Literal{Constraint::extended(j, Relation::LT, *xi), false});
            else
                compound_literals(std::get<PiecewiseBound>(*I.upper), true, cell.sample, out);
        }
    }
    Clause dedup;
    for (auto& l : out)
        if (std::find(dedup.begin(), dedup.end(), l) == dedup.end()) dedup.push_back(std::move(l));
    return dedup;
}

}  // namespace apxscc
