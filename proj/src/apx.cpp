#include "apxscc/apx.hpp"

#include <algorithm>

namespace apxscc {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Baseline: return "baseline";
        case Variant::Simple: return "simple";
        case Variant::Taylor: return "taylor";
        case Variant::PWL: return "pwl";
        case Variant::Outside: return "outside";
    }
    return "?";
}

namespace {

ApproxConfig::Dynamic default_dynamic() { return {Rational(1, 5), Rational(3)}; }

unsigned parse_suffix(const std::string& name, const std::string& prefix) {
    std::size_t used = 0;
    unsigned long k = std::stoul(name.substr(prefix.size()), &used);
    if (used + prefix.size() != name.size() || k == 0) throw std::invalid_argument("bad variant: " + name);
    return static_cast<unsigned>(k);
}

}  // namespace

ApproxConfig ApproxConfig::preset(const std::string& name) {
    ApproxConfig c;
    if (name == "baseline") return c;
    if (name.rfind("simple-", 0) == 0) {
        c.variant = Variant::Simple;
        c.fixed_degree_threshold = parse_suffix(name, "simple-");
        return c;
    }
    if (name == "dynamic") {
        c.variant = Variant::Simple;
        c.dynamic = default_dynamic();
        return c;
    }
    if (name == "taylor") {
        c.variant = Variant::Taylor;
        c.dynamic = default_dynamic();
        return c;
    }
    if (name.rfind("pwl-", 0) == 0) {
        c.variant = Variant::PWL;
        c.dynamic = default_dynamic();
        c.pwl_pieces = parse_suffix(name, "pwl-");
        return c;
    }
    if (name == "outside") {
        c.variant = Variant::Outside;
        c.dynamic = default_dynamic();
        return c;
    }
    throw std::invalid_argument("unknown variant: " + name);
}

std::string ApproxConfig::name() const {
    switch (variant) {
        case Variant::Baseline: return "baseline";
        case Variant::Simple: return dynamic ? "dynamic" : "simple-" + std::to_string(fixed_degree_threshold);
        case Variant::Taylor: return "taylor";
        case Variant::PWL: return "pwl-" + std::to_string(pwl_pieces);
        case Variant::Outside: return "outside";
    }
    return "?";
}

bool apx_criteria(const Polynomial& bound_poly, Var j, const ApproxConfig& config, const ApxState& state) {
    if (config.variant == Variant::Baseline) return false;
    const bool within_budget = !config.max_apx_cells || state.n_cells < *config.max_apx_cells;
    if (config.force_criteria) return within_budget;
    const unsigned deg = bound_poly.degree(j);
    if (config.dynamic)
        return Rational(deg) >= Rational(config.dynamic->c * Rational(state.n_cells)) + config.dynamic->d;
    return deg >= config.fixed_degree_threshold && within_budget;
}

Rational simple_point(const RealValue& b, const RealValue& s_j, std::span<const RealValue> excludes) {
    int c = compare(b, s_j);
    if (c == 0) throw std::invalid_argument("approximation of a section");
    const RealValue& lo = c < 0 ? b : s_j;
    const RealValue& hi = c < 0 ? s_j : b;
    return rational_between(ExtendedReal(lo), ExtendedReal(hi), excludes);
}

Polynomial apx_simple(const RealValue& b, const RealValue& s_j, std::span<const RealValue> excludes, Var j) {
    return Polynomial::variable(j) - Polynomial(simple_point(b, s_j, excludes));
}

namespace {

struct QInterval {
    Rational lo, hi;
};

QInterval mul(const QInterval& a, const QInterval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

QInterval eval_box(const Polynomial& p, const std::vector<QInterval>& box) {
    QInterval acc{0, 0};
    for (const auto& t : p.terms()) {
        QInterval v{t.coeff, t.coeff};
        for (std::size_t i = 0; i < t.mono.size(); ++i)
            for (unsigned e = 0; e < t.mono[i]; ++e) v = mul(v, box[i]);
        acc.lo += v.lo;
        acc.hi += v.hi;
    }
    return acc;
}

// rational approximation of g(r) with error below precision; nullopt when nonzero is required but
// cannot be certified
std::optional<Rational> approximate_at(const Polynomial& g, std::vector<RealValue> r, const Rational& precision,
                                       bool nonzero) {
    if (std::all_of(r.begin(), r.end(), [](const RealValue& v) { return v.is_rational(); })) {
        std::vector<Rational> q;
        for (const auto& v : r) q.push_back(v.rational());
        Rational val = g.evaluate(q);
        if (nonzero && val == 0) return std::nullopt;
        return val;
    }
    for (int round = 0; round < 200; ++round) {
        std::vector<QInterval> box;
        for (const auto& v : r) box.push_back({v.lower(), v.upper()});
        QInterval I = eval_box(g, box);
        bool excludes_zero = I.lo > 0 || I.hi < 0;
        if (I.hi - I.lo <= precision && (!nonzero || excludes_zero)) return Rational((I.lo + I.hi) / 2);
        for (auto& v : r)
            if (!v.is_rational()) v = refine(v, Rational((v.upper() - v.lower()) / 2));
    }
    return std::nullopt;
}

}  // namespace

Polynomial apx_taylor(const Polynomial& p, Var j, std::span<const RealValue> prefix, const RealValue& b,
                      const Rational& c, const Rational& precision) {
    std::vector<RealValue> r(prefix.begin(), prefix.begin() + (j - 1));
    r.push_back(b);
    auto gj = approximate_at(p.derivative(j), r, precision, true);
    if (!gj) throw ApxFallback("zero gradient in the main variable");
    Polynomial out = *gj * (Polynomial::variable(j) - Polynomial(c));
    for (Var k = 1; k < j; ++k) {
        if (!prefix[k - 1].is_rational() || p.degree(k) == 0) continue;
        auto gk = approximate_at(p.derivative(k), r, precision, false);
        if (!gk) continue;
        out = out + *gk * (Polynomial::variable(k) - Polynomial(prefix[k - 1].rational()));
    }
    return out;
}

PiecewiseBound apx_pwl(const IndexedRoot& xi, std::span<const RealValue> s, unsigned pieces, bool upper,
                       std::span<const RealValue> excludes) {
    const Var j = xi.level();
    if (j < 2) throw ApxFallback("no lower variable");
    if (pieces < 1) throw std::invalid_argument("pwl needs at least one piece");
    if (!s[j - 2].is_rational()) throw ApxFallback("irrational sample coordinate");
    const Rational t = s[j - 2].rational();
    const RealValue& s_j = s[j - 1];
    auto prefix2 = s.first(j - 2);

    // region around t over which xi.poly stays delineable
    std::optional<RealValue> L, R;
    for (const auto& q : delineability_polys(xi.poly, s.first(j - 1))) {
        if (q.level() != j - 1) continue;
        RootIsolation iso = real_roots(q, prefix2);
        if (iso.nullified) continue;
        for (const auto& v : iso.roots) {
            int c = compare(v, t);
            if (c == 0) throw ApxFallback("delineable region is a point");
            if (c < 0 && (!L || compare(v, *L) > 0)) L = v;
            if (c > 0 && (!R || compare(v, *R) < 0)) R = v;
        }
    }
    const unsigned left = pieces / 2, right = pieces - left;
    const Rational lend = L ? rational_between(ExtendedReal(*L), ExtendedReal(t)) : Rational(t - 1);
    const Rational rend = R ? rational_between(ExtendedReal(t), ExtendedReal(*R)) : Rational(t + 1);
    std::vector<Rational> d;
    for (unsigned i = left; i >= 1; --i) d.push_back(t + (lend - t) * ratio(i, left));
    const std::size_t sample_index = d.size();
    d.push_back(t);
    for (unsigned i = 1; i <= right; ++i) d.push_back(t + (rend - t) * ratio(i, right));

    std::vector<Rational> dv;
    for (std::size_t l = 0; l < d.size(); ++l) {
        if (l == sample_index) {
            auto b = eval_irexp(xi, s.first(j - 1));
            if (!b) throw ApxFallback("bound undefined at the sample");
            dv.push_back(simple_point(*b, s_j, excludes));
            continue;
        }
        std::vector<RealValue> at(prefix2.begin(), prefix2.end());
        at.emplace_back(d[l]);
        auto b = eval_irexp(xi, at);
        if (!b) throw ApxFallback("bound undefined at a support point");
        int side = compare(*b, s_j);
        if (upper ? side > 0 : side < 0) {
            Rational m = rational_between(ExtendedReal(upper ? s_j : *b), ExtendedReal(upper ? *b : s_j));
            dv.push_back(upper ? rational_between(ExtendedReal(m), ExtendedReal(*b))
                               : rational_between(ExtendedReal(*b), ExtendedReal(m)));
        } else {
            dv.push_back(upper ? rational_between(ExtendedReal(Rational(b->lower() - 1)), ExtendedReal(*b))
                               : rational_between(ExtendedReal(*b), ExtendedReal(Rational(b->upper() + 1))));
        }
    }

    PiecewiseBound pw;
    pw.level = j;
    const Polynomial xj = Polynomial::variable(j), xl = Polynomial::variable(j - 1);
    for (std::size_t l = 0; l + 1 < d.size(); ++l) {
        Polynomial line = (d[l + 1] - d[l]) * (xj - Polynomial(dv[l])) - (dv[l + 1] - dv[l]) * (xl - Polynomial(d[l]));
        PiecewiseBound::Piece pc{line.normalized(), std::nullopt, std::nullopt};
        if (l > 0) pc.from = d[l];
        if (l + 2 < d.size()) pc.to = d[l + 1];
        pw.pieces.push_back(std::move(pc));
    }
    return pw;
}

Polynomial apx_outside(const RealValue& bound, const RealValue& neighbor, Var j) {
    int c = compare(bound, neighbor);
    if (c == 0) throw std::invalid_argument("outside approximation between equal values");
    std::vector<RealValue> ex{bound, neighbor};
    const RealValue& lo = c < 0 ? bound : neighbor;
    const RealValue& hi = c < 0 ? neighbor : bound;
    return Polynomial::variable(j) - Polynomial(rational_between(ExtendedReal(lo), ExtendedReal(hi), ex));
}

void ApxHook::begin_cell() { state_.fired_in_cell = false; }

void ApxHook::record(Var j, const std::string& replaced, const std::string& aux, unsigned degree) {
    state_.fired_in_cell = true;
    state_.max_fired_degree = std::max(state_.max_fired_degree, degree);
    if (state_.keep_log) state_.log.push_back(AuxRecord{j, config_.variant, replaced, aux});
}

void ApxHook::end_cell(bool) {
    if (!state_.fired_in_cell) return;
    ++state_.n_cells;
    state_.fired_in_cell = false;
    if (config_.dynamic && !config_.force_criteria && config_.dynamic->c > 0) {
        Rational q = (Rational(state_.max_fired_degree) - config_.dynamic->d) / config_.dynamic->c;
        mpz_class ceil_q;
        mpz_cdiv_q(ceil_q.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
        if (ceil_q < 0) ceil_q = 0;
        if (state_.n_cells > ceil_q + 1) throw std::logic_error("dynamic termination bound exceeded");
    }
}

std::optional<Polynomial> ApxHook::approximate(const LevelContext& ctx, std::size_t bound, bool upper,
                                               LevelApproximation& out) {
    const Var j = ctx.level;
    const RootEntry& e = ctx.roots[bound];
    const Polynomial& p = e.root.poly;
    const RealValue& s_j = ctx.sample[j - 1];
    std::vector<RealValue> excludes;
    for (const auto& r : ctx.roots) excludes.push_back(r.value);

    if (config_.variant == Variant::Outside) {
        std::optional<std::size_t> nb;
        for (std::size_t k = bound; upper ? k + 1 < ctx.roots.size() : k > 0;) {
            k = upper ? k + 1 : k - 1;
            if (ctx.roots[k].root.poly != p && compare(ctx.roots[k].value, e.value) != 0) {
                nb = k;
                break;
            }
        }
        if (!nb) return std::nullopt;
        const Polynomial& q = ctx.roots[*nb].root.poly;
        if (p.degree(j) < 2 || q.degree(j) < 2) return std::nullopt;
        bool fp = apx_criteria(p, j, config_, state_), fq = apx_criteria(q, j, config_, state_);
        if (!fp && !fq) return std::nullopt;
        Polynomial aux = apx_outside(e.value, ctx.roots[*nb].value, j);
        record(j, e.root.to_string(), aux.to_string(), std::max(fp ? p.degree(j) : 0u, fq ? q.degree(j) : 0u));
        out.aux.push_back(aux);
        return aux;
    }

    if (!apx_criteria(p, j, config_, state_)) return std::nullopt;
    auto simple = [&] { return apx_simple(e.value, s_j, excludes, j); };
    Polynomial aux;
    switch (config_.variant) {
        case Variant::Taylor:
            try {
                aux = apx_taylor(p, j, ctx.sample.first(j - 1), e.value, simple_point(e.value, s_j, excludes),
                                 config_.taylor_precision);
            } catch (const ApxFallback&) {
                ++state_.fallbacks_to_simple;
                aux = simple();
            }
            break;
        case Variant::PWL:
            try {
                PiecewiseBound pw = apx_pwl(e.root, ctx.sample.first(j), config_.pwl_pieces, upper, excludes);
                record(j, e.root.to_string(), pw.to_string(), p.degree(j));
                (upper ? out.upper_compound : out.lower_compound) = std::move(pw);
                return std::nullopt;
            } catch (const ApxFallback&) {
                ++state_.fallbacks_to_simple;
                aux = simple();
            }
            break;
        default:
            aux = simple();
    }
    record(j, e.root.to_string(), aux.to_string(), p.degree(j));
    out.aux.push_back(aux);
    return aux;
}

LevelApproximation ApxHook::at_level(const LevelContext& ctx) {
    LevelApproximation out;
    if (config_.variant == Variant::Baseline) return out;
    if (ctx.pick.upper) approximate(ctx, *ctx.pick.upper, true, out);
    if (ctx.pick.lower) approximate(ctx, *ctx.pick.lower, false, out);
    return out;
}

SccResult apx_scc(std::span<const Polynomial> P, std::span<const RealValue> s, const ApproxConfig& config,
                  ApxState& state) {
    ApxHook hook(config, state);
    return construct_cell(P, s, &hook);
}

}  // namespace apxscc
