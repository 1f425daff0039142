#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxscc/scc.hpp"

namespace apxscc {

enum class Variant { Baseline, Simple, Taylor, PWL, Outside };

std::string to_string(Variant v);

struct ApproxConfig {
    struct Dynamic {
        Rational c, d;
    };
    Variant variant = Variant::Baseline;
    unsigned fixed_degree_threshold = 3;
    std::optional<unsigned long> max_apx_cells = 50;  // nullopt: unlimited
    std::optional<Dynamic> dynamic;                   // replaces the fixed threshold and budget
    unsigned pwl_pieces = 2;
    Rational taylor_precision = Rational(1, 1 << 20);
    bool force_criteria = false;  // criteria fire on every sector bound while the budget lasts

    // named presets: baseline, simple-<k>, dynamic, taylor, pwl-<k>, outside
    static ApproxConfig preset(const std::string& name);
    std::string name() const;
};

struct AuxRecord {
    Var level;
    Variant variant;
    std::string replaced;  // bound the auxiliary polynomial stands in for
    std::string aux;
};

struct ApxState {
    unsigned long n_cells = 0;
    bool fired_in_cell = false;
    unsigned max_fired_degree = 0;
    unsigned long fallbacks_to_simple = 0;
    std::vector<AuxRecord> log;
    bool keep_log = false;
};

bool apx_criteria(const Polynomial& bound_poly, Var j, const ApproxConfig& config, const ApxState& state);

// x_j - c with c strictly between s_j and b, c distinct from every excluded value
Polynomial apx_simple(const RealValue& b, const RealValue& s_j, std::span<const RealValue> excludes, Var j);
Rational simple_point(const RealValue& b, const RealValue& s_j, std::span<const RealValue> excludes);

struct ApxFallback : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gradient of p at r = (s_[j-1], b) shifted to vanish at (s_[j-1], c); throws ApxFallback on a zero x_j-gradient
Polynomial apx_taylor(const Polynomial& p, Var j, std::span<const RealValue> prefix, const RealValue& b,
                      const Rational& c, const Rational& precision);

// piecewise linear under-approximation of the bound xi over x_{j-1}; upper selects the side of the sample
// the bound lies on. throws ApxFallback when s_{j-1} is irrational or the delineable region is a point
PiecewiseBound apx_pwl(const IndexedRoot& xi, std::span<const RealValue> s, unsigned pieces, bool upper,
                       std::span<const RealValue> excludes);

// x_j - c with c strictly between the bound value and the neighbor value; throws std::invalid_argument when equal
Polynomial apx_outside(const RealValue& bound, const RealValue& neighbor, Var j);

class ApxHook : public LevelHook {
public:
    ApxHook(const ApproxConfig& config, ApxState& state) : config_(config), state_(state) {}
    void begin_cell() override;
    LevelApproximation at_level(const LevelContext& ctx) override;
    void end_cell(bool success) override;

private:
    std::optional<Polynomial> approximate(const LevelContext& ctx, std::size_t bound, bool upper,
                                          LevelApproximation& out);
    void record(Var j, const std::string& replaced, const std::string& aux, unsigned degree);

    const ApproxConfig& config_;
    ApxState& state_;
};

SccResult apx_scc(std::span<const Polynomial> P, std::span<const RealValue> s, const ApproxConfig& config,
                  ApxState& state);

}  // namespace apxscc
