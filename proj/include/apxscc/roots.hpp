#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "apxscc/numeric.hpp"
#include "apxscc/poly.hpp"

namespace apxscc {

// raised when a sample has more algebraic coordinates than the evaluator supports
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the index-th (1-based) real root of poly in its main variable
struct IndexedRoot {
    Polynomial poly;
    unsigned index = 1;

    Var level() const { return poly.level(); }
    std::string to_string(const VariableOrder* names = nullptr) const;
    friend bool operator==(const IndexedRoot&, const IndexedRoot&) = default;
    friend auto operator<=>(const IndexedRoot&, const IndexedRoot&) = default;
};

struct RootIsolation {
    bool nullified = false;
    std::vector<RealValue> roots;  // strictly increasing
};

struct RootEntry {
    IndexedRoot root;
    RealValue value;
};

// real roots of p(s, x_j), j = |s| + 1
RootIsolation real_roots(const Polynomial& p, std::span<const RealValue> s);

// all roots of all polynomials of P over s, sorted by value; ties by degree in x_j, then text
std::vector<RootEntry> ir_exps(std::span<const Polynomial> P, std::span<const RealValue> s);

std::optional<RealValue> eval_irexp(const IndexedRoot& xi, std::span<const RealValue> r);

// exact sign of p at a point covering its level
int sign_at_point(const Polynomial& p, std::span<const RealValue> point);

}  // namespace apxscc
