#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apxscc/poly.hpp"
#include "apxscc/roots.hpp"

namespace apxscc {

enum class Relation { LT, LE, EQ, NE, GE, GT };

Relation negate(Relation r);
// relation obtained after multiplying both sides by -1
Relation mirror(Relation r);
bool holds(Relation r, int sign);
std::string to_string(Relation r);

// Polynomial constraint p rel 0, extended constraint x_j rel root(q, k), or a Boolean selector.
struct Constraint {
    enum class Kind { Poly, Root, Bool };
    Kind kind = Kind::Bool;
    Relation rel = Relation::EQ;
    Polynomial poly;  // Poly
    Var var = 0;      // Root
    IndexedRoot root; // Root
    unsigned id = 0;  // Bool

    static Constraint polynomial(Polynomial p, Relation r);
    static Constraint extended(Var j, Relation r, IndexedRoot xi);
    static Constraint boolean(unsigned id);

    // highest variable needed to evaluate; 0 for selectors
    Var level() const;
    // the polynomial whose roots decide the constraint on its level
    const Polynomial& defining_poly() const { return kind == Kind::Poly ? poly : root.poly; }
    // nullopt for selectors or when the point does not reach the level.
    // an undefined root expression makes the constraint false
    std::optional<bool> evaluate(std::span<const RealValue> point) const;
    std::string to_string(const VariableOrder* names = nullptr) const;

    friend bool operator==(const Constraint&, const Constraint&) = default;
    friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

struct Literal {
    Constraint atom;
    bool positive = true;

    std::optional<bool> evaluate(std::span<const RealValue> point) const;
    std::string to_string(const VariableOrder* names = nullptr) const;
    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

std::string to_string(const Clause& c, const VariableOrder* names = nullptr);

}  // namespace apxscc
