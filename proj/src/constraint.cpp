#include "apxscc/constraint.hpp"

#include <stdexcept>

namespace apxscc {

Relation negate(Relation r) {
    switch (r) {
        case Relation::LT: return Relation::GE;
        case Relation::LE: return Relation::GT;
        case Relation::EQ: return Relation::NE;
        case Relation::NE: return Relation::EQ;
        case Relation::GE: return Relation::LT;
        case Relation::GT: return Relation::LE;
    }
    throw std::logic_error("bad relation");
}

Relation mirror(Relation r) {
    switch (r) {
        case Relation::LT: return Relation::GT;
        case Relation::LE: return Relation::GE;
        case Relation::GE: return Relation::LE;
        case Relation::GT: return Relation::LT;
        default: return r;
    }
}

bool holds(Relation r, int sign) {
    switch (r) {
        case Relation::LT: return sign < 0;
        case Relation::LE: return sign <= 0;
        case Relation::EQ: return sign == 0;
        case Relation::NE: return sign != 0;
        case Relation::GE: return sign >= 0;
        case Relation::GT: return sign > 0;
    }
    return false;
}

std::string to_string(Relation r) {
    switch (r) {
        case Relation::LT: return "<";
        case Relation::LE: return "<=";
        case Relation::EQ: return "=";
        case Relation::NE: return "!=";
        case Relation::GE: return ">=";
        case Relation::GT: return ">";
    }
    return "?";
}

Constraint Constraint::polynomial(Polynomial p, Relation r) {
    Constraint c;
    c.kind = Kind::Poly;
    c.poly = std::move(p);
    c.rel = r;
    return c;
}

Constraint Constraint::extended(Var j, Relation r, IndexedRoot xi) {
    if (xi.level() != j) throw std::invalid_argument("extended constraint: root level mismatch");
    Constraint c;
    c.kind = Kind::Root;
    c.var = j;
    c.rel = r;
    c.root = std::move(xi);
    return c;
}

Constraint Constraint::boolean(unsigned id) {
    Constraint c;
    c.kind = Kind::Bool;
    c.id = id;
    return c;
}

Var Constraint::level() const {
    switch (kind) {
        case Kind::Poly: return poly.level();
        case Kind::Root: return var;
        default: return 0;
    }
}

std::optional<bool> Constraint::evaluate(std::span<const RealValue> point) const {
    if (kind == Kind::Bool || level() > point.size()) return std::nullopt;
    if (kind == Kind::Poly) return holds(rel, sign_at_point(poly, point));
    auto v = eval_irexp(root, point.first(var - 1));
    if (!v) return false;
    return holds(rel, compare(point[var - 1], *v));
}

std::string Constraint::to_string(const VariableOrder* names) const {
    switch (kind) {
        case Kind::Poly: return poly.to_string(names) + " " + apxscc::to_string(rel) + " 0";
        case Kind::Root: {
            std::string v = names && var <= names->size() ? names->name(var) : "x" + std::to_string(var);
            return v + " " + apxscc::to_string(rel) + " " + root.to_string(names);
        }
        default: return "b" + std::to_string(id);
    }
}

std::optional<bool> Literal::evaluate(std::span<const RealValue> point) const {
    auto v = atom.evaluate(point);
    if (!v) return std::nullopt;
    return *v == positive;
}

std::string Literal::to_string(const VariableOrder* names) const {
    return positive ? atom.to_string(names) : "!(" + atom.to_string(names) + ")";
}

std::string to_string(const Clause& c, const VariableOrder* names) {
    std::string out = "[";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) out += " | ";
        out += c[i].to_string(names);
    }
    return out + "]";
}

}  // namespace apxscc
