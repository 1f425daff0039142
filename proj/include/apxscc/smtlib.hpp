#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "apxscc/nlsat.hpp"

namespace apxscc::smtlib {

struct ParseError : std::runtime_error {
    ParseError(unsigned line, unsigned column, const std::string& message);
    unsigned line, column;
};

// a construct outside the supported subset; feature names it (e.g. "let")
struct UnsupportedFeature : ParseError {
    UnsupportedFeature(unsigned line, unsigned column, const std::string& feature);
    std::string feature;
};

struct Script {
    std::string logic;
    VariableOrder vars;
    std::vector<Formula> assertions;
    std::vector<std::string> commands;  // command names in order

    Formula formula() const;
    Problem problem() const { return Problem{vars, formula()}; }
    bool wants_model() const;
};

Script parse(std::string_view text);

std::string print_rational(const Rational& q);
std::string print_polynomial(const Polynomial& p, const VariableOrder& vars);
std::string print_formula(const Formula& f, const VariableOrder& vars);
// set-logic, declarations, one assert per assertion, check-sat
std::string print_script(const Script& s);

// rationals as numerals or (/ n d); algebraic numbers as (root <poly in x> <index> (<lo> <hi>))
std::string print_value(const RealValue& v, const std::string& var);
// verdict line, then the model as define-fun entries when requested and sat
std::string print_result(const SolveResult& r, const VariableOrder& vars, bool with_model);

// values of the define-fun entries in a printed model, in variable order
std::vector<RealValue> parse_model(std::string_view text, const VariableOrder& vars);

}  // namespace apxscc::smtlib
