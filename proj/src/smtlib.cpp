#include "apxscc/smtlib.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace apxscc::smtlib {

ParseError::ParseError(unsigned l, unsigned c, const std::string& message)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + message), line(l), column(c) {}

UnsupportedFeature::UnsupportedFeature(unsigned l, unsigned c, const std::string& f)
    : ParseError(l, c, "unsupported feature: " + f), feature(f) {}

namespace {

// ---------------------------------------------------------------- s-expressions

struct SExpr {
    enum class Kind { List, Symbol, Numeral, Decimal, String, Keyword };
    Kind kind = Kind::List;
    std::string text;
    std::vector<SExpr> items;
    unsigned line = 0, column = 0;

    bool is_list() const { return kind == Kind::List; }
    bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
    // head symbol of a non-empty list, or ""
    std::string head() const {
        if (!is_list() || items.empty() || items[0].kind != Kind::Symbol) return "";
        return items[0].text;
    }
};

[[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw ParseError(e.line, e.column, msg); }
[[noreturn]] void unsupported(const SExpr& e, const std::string& feature) {
    throw UnsupportedFeature(e.line, e.column, feature);
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : s_(text) {}

    std::vector<SExpr> read_all() {
        std::vector<SExpr> out;
        for (;;) {
            skip();
            if (pos_ >= s_.size()) return out;
            out.push_back(read());
        }
    }

private:
    char peek() const { return s_[pos_]; }

    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < s_.size()) {
            char c = peek();
            if (c == ';') {
                while (pos_ < s_.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    SExpr read() {
        SExpr e;
        e.line = line_;
        e.column = col_;
        char c = peek();
        if (c == ')') throw ParseError(line_, col_, "unexpected ')'");
        if (c == '(') {
            advance();
            for (;;) {
                skip();
                if (pos_ >= s_.size()) throw ParseError(e.line, e.column, "unterminated '('");
                if (peek() == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (c == '|') {
            advance();
            e.kind = SExpr::Kind::Symbol;
            while (pos_ < s_.size() && peek() != '|') {
                e.text.push_back(peek());
                advance();
            }
            if (pos_ >= s_.size()) throw ParseError(e.line, e.column, "unterminated quoted symbol");
            advance();
            return e;
        }
        if (c == '"') {
            advance();
            e.kind = SExpr::Kind::String;
            for (;;) {
                if (pos_ >= s_.size()) throw ParseError(e.line, e.column, "unterminated string");
                char d = peek();
                advance();
                if (d == '"') {
                    if (pos_ < s_.size() && peek() == '"') {
                        e.text.push_back('"');
                        advance();
                        continue;
                    }
                    return e;
                }
                e.text.push_back(d);
            }
        }
        while (pos_ < s_.size()) {
            char d = peek();
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"' || d == '|')
                break;
            e.text.push_back(d);
            advance();
        }
        const std::string& t = e.text;
        auto digits = [](std::string_view v) {
            return !v.empty() && std::all_of(v.begin(), v.end(), [](char x) { return x >= '0' && x <= '9'; });
        };
        auto dot = t.find('.');
        if (digits(t))
            e.kind = SExpr::Kind::Numeral;
        else if (dot != std::string::npos && digits(std::string_view(t).substr(0, dot)) &&
                 digits(std::string_view(t).substr(dot + 1)))
            e.kind = SExpr::Kind::Decimal;
        else if (t[0] == ':')
            e.kind = SExpr::Kind::Keyword;
        else if (t[0] >= '0' && t[0] <= '9')
            throw ParseError(e.line, e.column, "malformed number '" + t + "'");
        else
            e.kind = SExpr::Kind::Symbol;
        return e;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    unsigned line_ = 1, col_ = 1;
};

// ---------------------------------------------------------------- terms

const std::vector<std::string> kUnsupported = {"let",     "ite",    "forall", "exists",   "!",        "xor",
                                               "to_real", "to_int", "is_int", "div",      "mod",      "abs",
                                               "match",   "select", "store",  "define-fun"};

bool is_relation(const std::string& h) {
    return h == "<" || h == "<=" || h == "=" || h == ">=" || h == ">" || h == "distinct";
}

Relation relation_of(const std::string& h) {
    if (h == "<") return Relation::LT;
    if (h == "<=") return Relation::LE;
    if (h == "=") return Relation::EQ;
    if (h == ">=") return Relation::GE;
    if (h == ">") return Relation::GT;
    return Relation::NE;
}

bool looks_bool(const SExpr& e) {
    if (e.kind == SExpr::Kind::Symbol) return e.text == "true" || e.text == "false";
    std::string h = e.head();
    return h == "and" || h == "or" || h == "not" || h == "=>" || is_relation(h);
}

class TermParser {
public:
    explicit TermParser(const VariableOrder& vars) : vars_(vars) {}

    Polynomial real(const SExpr& e) const {
        switch (e.kind) {
            case SExpr::Kind::Numeral:
            case SExpr::Kind::Decimal: return Polynomial(parse_rational(e.text));
            case SExpr::Kind::Symbol: {
                if (e.text == "true" || e.text == "false") fail(e, "expected a Real term, found '" + e.text + "'");
                Var v = vars_.index_of(e.text);
                if (v == 0) fail(e, "unknown symbol '" + e.text + "'");
                return Polynomial::variable(v);
            }
            case SExpr::Kind::List: break;
            default: fail(e, "expected a Real term");
        }
        if (e.items.empty()) fail(e, "empty application");
        const std::string h = e.head();
        if (h.empty()) fail(e, "expected a function symbol");
        check_supported(e.items[0]);
        const std::size_t n = e.items.size() - 1;
        auto arg = [&](std::size_t i) { return real(e.items[i]); };
        if (h == "+" || h == "*") {
            if (n == 0) fail(e, "'" + h + "' needs arguments");
            Polynomial acc = arg(1);
            for (std::size_t i = 2; i <= n; ++i) acc = h == "+" ? acc + arg(i) : acc * arg(i);
            return acc;
        }
        if (h == "-") {
            if (n == 0) fail(e, "'-' needs arguments");
            if (n == 1) return -arg(1);
            Polynomial acc = arg(1);
            for (std::size_t i = 2; i <= n; ++i) acc = acc - arg(i);
            return acc;
        }
        if (h == "/") {
            if (n < 2) fail(e, "'/' needs two arguments");
            Polynomial acc = arg(1);
            for (std::size_t i = 2; i <= n; ++i) {
                Polynomial d = arg(i);
                if (!d.is_constant()) unsupported(e.items[i], "non-literal division");
                if (d.is_zero()) fail(e.items[i], "division by zero");
                acc = Rational(1 / d.constant_value()) * acc;
            }
            return acc;
        }
        if (looks_bool(e)) fail(e, "expected a Real term, found '" + h + "'");
        fail(e.items[0], "unknown function '" + h + "'");
    }

    Formula boolean(const SExpr& e) const {
        if (e.kind == SExpr::Kind::Symbol) {
            if (e.text == "true") return Formula::constant(true);
            if (e.text == "false") return Formula::constant(false);
            if (vars_.index_of(e.text)) fail(e, "expected a Bool term, found Real variable '" + e.text + "'");
            fail(e, "unknown symbol '" + e.text + "'");
        }
        if (!e.is_list()) fail(e, "expected a Bool term");
        if (e.items.empty()) fail(e, "empty application");
        const std::string h = e.head();
        if (h.empty()) fail(e, "expected a function symbol");
        check_supported(e.items[0]);
        const std::size_t n = e.items.size() - 1;
        if (h == "not") {
            if (n != 1) fail(e, "'not' takes one argument");
            return Formula::negation(boolean(e.items[1]));
        }
        if (h == "and" || h == "or") {
            if (n == 0) fail(e, "'" + h + "' needs arguments");
            std::vector<Formula> args;
            for (std::size_t i = 1; i <= n; ++i) args.push_back(boolean(e.items[i]));
            return h == "and" ? Formula::conjunction(std::move(args)) : Formula::disjunction(std::move(args));
        }
        if (h == "=>") {
            if (n < 2) fail(e, "'=>' needs two arguments");
            Formula acc = boolean(e.items[n]);
            for (std::size_t i = n - 1; i >= 1; --i)
                acc = Formula::disjunction({Formula::negation(boolean(e.items[i])), std::move(acc)});
            return acc;
        }
        if (is_relation(h)) {
            if (n < 2) fail(e, "'" + h + "' needs two arguments");
            if (h == "=" && looks_bool(e.items[1])) unsupported(e.items[0], "Boolean equality");
            std::vector<Polynomial> args;
            for (std::size_t i = 1; i <= n; ++i) args.push_back(real(e.items[i]));
            const Relation r = relation_of(h);
            std::vector<Formula> atoms;
            if (h == "distinct") {
                for (std::size_t a = 0; a < args.size(); ++a)
                    for (std::size_t b = a + 1; b < args.size(); ++b)
                        atoms.push_back(Formula::make_atom(Constraint::polynomial(args[a] - args[b], r)));
            } else {
                for (std::size_t a = 0; a + 1 < args.size(); ++a)
                    atoms.push_back(Formula::make_atom(Constraint::polynomial(args[a] - args[a + 1], r)));
            }
            if (atoms.size() == 1) return atoms[0];
            return Formula::conjunction(std::move(atoms));
        }
        if (h == "+" || h == "-" || h == "*" || h == "/") fail(e, "expected a Bool term, found '" + h + "'");
        fail(e.items[0], "unknown function '" + h + "'");
    }

private:
    static void check_supported(const SExpr& head) {
        if (std::find(kUnsupported.begin(), kUnsupported.end(), head.text) != kUnsupported.end())
            unsupported(head, head.text);
    }

    const VariableOrder& vars_;
};

void expect_size(const SExpr& e, std::size_t n, const std::string& cmd) {
    if (e.items.size() != n) fail(e, "malformed " + cmd);
}

void check_sort(const SExpr& sort) {
    if (sort.is_symbol("Real")) return;
    if (sort.is_symbol("Int")) unsupported(sort, "Int sort");
    if (sort.kind == SExpr::Kind::Symbol) unsupported(sort, sort.text + " sort");
    fail(sort, "expected a sort");
}

}  // namespace

Formula Script::formula() const {
    if (assertions.size() == 1) return assertions[0];
    return Formula::conjunction(assertions);
}

bool Script::wants_model() const {
    return std::find(commands.begin(), commands.end(), "get-model") != commands.end();
}

Script parse(std::string_view text) {
    Script out;
    for (const SExpr& cmd : Lexer(text).read_all()) {
        if (!cmd.is_list() || cmd.items.empty() || cmd.items[0].kind != SExpr::Kind::Symbol)
            fail(cmd, "expected a command");
        const std::string name = cmd.items[0].text;
        if (name == "set-logic") {
            expect_size(cmd, 2, name);
            out.logic = cmd.items[1].text;
            if (out.logic != "QF_NRA") unsupported(cmd.items[1], "logic " + out.logic);
        } else if (name == "set-info" || name == "set-option") {
        } else if (name == "declare-fun" || name == "declare-const") {
            const SExpr& sym = cmd.items.size() > 1 ? cmd.items[1] : cmd;
            if (name == "declare-fun") {
                expect_size(cmd, 4, name);
                if (!cmd.items[2].is_list()) fail(cmd.items[2], "expected an argument sort list");
                if (!cmd.items[2].items.empty()) unsupported(cmd.items[2], "function arguments");
                check_sort(cmd.items[3]);
            } else {
                expect_size(cmd, 3, name);
                check_sort(cmd.items[2]);
            }
            if (sym.kind != SExpr::Kind::Symbol) fail(sym, "expected a symbol");
            if (out.vars.index_of(sym.text)) fail(sym, "'" + sym.text + "' already declared");
            out.vars.add(sym.text);
        } else if (name == "assert") {
            expect_size(cmd, 2, name);
            out.assertions.push_back(TermParser(out.vars).boolean(cmd.items[1]));
        } else if (name == "check-sat" || name == "get-model" || name == "exit") {
        } else {
            unsupported(cmd.items[0], name);
        }
        out.commands.push_back(name);
    }
    return out;
}

// ---------------------------------------------------------------- printing

namespace {

std::string symbol(const std::string& name) {
    static const std::string extra = "~!@$%^&*_-+=<>.?/";
    bool simple = !name.empty() && !(name[0] >= '0' && name[0] <= '9') &&
                  std::all_of(name.begin(), name.end(), [](char c) {
                      return std::isalnum(static_cast<unsigned char>(c)) || extra.find(c) != std::string::npos;
                  });
    return simple ? name : "|" + name + "|";
}

std::string relation_symbol(Relation r) {
    switch (r) {
        case Relation::LT: return "<";
        case Relation::LE: return "<=";
        case Relation::EQ: return "=";
        case Relation::GE: return ">=";
        case Relation::GT: return ">";
        default: return "distinct";
    }
}

}  // namespace

std::string print_rational(const Rational& q) {
    Rational a = abs(q);
    std::string body = a.get_den() == 1 ? a.get_num().get_str() : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
    return sgn(q) < 0 ? "(- " + body + ")" : body;
}

std::string print_polynomial(const Polynomial& p, const VariableOrder& vars) {
    if (p.is_zero()) return "0";
    std::vector<std::string> terms;
    const auto& ts = p.terms();
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        std::vector<std::string> factors;
        for (std::size_t i = 0; i < it->mono.size(); ++i)
            for (unsigned k = 0; k < it->mono[i]; ++k) factors.push_back(symbol(vars.name(static_cast<Var>(i + 1))));
        if (factors.empty()) {
            terms.push_back(print_rational(it->coeff));
            continue;
        }
        Rational c = it->coeff;
        bool neg = false;
        if (c == -1) {
            neg = true;
            c = 1;
        }
        if (c != 1) factors.insert(factors.begin(), print_rational(c));
        std::string t = factors[0];
        if (factors.size() > 1) {
            t = "(*";
            for (const auto& f : factors) t += " " + f;
            t += ")";
        }
        terms.push_back(neg ? "(- " + t + ")" : t);
    }
    if (terms.size() == 1) return terms[0];
    std::string out = "(+";
    for (const auto& t : terms) out += " " + t;
    return out + ")";
}

std::string print_formula(const Formula& f, const VariableOrder& vars) {
    using K = Formula::Kind;
    switch (f.kind) {
        case K::True: return "true";
        case K::False: return "false";
        case K::Atom:
            if (f.atom.kind != Constraint::Kind::Poly) throw std::invalid_argument("print_formula: non-polynomial atom");
            return "(" + relation_symbol(f.atom.rel) + " " + print_polynomial(f.atom.poly, vars) + " 0)";
        case K::Not: return "(not " + print_formula(f.args[0], vars) + ")";
        case K::And:
        case K::Or: {
            std::string out = f.kind == K::And ? "(and" : "(or";
            for (const auto& a : f.args) out += " " + print_formula(a, vars);
            return out + ")";
        }
    }
    return "";
}

std::string print_script(const Script& s) {
    std::ostringstream os;
    os << "(set-logic " << (s.logic.empty() ? "QF_NRA" : s.logic) << ")\n";
    for (const auto& n : s.vars.names()) os << "(declare-fun " << symbol(n) << " () Real)\n";
    for (const auto& a : s.assertions) os << "(assert " << print_formula(a, s.vars) << ")\n";
    os << "(check-sat)\n";
    return os.str();
}

std::string print_value(const RealValue& v, const std::string& var) {
    if (v.is_rational()) return print_rational(v.rational());
    const RealAlgebraic& a = v.algebraic();
    auto roots = real_roots(a.defining());
    auto it = std::find(roots.begin(), roots.end(), v);
    VariableOrder one({var});
    return "(root " + print_polynomial(Polynomial::from_upoly(a.defining(), 1), one) + " " +
           std::to_string(it - roots.begin() + 1) + " (" + print_rational(a.lo()) + " " + print_rational(a.hi()) + "))";
}

std::string print_result(const SolveResult& r, const VariableOrder& vars, bool with_model) {
    std::string out = to_string(r.status) + "\n";
    if (r.status != Status::Sat || !with_model) return out;
    out += "(\n";
    for (Var j = 1; j <= vars.size(); ++j) {
        const std::string& n = vars.name(j);
        out += "  (define-fun " + symbol(n) + " () Real " + print_value(r.model[j - 1], n) + ")\n";
    }
    return out + ")\n";
}

namespace {

RealValue model_value(const SExpr& e, const std::string& var) {
    if (e.head() != "root") {
        Polynomial p = TermParser(VariableOrder{}).real(e);
        return RealValue(p.constant_value());
    }
    if (e.items.size() != 4 || e.items[2].kind != SExpr::Kind::Numeral || !e.items[3].is_list() ||
        e.items[3].items.size() != 2)
        fail(e, "malformed root value");
    VariableOrder one({var});
    TermParser tp(one);
    Polynomial p = tp.real(e.items[1]);
    if (p.level() != 1) fail(e.items[1], "root polynomial must be univariate in " + var);
    auto roots = real_roots(p.to_upoly(1));
    const unsigned long k = std::stoul(e.items[2].text);
    if (k == 0 || k > roots.size()) fail(e.items[2], "root index out of range");
    Rational lo = TermParser(VariableOrder{}).real(e.items[3].items[0]).constant_value();
    Rational hi = TermParser(VariableOrder{}).real(e.items[3].items[1]).constant_value();
    const RealValue& v = roots[k - 1];
    if (compare(lo, v) > 0 || compare(hi, v) < 0) fail(e.items[3], "root outside its interval");
    return v;
}

void collect_definitions(const SExpr& e, std::vector<const SExpr*>& out) {
    if (!e.is_list()) return;
    if (e.head() == "define-fun") {
        out.push_back(&e);
        return;
    }
    for (const auto& i : e.items) collect_definitions(i, out);
}

}  // namespace

std::vector<RealValue> parse_model(std::string_view text, const VariableOrder& vars) {
    std::vector<std::optional<RealValue>> values(vars.size());
    std::vector<const SExpr*> defs;
    auto all = Lexer(text).read_all();
    for (const auto& e : all) collect_definitions(e, defs);
    for (const SExpr* d : defs) {
        if (d->items.size() != 5) fail(*d, "malformed define-fun");
        const SExpr& name = d->items[1];
        Var j = vars.index_of(name.text);
        if (j == 0) fail(name, "unknown symbol '" + name.text + "'");
        check_sort(d->items[3]);
        values[j - 1] = model_value(d->items[4], name.text);
    }
    std::vector<RealValue> out;
    for (Var j = 1; j <= vars.size(); ++j) {
        if (!values[j - 1]) throw ParseError(1, 1, "model misses '" + vars.name(j) + "'");
        out.push_back(*values[j - 1]);
    }
    return out;
}

}  // namespace apxscc::smtlib
