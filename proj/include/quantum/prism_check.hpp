#pragma once

// Parser, type/symbol checker and explicit-state explorer for the subset of
// the PRISM language this library emits: `ctmc`, constants, formulas,
// modules with bounded integer variables and guarded commands, labels, and
// time-bounded until properties.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "quantum/error.hpp"

namespace quantum::prism {

struct Token {
    enum class Kind { Ident, Int, Real, String, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
};

inline std::vector<Token> tokenize(std::string_view src) {
    static const std::vector<std::string> symbols = {"=?", "U<=", "->", "..", "<=", ">=", "!=", "'=", "=", "<", ">", "(", ")",
                                                     "[",  "]",   ";",  ":",  "&",  "|",  "!",  "+",  "-", "*", "/", ","};
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (src.substr(i, 2) == "//") {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        Token t;
        t.line = line;
        if (src.substr(i, 3) == "U<=") {
            t.kind = Token::Kind::Symbol;
            t.text = "U<=";
            i += 3;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t s = i;
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            t.kind = Token::Kind::Ident;
            t.text = std::string(src.substr(s, i - s));
        } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t s = i;
            bool real = false;
            while (i < src.size()) {
                char d = src[i];
                if (std::isdigit(static_cast<unsigned char>(d))) ++i;
                else if (d == '.' && !(i + 1 < src.size() && src[i + 1] == '.')) real = true, ++i;
                else if ((d == 'e' || d == 'E')) {
                    real = true;
                    ++i;
                    if (i < src.size() && (src[i] == '+' || src[i] == '-')) ++i;
                } else break;
            }
            t.kind = real ? Token::Kind::Real : Token::Kind::Int;
            t.text = std::string(src.substr(s, i - s));
        } else if (c == '"') {
            std::size_t s = ++i;
            while (i < src.size() && src[i] != '"' && src[i] != '\n') ++i;
            if (i >= src.size() || src[i] != '"') throw Error(ErrorKind::PrismSyntax, "unterminated string", line);
            t.kind = Token::Kind::String;
            t.text = std::string(src.substr(s, i - s));
            ++i;
        } else {
            bool found = false;
            for (const auto& sym : symbols)
                if (src.substr(i, sym.size()) == sym) {
                    t.kind = Token::Kind::Symbol;
                    t.text = sym;
                    i += sym.size();
                    found = true;
                    break;
                }
            if (!found) throw Error(ErrorKind::PrismSyntax, std::string("unexpected character '") + c + "'", line);
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Expressions.

enum class Type { Bool, Int, Double };

struct Expr {
    enum class Op { Num, Bool, Ident, Label, Not, Neg, Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
    Op op = Op::Num;
    double value = 0;
    std::string name;
    std::vector<Expr> args;
    int line = 1;
};

struct VarDecl {
    std::string name;
    int lo = 0, hi = 0, init = 0;
};

struct Update {
    std::string var;
    Expr value;
};

struct Command {
    std::string action;
    Expr guard;
    Expr rate;
    std::vector<Update> updates;
    int line = 1;
};

struct Module {
    std::string name;
    std::vector<VarDecl> vars;
    std::vector<Command> commands;
};

struct Constant {
    std::string name;
    Type type = Type::Double;
    std::optional<Expr> value;
};

struct Program {
    std::string model_type;
    std::vector<Constant> constants;
    std::vector<std::pair<std::string, Expr>> formulas;
    std::vector<Module> modules;
    std::vector<std::pair<std::string, Expr>> labels;
};

struct Property {
    bool probabilistic = false;  // P=? [ left U<=bound right ]
    Expr left, right, bound;
    Expr state;  // non-probabilistic state formula
    int line = 1;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Program program() {
        Program p;
        p.model_type = ident("model type");
        if (p.model_type != "ctmc") fail("'ctmc'");
        while (!at_end()) {
            if (is_ident("const")) {
                ++i_;
                Constant c;
                std::string ty = ident("type");
                if (ty == "double") c.type = Type::Double;
                else if (ty == "int") c.type = Type::Int;
                else if (ty == "bool") c.type = Type::Bool;
                else fail("constant type");
                c.name = ident("constant name");
                if (is_sym("=")) {
                    ++i_;
                    c.value = expr();
                }
                sym(";");
                p.constants.push_back(std::move(c));
            } else if (is_ident("formula")) {
                ++i_;
                std::string n = ident("formula name");
                sym("=");
                Expr e = expr();
                sym(";");
                p.formulas.emplace_back(n, std::move(e));
            } else if (is_ident("module")) {
                ++i_;
                p.modules.push_back(module());
            } else if (is_ident("label")) {
                ++i_;
                if (cur().kind != Token::Kind::String) fail("quoted label name");
                std::string n = t_[i_++].text;
                sym("=");
                Expr e = expr();
                sym(";");
                p.labels.emplace_back(n, std::move(e));
            } else {
                fail("'const', 'formula', 'module' or 'label'");
            }
        }
        return p;
    }

    std::vector<Property> properties() {
        std::vector<Property> out;
        while (!at_end()) {
            Property p;
            p.line = cur().line;
            if (is_ident("P") && t_[i_ + 1].kind == Token::Kind::Symbol && t_[i_ + 1].text == "=?") {
                i_ += 2;
                p.probabilistic = true;
                sym("[");
                p.left = expr();
                sym("U<=");
                p.bound = unary();
                p.right = expr();
                sym("]");
            } else {
                p.state = expr();
            }
            if (is_sym(";")) ++i_;
            out.push_back(std::move(p));
        }
        return out;
    }

private:
    const Token& cur() const { return t_[i_]; }
    bool at_end() const { return cur().kind == Token::Kind::End; }
    bool is_sym(std::string_view s) const { return cur().kind == Token::Kind::Symbol && cur().text == s; }
    bool is_ident(std::string_view s) const { return cur().kind == Token::Kind::Ident && cur().text == s; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::PrismSyntax, "expected " + what + ", found '" + (at_end() ? std::string("end of input") : cur().text) + "'", cur().line);
    }
    void sym(std::string_view s) {
        if (!is_sym(s)) fail("'" + std::string(s) + "'");
        ++i_;
    }
    std::string ident(const std::string& what) {
        if (cur().kind != Token::Kind::Ident) fail(what);
        return t_[i_++].text;
    }
    int integer(const std::string& what) {
        bool neg = false;
        if (is_sym("-")) neg = true, ++i_;
        if (cur().kind != Token::Kind::Int) fail(what);
        int v = 0;
        std::from_chars(cur().text.data(), cur().text.data() + cur().text.size(), v);
        ++i_;
        return neg ? -v : v;
    }

    Module module() {
        Module m;
        m.name = ident("module name");
        while (!is_ident("endmodule")) {
            if (at_end()) fail("'endmodule'");
            if (is_sym("[")) {
                m.commands.push_back(command());
            } else {
                VarDecl v;
                v.name = ident("variable declaration");
                sym(":");
                sym("[");
                v.lo = integer("lower bound");
                sym("..");
                v.hi = integer("upper bound");
                sym("]");
                if (!is_ident("init")) fail("'init'");
                ++i_;
                v.init = integer("initial value");
                sym(";");
                m.vars.push_back(v);
            }
        }
        ++i_;
        return m;
    }

    Command command() {
        Command c;
        c.line = cur().line;
        sym("[");
        if (cur().kind == Token::Kind::Ident) c.action = t_[i_++].text;
        sym("]");
        c.guard = expr();
        sym("->");
        c.rate = expr();
        sym(":");
        if (is_ident("true")) {
            ++i_;
        } else {
            for (;;) {
                sym("(");
                Update u;
                u.var = ident("updated variable");
                sym("'=");
                u.value = expr();
                sym(")");
                c.updates.push_back(std::move(u));
                if (!is_sym("&")) break;
                ++i_;
            }
        }
        sym(";");
        return c;
    }

    Expr node(Expr::Op op, std::vector<Expr> args, int line) {
        Expr e;
        e.op = op;
        e.args = std::move(args);
        e.line = line;
        return e;
    }

    Expr expr() {
        Expr l = conj();
        while (is_sym("|")) {
            int line = cur().line;
            ++i_;
            l = node(Expr::Op::Or, {std::move(l), conj()}, line);
        }
        return l;
    }
    Expr conj() {
        Expr l = neg();
        while (is_sym("&")) {
            int line = cur().line;
            ++i_;
            l = node(Expr::Op::And, {std::move(l), neg()}, line);
        }
        return l;
    }
    Expr neg() {
        if (is_sym("!")) {
            int line = cur().line;
            ++i_;
            return node(Expr::Op::Not, {neg()}, line);
        }
        return rel();
    }
    Expr rel() {
        Expr l = sum();
        static const std::map<std::string, Expr::Op> ops = {{"=", Expr::Op::Eq}, {"!=", Expr::Op::Ne}, {"<", Expr::Op::Lt},
                                                            {"<=", Expr::Op::Le}, {">", Expr::Op::Gt},  {">=", Expr::Op::Ge}};
        if (cur().kind == Token::Kind::Symbol && ops.count(cur().text)) {
            int line = cur().line;
            auto op = ops.at(t_[i_++].text);
            l = node(op, {std::move(l), sum()}, line);
        }
        return l;
    }
    Expr sum() {
        Expr l = product();
        while (is_sym("+") || is_sym("-")) {
            int line = cur().line;
            auto op = cur().text == "+" ? Expr::Op::Add : Expr::Op::Sub;
            ++i_;
            l = node(op, {std::move(l), product()}, line);
        }
        return l;
    }
    Expr product() {
        Expr l = unary();
        while (is_sym("*") || is_sym("/")) {
            int line = cur().line;
            auto op = cur().text == "*" ? Expr::Op::Mul : Expr::Op::Div;
            ++i_;
            l = node(op, {std::move(l), unary()}, line);
        }
        return l;
    }
    Expr unary() {
        if (is_sym("-")) {
            int line = cur().line;
            ++i_;
            return node(Expr::Op::Neg, {unary()}, line);
        }
        return primary();
    }
    Expr primary() {
        Expr e;
        e.line = cur().line;
        if (is_sym("(")) {
            ++i_;
            e = expr();
            sym(")");
            return e;
        }
        if (cur().kind == Token::Kind::Int || cur().kind == Token::Kind::Real) {
            e.op = Expr::Op::Num;
            const std::string& s = cur().text;
            std::from_chars(s.data(), s.data() + s.size(), e.value);
            e.name = cur().kind == Token::Kind::Int ? "int" : "double";
            ++i_;
            return e;
        }
        if (cur().kind == Token::Kind::String) {
            e.op = Expr::Op::Label;
            e.name = t_[i_++].text;
            return e;
        }
        if (cur().kind == Token::Kind::Ident) {
            std::string n = t_[i_++].text;
            if (n == "true" || n == "false") {
                e.op = Expr::Op::Bool;
                e.value = n == "true";
            } else {
                e.op = Expr::Op::Ident;
                e.name = n;
            }
            return e;
        }
        fail("expression");
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline Program parse_program(std::string_view text) { return detail::Parser(tokenize(text)).program(); }

inline std::vector<Property> parse_properties(std::string_view text) { return detail::Parser(tokenize(text)).properties(); }

// ---------------------------------------------------------------------------
// Symbol table and type checking.

struct SymbolTable {
    std::map<std::string, Type> names;  // variables, constants, formulas
    std::map<std::string, std::string> variable_owner;
    std::set<std::string> labels;
    std::set<std::string> formulas;
    std::set<std::string> variables;
};

namespace detail {

inline Type type_of(const Expr& e, const SymbolTable& st) {
    using Op = Expr::Op;
    auto err = [&](const std::string& m) -> Type { throw Error(ErrorKind::PrismSyntax, m, e.line); };
    switch (e.op) {
        case Op::Num: return e.name == "int" ? Type::Int : Type::Double;
        case Op::Bool: return Type::Bool;
        case Op::Label:
            if (!st.labels.count(e.name)) return err("undeclared label \"" + e.name + "\"");
            return Type::Bool;
        case Op::Ident: {
            auto it = st.names.find(e.name);
            if (it == st.names.end()) return err("undeclared identifier '" + e.name + "'");
            return it->second;
        }
        case Op::Not:
            if (type_of(e.args[0], st) != Type::Bool) return err("'!' needs a boolean operand");
            return Type::Bool;
        case Op::Neg: {
            Type t = type_of(e.args[0], st);
            if (t == Type::Bool) return err("'-' needs a numeric operand");
            return t;
        }
        case Op::And:
        case Op::Or:
            if (type_of(e.args[0], st) != Type::Bool || type_of(e.args[1], st) != Type::Bool) return err("'&'/'|' need boolean operands");
            return Type::Bool;
        case Op::Eq:
        case Op::Ne: {
            Type a = type_of(e.args[0], st), b = type_of(e.args[1], st);
            if ((a == Type::Bool) != (b == Type::Bool)) return err("comparison of boolean with number");
            return Type::Bool;
        }
        case Op::Lt:
        case Op::Le:
        case Op::Gt:
        case Op::Ge:
            if (type_of(e.args[0], st) == Type::Bool || type_of(e.args[1], st) == Type::Bool) return err("ordering needs numeric operands");
            return Type::Bool;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            Type a = type_of(e.args[0], st), b = type_of(e.args[1], st);
            if (a == Type::Bool || b == Type::Bool) return err("arithmetic needs numeric operands");
            return (a == Type::Double || b == Type::Double || e.op == Op::Div) ? Type::Double : Type::Int;
        }
    }
    return Type::Bool;
}

}  // namespace detail

/// Checks declarations, scoping and types; returns the symbol table.
inline SymbolTable check_program(const Program& p) {
    SymbolTable st;
    auto declare = [&](const std::string& n, Type t, int line) {
        if (!st.names.emplace(n, t).second) throw Error(ErrorKind::PrismSyntax, "duplicate identifier '" + n + "'", line);
    };
    std::set<std::string> module_names;
    for (const auto& c : p.constants) declare(c.name, c.type, 0);
    for (const auto& m : p.modules) {
        if (!module_names.insert(m.name).second) throw Error(ErrorKind::PrismSyntax, "duplicate module '" + m.name + "'");
        for (const auto& v : m.vars) {
            if (v.lo > v.hi || v.init < v.lo || v.init > v.hi) throw Error(ErrorKind::PrismSyntax, "bad range for '" + v.name + "'");
            declare(v.name, Type::Int, 0);
            st.variable_owner[v.name] = m.name;
            st.variables.insert(v.name);
        }
    }
    for (const auto& c : p.constants)
        if (c.value) detail::type_of(*c.value, st);
    for (const auto& [n, e] : p.formulas) {
        Type t = detail::type_of(e, st);
        declare(n, t, e.line);
        st.formulas.insert(n);
    }
    for (const auto& [n, e] : p.labels) {
        if (!st.labels.insert(n).second) throw Error(ErrorKind::PrismSyntax, "duplicate label \"" + n + "\"", e.line);
    }
    for (const auto& [n, e] : p.labels)
        if (detail::type_of(e, st) != Type::Bool) throw Error(ErrorKind::PrismSyntax, "label \"" + n + "\" is not boolean", e.line);
    for (const auto& m : p.modules)
        for (const auto& c : m.commands) {
            if (detail::type_of(c.guard, st) != Type::Bool) throw Error(ErrorKind::PrismSyntax, "guard is not boolean", c.line);
            if (detail::type_of(c.rate, st) == Type::Bool) throw Error(ErrorKind::PrismSyntax, "rate is not numeric", c.line);
            std::set<std::string> seen;
            for (const auto& u : c.updates) {
                auto it = st.variable_owner.find(u.var);
                if (it == st.variable_owner.end()) throw Error(ErrorKind::PrismSyntax, "update of undeclared variable '" + u.var + "'", c.line);
                if (it->second != m.name) throw Error(ErrorKind::PrismSyntax, "module " + m.name + " updates foreign variable '" + u.var + "'", c.line);
                if (!seen.insert(u.var).second) throw Error(ErrorKind::PrismSyntax, "variable '" + u.var + "' updated twice", c.line);
                if (detail::type_of(u.value, st) != Type::Int) throw Error(ErrorKind::PrismSyntax, "update of '" + u.var + "' is not an integer", c.line);
            }
        }
    return st;
}

inline void check_properties(const std::vector<Property>& props, const SymbolTable& st) {
    for (const auto& p : props) {
        if (p.probabilistic) {
            if (detail::type_of(p.left, st) != Type::Bool || detail::type_of(p.right, st) != Type::Bool)
                throw Error(ErrorKind::PrismSyntax, "until operands must be boolean", p.line);
            if (detail::type_of(p.bound, st) == Type::Bool) throw Error(ErrorKind::PrismSyntax, "time bound must be numeric", p.line);
        } else if (detail::type_of(p.state, st) != Type::Bool) {
            throw Error(ErrorKind::PrismSyntax, "state formula must be boolean", p.line);
        }
    }
}

// ---------------------------------------------------------------------------
// Explicit-state exploration with PRISM's synchronization semantics.

struct Explored {
    std::vector<std::string> variables;       // all module variables, declaration order
    std::vector<std::vector<int>> states;     // index 0 is initial
    std::map<std::pair<std::size_t, std::size_t>, double> rates;  // summed, self-loops dropped
};

class Evaluator {
public:
    Evaluator(const Program& p, const std::map<std::string, double>& constants) : p_(p), constants_(constants) {
        std::size_t k = 0;
        for (const auto& m : p.modules)
            for (const auto& v : m.vars) slot_[v.name] = k++;
        for (const auto& [n, e] : p.formulas) formulas_[n] = &e;
        for (const auto& [n, e] : p.labels) labels_[n] = &e;
    }

    std::size_t slot(const std::string& var) const { return slot_.at(var); }

    double eval(const Expr& e, const std::vector<int>& s) const {
        using Op = Expr::Op;
        switch (e.op) {
            case Op::Num:
            case Op::Bool: return e.value;
            case Op::Label: return eval(*labels_.at(e.name), s);
            case Op::Ident: {
                if (auto it = slot_.find(e.name); it != slot_.end()) return s[it->second];
                if (auto it = formulas_.find(e.name); it != formulas_.end()) return eval(*it->second, s);
                if (auto it = constants_.find(e.name); it != constants_.end()) return it->second;
                throw Error(ErrorKind::PrismSyntax, "undefined constant '" + e.name + "'", e.line);
            }
            case Op::Not: return eval(e.args[0], s) == 0 ? 1 : 0;
            case Op::Neg: return -eval(e.args[0], s);
            case Op::Add: return eval(e.args[0], s) + eval(e.args[1], s);
            case Op::Sub: return eval(e.args[0], s) - eval(e.args[1], s);
            case Op::Mul: return eval(e.args[0], s) * eval(e.args[1], s);
            case Op::Div: return eval(e.args[0], s) / eval(e.args[1], s);
            case Op::Eq: return eval(e.args[0], s) == eval(e.args[1], s);
            case Op::Ne: return eval(e.args[0], s) != eval(e.args[1], s);
            case Op::Lt: return eval(e.args[0], s) < eval(e.args[1], s);
            case Op::Le: return eval(e.args[0], s) <= eval(e.args[1], s);
            case Op::Gt: return eval(e.args[0], s) > eval(e.args[1], s);
            case Op::Ge: return eval(e.args[0], s) >= eval(e.args[1], s);
            case Op::And: return eval(e.args[0], s) != 0 && eval(e.args[1], s) != 0;
            case Op::Or: return eval(e.args[0], s) != 0 || eval(e.args[1], s) != 0;
        }
        return 0;
    }

private:
    const Program& p_;
    std::map<std::string, double> constants_;
    std::map<std::string, std::size_t> slot_;
    std::map<std::string, const Expr*> formulas_;
    std::map<std::string, const Expr*> labels_;
};

inline Explored explore(const Program& p, const std::map<std::string, double>& constants = {}, std::size_t cap = 1'000'000) {
    Evaluator ev(p, constants);
    Explored out;
    std::vector<int> init;
    for (const auto& m : p.modules)
        for (const auto& v : m.vars) {
            out.variables.push_back(v.name);
            init.push_back(v.init);
        }
    std::vector<std::pair<int, int>> ranges;
    for (const auto& m : p.modules)
        for (const auto& v : m.vars) ranges.push_back({v.lo, v.hi});

    std::set<std::string> actions;
    std::vector<std::set<std::string>> alphabet(p.modules.size());
    for (std::size_t i = 0; i < p.modules.size(); ++i)
        for (const auto& c : p.modules[i].commands)
            if (!c.action.empty()) {
                actions.insert(c.action);
                alphabet[i].insert(c.action);
            }

    auto apply = [&](std::vector<int>& target, const Command& c, const std::vector<int>& pre) {
        for (const auto& u : c.updates) {
            double v = ev.eval(u.value, pre);
            std::size_t k = ev.slot(u.var);
            if (v < ranges[k].first || v > ranges[k].second)
                throw Error(ErrorKind::PrismSyntax, "variable '" + u.var + "' leaves its range", c.line);
            target[k] = static_cast<int>(v);
        }
    };

    std::map<std::vector<int>, std::size_t> index;
    out.states.push_back(init);
    index[init] = 0;
    auto add = [&](std::size_t src, std::vector<int> dst, double rate) {
        if (rate <= 0) return;
        auto it = index.find(dst);
        std::size_t d;
        if (it == index.end()) {
            if (out.states.size() >= cap) throw Error(ErrorKind::StateSpaceLimit, std::to_string(cap) + " states");
            d = out.states.size();
            index.emplace(dst, d);
            out.states.push_back(std::move(dst));
        } else {
            d = it->second;
        }
        if (d != src) out.rates[{src, d}] += rate;
    };

    for (std::size_t s = 0; s < out.states.size(); ++s) {
        const std::vector<int> cur = out.states[s];
        for (const auto& m : p.modules)
            for (const auto& c : m.commands)
                if (c.action.empty() && ev.eval(c.guard, cur) != 0) {
                    std::vector<int> t = cur;
                    apply(t, c, cur);
                    add(s, std::move(t), ev.eval(c.rate, cur));
                }
        for (const auto& a : actions) {
            // Product over the modules that have `a` in their alphabet.
            std::vector<std::vector<const Command*>> choices;
            bool blocked = false;
            for (std::size_t i = 0; i < p.modules.size() && !blocked; ++i) {
                if (!alphabet[i].count(a)) continue;
                std::vector<const Command*> enabled;
                for (const auto& c : p.modules[i].commands)
                    if (c.action == a && ev.eval(c.guard, cur) != 0) enabled.push_back(&c);
                if (enabled.empty()) blocked = true;
                choices.push_back(std::move(enabled));
            }
            if (blocked || choices.empty()) continue;
            std::vector<std::size_t> pick(choices.size(), 0);
            for (;;) {
                std::vector<int> t = cur;
                double rate = 1;
                for (std::size_t k = 0; k < choices.size(); ++k) {
                    const Command* c = choices[k][pick[k]];
                    apply(t, *c, cur);
                    rate *= ev.eval(c->rate, cur);
                }
                add(s, std::move(t), rate);
                std::size_t k = 0;
                while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
                if (k == pick.size()) break;
            }
        }
    }
    return out;
}

}  // namespace quantum::prism
