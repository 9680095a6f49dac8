#pragma once

// Guard and update language for transitions.
//
//   guard   := or
//   or      := and ('|' and)*
//   and     := not ('&' not)*
//   not     := '!' not | rel
//   rel     := sum (('=' | '!=' | '<' | '<=' | '>' | '>=') sum)?
//   sum     := unary (('+' | '-') unary)*
//   unary   := '-' unary | primary
//   primary := INT | 'true' | 'false' | '(' guard ')'
//            | 'at' '(' IDENT ',' IDENT ('.' IDENT)* ')'
//            | IDENT ('.' IDENT)?
//   updates := IDENT ('=' | ':=') sum (';' IDENT ('=' | ':=') sum)*
//
// Unqualified names are attributes of the owning component; `Comp.attr`
// reads another component's attribute, `at(Comp, State)` tests whether
// that component currently is in State or one of its sub-states.

#include <cctype>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quantum/error.hpp"

namespace quantum {

struct Expr {
    enum class Op { Int, Bool, Var, At, Not, Neg, Add, Sub, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

    Op op = Op::Int;
    long value = 0;
    std::string qualifier;                // Var: component name, empty = owner
    std::string name;                     // Var: attribute name
    std::vector<std::string> state_path;  // At: state path inside the component
    std::vector<Expr> args;

    // Bound after validation / global layout.
    int component = -1;  // Var, At
    int attribute = -1;  // Var
    int lo = -1, hi = -1;  // At: encoded id span

    bool operator==(const Expr& other) const {
        return op == other.op && value == other.value && qualifier == other.qualifier && name == other.name &&
               state_path == other.state_path && args == other.args && component == other.component &&
               attribute == other.attribute;
    }

    bool is_boolean() const {
        switch (op) {
            case Op::Bool: case Op::At: case Op::Not: case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le:
            case Op::Gt: case Op::Ge: case Op::And: case Op::Or:
                return true;
            default:
                return false;
        }
    }

    static Expr integer(long v) { Expr e; e.op = Op::Int; e.value = v; return e; }
    static Expr boolean(bool v) { Expr e; e.op = Op::Bool; e.value = v ? 1 : 0; return e; }
    static Expr binary(Op op, Expr lhs, Expr rhs) {
        Expr e; e.op = op; e.args.push_back(std::move(lhs)); e.args.push_back(std::move(rhs)); return e;
    }
    static Expr unary(Op op, Expr arg) { Expr e; e.op = op; e.args.push_back(std::move(arg)); return e; }
};

struct Update {
    std::string attribute;
    int attribute_index = -1;
    Expr value;

    bool operator==(const Update&) const = default;
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse_guard() {
        Expr e = parse_or();
        expect_end();
        if (!e.is_boolean()) fail("guard is not a boolean expression");
        return e;
    }

    std::vector<Update> parse_updates() {
        std::vector<Update> out;
        skip_ws();
        if (pos_ == text_.size()) return out;
        for (;;) {
            Update u;
            u.attribute = ident();
            skip_ws();
            if (accept(":=") || accept("=")) {
            } else {
                fail("expected '=' in update");
            }
            u.value = parse_sum();
            if (u.value.is_boolean()) fail("update value must be an integer expression");
            out.push_back(std::move(u));
            skip_ws();
            if (pos_ == text_.size()) break;
            if (!accept(";")) fail("expected ';' between updates");
            skip_ws();
            if (pos_ == text_.size()) break;
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::UnsupportedGuard, what + " at offset " + std::to_string(pos_) + " in '" +
                                                     std::string(text_) + "'");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool peek(std::string_view tok) {
        skip_ws();
        return text_.substr(pos_, tok.size()) == tok;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    void expect_end() {
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    Expr parse_or() {
        Expr lhs = parse_and();
        while (accept("|")) lhs = Expr::binary(Expr::Op::Or, std::move(lhs), check_bool(parse_and()));
        return lhs;
    }

    Expr parse_and() {
        Expr lhs = parse_not();
        while (accept("&")) lhs = Expr::binary(Expr::Op::And, check_bool(std::move(lhs)), check_bool(parse_not()));
        return lhs;
    }

    Expr parse_not() {
        if (peek("!") && !peek("!=")) {
            accept("!");
            return Expr::unary(Expr::Op::Not, check_bool(parse_not()));
        }
        return parse_rel();
    }

    Expr check_bool(Expr e) {
        if (!e.is_boolean()) fail("boolean operand expected");
        return e;
    }

    Expr check_int(Expr e) {
        if (e.is_boolean()) fail("integer operand expected");
        return e;
    }

    Expr parse_rel() {
        Expr lhs = parse_sum();
        static constexpr std::pair<std::string_view, Expr::Op> ops[] = {
            {"!=", Expr::Op::Ne}, {"<=", Expr::Op::Le}, {">=", Expr::Op::Ge},
            {"=", Expr::Op::Eq},  {"<", Expr::Op::Lt},  {">", Expr::Op::Gt},
        };
        for (const auto& [tok, op] : ops) {
            if (accept(tok)) {
                Expr rhs = parse_sum();
                if (op == Expr::Op::Eq || op == Expr::Op::Ne) {
                    if (lhs.is_boolean() != rhs.is_boolean()) fail("mixed operand types");
                } else {
                    check_int(lhs);
                    check_int(rhs);
                }
                return Expr::binary(op, std::move(lhs), std::move(rhs));
            }
        }
        return lhs;
    }

    Expr parse_sum() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept("+")) lhs = Expr::binary(Expr::Op::Add, check_int(std::move(lhs)), check_int(parse_unary()));
            else if (accept("-")) lhs = Expr::binary(Expr::Op::Sub, check_int(std::move(lhs)), check_int(parse_unary()));
            else return lhs;
        }
    }

    Expr parse_unary() {
        if (accept("-")) return Expr::unary(Expr::Op::Neg, check_int(parse_unary()));
        return parse_primary();
    }

    Expr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                v = v * 10 + (text_[pos_] - '0');
                if (v > 1'000'000'000L) fail("integer literal too large");
                ++pos_;
            }
            return Expr::integer(v);
        }
        if (accept("(")) {
            Expr e = parse_or();
            expect(")");
            return e;
        }
        std::string id = ident();
        if (id == "true") return Expr::boolean(true);
        if (id == "false") return Expr::boolean(false);
        if (id == "at" && accept("(")) {
            Expr e;
            e.op = Expr::Op::At;
            e.qualifier = ident();
            expect(",");
            e.state_path.push_back(ident());
            while (accept(".")) e.state_path.push_back(ident());
            expect(")");
            return e;
        }
        Expr e;
        e.op = Expr::Op::Var;
        if (accept(".")) {
            e.qualifier = id;
            e.name = ident();
        } else {
            e.name = id;
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a guard; an empty string yields `true`.
inline Expr parse_guard(std::string_view text) {
    bool blank = true;
    for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
    if (blank) return Expr::boolean(true);
    return detail::ExprParser(text).parse_guard();
}

inline std::vector<Update> parse_updates(std::string_view text) { return detail::ExprParser(text).parse_updates(); }

/// Flat global valuation: per component `[state id, attr0, attr1, ...]` at `offsets[c]`.
struct Valuation {
    std::span<const int> values;
    std::span<const std::size_t> offsets;

    int state(int component) const { return values[offsets[component]]; }
    int attribute(int component, int attr) const { return values[offsets[component] + 1 + attr]; }
};

inline long eval(const Expr& e, const Valuation& v) {
    using Op = Expr::Op;
    switch (e.op) {
        case Op::Int: return e.value;
        case Op::Bool: return e.value;
        case Op::Var:
            if (e.component < 0 || e.attribute < 0) throw Error(ErrorKind::UnsupportedGuard, "unbound name " + e.name);
            return v.attribute(e.component, e.attribute);
        case Op::At: {
            if (e.component < 0 || e.lo < 0) throw Error(ErrorKind::UnsupportedGuard, "unbound state test");
            int s = v.state(e.component);
            return (e.lo <= s && s <= e.hi) ? 1 : 0;
        }
        case Op::Not: return eval(e.args[0], v) ? 0 : 1;
        case Op::Neg: return -eval(e.args[0], v);
        case Op::Add: return eval(e.args[0], v) + eval(e.args[1], v);
        case Op::Sub: return eval(e.args[0], v) - eval(e.args[1], v);
        case Op::Eq: return eval(e.args[0], v) == eval(e.args[1], v);
        case Op::Ne: return eval(e.args[0], v) != eval(e.args[1], v);
        case Op::Lt: return eval(e.args[0], v) < eval(e.args[1], v);
        case Op::Le: return eval(e.args[0], v) <= eval(e.args[1], v);
        case Op::Gt: return eval(e.args[0], v) > eval(e.args[1], v);
        case Op::Ge: return eval(e.args[0], v) >= eval(e.args[1], v);
        case Op::And: return eval(e.args[0], v) && eval(e.args[1], v);
        case Op::Or: return eval(e.args[0], v) || eval(e.args[1], v);
    }
    return 0;
}

/// Calls `fn` on every node, pre-order.
inline void visit(Expr& e, const std::function<void(Expr&)>& fn) {
    fn(e);
    for (auto& a : e.args) visit(a, fn);
}

inline void visit(const Expr& e, const std::function<void(const Expr&)>& fn) {
    fn(e);
    for (const auto& a : e.args) visit(a, fn);
}

/// Renders with every compound sub-expression parenthesized. `name_of` maps
/// a bound Var/At node to its target-language text.
inline std::string render(const Expr& e, const std::function<std::string(const Expr&)>& name_of) {
    using Op = Expr::Op;
    auto bin = [&](const char* sym) {
        auto side = [&](const Expr& a) {
            std::string s = render(a, name_of);
            bool atomic = a.op == Op::Int || a.op == Op::Bool || a.op == Op::Var || a.op == Op::At;
            return atomic ? s : "(" + s + ")";
        };
        return side(e.args[0]) + sym + side(e.args[1]);
    };
    switch (e.op) {
        case Op::Int: return std::to_string(e.value);
        case Op::Bool: return e.value ? "true" : "false";
        case Op::Var: case Op::At: return name_of(e);
        case Op::Not: return "!(" + render(e.args[0], name_of) + ")";
        case Op::Neg: return "-(" + render(e.args[0], name_of) + ")";
        case Op::Add: return bin("+");
        case Op::Sub: return bin("-");
        case Op::Eq: return bin("=");
        case Op::Ne: return bin("!=");
        case Op::Lt: return bin("<");
        case Op::Le: return bin("<=");
        case Op::Gt: return bin(">");
        case Op::Ge: return bin(">=");
        case Op::And: return bin("&");
        case Op::Or: return bin("|");
    }
    return {};
}

inline bool is_trivially_true(const Expr& e) { return e.op == Expr::Op::Bool && e.value == 1; }

}  // namespace quantum
