#pragma once

// Native plain-text model format (.qum). See docs/native-format.md.

#include <cctype>
#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "quantum/error.hpp"
#include "quantum/model.hpp"

namespace quantum {

namespace detail {

struct Token {
    enum class Kind { Word, Number, String, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
};

class NativeLexer {
public:
    explicit NativeLexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip();
            if (pos_ >= src_.size()) break;
            char c = src_[pos_];
            Token t;
            t.line = line_;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '*') {
                std::size_t start = pos_++;
                if (c != '*') {
                    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
                                                  (src_[pos_] == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] != '.')))
                        ++pos_;
                }
                t.kind = Token::Kind::Word;
                t.text = std::string(src_.substr(start, pos_ - start));
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       ((c == '-' || c == '+') && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                std::size_t start = pos_++;
                while (pos_ < src_.size()) {
                    char d = src_[pos_];
                    bool exp_sign = (d == '-' || d == '+') && (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E');
                    bool dot = d == '.' && !(pos_ + 1 < src_.size() && src_[pos_ + 1] == '.');
                    if (std::isdigit(static_cast<unsigned char>(d)) || dot || d == 'e' || d == 'E' || exp_sign) ++pos_;
                    else break;
                }
                t.kind = Token::Kind::Number;
                t.text = std::string(src_.substr(start, pos_ - start));
            } else if (c == '"') {
                std::size_t start = ++pos_;
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') ++pos_;
                if (pos_ >= src_.size() || src_[pos_] != '"') throw Error(ErrorKind::Syntax, "unterminated string", line_);
                t.kind = Token::Kind::String;
                t.text = std::string(src_.substr(start, pos_ - start));
                ++pos_;
            } else if (src_.substr(pos_, 2) == "->" || src_.substr(pos_, 2) == "..") {
                t.kind = Token::Kind::Symbol;
                t.text = std::string(src_.substr(pos_, 2));
                pos_ += 2;
            } else if (std::string_view("{}[]:=").find(c) != std::string_view::npos) {
                t.kind = Token::Kind::Symbol;
                t.text = std::string(1, c);
                ++pos_;
            } else {
                throw Error(ErrorKind::Syntax, "unexpected character", line_);
            }
            out.push_back(std::move(t));
        }
        Token end;
        end.line = line_;
        out.push_back(end);
        return out;
    }

private:
    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#' || src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

class NativeParser {
public:
    explicit NativeParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    RawModel run() {
        RawModel m;
        expect_word("model");
        m.name = word("model name");
        while (!at_end()) {
            expect_word("component");
            m.components.push_back(component());
        }
        return m;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    bool at_end() const { return cur().kind == Token::Kind::End; }

    [[noreturn]] void fail(const std::string& expected) const {
        std::string got = at_end() ? "end of input" : "'" + cur().text + "'";
        throw Error(ErrorKind::Syntax, "expected " + expected + ", found " + got, cur().line);
    }

    bool is_word(std::string_view w) const { return cur().kind == Token::Kind::Word && cur().text == w; }
    bool is_symbol(std::string_view s) const { return cur().kind == Token::Kind::Symbol && cur().text == s; }

    void expect_word(std::string_view w) {
        if (!is_word(w)) fail("'" + std::string(w) + "'");
        ++pos_;
    }

    void expect_symbol(std::string_view s) {
        if (!is_symbol(s)) fail("'" + std::string(s) + "'");
        ++pos_;
    }

    std::string word(const std::string& what) {
        if (cur().kind != Token::Kind::Word) fail(what);
        return toks_[pos_++].text;
    }

    std::string string_lit(const std::string& what) {
        if (cur().kind != Token::Kind::String) fail(what);
        return toks_[pos_++].text;
    }

    double real(const std::string& what) {
        if (cur().kind != Token::Kind::Number) fail(what);
        const std::string& s = cur().text;
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail(what);
        ++pos_;
        return v;
    }

    int integer(const std::string& what) {
        if (cur().kind != Token::Kind::Number) fail(what);
        const std::string& s = cur().text;
        int v = 0;
        const char* b = s.data();
        if (*b == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) fail(what);
        ++pos_;
        return v;
    }

    RawComponent component() {
        RawComponent c;
        c.name = word("component name");
        expect_symbol("{");
        while (!is_symbol("}")) {
            if (is_word("rates")) {
                ++pos_;
                expect_symbol("{");
                while (!is_symbol("}")) {
                    RateEntry r;
                    r.name = word("rate name");
                    expect_symbol("=");
                    r.rate = real("rate value");
                    c.rates.push_back(r);
                }
                ++pos_;
            } else if (is_word("attribute")) {
                ++pos_;
                RawAttribute a;
                a.name = word("attribute name");
                expect_symbol(":");
                expect_symbol("[");
                a.lo = integer("lower bound");
                expect_symbol("..");
                a.hi = integer("upper bound");
                expect_symbol("]");
                expect_word("init");
                a.init = integer("initial value");
                c.attributes.push_back(a);
            } else if (is_word("operation")) {
                ++pos_;
                c.operations.push_back(word("operation name"));
            } else if (is_word("machine")) {
                ++pos_;
                c.machines.push_back(machine());
            } else {
                fail("'rates', 'attribute', 'operation', 'machine' or '}'");
            }
        }
        ++pos_;
        return c;
    }

    RawMachine machine() {
        RawMachine m;
        std::string role = word("'normal' or 'failure'");
        if (role == "normal") m.failure = false;
        else if (role == "failure") m.failure = true;
        else fail("'normal' or 'failure'");
        m.name = word("machine name");
        expect_symbol("{");
        while (!is_symbol("}")) {
            if (is_word("initial")) {
                ++pos_;
                m.initial = word("initial state");
            } else if (is_word("state")) {
                ++pos_;
                m.states.push_back(state());
            } else if (is_word("transition")) {
                ++pos_;
                m.transitions.push_back(transition());
            } else {
                fail("'initial', 'state', 'transition' or '}'");
            }
        }
        ++pos_;
        return m;
    }

    RawState state() {
        RawState s;
        s.name = word("state name");
        for (;;) {
            if (is_word("entry")) {
                ++pos_;
                s.entry_ops.push_back(word("operation name"));
            } else if (is_word("tag")) {
                ++pos_;
                ConfigTag tag;
                tag.config = word("configuration name");
                std::string op = word("AND or OR");
                if (op == "AND") tag.op = ConfigOperator::And;
                else if (op == "OR") tag.op = ConfigOperator::Or;
                else fail("AND or OR");
                s.config_tags.push_back(tag);
            } else {
                break;
            }
        }
        if (is_symbol("{")) {
            ++pos_;
            while (!is_symbol("}")) {
                if (is_word("initial")) {
                    ++pos_;
                    s.initial = word("initial sub-state");
                } else if (is_word("state")) {
                    ++pos_;
                    s.children.push_back(state());
                } else {
                    fail("'initial', 'state' or '}'");
                }
            }
            ++pos_;
        }
        return s;
    }

    RawTransition transition() {
        RawTransition t;
        t.label = word("transition label");
        expect_symbol(":");
        std::string kind = word("transition kind");
        auto k = transition_kind_from(kind);
        if (!k) fail("transition kind");
        t.kind = *k;
        t.source = word("source state");
        expect_symbol("->");
        t.target = word("target state");
        if (t.target == "*") t.target.clear();
        for (;;) {
            if (is_word("rate")) {
                ++pos_;
                t.rate = real("rate value");
            } else if (is_word("rate_name")) {
                ++pos_;
                t.rate_name = word("rate name");
            } else if (is_word("op")) {
                ++pos_;
                t.operation = word("operation name");
            } else if (is_word("when")) {
                ++pos_;
                t.guard = string_lit("quoted guard");
            } else if (is_word("do")) {
                ++pos_;
                t.updates = string_lit("quoted updates");
            } else {
                break;
            }
        }
        return t;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the native format. Any malformed input raises Error(Syntax, line).
inline RawModel parse_native(std::string_view text) {
    auto toks = detail::NativeLexer(text).run();
    return detail::NativeParser(std::move(toks)).run();
}

}  // namespace quantum
