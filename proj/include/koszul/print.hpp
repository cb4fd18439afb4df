// Canonical textual form of scalars, superfunctions and derivations, plus
// the matching recursive-descent parser. Printing is stable: terms appear
// in descending graded-lex order with explicit coefficients, so identical
// values print identically across runs.
#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "koszul/derivation.hpp"
#include "koszul/superfunction.hpp"

namespace koszul {

namespace detail {

inline void append_joined(std::string& out, const std::string& term,
                          bool first) {
    if (first) {
        out += term;
    } else if (!term.empty() && term[0] == '-') {
        out += " - ";
        out += term.substr(1);
    } else {
        out += " + ";
        out += term;
    }
}

}  // namespace detail

inline std::string to_string(const Polynomial& p,
                             const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        std::string term;
        std::string vars;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += names[i];
            if (e[i] > 1) vars += "^" + std::to_string(e[i]);
        }
        if (vars.empty()) {
            term = c.get_str();
        } else if (c == 1) {
            term = vars;
        } else if (c == -1) {
            term = "-" + vars;
        } else {
            term = c.get_str() + "*" + vars;
        }
        detail::append_joined(out, term, first);
        first = false;
    }
    return out;
}

// A self-contained expression; safe to embed in a product on either side.
inline std::string to_string(const Scalar& s,
                             const std::vector<std::string>& names) {
    std::string num = to_string(s.numerator(), names);
    if (s.is_polynomial()) {
        if (s.numerator().terms().size() > 1) return "(" + num + ")";
        return num;
    }
    std::string den;
    for (const auto& [f, k] : s.denominator_factors()) {
        if (!den.empty()) den += "*";
        den += "(" + to_string(f, names) + ")";
        if (k > 1) den += "^" + std::to_string(k);
    }
    return "(" + num + ")/(" + den + ")";
}

inline std::vector<std::string> base_names(const Chart& chart) {
    std::vector<std::string> names;
    names.reserve(chart.base_count());
    for (int i = 0; i < chart.base_count(); ++i) names.push_back(chart.name(i));
    return names;
}

inline std::string to_string(const Superfunction& f) {
    if (f.is_zero()) return "0";
    const Chart& chart = f.chart();
    auto names = base_names(chart);
    std::string out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [k, s] = *it;
        std::string mono;
        for (std::size_t j = 0; j < k.e.size(); ++j) {
            if (k.e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += chart.name(chart.base_count() + static_cast<int>(j));
            if (k.e[j] > 1) mono += "^" + std::to_string(k.e[j]);
        }
        std::string term;
        if (mono.empty()) {
            term = s.is_polynomial() ? to_string(s.numerator(), names)
                                     : to_string(s, names);
        } else if (s.is_constant()) {
            term = s.constant_value().get_str() + "*" + mono;
        } else {
            term = to_string(s, names) + "*" + mono;
        }
        detail::append_joined(out, term, first);
        first = false;
    }
    return out;
}

inline std::string to_string(const Derivation& d) {
    if (d.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, f] : d.components()) {
        detail::append_joined(
            out, "(" + to_string(f) + ")@" + d.chart().name(i), first);
        first = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing.

namespace detail {

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    enum class Tok { Number, Ident, Op, End };

    Tok kind() const { return kind_; }
    const std::string& value() const { return value_; }
    std::size_t pos() const { return tok_pos_; }

    bool is_op(char c) const { return kind_ == Tok::Op && value_[0] == c; }

    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        tok_pos_ = pos_;
        if (pos_ >= text_.size()) {
            kind_ = Tok::End;
            value_.clear();
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            kind_ = Tok::Number;
            value_ = text_.substr(start, pos_ - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                ++pos_;
            kind_ = Tok::Ident;
            value_ = text_.substr(start, pos_ - start);
            return;
        }
        if (std::string("+-*/^()@").find(c) == std::string::npos)
            throw ParseError(std::string("unexpected character '") + c + "'",
                             pos_);
        kind_ = Tok::Op;
        value_ = std::string(1, c);
        ++pos_;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t tok_pos_ = 0;
    Tok kind_ = Tok::End;
    std::string value_;
};

class SuperfunctionParser {
  public:
    SuperfunctionParser(const Chart& chart, const std::string& text)
        : chart_(chart), lex_(text) {}

    Superfunction parse_all() {
        Superfunction f = parse_expr();
        if (lex_.kind() != Lexer::Tok::End)
            throw ParseError("trailing input", lex_.pos());
        return f;
    }

    Superfunction parse_expr() {
        bool neg = false;
        if (lex_.is_op('-')) {
            neg = true;
            lex_.advance();
        } else if (lex_.is_op('+')) {
            lex_.advance();
        }
        Superfunction acc = parse_term();
        if (neg) acc = -acc;
        while (lex_.is_op('+') || lex_.is_op('-')) {
            bool minus = lex_.is_op('-');
            lex_.advance();
            Superfunction t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    Superfunction parse_term() {
        Superfunction acc = parse_factor();
        while (lex_.is_op('*') || lex_.is_op('/')) {
            bool div = lex_.is_op('/');
            std::size_t at = lex_.pos();
            lex_.advance();
            Superfunction t = parse_factor();
            if (div) {
                if (t.is_zero()) throw ParseError("division by zero", at);
                acc = acc / t;
            } else {
                acc = acc * t;
            }
        }
        return acc;
    }

    Superfunction parse_factor() {
        Superfunction base = parse_atom();
        if (lex_.is_op('^')) {
            lex_.advance();
            if (lex_.kind() != Lexer::Tok::Number)
                throw ParseError("expected exponent", lex_.pos());
            unsigned k = static_cast<unsigned>(std::stoul(lex_.value()));
            lex_.advance();
            base = base.pow(k);
        }
        return base;
    }

    Superfunction parse_atom() {
        if (lex_.kind() == Lexer::Tok::Number) {
            Rational c(lex_.value());
            lex_.advance();
            return Superfunction::constant(chart_, c);
        }
        if (lex_.kind() == Lexer::Tok::Ident) {
            auto idx = chart_.find(lex_.value());
            if (!idx)
                throw ParseError("unknown coordinate '" + lex_.value() + "'",
                                 lex_.pos());
            lex_.advance();
            return Superfunction::coordinate(chart_, *idx);
        }
        if (lex_.is_op('(')) {
            lex_.advance();
            Superfunction f = parse_expr();
            if (!lex_.is_op(')'))
                throw ParseError("expected ')'", lex_.pos());
            lex_.advance();
            return f;
        }
        throw ParseError("expected number, coordinate or '('", lex_.pos());
    }

    Lexer& lexer() { return lex_; }

  private:
    const Chart& chart_;
    Lexer lex_;
};

}  // namespace detail

inline Superfunction parse_superfunction(const Chart& chart,
                                         const std::string& text) {
    return detail::SuperfunctionParser(chart, text).parse_all();
}

inline Scalar parse_scalar(const Chart& chart, const std::string& text) {
    Superfunction f = parse_superfunction(chart, text);
    auto d = f.degree();
    if (!d || *d != 0)
        throw ParseError("expected a degree-0 expression", 0);
    return f.scalar_part();
}

// Derivations print as "(f)@q + ..."; parse accepts the same shape.
inline Derivation parse_derivation(const Chart& chart, const std::string& text,
                                   std::optional<int> degree = std::nullopt) {
    detail::Lexer probe(text);
    if (probe.kind() == detail::Lexer::Tok::Number && probe.value() == "0") {
        probe.advance();
        if (probe.kind() == detail::Lexer::Tok::End)
            return Derivation(chart, degree ? degree : std::optional<int>(0));
    }

    detail::SuperfunctionParser parser(chart, text);
    auto& lex = parser.lexer();
    Derivation out(chart, std::nullopt);
    std::optional<int> inferred;
    bool consistent = true;
    int sign = 1;
    if (lex.is_op('-')) {
        sign = -1;
        lex.advance();
    }
    while (true) {
        if (!lex.is_op('('))
            throw ParseError("expected '(' starting a component", lex.pos());
        lex.advance();
        Superfunction f = parser.parse_expr();
        if (!lex.is_op(')')) throw ParseError("expected ')'", lex.pos());
        lex.advance();
        if (!lex.is_op('@')) throw ParseError("expected '@'", lex.pos());
        lex.advance();
        if (lex.kind() != detail::Lexer::Tok::Ident)
            throw ParseError("expected coordinate name", lex.pos());
        auto idx = chart.find(lex.value());
        if (!idx)
            throw ParseError("unknown coordinate '" + lex.value() + "'",
                             lex.pos());
        lex.advance();
        if (sign < 0) f = -f;
        out.set_component(*idx, out.component(*idx) + f);
        if (auto fd = f.degree(); fd && !f.is_zero()) {
            int comp_deg = *fd - chart.degree(*idx);
            if (!inferred)
                inferred = comp_deg;
            else if (*inferred != comp_deg)
                consistent = false;
        }
        if (lex.is_op('+')) {
            sign = 1;
            lex.advance();
        } else if (lex.is_op('-')) {
            sign = -1;
            lex.advance();
        } else {
            break;
        }
    }
    if (lex.kind() != detail::Lexer::Tok::End)
        throw ParseError("trailing input", lex.pos());
    std::optional<int> deg = degree;
    if (!deg && consistent) deg = inferred;
    Derivation result(chart, deg);
    for (const auto& [i, f] : out.components()) result.set_component(i, f);
    return result;
}

}  // namespace koszul
