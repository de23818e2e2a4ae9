#pragma once

// Expression grammar for input functions:
//
//   expr    := signed (('+' | '-') signed)*
//   signed  := ('-' | '+') signed | product
//   product := power ('*' power)*
//   power   := atom ('^' INTEGER)?
//   atom    := NUMBER | IDENT | '(' expr ')'
//
// NUMBER is an integer or a rational literal such as 3/4, IDENT matches
// [a-zA-Z][a-zA-Z0-9]*. Coordinates are numbered by first occurrence.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exactalg.hpp"
#include "loopfun.hpp"

namespace loopsing {

class SyntaxError : public error {
public:
    SyntaxError(std::size_t pos, std::vector<std::string> expected_tokens, const std::string& found)
        : error(make_message(pos, expected_tokens, found)),
          position(pos),
          expected(std::move(expected_tokens))
    {
    }

    std::size_t position;
    std::vector<std::string> expected;

private:
    static std::string make_message(std::size_t pos, const std::vector<std::string>& exp,
                                    const std::string& found)
    {
        std::string s = "syntax error at position " + std::to_string(pos) + ": expected ";
        for (std::size_t i = 0; i < exp.size(); ++i) {
            s += (i == 0 ? "" : i + 1 == exp.size() ? " or " : ", ") + exp[i];
        }
        return s + ", found " + found;
    }
};

struct ParsedPolynomial {
    LoopPoly poly;
    std::vector<std::string> names;
};

namespace detail {

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view src) : src_(src) {}

    ParsedPolynomial run()
    {
        LoopPoly p = expr();
        skip_ws();
        if (pos_ != src_.size()) {
            fail({"'+'", "'-'", "'*'", "'^'", "end of input"});
        }
        return ParsedPolynomial{std::move(p), std::move(names_)};
    }

private:
    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    char peek()
    {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    [[noreturn]] void fail(std::vector<std::string> expected)
    {
        skip_ws();
        const std::string found =
            pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
        throw SyntaxError(pos_, std::move(expected), found);
    }

    LoopPoly expr()
    {
        LoopPoly acc = signed_term();
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            if (c == '+') {
                acc += signed_term();
            } else {
                acc -= signed_term();
            }
        }
        return acc;
    }

    LoopPoly signed_term()
    {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -signed_term();
        }
        if (c == '+') {
            ++pos_;
            return signed_term();
        }
        return product();
    }

    LoopPoly product()
    {
        LoopPoly acc = power();
        while (peek() == '*') {
            ++pos_;
            acc = acc * power();
        }
        return acc;
    }

    LoopPoly power()
    {
        LoopPoly base = atom();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                fail({"integer exponent"});
            }
            const std::string digits = read_digits();
            if (digits.size() > 6) {
                fail({"exponent below 10^6"});
            }
            return pow(base, static_cast<std::uint32_t>(std::stoul(digits)));
        }
        return base;
    }

    std::string read_digits()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
        return std::string(src_.substr(start, pos_ - start));
    }

    LoopPoly atom()
    {
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num(read_digits());
            if (pos_ < src_.size() && src_[pos_] == '/') {
                ++pos_;
                if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    fail({"denominator"});
                }
                Integer den(read_digits());
                if (den == 0) {
                    --pos_;
                    fail({"nonzero denominator"});
                }
                return LoopPoly(Rational(num, den));
            }
            return LoopPoly(Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
            }
            const std::string name(src_.substr(start, pos_ - start));
            return LoopPoly::var(ambient(coordinate_of(name)));
        }
        if (c == '(') {
            ++pos_;
            LoopPoly inner = expr();
            if (peek() != ')') {
                fail({"')'"});
            }
            ++pos_;
            return inner;
        }
        fail({"number", "identifier", "'('"});
    }

    int coordinate_of(const std::string& name)
    {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return static_cast<int>(i + 1);
            }
        }
        names_.push_back(name);
        return static_cast<int>(names_.size());
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<std::string> names_;
};

}  // namespace detail

inline ParsedPolynomial parse_polynomial(std::string_view src)
{
    return detail::ExpressionParser(src).run();
}

/// Parses an input function; d is the number of distinct identifiers in the
/// source, delta is inferred from homogeneity.
inline InputFunction parse_function(std::string_view src)
{
    ParsedPolynomial parsed = parse_polynomial(src);
    if (parsed.names.empty()) {
        if (parsed.poly.is_zero()) {
            throw ZeroFunction();
        }
        throw DegreeTooLow(0);
    }
    const int d = static_cast<int>(parsed.names.size());
    return InputFunction(std::move(parsed.poly), d, std::move(parsed.names));
}

/// Parseable rendering of F using its coordinate names.
inline std::string print_function(const InputFunction& f)
{
    return to_string(f.poly(), ambient_namer(f.names()));
}

}  // namespace loopsing
