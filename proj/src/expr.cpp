#include "wavend/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

#include "wavend/errors.hpp"

namespace wavend {

namespace {

using Fn = std::function<double(double)>;

const std::map<std::string, double (*)(double)>& unary_functions() {
    static const std::map<std::string, double (*)(double)> fns = {
        {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
        {"sinh", std::sinh}, {"cosh", std::cosh}, {"exp", std::exp},
        {"log", std::log},   {"sqrt", std::sqrt}, {"abs", std::fabs},
        {"sec", +[](double v) { return 1.0 / std::cos(v); }},
    };
    return fns;
}

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("expression error at position " + std::to_string(pos) + " in '" + text +
                          "': " + what);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Fn parse() {
        Fn e = expression();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input");
        return e;
    }

    Fn expression() {
        Fn left = term();
        for (;;) {
            if (eat('+')) {
                Fn right = term();
                left = [left, right](double x) { return left(x) + right(x); };
            } else if (eat('-')) {
                Fn right = term();
                left = [left, right](double x) { return left(x) - right(x); };
            } else {
                return left;
            }
        }
    }

    Fn term() {
        Fn left = unary();
        for (;;) {
            if (eat('*')) {
                Fn right = unary();
                left = [left, right](double x) { return left(x) * right(x); };
            } else if (eat('/')) {
                Fn right = unary();
                left = [left, right](double x) { return left(x) / right(x); };
            } else {
                return left;
            }
        }
    }

    Fn unary() {
        if (eat('-')) {
            Fn inner = unary();
            return [inner](double x) { return -inner(x); };
        }
        return power();
    }

    Fn power() {
        Fn base = primary();
        if (eat('^')) {
            Fn exponent = unary();
            return [base, exponent](double x) { return std::pow(base(x), exponent(x)); };
        }
        return base;
    }

    Fn primary() {
        skip_ws();
        if (pos >= text.size()) fail("expected a value");

        if (text[pos] == '(') {
            ++pos;
            Fn inner = expression();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }

        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = text.c_str() + pos;
            char* end = nullptr;
            double value = std::strtod(start, &end);
            if (end == start) fail("bad number");
            pos += static_cast<std::size_t>(end - start);
            return [value](double) { return value; };
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string name = text.substr(start, pos - start);
            if (name == "x") return [](double x) { return x; };
            if (name == "pi") return [](double) { return 4.0 * std::atan(1.0); };
            auto it = unary_functions().find(name);
            if (it == unary_functions().end()) fail("unknown identifier '" + name + "'");
            if (!eat('(')) fail("expected '(' after '" + name + "'");
            Fn arg = expression();
            if (!eat(')')) fail("expected ')'");
            auto fn = it->second;
            return [fn, arg](double x) { return fn(arg(x)); };
        }

        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
    Parser p(text);
    return p.parse();
}

}  // namespace wavend
