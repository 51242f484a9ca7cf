#include "avgroups/textio.hpp"

#include <cctype>

#include "avgroups/errors.hpp"

namespace avgroups::textio {

namespace {

// Splits on commas, remembering where each token started in the raw input.
struct Token {
    std::string text;
    std::size_t position;
};

std::vector<Token> tokenize(const std::string& raw) {
    std::vector<Token> tokens;
    Token cur{"", 0};
    bool started = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == ',') {
            tokens.push_back(cur);
            cur = Token{"", i + 1};
            started = false;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!started) {
            cur.position = i;
            started = true;
        }
        cur.text.push_back(c);
    }
    tokens.push_back(cur);
    return tokens;
}

Int parse_integer_token(const Token& tok) {
    const std::string& s = tok.text;
    if (s.empty()) throw parse_error("empty entry", tok.position);
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw parse_error("sign without digits", tok.position);
    Int value = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw parse_error(std::string("invalid character '") + s[i] + "'",
                              tok.position + i);
        value = value * 10 + (s[i] - '0');
    }
    return neg ? Int(-value) : value;
}

bool all_blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

exactpoly::IntPolynomial parse_polynomial(const std::string& text) {
    if (all_blank(text)) throw parse_error("empty polynomial", 0);
    std::vector<Int> coeffs;
    for (const Token& tok : tokenize(text)) coeffs.push_back(parse_integer_token(tok));
    return exactpoly::IntPolynomial(std::move(coeffs));
}

std::string polynomial_to_string(const exactpoly::IntPolynomial& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) out += ',';
        out += f.coeffs()[i].str();
    }
    return out;
}

std::vector<Int> parse_invariant_factors(const std::string& text) {
    if (all_blank(text)) return {};
    std::vector<Int> d;
    std::vector<Token> tokens = tokenize(text);
    for (const Token& tok : tokens) d.push_back(parse_integer_token(tok));
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 2)
            throw parse_error("invariant factor must be >= 2", tokens[i].position);
        if (i > 0 && d[i] % d[i - 1] != 0)
            throw parse_error("invariant factors must form a divisibility chain",
                              tokens[i].position);
    }
    return d;
}

std::string invariant_factors_to_string(const std::vector<Int>& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) out += ',';
        out += d[i].str();
    }
    return out;
}

std::vector<int> parse_exponents(const std::string& text) {
    if (all_blank(text)) throw parse_error("empty exponent list", 0);
    std::vector<int> e;
    std::vector<Token> tokens = tokenize(text);
    for (const Token& tok : tokens) {
        Int v = parse_integer_token(tok);
        if (v < 0) throw parse_error("exponent must be nonnegative", tok.position);
        if (v > 1000000) throw parse_error("exponent out of range", tok.position);
        e.push_back(static_cast<int>(v));
    }
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i] < e[i - 1])
            throw parse_error("exponents must be ascending", tokens[i].position);
    return e;
}

} // namespace avgroups::textio
