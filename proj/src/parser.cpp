#include "wlog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace wlog {
namespace {

struct Token {
    enum Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) return {Token::End, "", start};
        char c = s_[i_];
        switch (c) {
            case '+': ++i_; return {Token::Plus, "+", start};
            case '-': ++i_; return {Token::Minus, "-", start};
            case '*': ++i_; return {Token::Star, "*", start};
            case '^': ++i_; return {Token::Caret, "^", start};
            case '/': ++i_; return {Token::Slash, "/", start};
            case '(': ++i_; return {Token::LParen, "(", start};
            case ')': ++i_; return {Token::RParen, ")", start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            Token t{Token::Int, s_.substr(i_, j - i_), start};
            i_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
                ++j;
            Token t{Token::Ident, s_.substr(i_, j - i_), start};
            i_ = j;
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : lexer_(text), vars_(vars) {
        advance();
    }

    Polynomial parse() {
        Polynomial p = expr();
        expect(Token::End, "end of input");
        return p;
    }

private:
    void advance() { cur_ = lexer_.next(); }

    void expect(Token::Kind k, const std::string& what) {
        if (cur_.kind != k) throw ParseError("expected " + what, cur_.pos);
    }

    Polynomial expr() {
        Polynomial p = term();
        while (cur_.kind == Token::Plus || cur_.kind == Token::Minus) {
            bool minus = cur_.kind == Token::Minus;
            advance();
            Polynomial q = term();
            p = minus ? p - q : p + q;
        }
        return p;
    }

    Polynomial term() {
        Polynomial p = factor();
        while (cur_.kind == Token::Star) {
            advance();
            p = p * factor();
        }
        return p;
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (cur_.kind == Token::Caret) {
            std::size_t caret_pos = cur_.pos;
            advance();
            if (cur_.kind == Token::Minus)
                throw ParseError("negative exponent", cur_.pos);
            if (cur_.kind != Token::Int)
                throw ParseError("exponent must be a nonnegative integer literal", caret_pos);
            unsigned long e = std::stoul(cur_.text);
            advance();
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial atom() {
        switch (cur_.kind) {
            case Token::Minus: {
                advance();
                return -factor();
            }
            case Token::Int: {
                Rat num(BigInt(cur_.text));
                advance();
                if (cur_.kind == Token::Slash) {
                    std::size_t slash_pos = cur_.pos;
                    advance();
                    if (cur_.kind != Token::Int)
                        throw ParseError("'/' is only allowed between integer literals", slash_pos);
                    BigInt den(cur_.text);
                    if (den == 0) throw ParseError("zero denominator", cur_.pos);
                    advance();
                    num /= Rat(den);
                }
                return Polynomial::constant(vars_, num);
            }
            case Token::Ident: {
                auto it = std::find(vars_.begin(), vars_.end(), cur_.text);
                if (it == vars_.end())
                    throw ParseError("unknown variable '" + cur_.text + "'", cur_.pos);
                std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
                advance();
                return Polynomial::variable(vars_, idx);
            }
            case Token::LParen: {
                advance();
                Polynomial p = expr();
                expect(Token::RParen, "')'");
                advance();
                return p;
            }
            default:
                throw ParseError("expected a number, variable or '('", cur_.pos);
        }
    }

    Lexer lexer_;
    const std::vector<std::string>& vars_;
    Token cur_{Token::End, "", 0};
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
    return Parser(text, vars).parse();
}

std::vector<Polynomial> parse_polynomial_list(const std::string& text,
                                              const std::vector<std::string>& vars) {
    std::vector<Polynomial> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') ++depth;
        if (i < text.size() && text[i] == ')') --depth;
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            out.push_back(parse_polynomial(text.substr(start, i - start), vars));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> parse_var_names(const std::string& text) {
    std::vector<std::string> names;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            std::string name = text.substr(start, i - start);
            // trim
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
                name.erase(name.begin());
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back())))
                name.pop_back();
            if (name.empty()) throw ParseError("empty variable name", i);
            if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
                throw ParseError("invalid variable name '" + name + "'", start);
            for (char c : name)
                if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                    throw ParseError("invalid variable name '" + name + "'", start);
            names.push_back(name);
            start = i + 1;
        }
    }
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw ParseError("duplicate variable name", 0);
    return names;
}

}  // namespace wlog
