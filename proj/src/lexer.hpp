#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "sigmapi/error.hpp"

namespace sigmapi::detail {

struct Token {
    enum Kind { Ident, Sym, End };
    Kind kind = End;
    std::string text;
    std::size_t pos = 0;
};

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    bool at_end() const { return tok_.kind == Token::End; }

    bool is(std::string_view text) const { return tok_.kind != Token::End && tok_.text == text; }
    bool is_sym(std::string_view s) const { return tok_.kind == Token::Sym && tok_.text == s; }
    bool is_ident() const { return tok_.kind == Token::Ident; }

    bool accept(std::string_view s) {
        if (tok_.kind == Token::End || tok_.text != s) return false;
        advance();
        return true;
    }

    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'");
    }

    std::string ident(const char* what) {
        if (tok_.kind != Token::Ident) fail(std::string("expected ") + what);
        return next().text;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string got = tok_.kind == Token::End ? "end of input" : "'" + tok_.text + "'";
        throw ParseError(msg + ", found " + got, tok_.pos);
    }

    std::size_t offset() const { return tok_.pos; }

private:
    void advance() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else if (c == '%') {
                while (i_ < src_.size() && src_[i_] != '\n') ++i_;
            } else {
                break;
            }
        }
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= src_.size()) return;
        char c = src_[i_];
        if (ident_char(c) && c != '\'') {
            std::size_t j = i_;
            while (j < src_.size() && ident_char(src_[j])) ++j;
            tok_.kind = Token::Ident;
            tok_.text = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        static constexpr std::string_view two[] = {"=>", "|-", "->"};
        for (auto s : two) {
            if (src_.substr(i_, 2) == s) {
                tok_.kind = Token::Sym;
                tok_.text = std::string(s);
                i_ += 2;
                return;
            }
        }
        static constexpr std::string_view one = "{}()[],:|!#;";
        if (one.find(c) == std::string_view::npos)
            throw ParseError(std::string("unexpected character '") + c + "'", i_);
        tok_.kind = Token::Sym;
        tok_.text = std::string(1, c);
        ++i_;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;
};

}  // namespace sigmapi::detail
