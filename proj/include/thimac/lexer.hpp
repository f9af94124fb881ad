#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "diagnostics.hpp"

namespace thimac::detail {

enum class Tok {
    Ident, Number, String,
    LBrace, RBrace, LParen, RParen,
    Semi, Comma, Dot, Arrow,
    End, Bad,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;   // identifier spelling, decoded string, or digits
    SourceLoc loc;
};

// Shared tokenizer for both DSLs.  Accepts LF and CRLF, skips // comments.
// A Bad token carries an error message in text; the parsers turn it into a
// SYNTAX diagnostic, so lexing never throws.
inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto here = [&] { return SourceLoc{line, col}; };
    auto advance = [&](std::size_t n = 1) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance();
            continue;
        }
        SourceLoc at = here();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), at});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            std::string digits(src.substr(i, j - i));
            advance(j - i);
            if (digits.size() > 18) {
                out.push_back({Tok::Bad, "number literal too large", at});
                return out;
            }
            out.push_back({Tok::Number, std::move(digits), at});
            continue;
        }
        if (c == '"') {
            advance();
            std::string text;
            bool closed = false;
            while (i < src.size()) {
                char d = src[i];
                if (d == '"') {
                    advance();
                    closed = true;
                    break;
                }
                if (d == '\\' && i + 1 < src.size()) {
                    char e = src[i + 1];
                    if (e == '"' || e == '\\') {
                        text += e;
                        advance(2);
                        continue;
                    }
                    if (e == 'n') {
                        text += '\n';
                        advance(2);
                        continue;
                    }
                }
                if (d == '\n') break;  // unterminated on this line
                text += d;
                advance();
            }
            if (!closed) {
                out.push_back({Tok::Bad, "unterminated string literal", at});
                return out;
            }
            out.push_back({Tok::String, std::move(text), at});
            continue;
        }
        switch (c) {
        case '{': out.push_back({Tok::LBrace, "{", at}); advance(); continue;
        case '}': out.push_back({Tok::RBrace, "}", at}); advance(); continue;
        case '(': out.push_back({Tok::LParen, "(", at}); advance(); continue;
        case ')': out.push_back({Tok::RParen, ")", at}); advance(); continue;
        case ';': out.push_back({Tok::Semi, ";", at}); advance(); continue;
        case ',': out.push_back({Tok::Comma, ",", at}); advance(); continue;
        case '.': out.push_back({Tok::Dot, ".", at}); advance(); continue;
        case '-':
            if (i + 1 < src.size() && src[i + 1] == '>') {
                out.push_back({Tok::Arrow, "->", at});
                advance(2);
                continue;
            }
            break;
        default: break;
        }
        out.push_back({Tok::Bad, std::string("unexpected character '") + c + "'", at});
        return out;
    }
    out.push_back({Tok::End, "", here()});
    return out;
}

}  // namespace thimac::detail
