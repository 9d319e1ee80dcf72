#pragma once

#include "ctrmatch/error.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ctrmatch {

enum class TokenKind {
    Contract,
    Of,
    Protocol,
    Static,
    Throws,
    Modifier,      ///< public, private, protected
    PrimitiveType, ///< Java primitive type keywords and `void`
    Identifier,
    Punct,
    StringLiteral,
    CharLiteral,
    IntegerLiteral,
    Pragma,        ///< a `//required`-style section marker comment
};

inline std::string_view to_string(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Contract: return "CONTRACT";
    case TokenKind::Of: return "OF";
    case TokenKind::Protocol: return "PROTOCOL";
    case TokenKind::Static: return "STATIC";
    case TokenKind::Throws: return "THROWS";
    case TokenKind::Modifier: return "MODIFIER";
    case TokenKind::PrimitiveType: return "PRIMITIVE";
    case TokenKind::Identifier: return "IDENTIFIER";
    case TokenKind::Punct: return "PUNCT";
    case TokenKind::StringLiteral: return "STRING";
    case TokenKind::CharLiteral: return "CHAR";
    case TokenKind::IntegerLiteral: return "INTEGER";
    case TokenKind::Pragma: return "PRAGMA";
    }
    return "?";
}

struct Token
{
    TokenKind kind;
    std::string lexeme;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
    bool is_punct(char c) const { return kind == TokenKind::Punct && lexeme.size() == 1 && lexeme[0] == c; }

    bool operator==(const Token &) const = default;
};

/// True when a pragma token opens the `required` method section; any other
/// section pragma closes it.
inline bool opens_required_section(const Token &token)
{
    std::string_view text = token.lexeme;
    text.remove_prefix(2);
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    return text.starts_with("required");
}

namespace detail {

inline bool is_ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

inline bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline TokenKind keyword_kind(std::string_view word)
{
    static constexpr std::array primitives{"boolean", "byte", "char", "short", "int",
                                           "long",    "float", "double", "void"};
    if (word == "contract")
        return TokenKind::Contract;
    if (word == "of")
        return TokenKind::Of;
    if (word == "protocol")
        return TokenKind::Protocol;
    if (word == "static")
        return TokenKind::Static;
    if (word == "throws")
        return TokenKind::Throws;
    if (word == "public" || word == "private" || word == "protected")
        return TokenKind::Modifier;
    for (std::string_view p : primitives)
        if (word == p)
            return TokenKind::PrimitiveType;
    return TokenKind::Identifier;
}

/// True when a line comment's text marks a method-group section.
inline bool is_section_comment(std::string_view body)
{
    while (!body.empty() && (body.front() == ' ' || body.front() == '\t'))
        body.remove_prefix(1);
    for (std::string_view word : {"required", "provided", "private", "internal", "public"}) {
        if (body.starts_with(word) && (body.size() == word.size() || !is_ident_char(body[word.size()])))
            return true;
    }
    return false;
}

class Lexer
{
  public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
                advance();
                continue;
            }
            std::size_t line = line_, column = column_, start = pos_;
            if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
                std::string_view text = src_.substr(start, pos_ - start);
                while (!text.empty() && (text.back() == '\r' || text.back() == ' ' || text.back() == '\t'))
                    text.remove_suffix(1);
                if (is_section_comment(text.substr(2)))
                    out.push_back({TokenKind::Pragma, std::string(text), line, column});
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                advance(2);
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/'))
                    advance();
                if (pos_ >= src_.size())
                    throw LexError(line, column, "unterminated block comment");
                advance(2);
                continue;
            }
            if (is_ident_start(c)) {
                while (pos_ < src_.size() && is_ident_char(src_[pos_]))
                    advance();
                std::string word(src_.substr(start, pos_ - start));
                out.push_back({keyword_kind(word), std::move(word), line, column});
                continue;
            }
            if (is_digit(c)) {
                while (pos_ < src_.size() && is_ident_char(src_[pos_]))
                    advance();
                out.push_back({TokenKind::IntegerLiteral, std::string(src_.substr(start, pos_ - start)), line, column});
                continue;
            }
            if (c == '"' || c == '\'') {
                lex_quoted(c, line, column);
                out.push_back({c == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral,
                               std::string(src_.substr(start, pos_ - start)), line, column});
                continue;
            }
            if (std::string_view("{}()[];,.=<>!~?:+-*/&|^%@").find(c) != std::string_view::npos) {
                advance();
                out.push_back({TokenKind::Punct, std::string(1, c), line, column});
                continue;
            }
            throw LexError(line, column, "unrecognized character");
        }
        return out;
    }

  private:
    char peek(std::size_t ahead) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    void advance(std::size_t n = 1)
    {
        for (; n > 0 && pos_ < src_.size(); --n, ++pos_) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                column_ = 1;
            } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
                // UTF-8 continuation bytes do not start a new column
                ++column_;
            }
        }
    }

    void lex_quoted(char quote, std::size_t line, std::size_t column)
    {
        advance();
        while (pos_ < src_.size() && src_[pos_] != quote) {
            if (src_[pos_] == '\n')
                break;
            if (src_[pos_] == '\\')
                advance();
            advance();
        }
        if (pos_ >= src_.size() || src_[pos_] != quote)
            throw LexError(line, column, "unterminated literal");
        advance();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

} // namespace detail

/// Splits contract source into tokens. Whitespace and comments are dropped,
/// except line comments that open a method-group section (`//required ...`),
/// which surface as Pragma tokens.
inline std::vector<Token> tokenize(std::string_view source) { return detail::Lexer(source).run(); }

} // namespace ctrmatch
