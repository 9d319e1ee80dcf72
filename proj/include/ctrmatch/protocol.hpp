#pragma once

#include "ctrmatch/contract.hpp"
#include "ctrmatch/error.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctrmatch {

/// Regular expression over method names.
struct ProtocolAst
{
    enum class Kind { Symbol, Concat, Alt, Star, Plus, Opt, Empty };

    Kind kind = Kind::Empty;
    std::string symbol;                ///< Symbol only
    std::vector<ProtocolAst> children; ///< Concat/Alt: >= 2, Star/Plus/Opt: 1

    static ProtocolAst sym(std::string name) { return {Kind::Symbol, std::move(name), {}}; }
    static ProtocolAst empty() { return {Kind::Empty, {}, {}}; }
    static ProtocolAst unary(Kind k, ProtocolAst child) { return {k, {}, {std::move(child)}}; }
    static ProtocolAst star(ProtocolAst c) { return unary(Kind::Star, std::move(c)); }
    static ProtocolAst plus(ProtocolAst c) { return unary(Kind::Plus, std::move(c)); }
    static ProtocolAst opt(ProtocolAst c) { return unary(Kind::Opt, std::move(c)); }

    /// Builds a Concat or Alt, splicing nested nodes of the same kind and
    /// collapsing a single operand.
    static ProtocolAst nary(Kind k, std::vector<ProtocolAst> parts)
    {
        std::vector<ProtocolAst> flat;
        for (auto &p : parts) {
            if (p.kind == k)
                for (auto &c : p.children)
                    flat.push_back(std::move(c));
            else
                flat.push_back(std::move(p));
        }
        if (flat.size() == 1)
            return std::move(flat.front());
        return {k, {}, std::move(flat)};
    }
    static ProtocolAst concat(std::vector<ProtocolAst> parts) { return nary(Kind::Concat, std::move(parts)); }
    static ProtocolAst alt(std::vector<ProtocolAst> parts) { return nary(Kind::Alt, std::move(parts)); }

    bool operator==(const ProtocolAst &) const = default;
};

/// Fully parenthesized rendering. Reads back to an equal AST unless it holds
/// an Empty node, which has no surface syntax.
inline std::string to_string(const ProtocolAst &ast)
{
    using K = ProtocolAst::Kind;
    switch (ast.kind) {
    case K::Symbol: return ast.symbol;
    case K::Empty: return "()";
    case K::Star: return "(" + to_string(ast.children[0]) + ")*";
    case K::Plus: return "(" + to_string(ast.children[0]) + ")+";
    case K::Opt: return "(" + to_string(ast.children[0]) + ")?";
    case K::Concat:
    case K::Alt: {
        std::string out = "(";
        for (std::size_t i = 0; i < ast.children.size(); ++i) {
            if (i > 0)
                out += ast.kind == K::Alt ? " | " : " ";
            out += to_string(ast.children[i]);
        }
        return out + ")";
    }
    }
    return "?";
}

inline void collect_symbols(const ProtocolAst &ast, std::set<std::string> &out)
{
    if (ast.kind == ProtocolAst::Kind::Symbol)
        out.insert(ast.symbol);
    for (const auto &c : ast.children)
        collect_symbols(c, out);
}

inline std::set<std::string> symbols_of(const ProtocolAst &ast)
{
    std::set<std::string> out;
    collect_symbols(ast, out);
    return out;
}

namespace detail {

// alt    := concat ('|' concat)*
// concat := postfix (';'? postfix)*
// postfix:= atom ('*' | '+' | '?')*
// atom   := IDENT | '(' alt ')'
class ProtocolParser
{
  public:
    explicit ProtocolParser(std::span<const std::string> tokens) : toks_(tokens) {}

    ProtocolAst run()
    {
        for (const auto &t : toks_)
            if (t == "^")
                throw UnsupportedOperatorError("^");
        if (toks_.empty())
            throw ProtocolParseError("empty protocol");
        ProtocolAst ast = parse_alt();
        if (pos_ < toks_.size())
            throw ProtocolParseError(toks_[pos_] == ")" ? "unbalanced ')' in protocol"
                                                        : "unexpected '" + toks_[pos_] + "' in protocol");
        return ast;
    }

  private:
    bool at(std::string_view s) const { return pos_ < toks_.size() && toks_[pos_] == s; }

    bool starts_atom() const
    {
        return pos_ < toks_.size() && (toks_[pos_] == "(" || is_ident_start(toks_[pos_][0]));
    }

    ProtocolAst parse_alt()
    {
        std::vector<ProtocolAst> parts{parse_concat()};
        while (at("|")) {
            ++pos_;
            parts.push_back(parse_concat());
        }
        return ProtocolAst::alt(std::move(parts));
    }

    ProtocolAst parse_concat()
    {
        std::vector<ProtocolAst> parts{parse_postfix()};
        for (;;) {
            if (at(";")) {
                ++pos_;
                parts.push_back(parse_postfix());
            } else if (starts_atom()) {
                parts.push_back(parse_postfix());
            } else {
                break;
            }
        }
        return ProtocolAst::concat(std::move(parts));
    }

    ProtocolAst parse_postfix()
    {
        ProtocolAst node = parse_atom();
        for (;;) {
            if (at("*"))
                node = ProtocolAst::star(std::move(node));
            else if (at("+"))
                node = ProtocolAst::plus(std::move(node));
            else if (at("?"))
                node = ProtocolAst::opt(std::move(node));
            else
                break;
            ++pos_;
        }
        return node;
    }

    ProtocolAst parse_atom()
    {
        if (pos_ >= toks_.size())
            throw ProtocolParseError("protocol ends where an operand is expected");
        const std::string &tok = toks_[pos_];
        if (tok == "(") {
            ++pos_;
            if (at(")"))
                throw ProtocolParseError("empty group '()' in protocol");
            ProtocolAst inner = parse_alt();
            if (!at(")"))
                throw ProtocolParseError("unbalanced '(' in protocol");
            ++pos_;
            return inner;
        }
        if (is_ident_start(tok[0])) {
            ++pos_;
            return ProtocolAst::sym(tok);
        }
        throw ProtocolParseError("dangling operator '" + tok + "' in protocol");
    }

    std::span<const std::string> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a protocol token run. Postfix `*`, `+`, `?` bind tightest and stack
/// left to right, then concatenation (juxtaposition or `;`), then `|`.
inline ProtocolAst parse_protocol(const ProtocolText &text) { return detail::ProtocolParser(text.tokens).run(); }

/// Convenience overload for protocol source text, e.g. "(a|b)*".
inline ProtocolAst parse_protocol(std::string_view source)
{
    ProtocolText text;
    for (const Token &t : tokenize(source))
        text.tokens.push_back(t.lexeme);
    return parse_protocol(text);
}

/// Renames every symbol through `substitution`.
inline ProtocolAst remap_alphabet(const ProtocolAst &ast, const std::map<std::string, std::string> &substitution)
{
    ProtocolAst out = ast;
    if (out.kind == ProtocolAst::Kind::Symbol) {
        auto it = substitution.find(out.symbol);
        if (it == substitution.end())
            throw UnmappedSymbolError(out.symbol);
        out.symbol = it->second;
        return out;
    }
    for (auto &c : out.children)
        c = remap_alphabet(c, substitution);
    return out;
}

} // namespace ctrmatch
