#pragma once

#include "ctrmatch/error.hpp"
#include "ctrmatch/lexer.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ctrmatch {

enum class Modifier { Public, Private, Protected, Static };

inline std::string_view to_string(Modifier m)
{
    switch (m) {
    case Modifier::Public: return "public";
    case Modifier::Private: return "private";
    case Modifier::Protected: return "protected";
    case Modifier::Static: return "static";
    }
    return "?";
}

/// Which interface a method belongs to: provided (I), required (J) or neither.
enum class MethodGroup { Provided, Internal, Required };

inline std::string_view to_string(MethodGroup g)
{
    switch (g) {
    case MethodGroup::Provided: return "provided";
    case MethodGroup::Internal: return "internal";
    case MethodGroup::Required: return "required";
    }
    return "?";
}

/// A type reference with its array rank folded in: `Document[]` is {"Document", 1}.
struct TypeName
{
    std::string name;
    std::size_t dims = 0;

    /// Canonical spelling used as graph label, e.g. "Document[]".
    std::string canonical() const
    {
        std::string out = name;
        for (std::size_t i = 0; i < dims; ++i)
            out += "[]";
        return out;
    }

    bool operator==(const TypeName &) const = default;
};

struct FieldDecl
{
    std::string name;
    TypeName dtype;
    std::set<Modifier> modifiers;

    bool operator==(const FieldDecl &) const = default;
};

struct Param
{
    std::string name;
    TypeName dtype;

    bool operator==(const Param &) const = default;
};

struct MethodDecl
{
    std::string name;
    std::optional<TypeName> returnType; ///< empty for void
    std::vector<Param> params;
    std::set<Modifier> modifiers;
    MethodGroup group = MethodGroup::Provided;

    bool operator==(const MethodDecl &) const = default;
};

/// The raw lexemes of a `protocol { ... }` block.
struct ProtocolText
{
    std::vector<std::string> tokens;

    std::string str() const
    {
        std::string out;
        for (const auto &t : tokens) {
            if (!out.empty())
                out += ' ';
            out += t;
        }
        return out;
    }

    bool operator==(const ProtocolText &) const = default;
};

struct ContractAst
{
    std::string contractName;
    std::string componentClass;
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    ProtocolText protocol;

    bool operator==(const ContractAst &) const = default;
};

namespace detail {

class ContractParser
{
  public:
    explicit ContractParser(std::span<const Token> tokens) : toks_(tokens) {}

    ContractAst run()
    {
        ContractAst ast;
        expect_kind(TokenKind::Contract, "'contract'");
        ast.contractName = expect_kind(TokenKind::Identifier, "contract name").lexeme;
        expect_kind(TokenKind::Of, "'of'");
        ast.componentClass = expect_kind(TokenKind::Identifier, "component class name").lexeme;
        const Token &open = expect_punct('{');

        bool haveProtocol = false;
        bool requiredSection = false;
        while (!at_end() && !peek().is_punct('}')) {
            const Token &tok = peek();
            if (tok.kind == TokenKind::Pragma) {
                requiredSection = opens_required_section(tok);
                ++pos_;
                continue;
            }
            if (tok.is_punct(';')) {
                ++pos_;
                continue;
            }
            if (tok.is_punct('{')) {
                skip_block();
                continue;
            }
            if (tok.kind == TokenKind::Static && pos_ + 1 < toks_.size() && toks_[pos_ + 1].is_punct('{')) {
                ++pos_;
                skip_block();
                continue;
            }

            std::set<Modifier> modifiers = parse_modifiers();
            if (peek_is(TokenKind::Protocol)) {
                const Token &kw = peek();
                if (haveProtocol)
                    throw DuplicateProtocolError(kw.line, kw.column);
                ++pos_;
                ast.protocol = parse_protocol_block();
                haveProtocol = true;
                continue;
            }
            parse_member(ast, modifiers, requiredSection);
        }
        expect_punct('}');
        if (!at_end()) {
            const Token &extra = peek();
            throw ParseError(extra.line, extra.column, "end of input", describe(extra));
        }
        if (!haveProtocol)
            throw MissingProtocolError(open.line, open.column);
        return ast;
    }

  private:
    bool at_end() const { return pos_ >= toks_.size(); }

    const Token &peek() const
    {
        if (at_end())
            fail("more input");
        return toks_[pos_];
    }

    bool peek_is(TokenKind kind) const { return !at_end() && toks_[pos_].kind == kind; }
    bool peek_punct(char c) const { return !at_end() && toks_[pos_].is_punct(c); }

    static std::string describe(const Token &tok) { return "'" + tok.lexeme + "'"; }

    [[noreturn]] void fail(const std::string &expected) const
    {
        if (at_end()) {
            std::size_t line = 1, column = 1;
            if (!toks_.empty()) {
                line = toks_.back().line;
                column = toks_.back().column;
            }
            throw ParseError(line, column, expected, "end of input");
        }
        const Token &tok = toks_[pos_];
        throw ParseError(tok.line, tok.column, expected, describe(tok));
    }

    const Token &expect_kind(TokenKind kind, const std::string &what)
    {
        if (!peek_is(kind))
            fail(what);
        return toks_[pos_++];
    }

    const Token &expect_punct(char c)
    {
        if (!peek_punct(c))
            fail(std::string("'") + c + "'");
        return toks_[pos_++];
    }

    /// Consumes a balanced `{ ... }` block and everything in it.
    void skip_block()
    {
        expect_punct('{');
        std::size_t depth = 1;
        while (depth > 0) {
            if (at_end())
                fail("'}'");
            const Token &tok = toks_[pos_++];
            if (tok.is_punct('{'))
                ++depth;
            else if (tok.is_punct('}'))
                --depth;
        }
    }

    std::set<Modifier> parse_modifiers()
    {
        std::set<Modifier> mods;
        while (!at_end()) {
            const Token &tok = toks_[pos_];
            if (tok.kind == TokenKind::Static)
                mods.insert(Modifier::Static);
            else if (tok.is(TokenKind::Modifier, "public"))
                mods.insert(Modifier::Public);
            else if (tok.is(TokenKind::Modifier, "private"))
                mods.insert(Modifier::Private);
            else if (tok.is(TokenKind::Modifier, "protected"))
                mods.insert(Modifier::Protected);
            else
                break;
            ++pos_;
        }
        return mods;
    }

    std::size_t parse_dims()
    {
        std::size_t dims = 0;
        while (peek_punct('[')) {
            ++pos_;
            expect_punct(']');
            ++dims;
        }
        return dims;
    }

    TypeName parse_type()
    {
        TypeName type;
        if (peek_is(TokenKind::PrimitiveType) && toks_[pos_].lexeme != "void") {
            type.name = toks_[pos_++].lexeme;
        } else {
            type.name = expect_kind(TokenKind::Identifier, "type name").lexeme;
            while (peek_punct('.')) {
                ++pos_;
                type.name += "." + expect_kind(TokenKind::Identifier, "type name").lexeme;
            }
        }
        type.dims = parse_dims();
        return type;
    }

    void parse_member(ContractAst &ast, const std::set<Modifier> &modifiers, bool requiredSection)
    {
        std::optional<TypeName> type;
        if (peek_is(TokenKind::PrimitiveType) && toks_[pos_].lexeme == "void")
            ++pos_;
        else
            type = parse_type();

        std::string name = expect_kind(TokenKind::Identifier, "member name").lexeme;
        if (peek_punct('(')) {
            MethodDecl method;
            method.name = std::move(name);
            method.modifiers = modifiers;
            method.params = parse_params();
            std::size_t extraDims = parse_dims();
            if (type)
                type->dims += extraDims;
            else if (extraDims > 0)
                fail("method body");
            method.returnType = std::move(type);
            if (peek_is(TokenKind::Throws)) {
                ++pos_;
                parse_type();
                while (peek_punct(',')) {
                    ++pos_;
                    parse_type();
                }
            }
            if (peek_punct(';'))
                ++pos_;
            else
                skip_block();
            if (requiredSection)
                method.group = MethodGroup::Required;
            else if (modifiers.contains(Modifier::Private))
                method.group = MethodGroup::Internal;
            else
                method.group = MethodGroup::Provided;
            ast.methods.push_back(std::move(method));
            return;
        }

        if (!type)
            fail("'('");
        // field declaration, possibly with several declarators and initializers
        for (;;) {
            FieldDecl field{std::move(name), *type, modifiers};
            field.dtype.dims += parse_dims();
            ast.fields.push_back(std::move(field));
            if (peek_punct('='))
                skip_initializer();
            if (peek_punct(',')) {
                ++pos_;
                name = expect_kind(TokenKind::Identifier, "field name").lexeme;
                continue;
            }
            expect_punct(';');
            return;
        }
    }

    /// Skips `= expr` up to (not including) a top-level ',' or ';'.
    void skip_initializer()
    {
        ++pos_;
        std::size_t depth = 0;
        while (!at_end()) {
            const Token &tok = toks_[pos_];
            if (depth == 0 && (tok.is_punct(',') || tok.is_punct(';')))
                return;
            if (tok.is_punct('(') || tok.is_punct('{') || tok.is_punct('['))
                ++depth;
            else if (tok.is_punct(')') || tok.is_punct('}') || tok.is_punct(']')) {
                if (depth == 0)
                    fail("';'");
                --depth;
            }
            ++pos_;
        }
        fail("';'");
    }

    std::vector<Param> parse_params()
    {
        std::vector<Param> params;
        expect_punct('(');
        if (peek_punct(')')) {
            ++pos_;
            return params;
        }
        for (;;) {
            Param p;
            p.dtype = parse_type();
            p.name = expect_kind(TokenKind::Identifier, "parameter name").lexeme;
            p.dtype.dims += parse_dims();
            params.push_back(std::move(p));
            if (peek_punct(',')) {
                ++pos_;
                continue;
            }
            expect_punct(')');
            return params;
        }
    }

    ProtocolText parse_protocol_block()
    {
        expect_punct('{');
        ProtocolText text;
        while (!peek_punct('}')) {
            const Token &tok = peek();
            bool ok = tok.kind == TokenKind::Identifier ||
                      (tok.kind == TokenKind::Punct && std::string_view("()+*;^|?").find(tok.lexeme[0]) !=
                                                           std::string_view::npos);
            if (!ok)
                fail("protocol symbol or operator");
            text.tokens.push_back(tok.lexeme);
            ++pos_;
        }
        if (text.tokens.empty())
            fail("protocol symbol or operator");
        expect_punct('}');
        return text;
    }

    std::span<const Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses one contract declaration. Method bodies, static blocks and throws
/// clauses are consumed and discarded.
inline ContractAst parse_contract(std::span<const Token> tokens) { return detail::ContractParser(tokens).run(); }

inline ContractAst parse_contract_source(std::string_view source)
{
    auto tokens = tokenize(source);
    return parse_contract(tokens);
}

enum class IssueKind { UndeclaredProtocolSymbol, DuplicateField, DuplicateMethod, DuplicateParam };

inline std::string_view to_string(IssueKind k)
{
    switch (k) {
    case IssueKind::UndeclaredProtocolSymbol: return "UndeclaredProtocolSymbol";
    case IssueKind::DuplicateField: return "DuplicateField";
    case IssueKind::DuplicateMethod: return "DuplicateMethod";
    case IssueKind::DuplicateParam: return "DuplicateParam";
    }
    return "?";
}

struct ValidationIssue
{
    IssueKind kind;
    std::string subject;

    std::string message() const { return std::string(to_string(kind)) + "(\"" + subject + "\")"; }

    bool operator==(const ValidationIssue &) const = default;
};

/// Reports structural problems that do not stop a contract from being used:
/// protocol symbols without a declared method and duplicate declarations.
inline std::vector<ValidationIssue> validate_contract(const ContractAst &ast)
{
    std::vector<ValidationIssue> issues;

    std::set<std::string> fieldNames;
    for (const auto &f : ast.fields)
        if (!fieldNames.insert(f.name).second)
            issues.push_back({IssueKind::DuplicateField, f.name});

    std::set<std::pair<std::string, std::size_t>> signatures;
    std::set<std::string> methodNames;
    for (const auto &m : ast.methods) {
        methodNames.insert(m.name);
        if (!signatures.insert({m.name, m.params.size()}).second)
            issues.push_back({IssueKind::DuplicateMethod, m.name + "/" + std::to_string(m.params.size())});
        std::set<std::string> paramNames;
        for (const auto &p : m.params)
            if (!paramNames.insert(p.name).second)
                issues.push_back({IssueKind::DuplicateParam, m.name + "." + p.name});
    }

    std::set<std::string> reported;
    for (const auto &tok : ast.protocol.tokens) {
        if (!detail::is_ident_start(tok[0]))
            continue;
        if (!methodNames.contains(tok) && reported.insert(tok).second)
            issues.push_back({IssueKind::UndeclaredProtocolSymbol, tok});
    }
    return issues;
}

/// Renders an AST back to contract source that parses to an equal AST.
inline std::string to_source(const ContractAst &ast)
{
    auto modifiers = [](const std::set<Modifier> &mods) {
        std::string out;
        for (Modifier m : mods) {
            out += to_string(m);
            out += ' ';
        }
        return out;
    };

    std::ostringstream os;
    os << "contract " << ast.contractName << " of " << ast.componentClass << " {\n";
    for (const auto &f : ast.fields)
        os << "  " << modifiers(f.modifiers) << f.dtype.canonical() << ' ' << f.name << ";\n";

    bool requiredSection = false;
    for (const auto &m : ast.methods) {
        bool wantRequired = m.group == MethodGroup::Required;
        if (wantRequired != requiredSection) {
            os << (wantRequired ? "  //required services\n" : "  //provided methods\n");
            requiredSection = wantRequired;
        }
        os << "  " << modifiers(m.modifiers) << (m.returnType ? m.returnType->canonical() : "void") << ' ' << m.name
           << '(';
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            if (i > 0)
                os << ", ";
            os << m.params[i].dtype.canonical() << ' ' << m.params[i].name;
        }
        os << ") {;}\n";
    }
    os << "  protocol { " << ast.protocol.str() << " }\n}\n";
    return os.str();
}

} // namespace ctrmatch
