#pragma once

// Random contract generators for property tests.

#include "ctrmatch/contract.hpp"
#include "ctrmatch/protocol.hpp"
#include "oracles/regex_oracle.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace oracle {

struct ContractShape
{
    std::size_t maxFields = 2;
    std::size_t minMethods = 1;
    std::size_t maxMethods = 4;
    std::size_t maxParams = 2;
    int protocolDepth = 3;
};

inline ctrmatch::TypeName random_type(std::mt19937 &rng)
{
    static const std::vector<ctrmatch::TypeName> pool{
        {"String", 0}, {"int", 0}, {"Document", 0}, {"Document", 1}, {"Boolean", 0}, {"Order", 0}};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
}

inline std::set<ctrmatch::Modifier> random_modifiers(std::mt19937 &rng)
{
    using ctrmatch::Modifier;
    std::uniform_int_distribution<int> pick(0, 3);
    std::set<Modifier> mods;
    switch (pick(rng)) {
    case 0: mods.insert(Modifier::Public); break;
    case 1: mods.insert(Modifier::Private); break;
    case 2: mods.insert(Modifier::Protected); break;
    default: break;
    }
    if (std::bernoulli_distribution(0.2)(rng))
        mods.insert(Modifier::Static);
    return mods;
}

/// A contract whose method groups are derivable from its source form, with a
/// protocol over its own method names.
inline ctrmatch::ContractAst random_contract(std::mt19937 &rng, const std::string &component,
                                             const ContractShape &shape = {})
{
    using namespace ctrmatch;
    ContractAst ast;
    ast.contractName = "ctr_" + component;
    ast.componentClass = component;

    std::uniform_int_distribution<std::size_t> fieldCount(0, shape.maxFields);
    for (std::size_t i = fieldCount(rng); i > 0; --i)
        ast.fields.push_back({"f" + std::to_string(ast.fields.size()), random_type(rng), random_modifiers(rng)});

    std::uniform_int_distribution<std::size_t> methodCount(shape.minMethods, shape.maxMethods);
    std::uniform_int_distribution<std::size_t> paramCount(0, shape.maxParams);
    std::bernoulli_distribution isVoid(0.35), isRequired(0.25);
    for (std::size_t i = methodCount(rng); i > 0; --i) {
        MethodDecl m;
        m.name = "m" + std::to_string(ast.methods.size());
        if (!isVoid(rng))
            m.returnType = random_type(rng);
        for (std::size_t p = paramCount(rng); p > 0; --p)
            m.params.push_back({"p" + std::to_string(m.params.size()), random_type(rng)});
        m.modifiers = random_modifiers(rng);
        if (isRequired(rng))
            m.group = MethodGroup::Required;
        else
            m.group = m.modifiers.contains(Modifier::Private) ? MethodGroup::Internal : MethodGroup::Provided;
        ast.methods.push_back(std::move(m));
    }

    std::vector<std::string> names;
    for (const auto &m : ast.methods)
        names.push_back(m.name);
    if (names.empty())
        names.push_back("m0");
    ProtocolAst protocol = random_regex(rng, names, shape.protocolDepth);
    ast.protocol.tokens.clear();
    for (const auto &t : ctrmatch::tokenize(to_string(protocol)))
        ast.protocol.tokens.push_back(t.lexeme);
    return ast;
}

} // namespace oracle
