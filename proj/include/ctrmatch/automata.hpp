#pragma once

#include "ctrmatch/protocol.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace ctrmatch {

/// Thompson-form NFA: one start and one accept state; a transition without a
/// label is an epsilon move.
struct Nfa
{
    struct Transition
    {
        std::size_t from;
        std::optional<std::string> label;
        std::size_t to;

        bool operator==(const Transition &) const = default;
    };

    std::size_t stateCount = 0;
    std::vector<Transition> transitions;
    std::size_t start = 0;
    std::size_t accept = 0;

    std::size_t add_state() { return stateCount++; }
    void add(std::size_t from, std::optional<std::string> label, std::size_t to)
    {
        transitions.push_back({from, std::move(label), to});
    }

    std::set<std::string> symbols() const
    {
        std::set<std::string> out;
        for (const auto &t : transitions)
            if (t.label)
                out.insert(*t.label);
        return out;
    }
};

/// Complete DFA over a sorted alphabet. `delta[state * alphabet.size() + i]`
/// is the successor of `state` on `alphabet[i]`.
struct Dfa
{
    std::vector<std::string> alphabet;
    std::size_t stateCount = 0;
    std::vector<std::size_t> delta;
    std::size_t start = 0;
    std::vector<bool> accepting;

    std::size_t next(std::size_t state, std::size_t symbol) const { return delta[state * alphabet.size() + symbol]; }

    std::optional<std::size_t> symbol_index(const std::string &s) const
    {
        auto it = std::lower_bound(alphabet.begin(), alphabet.end(), s);
        if (it == alphabet.end() || *it != s)
            return std::nullopt;
        return static_cast<std::size_t>(it - alphabet.begin());
    }

    /// Words using a symbol outside the alphabet are rejected.
    bool accepts(std::span<const std::string> word) const
    {
        std::size_t state = start;
        for (const auto &s : word) {
            auto idx = symbol_index(s);
            if (!idx)
                return false;
            state = next(state, *idx);
        }
        return accepting[state];
    }

    std::size_t accepting_count() const
    {
        return static_cast<std::size_t>(std::count(accepting.begin(), accepting.end(), true));
    }

    bool operator==(const Dfa &) const = default;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> thompson(const ProtocolAst &ast, Nfa &nfa)
{
    using K = ProtocolAst::Kind;
    switch (ast.kind) {
    case K::Symbol: {
        std::size_t s = nfa.add_state(), f = nfa.add_state();
        nfa.add(s, ast.symbol, f);
        return {s, f};
    }
    case K::Empty: {
        std::size_t s = nfa.add_state(), f = nfa.add_state();
        nfa.add(s, std::nullopt, f);
        return {s, f};
    }
    case K::Concat: {
        auto [s, f] = thompson(ast.children.front(), nfa);
        for (std::size_t i = 1; i < ast.children.size(); ++i) {
            auto [cs, cf] = thompson(ast.children[i], nfa);
            nfa.add(f, std::nullopt, cs);
            f = cf;
        }
        return {s, f};
    }
    case K::Alt: {
        std::size_t s = nfa.add_state(), f = nfa.add_state();
        for (const auto &c : ast.children) {
            auto [cs, cf] = thompson(c, nfa);
            nfa.add(s, std::nullopt, cs);
            nfa.add(cf, std::nullopt, f);
        }
        return {s, f};
    }
    case K::Star:
    case K::Plus:
    case K::Opt: {
        std::size_t s = nfa.add_state(), f = nfa.add_state();
        auto [cs, cf] = thompson(ast.children.front(), nfa);
        nfa.add(s, std::nullopt, cs);
        nfa.add(cf, std::nullopt, f);
        if (ast.kind != K::Plus)
            nfa.add(s, std::nullopt, f);
        if (ast.kind != K::Opt)
            nfa.add(cf, std::nullopt, cs);
        return {s, f};
    }
    }
    return {0, 0};
}

/// Renumbers the states reachable from `start` in BFS order, exploring
/// successors in alphabet order. Returns old -> new (npos for unreachable).
inline std::vector<std::size_t> bfs_numbering(const Dfa &d, std::size_t start)
{
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> number(d.stateCount, npos);
    std::deque<std::size_t> queue{start};
    number[start] = 0;
    std::size_t next = 1;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            std::size_t t = d.next(s, a);
            if (number[t] == npos) {
                number[t] = next++;
                queue.push_back(t);
            }
        }
    }
    return number;
}

} // namespace detail

/// Thompson construction; every operator or symbol node adds at most two states.
inline Nfa to_nfa(const ProtocolAst &ast)
{
    Nfa nfa;
    auto [s, f] = detail::thompson(ast, nfa);
    nfa.start = s;
    nfa.accept = f;
    return nfa;
}

/// Subset construction over epsilon closures. Only reachable subsets become
/// states; the empty subset acts as the dead state that makes delta total.
/// `extraSymbols` widens the alphabet beyond the symbols used by `nfa`.
inline Dfa nfa_to_dfa(const Nfa &nfa, const std::set<std::string> &extraSymbols = {})
{
    std::set<std::string> symbols = nfa.symbols();
    symbols.insert(extraSymbols.begin(), extraSymbols.end());

    Dfa dfa;
    dfa.alphabet.assign(symbols.begin(), symbols.end());
    const std::size_t width = dfa.alphabet.size();

    std::vector<std::vector<std::size_t>> eps(nfa.stateCount);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves(nfa.stateCount); // (symbol, to)
    for (const auto &t : nfa.transitions) {
        if (t.label)
            moves[t.from].push_back({*dfa.symbol_index(*t.label), t.to});
        else
            eps[t.from].push_back(t.to);
    }

    auto closure = [&](std::vector<std::size_t> seed) {
        std::vector<bool> in(nfa.stateCount, false);
        std::vector<std::size_t> stack;
        for (std::size_t s : seed)
            if (!in[s]) {
                in[s] = true;
                stack.push_back(s);
            }
        while (!stack.empty()) {
            std::size_t s = stack.back();
            stack.pop_back();
            for (std::size_t t : eps[s])
                if (!in[t]) {
                    in[t] = true;
                    stack.push_back(t);
                }
        }
        std::vector<std::size_t> out;
        for (std::size_t s = 0; s < in.size(); ++s)
            if (in[s])
                out.push_back(s);
        return out;
    };

    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::vector<std::size_t>> subsets;
    auto intern = [&](std::vector<std::size_t> set) {
        auto [it, inserted] = index.emplace(set, subsets.size());
        if (inserted)
            subsets.push_back(std::move(set));
        return it->second;
    };

    intern(closure(nfa.stateCount > 0 ? std::vector<std::size_t>{nfa.start} : std::vector<std::size_t>{}));
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t a = 0; a < width; ++a) {
            std::vector<std::size_t> target;
            for (std::size_t s : subsets[i])
                for (auto [sym, to] : moves[s])
                    if (sym == a)
                        target.push_back(to);
            std::size_t id = intern(closure(std::move(target)));
            dfa.delta.push_back(id);
        }
    }
    dfa.stateCount = subsets.size();
    dfa.start = 0;
    dfa.accepting.resize(dfa.stateCount, false);
    for (std::size_t i = 0; i < subsets.size(); ++i)
        dfa.accepting[i] = nfa.stateCount > 0 && std::binary_search(subsets[i].begin(), subsets[i].end(), nfa.accept);
    return dfa;
}

/// Minimal complete DFA for the language of `d`, via partition refinement of
/// the reachable states. States are numbered by BFS from the start state
/// (successors in alphabet order), so equal languages over the same alphabet
/// give equal results.
inline Dfa minimize(const Dfa &d)
{
    const std::size_t width = d.alphabet.size();
    constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::vector<std::size_t> reach = detail::bfs_numbering(d, d.start);
    std::vector<std::size_t> live;
    for (std::size_t s = 0; s < d.stateCount; ++s)
        if (reach[s] != npos)
            live.push_back(s);

    // block id per original state; start from the accepting / rejecting split
    std::vector<std::size_t> block(d.stateCount, 0);
    bool anyAccept = false, anyReject = false;
    for (std::size_t s : live) {
        block[s] = d.accepting[s] ? 1 : 0;
        (d.accepting[s] ? anyAccept : anyReject) = true;
    }
    std::size_t blocks = (anyAccept && anyReject) ? 2 : 1;
    if (!anyReject)
        for (std::size_t s : live)
            block[s] = 0;

    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> signatures;
        std::vector<std::size_t> refined(d.stateCount, 0);
        for (std::size_t s : live) {
            std::vector<std::size_t> sig{block[s]};
            for (std::size_t a = 0; a < width; ++a)
                sig.push_back(block[d.next(s, a)]);
            refined[s] = signatures.emplace(std::move(sig), signatures.size()).first->second;
        }
        bool stable = signatures.size() == blocks;
        blocks = signatures.size();
        block = std::move(refined);
        if (stable)
            break;
    }

    Dfa quotient;
    quotient.alphabet = d.alphabet;
    quotient.stateCount = blocks;
    quotient.delta.assign(blocks * width, 0);
    quotient.accepting.assign(blocks, false);
    for (std::size_t s : live) {
        quotient.accepting[block[s]] = d.accepting[s];
        for (std::size_t a = 0; a < width; ++a)
            quotient.delta[block[s] * width + a] = block[d.next(s, a)];
    }
    quotient.start = block[d.start];

    std::vector<std::size_t> order = detail::bfs_numbering(quotient, quotient.start);
    Dfa canonical;
    canonical.alphabet = d.alphabet;
    canonical.stateCount = blocks;
    canonical.start = 0;
    canonical.delta.assign(blocks * width, 0);
    canonical.accepting.assign(blocks, false);
    for (std::size_t s = 0; s < blocks; ++s) {
        canonical.accepting[order[s]] = quotient.accepting[s];
        for (std::size_t a = 0; a < width; ++a)
            canonical.delta[order[s] * width + a] = order[quotient.next(s, a)];
    }
    return canonical;
}

/// Minimal canonical DFA of a protocol over its own symbols plus `extraSymbols`.
inline Dfa compile_protocol(const ProtocolAst &ast, const std::set<std::string> &extraSymbols = {})
{
    return minimize(nfa_to_dfa(to_nfa(ast), extraSymbols));
}

/// Language equivalence of two protocols, decided by comparing canonical
/// minimal DFAs built over the union of both alphabets.
inline bool equivalent(const ProtocolAst &a, const ProtocolAst &b)
{
    std::set<std::string> alphabet = symbols_of(a);
    alphabet.merge(symbols_of(b));
    return compile_protocol(a, alphabet) == compile_protocol(b, alphabet);
}

/// Plain-text form: `states=<n> start=<s>`, `accepting=<comma list>`, then one
/// `src symbol dst` line per transition ordered by source then symbol.
inline std::string serialize(const Dfa &d)
{
    std::ostringstream os;
    os << "states=" << d.stateCount << " start=" << d.start << "\naccepting=";
    bool first = true;
    for (std::size_t s = 0; s < d.stateCount; ++s) {
        if (!d.accepting[s])
            continue;
        os << (first ? "" : ",") << s;
        first = false;
    }
    os << '\n';
    for (std::size_t s = 0; s < d.stateCount; ++s)
        for (std::size_t a = 0; a < d.alphabet.size(); ++a)
            os << s << ' ' << d.alphabet[a] << ' ' << d.next(s, a) << '\n';
    return os.str();
}

} // namespace ctrmatch
