// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include "ctrmatch/ctrmatch.hpp"
#include "oracles/brute_force.hpp"
#include "oracles/contract_gen.hpp"
#include "oracles/graph_census.hpp"
#include "oracles/graph_pairs.hpp"
#include "oracles/regex_oracle.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace ctrmatch;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict
{
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::pair<int, std::string> run_cli(const std::string &args)
{
    std::string cmd = std::string(CTRMATCH_CLI) + " " + args + " 2>&1";
    FILE *pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
        out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<fs::path> corpus_files()
{
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(test_support::corpus_dir()))
        if (e.path().extension() == ".ctr")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    return files;
}

std::set<std::string> confirmed_set(const MatchOutcome &o)
{
    std::set<std::string> out;
    for (const auto &c : o.confirmed)
        out.insert(c.component);
    return out;
}

/// Renames methods and fields consistently, protocol symbols in lockstep.
ContractAst rename_members(ContractAst ast, std::mt19937 &rng)
{
    std::map<std::string, std::string> names;
    std::uniform_int_distribution<int> tag(0, 99999);
    auto fresh = [&](const std::string &old) {
        auto it = names.find(old);
        if (it == names.end())
            it = names.emplace(old, "r" + std::to_string(tag(rng)) + "_" + std::to_string(names.size())).first;
        return it->second;
    };
    for (auto &m : ast.methods)
        m.name = fresh(m.name);
    for (auto &t : ast.protocol.tokens)
        if (names.contains(t))
            t = names[t];
    for (auto &f : ast.fields)
        f.name = "fld_" + std::to_string(tag(rng)) + "_" + f.name;
    return ast;
}

// ---------------------------------------------------------------------------

Verdict document_manager_end_to_end()
{
    Verdict v;
    test_support::TempDir dir("acc1");
    std::string repo = " --repo " + dir.path().string();
    std::string dm = (test_support::corpus_dir() / "document_manager.ctr").string();
    auto [ingestCode, ingestOut] = run_cli("ingest " + dm + repo);
    v.require(ingestCode == 0, "ingest failed: " + ingestOut);

    auto t0 = Clock::now();
    auto [code, out] = run_cli("match " + dm + repo);
    double elapsed = seconds_since(t0);
    v.require(code == 0, "exit code " + std::to_string(code));
    v.require(out.find(R"("recommendation":"REUSE")") != std::string::npos, "no REUSE in " + out);
    v.require(out.find(R"("confirmed":[{"component":"DocumentManager")") != std::string::npos,
              "DocumentManager not confirmed: " + out);
    v.require(elapsed < 1.0, "match took " + std::to_string(elapsed) + " s");
    if (v.pass)
        v.detail = "REUSE, match ran in " + std::to_string(static_cast<int>(elapsed * 1000)) + " ms";
    return v;
}

Verdict graph_counts()
{
    Verdict v;
    ContractAst ast = parse_contract_source(test_support::document_manager_source());
    oracle::Census expected = oracle::expected_census(ast);
    oracle::Census actual = oracle::census(build_contract_graph(ast));
    v.require(actual == expected, "census mismatch");
    std::ostringstream os;
    for (const auto &[k, n] : actual.nodes)
        os << to_string(k) << "=" << n << " ";
    os << "edges=" << actual.edges;
    if (v.pass)
        v.detail = os.str();
    return v;
}

Verdict subgraph_oracle()
{
    Verdict v;
    auto t0 = Clock::now();
    std::mt19937 rng(0x5eed);
    const int pairs = 250;
    int withEmbedding = 0;
    for (int i = 0; i < pairs && v.pass; ++i) {
        auto [req, cand] = oracle::random_graph_pair(rng, 8);
        v.require(req.node_count() <= 8, "required graph too large");
        std::set<std::map<NodeId, NodeId>> fast, slow;
        for (const auto &m : find_embeddings(req, cand))
            fast.insert(m.pairs);
        for (auto &m : oracle::brute_force_embeddings(req, cand))
            slow.insert(std::move(m));
        v.require(fast == slow, "disagreement on pair " + std::to_string(i));
        withEmbedding += !fast.empty();
    }
    double elapsed = seconds_since(t0);
    v.require(elapsed < 60.0, "suite took " + std::to_string(elapsed) + " s");
    if (v.pass)
        v.detail = std::to_string(pairs) + " pairs (" + std::to_string(withEmbedding) + " embeddable), 100% agreement";
    return v;
}

Verdict automata_oracle()
{
    Verdict v;
    auto t0 = Clock::now();
    v.require(equivalent(parse_protocol("(a|b)*"), parse_protocol("(a*b*)*")), "(a|b)* vs (a*b*)*");
    v.require(equivalent(parse_protocol("a+"), parse_protocol("a a*")), "a+ vs a a*");
    v.require(!equivalent(parse_protocol("a"), parse_protocol("b")), "a vs b");

    std::mt19937 rng(0xa11);
    const int pairs = 600;
    int agreeingEquivalent = 0;
    for (int i = 0; i < pairs && v.pass; ++i) {
        auto alphabet = oracle::letters(1 + i % 3);
        ProtocolAst a = oracle::random_regex(rng, alphabet, 4);
        ProtocolAst b = oracle::random_regex(rng, alphabet, 4);
        if (i % 2) {
            ProtocolAst rewritten = oracle::rewrite_equivalent(rng, a);
            if (oracle::depth(rewritten) <= 4)
                b = std::move(rewritten);
        }
        bool fast = equivalent(a, b);
        bool slow = oracle::same_language_upto(a, b, alphabet, 6);
        v.require(fast == slow, to_string(a) + " vs " + to_string(b));
        agreeingEquivalent += fast;
    }
    double elapsed = seconds_since(t0);
    v.require(elapsed < 60.0, "suite took " + std::to_string(elapsed) + " s");
    if (v.pass)
        v.detail = std::to_string(pairs) + " pairs (" + std::to_string(agreeingEquivalent) +
                   " equivalent) + 3 fixed cases, 100% agreement";
    return v;
}

Verdict minimization()
{
    Verdict v;
    std::mt19937 rng(0xd0a);
    std::uniform_int_distribution<std::size_t> states(1, 8), width(1, 3);
    for (int i = 0; i < 200 && v.pass; ++i) {
        Dfa d = oracle::random_dfa(rng, states(rng), width(rng));
        Dfa m = minimize(d);
        v.require(minimize(m).stateCount == m.stateCount, "not idempotent on dfa " + std::to_string(i));
        for (const auto &w : oracle::all_words(d.alphabet, 6))
            if (m.accepts(w) != d.accepts(w)) {
                v.require(false, "language changed on dfa " + std::to_string(i));
                break;
            }
    }
    if (v.pass)
        v.detail = "200 random DFAs";
    return v;
}

Verdict round_trips()
{
    Verdict v;
    std::mt19937 rng(0x7a7);
    for (int i = 0; i < 100 && v.pass; ++i) {
        std::vector<LabeledGraph> parts;
        for (int k = 0; k <= i % 3; ++k)
            parts.push_back(build_contract_graph(oracle::random_contract(rng, "G" + std::to_string(k))));
        LabeledGraph g = i % 2 ? build_aa_graph(parts) : parts.front();
        v.require(from_graphml(to_graphml(g)) == g, "GraphML round trip failed on graph " + std::to_string(i));
    }
    for (int i = 0; i < 100 && v.pass; ++i) {
        ContractAst ast = oracle::random_contract(rng, "A" + std::to_string(i));
        v.require(parse_contract_source(to_source(ast)) == ast, "AST round trip failed on contract " + std::to_string(i));
    }
    if (v.pass)
        v.detail = "100 graphs, 100 ASTs";
    return v;
}

Verdict funnel()
{
    Verdict v;
    test_support::TempDir dir("acc7");
    Repository repo = Repository::open(dir.path());
    auto files = corpus_files();
    v.require(files.size() == 6, "corpus should hold 6 contracts");
    v.require(ingest(files, repo).ok(), "seeding failed");
    build_architecture(repo);

    std::vector<ContractAst> bases;
    for (const auto &f : files)
        bases.push_back(parse_contract_source(read_file(f)));

    std::mt19937 rng(0xf00);
    int perturbed = 0;
    for (int q = 0; q < 50 && v.pass; ++q) {
        ContractAst query = bases[q % bases.size()];
        const std::string original = query.componentClass;
        query.componentClass = "Query" + std::to_string(q);
        int variant = q % 3;
        if (variant == 0) {
            query = rename_members(query, rng);
        } else if (variant == 1) {
            std::bernoulli_distribution keep(0.6);
            std::erase_if(query.fields, [&](const FieldDecl &) { return !keep(rng); });
            std::erase_if(query.methods, [&](const MethodDecl &) { return !keep(rng); });
        } else {
            // append one declared method call: every accepted trace grows by one
            // symbol, so no renaming of the original protocol can equal it
            std::uniform_int_distribution<std::size_t> pick(0, query.methods.size() - 1);
            std::vector<std::string> tokens{"("};
            tokens.insert(tokens.end(), query.protocol.tokens.begin(), query.protocol.tokens.end());
            tokens.push_back(")");
            tokens.push_back(query.methods[pick(rng)].name);
            query.protocol.tokens = std::move(tokens);
            ++perturbed;
        }
        MatchOutcome o = match(query, repo);
        std::set<std::string> phase1(o.phase1Candidates.begin(), o.phase1Candidates.end());
        for (const auto &c : confirmed_set(o))
            v.require(phase1.contains(c), "query " + std::to_string(q) + ": confirmed outside phase 1");
        if (variant == 2) {
            v.require(phase1.contains(original), "query " + std::to_string(q) + ": original missing from phase 1");
            v.require(!confirmed_set(o).contains(original),
                      "query " + std::to_string(q) + ": perturbed protocol confirmed against " + original);
        }
    }
    if (v.pass)
        v.detail = "50 queries (" + std::to_string(perturbed) + " perturbed)";
    return v;
}

Verdict rename_invariance()
{
    Verdict v;
    test_support::TempDir dir("acc8");
    Repository repo = Repository::open(dir.path());
    auto files = corpus_files();
    v.require(ingest(files, repo).ok(), "seeding failed");

    std::mt19937 rng(0xbee);
    for (int i = 0; i < 20 && v.pass; ++i) {
        ContractAst base = parse_contract_source(read_file(files[i % files.size()]));
        std::set<std::string> before = confirmed_set(match(base, repo));
        std::set<std::string> after = confirmed_set(match(rename_members(base, rng), repo));
        v.require(before == after, "renaming " + base.componentClass + " changed the confirmed set");
        v.require(before.contains(base.componentClass), base.componentClass + " does not self-confirm");
    }
    if (v.pass)
        v.detail = "20 renamings";
    return v;
}

Verdict discrepancy_warning()
{
    Verdict v;
    test_support::TempDir dir("acc9");
    Repository repo = Repository::open(dir.path());
    std::vector<fs::path> files{test_support::corpus_dir() / "document_manager.ctr"};
    IngestReport r = ingest(files, repo);
    std::size_t undeclared = 0;
    for (const auto &w : r.warnings)
        if (w.find("UndeclaredProtocolSymbol") != std::string::npos) {
            ++undeclared;
            v.require(w.find("(\"searchDocument\")") != std::string::npos, "unexpected warning " + w);
        }
    v.require(r.ok(), "ingest failed");
    v.require(undeclared == 1, std::to_string(undeclared) + " UndeclaredProtocolSymbol warnings");
    if (v.pass)
        v.detail = "one warning: searchDocument";
    return v;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1 DocumentManager end-to-end REUSE", document_manager_end_to_end},
        {"2 DocumentManager graph counts", graph_counts},
        {"3 subgraph matcher vs brute force", subgraph_oracle},
        {"4 protocol equivalence vs enumeration", automata_oracle},
        {"5 minimization idempotence and language", minimization},
        {"6 GraphML and contract round trips", round_trips},
        {"7 two-phase funnel", funnel},
        {"8 rename invariance", rename_invariance},
        {"9 DocumentManager discrepancy warning", discrepancy_warning},
    };

    int failures = 0;
    for (const auto &[name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception &e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << " -- " << v.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
