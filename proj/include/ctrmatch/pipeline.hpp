#pragma once

#include "ctrmatch/automata.hpp"
#include "ctrmatch/contract.hpp"
#include "ctrmatch/contract_graph.hpp"
#include "ctrmatch/graphml.hpp"
#include "ctrmatch/protocol.hpp"
#include "ctrmatch/subgraph_match.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace ctrmatch {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const fs::path &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out)
        throw Error("cannot write " + path.string());
}

/// Flat-file store of ingested contracts: `<component>.ctr`, `<component>.graphml`,
/// an `index.json` listing them and, once built, `aa.graphml`.
class Repository
{
  public:
    struct Entry
    {
        fs::path contractFile;
        fs::path graphFile;
        std::string protocolText;
        std::vector<std::string> warnings;
    };

    static constexpr const char *kIndexFile = "index.json";
    static constexpr const char *kArchitectureFile = "aa.graphml";

    /// Opens (creating if needed) the repository rooted at `root`.
    static Repository open(const fs::path &root)
    {
        Repository repo;
        repo.root_ = root;
        fs::create_directories(root);
        fs::path index = root / kIndexFile;
        if (!fs::exists(index))
            return repo;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_file(index));
            for (const auto &item : doc.at("components")) {
                Entry e;
                e.contractFile = root / item.at("contract").get<std::string>();
                e.graphFile = root / item.at("graph").get<std::string>();
                e.protocolText = item.at("protocol").get<std::string>();
                e.warnings = item.value("warnings", std::vector<std::string>{});
                repo.contracts_[item.at("component").get<std::string>()] = std::move(e);
            }
        } catch (const nlohmann::json::exception &ex) {
            throw FormatError("corrupt repository index " + index.string() + ": " + ex.what());
        }
        return repo;
    }

    void save() const
    {
        nlohmann::ordered_json doc;
        doc["components"] = nlohmann::ordered_json::array();
        for (const auto &[component, e] : contracts_) {
            doc["components"].push_back({{"component", component},
                                         {"contract", e.contractFile.filename().string()},
                                         {"graph", e.graphFile.filename().string()},
                                         {"protocol", e.protocolText},
                                         {"warnings", e.warnings}});
        }
        write_file(root_ / kIndexFile, doc.dump(2) + "\n");
    }

    const fs::path &root() const noexcept { return root_; }
    fs::path architecture_path() const { return root_ / kArchitectureFile; }
    const std::map<std::string, Entry> &contracts() const noexcept { return contracts_; }

    void put(const std::string &component, Entry entry) { contracts_[component] = std::move(entry); }

  private:
    fs::path root_;
    std::map<std::string, Entry> contracts_;
};

struct IngestReport
{
    std::vector<std::string> ingested; ///< component classes, in file order
    std::vector<std::string> warnings;
    std::vector<std::string> failures; ///< "file:line:column: message" or "file: message"

    bool ok() const noexcept { return failures.empty(); }
};

/// Parses, validates and stores each contract. A file that fails to parse is
/// reported and skipped; validation issues are recorded as warnings only.
/// Any ingest invalidates a previously built aa.graphml.
inline IngestReport ingest(std::span<const fs::path> contractFiles, Repository &repo)
{
    IngestReport report;
    for (const auto &file : contractFiles) {
        try {
            std::string source = read_file(file);
            ContractAst ast = parse_contract_source(source);

            Repository::Entry entry;
            for (const auto &issue : validate_contract(ast))
                entry.warnings.push_back(issue.message());
            try {
                parse_protocol(ast.protocol);
            } catch (const ProtocolParseError &e) {
                entry.warnings.push_back(std::string("ProtocolParseError(\"") + e.what() + "\")");
            }
            for (const auto &w : entry.warnings)
                report.warnings.push_back(file.string() + ": " + w);

            entry.contractFile = repo.root() / (ast.componentClass + ".ctr");
            entry.graphFile = repo.root() / (ast.componentClass + ".graphml");
            entry.protocolText = ast.protocol.str();
            write_file(entry.contractFile, source);
            write_file(entry.graphFile, to_graphml(build_contract_graph(ast)));
            repo.put(ast.componentClass, std::move(entry));
            report.ingested.push_back(ast.componentClass);
        } catch (const SourceError &e) {
            report.failures.push_back(file.string() + ":" + e.what());
        } catch (const Error &e) {
            report.failures.push_back(file.string() + ": " + e.what());
        }
    }
    if (!report.ingested.empty()) {
        repo.save();
        fs::remove(repo.architecture_path());
    }
    return report;
}

/// Composes all stored contract graphs (in component-name order) into the
/// architecture graph and writes aa.graphml.
inline fs::path build_architecture(const Repository &repo)
{
    std::vector<LabeledGraph> graphs;
    for (const auto &[component, entry] : repo.contracts()) {
        std::ifstream in(entry.graphFile, std::ios::binary);
        if (!in)
            throw FormatError("missing graph file " + entry.graphFile.string());
        try {
            graphs.push_back(read_graphml(in));
        } catch (const FormatError &e) {
            throw FormatError(entry.graphFile.string() + ": " + e.what());
        }
    }
    fs::path out = repo.architecture_path();
    write_file(out, to_graphml(build_aa_graph(graphs)));
    return out;
}

enum class Recommendation { Reuse, BuildNew };

inline std::string_view to_string(Recommendation r) { return r == Recommendation::Reuse ? "REUSE" : "BUILD_NEW"; }

struct ConfirmedMatch
{
    std::string component;
    std::map<std::string, std::string> substitution;

    bool operator==(const ConfirmedMatch &) const = default;
};

struct MatchOutcome
{
    std::vector<std::string> phase1Candidates;
    std::vector<ConfirmedMatch> confirmed;
    Recommendation recommendation = Recommendation::BuildNew;
    std::vector<std::string> warnings;

    bool operator==(const MatchOutcome &) const = default;
};

struct MatchOptions
{
    std::size_t witnessLimit = 8;
};

/// Two-phase match of a parsed requirement against the repository's
/// architecture graph (built on demand when aa.graphml is absent).
inline MatchOutcome match(const ContractAst &required, const Repository &repo, const MatchOptions &options = {})
{
    MatchOutcome outcome;
    for (const auto &issue : validate_contract(required))
        outcome.warnings.push_back("required: " + issue.message());
    ProtocolAst requiredProtocol = parse_protocol(required.protocol);

    // protocol symbols without a declared method have no graph node; they pass through unchanged
    std::set<std::string> declared;
    for (const auto &m : required.methods)
        declared.insert(m.name);
    std::map<std::string, std::string> passthrough;
    for (const auto &s : symbols_of(requiredProtocol))
        if (!declared.contains(s))
            passthrough.emplace(s, s);

    fs::path aaPath = repo.architecture_path();
    if (!fs::exists(aaPath))
        build_architecture(repo);
    LabeledGraph aa;
    {
        std::ifstream in(aaPath, std::ios::binary);
        aa = read_graphml(in);
    }

    LabeledGraph requiredGraph = build_contract_graph(required);
    for (auto &report : match_against_architecture(requiredGraph, aa, options.witnessLimit)) {
        if (!report.matched)
            continue;
        outcome.phase1Candidates.push_back(report.candidateComponent);

        auto entry = repo.contracts().find(report.candidateComponent);
        if (entry == repo.contracts().end()) {
            outcome.warnings.push_back(report.candidateComponent + ": no protocol on record");
            continue;
        }
        ProtocolAst candidateProtocol;
        try {
            candidateProtocol = parse_protocol(std::string_view(entry->second.protocolText));
        } catch (const Error &e) {
            outcome.warnings.push_back(report.candidateComponent + ": " + e.what());
            continue;
        }
        for (const auto &witness : report.mappings) {
            if (witness.substitutionConflict)
                continue;
            auto substitution = witness.methodSubstitution;
            substitution.insert(passthrough.begin(), passthrough.end());
            if (equivalent(remap_alphabet(requiredProtocol, substitution), candidateProtocol)) {
                outcome.confirmed.push_back({report.candidateComponent, witness.methodSubstitution});
                break;
            }
        }
    }
    outcome.recommendation = outcome.confirmed.empty() ? Recommendation::BuildNew : Recommendation::Reuse;
    return outcome;
}

inline MatchOutcome match(const fs::path &requiredContract, const Repository &repo, const MatchOptions &options = {})
{
    return match(parse_contract_source(read_file(requiredContract)), repo, options);
}

enum class ReportFormat { Json, Text };

inline std::string report(const MatchOutcome &outcome, ReportFormat format)
{
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json doc;
        doc["phase1"] = outcome.phase1Candidates;
        doc["confirmed"] = nlohmann::ordered_json::array();
        for (const auto &c : outcome.confirmed)
            doc["confirmed"].push_back({{"component", c.component}, {"substitution", c.substitution}});
        doc["recommendation"] = to_string(outcome.recommendation);
        if (!outcome.warnings.empty())
            doc["warnings"] = outcome.warnings;
        return doc.dump();
    }

    std::ostringstream os;
    std::set<std::string> confirmed;
    for (const auto &c : outcome.confirmed)
        confirmed.insert(c.component);

    os << "confirmed (structure and protocol):\n";
    if (outcome.confirmed.empty())
        os << "  (none)\n";
    for (const auto &c : outcome.confirmed) {
        os << "  " << c.component << '\n';
        for (const auto &[from, to] : c.substitution)
            os << "    " << from << " -> " << to << '\n';
    }
    os << "matched structure, protocol mismatch:\n";
    std::size_t mismatches = 0;
    for (const auto &name : outcome.phase1Candidates) {
        if (!confirmed.contains(name)) {
            os << "  " << name << '\n';
            ++mismatches;
        }
    }
    if (mismatches == 0)
        os << "  (none)\n";
    for (const auto &w : outcome.warnings)
        os << "warning: " << w << '\n';
    os << "recommendation: " << to_string(outcome.recommendation) << '\n';
    return os.str();
}

} // namespace ctrmatch
