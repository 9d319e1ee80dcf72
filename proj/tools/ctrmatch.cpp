#include "ctrmatch/ctrmatch.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kReuse = 0, kBuildNew = 1, kInputError = 2 };

std::string default_repo()
{
    const char *env = std::getenv("CTRMATCH_REPO");
    return env ? env : "";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Match component contracts against an application architecture"};
    app.require_subcommand(1);

    std::string repoDir = default_repo();
    auto add_repo = [&repoDir](CLI::App *cmd) {
        cmd->add_option("--repo", repoDir, "Repository directory (default: $CTRMATCH_REPO)");
    };

    std::vector<std::string> files;
    auto *ingestCmd = app.add_subcommand("ingest", "Parse contracts and store their graphs");
    ingestCmd->add_option("files", files, "Contract files (.ctr)")->required();
    add_repo(ingestCmd);

    auto *buildCmd = app.add_subcommand("build-aa", "Compose aa.graphml from the stored contract graphs");
    add_repo(buildCmd);

    std::string required;
    std::string format = "json";
    std::size_t witnessLimit = 8;
    auto *matchCmd = app.add_subcommand("match", "Find components matching a required contract");
    matchCmd->add_option("required", required, "Required contract (.ctr)")->required();
    matchCmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    matchCmd->add_option("--witness-limit", witnessLimit, "Embeddings tried per candidate")
        ->check(CLI::PositiveNumber);
    add_repo(matchCmd);

    std::string protocolSource;
    auto *dfaCmd = app.add_subcommand("dfa", "Print the canonical minimal DFA of a contract's protocol");
    dfaCmd->add_option("contract", protocolSource, "Contract file (.ctr)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (dfaCmd->parsed()) {
            auto ast = ctrmatch::parse_contract_source(ctrmatch::read_file(protocolSource));
            std::cout << ctrmatch::serialize(ctrmatch::compile_protocol(ctrmatch::parse_protocol(ast.protocol)));
            return 0;
        }

        if (repoDir.empty()) {
            std::cerr << "ctrmatch: no repository given (use --repo or set CTRMATCH_REPO)\n";
            return kInputError;
        }
        auto repo = ctrmatch::Repository::open(repoDir);

        if (ingestCmd->parsed()) {
            std::vector<ctrmatch::fs::path> paths(files.begin(), files.end());
            auto result = ctrmatch::ingest(paths, repo);
            for (const auto &w : result.warnings)
                std::cerr << "warning: " << w << '\n';
            for (const auto &f : result.failures)
                std::cerr << "error: " << f << '\n';
            for (const auto &c : result.ingested)
                std::cout << "ingested " << c << '\n';
            return result.ok() ? 0 : kInputError;
        }

        if (buildCmd->parsed()) {
            std::cout << ctrmatch::build_architecture(repo).string() << '\n';
            return 0;
        }

        auto outcome = ctrmatch::match(ctrmatch::fs::path(required), repo, {witnessLimit});
        auto fmt = format == "text" ? ctrmatch::ReportFormat::Text : ctrmatch::ReportFormat::Json;
        std::cout << ctrmatch::report(outcome, fmt);
        if (fmt == ctrmatch::ReportFormat::Json)
            std::cout << '\n';
        return outcome.recommendation == ctrmatch::Recommendation::Reuse ? kReuse : kBuildNew;
    } catch (const ctrmatch::Error &e) {
        std::cerr << "ctrmatch: " << e.what() << '\n';
        return kInputError;
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "ctrmatch: " << e.what() << '\n';
        return kInputError;
    }
}
