#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "betabound/report.hpp"

namespace {

// "A:B" -> {A, B}
std::pair<std::string, std::string> parse_pair(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == arg.size()) {
        throw CLI::ValidationError("--exclude-pair", "expected LABEL:LABEL, got '" + arg + "'");
    }
    return {arg.substr(0, colon), arg.substr(colon + 1)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact minimum and maximum of the adjusted slope of y on x over all\n"
        "2^p least-squares models built from subsets of the given covariates."};

    betabound::RunConfig config;
    std::string mode = "bb";
    std::string format = "text";
    std::vector<std::string> exclude_args;
    std::int64_t budget = -1;
    int grid_check = 0;

    app.add_option("--data", config.data_path, "CSV file with a header row")
        ->required();
    app.add_option("--y", config.y_col, "response column label")->required();
    app.add_option("--x", config.x_col, "explanatory column label")->required();
    app.add_option("--covariates", config.cov_cols,
                   "comma-separated covariate labels (wins over --all-others)")
        ->delimiter(',');
    app.add_flag("--all-others", config.all_others,
                 "use every column except --y and --x as a covariate");
    app.add_option("--interactions", config.interaction_bases,
                   "comma-separated base labels; all pairwise products are appended")
        ->delimiter(',');
    app.add_option("--exclude-pair", exclude_args,
                   "interaction pair A:B to skip (repeatable)")
        ->allow_extra_args(false);
    app.add_option("--mode", mode, "bb, bf, or both")
        ->check(CLI::IsMember({"bb", "bf", "both"}));
    app.add_option("--node-budget", budget, "stop after this many popped nodes");
    app.add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--grid-check", grid_check,
                   "audit every envelope against an N-point grid oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic
        return 2;     // any command-line problem is an input error
    }

    config.mode = mode == "bb"   ? betabound::Mode::bb
                  : mode == "bf" ? betabound::Mode::bf
                                 : betabound::Mode::both;
    config.format = format == "json" ? betabound::Format::json : betabound::Format::text;
    if (budget >= 0) config.node_budget = static_cast<std::uint64_t>(budget);
    if (grid_check > 0) config.grid_check = grid_check;
    try {
        for (const auto& arg : exclude_args) {
            config.excluded_pairs.push_back(parse_pair(arg));
        }
        const betabound::RunOutcome outcome = betabound::run(config);
        std::cout << outcome.report;
        std::cerr << outcome.diagnostics;
        return outcome.exit_code;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const betabound::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
