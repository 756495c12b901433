#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "offsetdeg/cli.hpp"
#include "offsetdeg/errors.hpp"

namespace {

void arm_watchdog() {
    const char* env = std::getenv("OFFSETDEG_MAX_SECONDS");
    if (!env) return;
    char* end = nullptr;
    const long seconds = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || seconds <= 0) return;
    std::thread([seconds] {
        std::this_thread::sleep_for(std::chrono::seconds(seconds));
        std::cerr << "offsetdeg: wall-clock budget of " << seconds
                  << " s exceeded\n";
        std::_Exit(5);
    }).detach();
}

offsetdeg::RunOptions make_options(const std::string& checks,
                                   std::uint64_t seed, unsigned trials,
                                   const std::string& format, bool timing) {
    offsetdeg::RunOptions opts;
    if (checks == "none")
        opts.checks = offsetdeg::ChecksLevel::none;
    else if (checks == "all")
        opts.checks = offsetdeg::ChecksLevel::all;
    else
        opts.checks = offsetdeg::ChecksLevel::fast;
    opts.seed = seed;
    opts.trials = trials;
    opts.format = format == "json" ? offsetdeg::ReportFormat::json
                                   : offsetdeg::ReportFormat::text;
    opts.timing = timing;
    return opts;
}

// Handled ahead of the option parser so expressions with a leading minus
// need no "--" separator.
int run_parse(std::vector<std::string> args) {
    if (args.size() == 1 && (args[0] == "-h" || args[0] == "--help")) {
        std::cout << "Usage: offsetdeg parse <expr>\n"
                     "Parse a surface expression in t1, t2 and echo its "
                     "canonical form.\n";
        return 0;
    }
    if (!args.empty() && args[0] == "--") args.erase(args.begin());
    if (args.size() != 1) {
        std::cerr << "usage: offsetdeg parse <expr>\n";
        return 1;
    }
    try {
        std::cout << offsetdeg::parse_expression(args[0]).str() << "\n";
        return 0;
    } catch (const offsetdeg::ParseError& e) {
        std::cerr << "parse error at position " << e.position() << ": "
                  << e.what() << "\n";
        return 1;
    }
}

int run_file(const std::string& path, const offsetdeg::RunOptions& opts) {
    offsetdeg::SurfaceInput input;
    try {
        input = offsetdeg::read_surface_file(path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    const offsetdeg::RunOutcome outcome = offsetdeg::run(input, opts);
    if (outcome.exit_code == 0)
        std::cout << outcome.report;
    else
        std::cerr << outcome.report << "\n";
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc >= 2 && std::string(argv[1]) == "parse")
        return run_parse(std::vector<std::string>(argv + 2, argv + argc));

    CLI::App app{"total degree of the generic offset to a rational surface"};
    app.require_subcommand(1);

    std::string file;
    std::string checks = "fast";
    std::uint64_t seed = 42;
    unsigned trials = 25;
    std::string format = "text";
    bool timing = false;
    std::string expr;

    CLI::App* compute =
        app.add_subcommand("compute", "run the degree pipeline on a surface");
    compute->add_option("file", file, "surface description file")->required();
    compute->add_option("--checks", checks, "verification depth")
        ->check(CLI::IsMember({"none", "fast", "all"}));
    compute->add_option("--seed", seed, "seed for the randomized suites");
    compute->add_option("--trials", trials, "trials per randomized suite");
    compute->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    compute->add_flag("--timing", timing, "include per-stage timings");

    CLI::App* verify = app.add_subcommand(
        "verify", "run the pipeline with every check suite enabled");
    verify->add_option("file", file, "surface description file")->required();
    verify->add_option("--seed", seed, "seed for the randomized suites");
    verify->add_option("--trials", trials, "trials per randomized suite");
    verify->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_flag("--timing", timing, "include per-stage timings");

    CLI::App* parse = app.add_subcommand(
        "parse", "parse a surface expression and echo its canonical form");
    parse->add_option("expr", expr, "expression in t1, t2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    arm_watchdog();

    if (parse->parsed()) return run_parse({expr});
    if (verify->parsed()) checks = "all";
    return run_file(file, make_options(checks, seed, trials, format, timing));
}
