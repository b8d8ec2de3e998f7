// Command-line front end.
//
//   imethod-lab <config-path> [--override key=value ...] [--out DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 numeric or diagnostic
// failure. The worker count is controlled only by IMETHOD_LAB_WORKERS.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "imlab/config.hpp"
#include "imlab/runner.hpp"
#include "imlab/version.hpp"

namespace {

void print_usage(std::FILE* stream) {
    std::fprintf(stream,
                 "usage: imethod-lab <config-path> [--override key=value ...] [--out DIR]\n"
                 "       imethod-lab --help | --version\n"
                 "\n"
                 "Runs the experiment named in the config file and writes CSV artifacts,\n"
                 "a gnuplot script, and a run manifest into the output directory\n"
                 "(default: ./out-<experiment>). Exit codes: 0 success, 2 config error,\n"
                 "3 numeric failure.\n");
}

struct CliArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    bool help = false;
    bool version = false;
};

CliArgs parse_args(int argc, char** argv) {
    CliArgs args;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            args.help = true;
        } else if (arg == "--version") {
            args.version = true;
        } else if (arg == "--override") {
            if (i + 1 >= argc) throw imlab::ConfigError("--override requires key=value");
            args.overrides.emplace_back(argv[++i]);
        } else if (arg == "--out") {
            if (i + 1 >= argc) throw imlab::ConfigError("--out requires a directory");
            args.out_dir = argv[++i];
        } else if (!arg.empty() && arg[0] == '-') {
            throw imlab::ConfigError("unknown option '" + arg + "'");
        } else if (args.config_path.empty()) {
            args.config_path = arg;
        } else {
            throw imlab::ConfigError("unexpected extra argument '" + arg + "'");
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CliArgs args;
    imlab::ExperimentConfig cfg;
    try {
        args = parse_args(argc, argv);
        if (args.help) {
            print_usage(stdout);
            return 0;
        }
        if (args.version) {
            std::printf("%s %s\n", imlab::kToolName, imlab::kVersion);
            return 0;
        }
        if (args.config_path.empty()) {
            print_usage(stderr);
            return 2;
        }
        std::ifstream is(args.config_path);
        if (!is) {
            std::fprintf(stderr, "error: cannot read config file '%s'\n",
                         args.config_path.c_str());
            return 2;
        }
        std::ostringstream text;
        text << is.rdbuf();
        cfg = imlab::parse_config(text.str(), args.overrides);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    const std::filesystem::path out_dir =
        args.out_dir.empty() ? std::filesystem::path("out-" + experiment_name(cfg.experiment))
                             : std::filesystem::path(args.out_dir);
    try {
        const imlab::RunResult result = imlab::run_experiment(cfg, out_dir);
        for (const auto& line : result.summary) std::printf("%s\n", line.c_str());
        for (const auto& artifact : result.artifacts)
            std::printf("wrote %s\n", artifact.string().c_str());
        return 0;
    } catch (const imlab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
}
