#include "lpq/cli.hpp"
#include "lpq/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"lambda-pq: finite-difference toolkit for the nonlinear eigenvalue "
                 "Lambda_{p,q} = inf |Lap u|_p / |u|_q and Lane-Emden asymptotics"};

    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    bool plots = false;
    std::uint64_t seed = 0;
    bool have_seed = false;

    app.add_option("--config", config_path, "JSON config file (see README for the schema)");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--jobs", jobs, "worker thread cap");
    app.add_flag("--plots", plots, "emit SVG plots");
    app.add_option("--seed", seed, "RNG seed for randomized seeds/profiles")
        ->each([&](const std::string&) { have_seed = true; });

    std::string command_arg;
    app.add_option("command", command_arg,
                   "command shorthand (verify | ball | spinning-top); alternative to --config");

    CLI11_PARSE(app, argc, argv);

    std::string text;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config " << config_path << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else if (!command_arg.empty()) {
        text = "{\"command\": \"" + command_arg + "\"}";
        if (command_arg == "ball") text = R"({"command":"ball","parameters":{"N":3,"q":1}})";
        if (command_arg == "spinning-top") text = R"({"command":"spinning-top","parameters":{"q":1}})";
    } else {
        std::cerr << app.help();
        return 2;
    }

    try {
        lpq::RunConfig cfg = lpq::parse_config(text);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (jobs > 0) cfg.jobs = jobs;
        if (plots) cfg.emit_plots = true;
        if (have_seed) cfg.seed = seed;
        return lpq::run(cfg);
    } catch (const lpq::ParseError& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 2;
    } catch (const lpq::ConfigInvalid& e) {
        std::cerr << "config invalid: " << e.what() << "\n";
        return 2;
    } catch (const lpq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
