// qheat <task> --config <path> [--out <path>]

#include "qheat/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw qheat::InputError("cannot write " + path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat traces, spectral zeta functions and small-beta expansions"};
    std::string task, config, out;
    app.add_option("task", task, "trace | aq | zeta | expand | verify")
        ->required()
        ->check(CLI::IsMember({"trace", "aq", "zeta", "expand", "verify"}));
    app.add_option("--config", config, "run configuration file")->required();
    app.add_option("--out", out, "CSV output path (default: run.output, else stdout)");
    app.set_version_flag("--version", qheat::harness::version);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const auto t = qheat::harness::parse_task(task);
        const auto cfg = qheat::harness::load_config(config, t);
        const auto result = qheat::harness::run(cfg, qheat::harness::max_threads_from_env());
        const std::string dest = out.empty() ? cfg.output : out;
        if (dest.empty()) {
            std::cout << result.csv();
        } else {
            write_file(dest, result.csv());
            if (!result.report.empty()) write_file(dest + ".report", result.report);
        }
        if (!result.report.empty()) std::cerr << result.report;
        return result.status;
    } catch (const qheat::InputError& e) {
        std::cerr << "qheat: input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "qheat: " << e.what() << '\n';
        return 1;
    }
}
