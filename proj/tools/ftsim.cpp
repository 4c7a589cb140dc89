#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ft/errors.hpp"
#include "ft/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::string out_path_for(const std::string& scenario_path, const std::string& out_dir) {
    const fs::path p(scenario_path);
    fs::path dir = out_dir.empty() ? p.parent_path() : fs::path(out_dir);
    if (dir.empty()) dir = ".";
    return (dir / p.stem()).string() + ".csv";
}

int run_one(const std::string& path, const std::string& out_dir, const ft::RunOptions& opt,
            bool quiet) {
    try {
        const auto sc = ft::load_scenario_file(path);
        const ft::RunRecord rec = ft::run_scenario(sc, opt);
        const std::string out = out_path_for(path, out_dir);
        ft::write_timeseries(rec, out);
        if (!rec.diagnostics.empty()) {
            for (const auto& d : rec.diagnostics) std::cerr << path << ": " << d << "\n";
            return 2;  // invariant abort, partial record written
        }
        if (!quiet) std::cout << path << " -> " << out << " (" << rec.rows.size() << " rows)\n";
        return 0;
    } catch (const ft::FtError& e) {
        std::cerr << path << ": " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"front-tracking simulator for 1d hyperbolic free-boundary problems"};
    app.require_subcommand(0, 1);

    std::string scenario, out_dir;
    ft::RunOptions opt;
    app.add_option("scenario", scenario, "scenario file (JSON)");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--strict-compat", opt.strict_compat, "refuse incompatible corner data");
    app.add_option("--seed", opt.seed, "seed recorded in the metadata");

    std::vector<std::string> batch_files;
    CLI::App* batch = app.add_subcommand("batch", "run several scenarios concurrently");
    batch->add_option("scenarios", batch_files, "scenario files")->required();

    CLI11_PARSE(app, argc, argv);

    if (batch->parsed()) {
        std::vector<int> codes(batch_files.size(), 0);
        std::vector<std::thread> pool;
        for (size_t i = 0; i < batch_files.size(); ++i)
            pool.emplace_back([&, i] { codes[i] = run_one(batch_files[i], out_dir, opt, true); });
        for (auto& th : pool) th.join();
        int worst = 0;
        for (int c : codes) worst = std::max(worst, c);
        return worst;
    }
    if (scenario.empty()) {
        std::cerr << "no scenario given\n";
        return 1;
    }
    return run_one(scenario, out_dir, opt, false);
}
