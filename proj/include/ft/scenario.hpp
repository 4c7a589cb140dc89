#ifndef FT_SCENARIO_HPP
#define FT_SCENARIO_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace ft {

struct RunOptions {
    bool strict_compat = false;
    unsigned seed = 0;  // recorded in the metadata; runs themselves are deterministic
};

/** Flat time-series record: one named column per produced quantity. */
struct RunRecord {
    std::vector<std::string> columns;  // first column is "t"
    std::vector<std::vector<double>> rows;
    nlohmann::json metadata;     // resolved scenario + tool info
    std::vector<std::string> diagnostics;  // abort/warning notes with timestamps
};

/** Parses and validates a scenario document (JSON text). */
nlohmann::json load_scenario(const std::string& text);
nlohmann::json load_scenario_file(const std::string& path);

/** Runs the scenario family end to end. */
RunRecord run_scenario(const nlohmann::json& sc, const RunOptions& opt);

/** CSV with header row plus a JSON metadata sidecar at path + ".meta.json". */
void write_timeseries(const RunRecord& rec, const std::string& csv_path);

} // namespace ft

#endif
