#ifndef TONGUE_CLI_CONFIG_HPP
#define TONGUE_CLI_CONFIG_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>
#include <tongue_atlas.h>

namespace cli {

// Run-wide knobs; JSON keys match the long CLI flag names, flags win over
// file values.
struct RunConfig {
    int grid_points = 4096;
    double root_tol = 1e-12;
    double match_tol = 1e-8;
    int max_iter = 60;
    double boundary_tol = 1e-10;
    double border_tol = 1e-9;
    std::string output_format = "json";  // "csv" or "json"
    std::string output_path;             // empty = stdout

    ta_finder_config finder() const {
        return {grid_points, root_tol, match_tol, max_iter, boundary_tol, border_tol};
    }
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"grid-points", c.grid_points},
                       {"root-tol", c.root_tol},
                       {"match-tol", c.match_tol},
                       {"max-iter", c.max_iter},
                       {"boundary-tol", c.boundary_tol},
                       {"border-tol", c.border_tol},
                       {"format", c.output_format},
                       {"out", c.output_path}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
    c.grid_points = j.value("grid-points", c.grid_points);
    c.root_tol = j.value("root-tol", c.root_tol);
    c.match_tol = j.value("match-tol", c.match_tol);
    c.max_iter = j.value("max-iter", c.max_iter);
    c.boundary_tol = j.value("boundary-tol", c.boundary_tol);
    c.border_tol = j.value("border-tol", c.border_tol);
    c.output_format = j.value("format", c.output_format);
    c.output_path = j.value("out", c.output_path);
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    RunConfig c;
    from_json(j, c);
    return c;
}

}  // namespace cli

#endif
