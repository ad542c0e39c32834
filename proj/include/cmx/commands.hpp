#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmx {

struct RunConfig {
    std::string command;
    std::string group;          // shipped name or JSON path
    std::string at;             // "k1=1,k2=1"
    std::string hyperplane;     // "K1_1-K2_1"
    bool generic = false;
    std::string file;           // arrangement file
    std::string rouquier_file;
    bool equality = false;
    bool brief = false;         // center-generators without the PBW expansions
    std::string rep;            // character label or index; empty for the regular representation
    uint64_t seed = 0;
    int degree_bound = 0;
    double max_seconds = 0;
    size_t max_terms = 0;
    std::string cache_dir;      // empty: CHEREDNIK_CACHE, else no cache
    bool no_cache = false;
    bool pretty = false;
};

struct RunOutput {
    std::string text;
    int exit_code = 0;
    bool cached = false;
};

const std::vector<std::string>& command_names();
RunOutput run(const RunConfig& cfg);
// stable key for the result cache
std::string cache_key(const RunConfig& cfg);

}  // namespace cmx
