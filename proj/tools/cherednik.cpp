#include "cmx/commands.hpp"

#include <CLI11.hpp>

#include <omp.h>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    CLI::App app{"Centers, families, cellular characters and hyperplane arrangements of rational Cherednik algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    cmx::RunConfig cfg;
    int jobs = 0;
    app.add_option("--jobs", jobs, "threads for parallel kernels (0: OpenMP default)");
    app.add_option("--cache-dir", cfg.cache_dir, "result cache root (default: CHEREDNIK_CACHE)");
    app.add_flag("--no-cache", cfg.no_cache, "ignore the result cache");
    app.add_flag("--pretty", cfg.pretty, "indented JSON");
    app.add_option("--seed", cfg.seed, "seed for every randomized step");
    app.add_option("--max-seconds", cfg.max_seconds, "wall-clock limit, exit 2 when exceeded");
    app.add_option("--max-terms", cfg.max_terms, "polynomial size limit, exit 2 when exceeded");
    app.add_option("--degree-bound", cfg.degree_bound, "invariant degree bound (0: group order)");

    auto group_opt = [&](CLI::App* s, bool required) {
        auto o = s->add_option("--group", cfg.group, "shipped group name or JSON file");
        if (required) o->required();
    };
    auto at_opt = [&](CLI::App* s, bool required) {
        auto o = s->add_option("--at", cfg.at, "parameter point, e.g. k1=1,k2=1");
        if (required) o->required();
    };
    const std::map<std::string, std::string> about{
        {"group-info", "group order, reflections, parameters and character labels"},
        {"center-generators", "minimal generators of the center of the generic algebra"},
        {"presentation", "relations between the center generators"},
        {"poisson-matrix", "Poisson brackets of the center generators"},
        {"families", "Calogero-Moser families, generic or at a point or hyperplane"},
        {"hyperplanes", "Calogero-Moser hyperplanes with their families"},
        {"cuspidal", "cuspidal families at a parameter point"},
        {"cellular", "cellular characters from a Gaudin operator"},
        {"arrangement", "Poincare polynomial, chambers and QFT count of a real arrangement"},
        {"martino", "compare Calogero-Moser families with supplied Rouquier families"}};
    for (const auto& name : cmx::command_names()) {
        auto* s = app.add_subcommand(name, about.at(name));
        s->callback([&cfg, name] { cfg.command = name; });
        if (name == "arrangement") {
            auto g = s->add_option("--from-group", cfg.group, "use the Calogero-Moser hyperplanes of a group");
            auto f = s->add_option("--file", cfg.file, "arrangement JSON file");
            g->excludes(f);
            s->require_option(1);
            continue;
        }
        group_opt(s, true);
        if (name == "center-generators") s->add_flag("--brief", cfg.brief, "omit the PBW expansions");
        if (name == "families") {
            at_opt(s, false);
            s->add_option("--hyperplane", cfg.hyperplane, "linear form in the K parameters");
            s->add_flag("--generic", cfg.generic, "generic parameters (default)");
        }
        if (name == "cuspidal") at_opt(s, true);
        if (name == "cellular") {
            at_opt(s, true);
            s->add_option("--rep", cfg.rep, "character label or index: run on that representation only");
        }
        if (name == "martino") {
            s->add_option("--rouquier-file", cfg.rouquier_file, "Rouquier families and essential hyperplanes")
                ->required();
            s->add_flag("--equality", cfg.equality, "require equality instead of refinement");
        }
    }
    CLI11_PARSE(app, argc, argv);
    if (jobs > 0) omp_set_num_threads(jobs);
    auto out = cmx::run(cfg);
    std::cout << out.text;
    return out.exit_code;
}
