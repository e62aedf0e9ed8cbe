// plonka: decompose finite algebras into direct systems.
//
// Exit status: 0 when the analysis completed (whatever the verdict), 1 on bad input,
// 2 when a size or search cap was hit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plonka/error.hpp"
#include "plonka/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw plonka::InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t cap_or_env(std::size_t flag) { return flag ? flag : plonka::max_universe_from_environment(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decompose finite algebras into direct systems of isolated subalgebras"};
    app.require_subcommand(1);

    std::string file;
    std::string system_file;
    std::string format = "text";
    std::size_t max_universe = 0;
    std::size_t budget = plonka::kDefaultSearchBudget;
    std::size_t max_size = plonka::kDefaultSearchMaxUniverse;
    bool brute_force = false;
    bool no_timing = false;

    auto add_cap = [&](CLI::App* cmd) {
        cmd->add_option("--max-universe", max_universe, "Largest universe for the subset scan (default 16 or PLONKA_MAX_UNIVERSE)");
    };

    auto* isolated = app.add_subcommand("isolated", "List the isolated subuniverses");
    isolated->add_option("file", file, "Algebra document")->required();
    isolated->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    add_cap(isolated);

    auto* frames = app.add_subcommand("frames", "List frames with their complements");
    frames->add_option("file", file, "Algebra document")->required();
    frames->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    add_cap(frames);

    auto* decompose = app.add_subcommand("decompose", "Run the full decomposition and print a report");
    decompose->add_option("file", file, "Algebra document")->required();
    decompose->add_option("--format", format, "json, text or dot")->check(CLI::IsMember({"json", "text", "dot"}));
    decompose->add_flag("--no-timing", no_timing, "Leave timing out of the report");
    add_cap(decompose);

    auto* compose = app.add_subcommand("compose", "Build the sum of a direct system");
    compose->add_option("system", system_file, "System document")->required();

    auto* partition = app.add_subcommand("partition", "Produce or search for a partition function");
    partition->add_option("file", file, "Algebra document")->required();
    partition->add_flag("--brute-force", brute_force, "Search the function space directly");
    partition->add_option("--budget", budget, "Node budget for the search");
    partition->add_option("--max-size", max_size, "Largest universe accepted by the search");
    add_cap(partition);

    auto* verify = app.add_subcommand("verify", "Check that a direct system sums to an algebra");
    verify->add_option("file", file, "Algebra document")->required();
    verify->add_option("--system", system_file, "System document")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*isolated) {
            const auto fam = plonka::all_isolated(plonka::parse_algebra(read_file(file)), cap_or_env(max_universe));
            std::cout << plonka::render_family(fam, plonka::parse_report_format(format));
        } else if (*frames) {
            auto alg = std::make_shared<const plonka::Algebra>(plonka::parse_algebra(read_file(file)));
            auto fam = std::make_shared<const plonka::IsolatedFamily>(plonka::all_isolated(alg, cap_or_env(max_universe)));
            std::cout << plonka::render_frames(plonka::enumerate_frames(fam), plonka::parse_report_format(format));
        } else if (*decompose) {
            plonka::DecomposeOptions opts;
            opts.max_universe = cap_or_env(max_universe);
            const auto report = plonka::decompose(plonka::parse_algebra(read_file(file)), opts);
            plonka::RenderOptions ro;
            ro.include_timing = !no_timing;
            std::cout << plonka::render_report(report, plonka::parse_report_format(format), ro);
        } else if (*compose) {
            std::cout << plonka::render_algebra(plonka::plonka_sum(plonka::parse_system(read_file(system_file))));
        } else if (*partition) {
            const plonka::Algebra alg = plonka::parse_algebra(read_file(file));
            if (brute_force) {
                const auto out = plonka::brute_force_search(alg, budget, true, max_size);
                if (out.exhausted) {
                    std::cerr << "budget of " << budget << " nodes exhausted, search inconclusive\n";
                    return 2;
                }
                if (!out.found) {
                    std::cout << "no non-trivial partition function (" << out.nodes << " nodes, search complete)\n";
                    return 0;
                }
                std::cout << plonka::render_partition(alg, *out.found);
                std::cout << plonka::render_axioms(alg, plonka::verify_axioms(alg, *out.found));
            } else {
                plonka::DecomposeOptions opts;
                opts.max_universe = cap_or_env(max_universe);
                const auto report = plonka::decompose(alg, opts);
                if (report.systems.empty()) {
                    std::cout << "no non-trivial partition function: " << alg.name() << " is not a Płonka sum\n";
                    return 0;
                }
                const auto f = plonka::from_system_on(alg, report.systems.front().system);
                std::cout << plonka::render_partition(alg, f);
                std::cout << plonka::render_axioms(alg, plonka::verify_axioms(alg, f));
            }
        } else if (*verify) {
            const plonka::Algebra alg = plonka::parse_algebra(read_file(file));
            const plonka::DirectSystem sys = plonka::parse_system(read_file(system_file));
            const bool ok = plonka::verify_reconstruction(alg, sys);
            std::cout << sys.name() << (ok ? " reconstructs " : " does not reconstruct ") << alg.name() << "\n";
        }
    } catch (const plonka::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const plonka::ResourceError& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return 2;
    } catch (const plonka::DefectError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
