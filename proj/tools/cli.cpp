#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flextile/assembly.hpp"
#include "flextile/errors.hpp"
#include "flextile/matrix.hpp"
#include "flextile/multigraph.hpp"
#include "flextile/search.hpp"
#include "flextile/tiles.hpp"

namespace flextile::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Pot load_pot(const std::string& path) {
    try {
        return parse_pot(read_file(path));
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

int parse_int(const std::string& text, const std::string& what) {
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw UsageError("invalid " + what + " '" + text + "'");
    }
    return value;
}

// "wheel:N", "cycle:N", "complete:N" or a graph file.
Multigraph load_target(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string family = spec.substr(0, colon);
        if (family == "wheel" || family == "cycle" || family == "complete") {
            const int n = parse_int(spec.substr(colon + 1), "target order");
            try {
                if (family == "wheel") {
                    return wheel(n);
                }
                if (family == "cycle") {
                    return cycle(n);
                }
                return complete(n);
            } catch (const std::domain_error& e) {
                throw UsageError(e.what());
            }
        }
    }
    try {
        return parse_graph(read_file(spec));
    } catch (const ParseError& e) {
        throw UsageError(spec + ": " + e.what());
    }
}

UsageVector parse_usage(const std::string& text) {
    UsageVector out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        const int r = parse_int(part, "usage entry");
        if (r < 0) {
            throw UsageError("usage entries must be non-negative");
        }
        out.push_back(static_cast<std::size_t>(r));
    }
    return out;
}

template <class Seq>
std::string angle_list(const Seq& values) {
    std::ostringstream out;
    out << '<';
    bool first = true;
    for (const auto& v : values) {
        out << (first ? "" : ",") << v;
        first = false;
    }
    out << '>';
    return out.str();
}

struct Globals {
    unsigned threads = 1;
    std::uint64_t budget = default_node_budget;
    bool budget_given = false;
};

int cmd_gen_pot(const std::string& family, int n, std::ostream& out) {
    try {
        if (family == "wheel-s12") {
            out << render_pot(wheel_pot_s12(n));
        } else if (family == "wheel-s3") {
            out << render_pot(wheel_pot_s3(n));
        } else {
            out << render_pot(cycle_pot_s3(n));
        }
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    return exit_ok;
}

int cmd_matrix(const std::string& path, bool show_solution, std::ostream& out) {
    const Pot pot = load_pot(path);
    const ConstructionMatrix m = build_matrix(pot);
    out << m.render();
    if (show_solution) {
        const SpectrumSolution s = solve(m);
        if (!s.consistent) {
            out << "solution: inconsistent\n";
        } else if (s.unique()) {
            out << "solution: " << angle_list(s.particular) << '\n';
        } else {
            out << "solution: " << angle_list(s.particular) << " + span{";
            for (std::size_t k = 0; k < s.nullspace.size(); ++k) {
                out << (k ? ", " : "") << angle_list(s.nullspace[k]);
            }
            out << "}\n";
        }
    }
    return exit_ok;
}

int cmd_min_order(const std::string& path, std::size_t cap, std::ostream& out) {
    const MinOrderResult r = min_order(load_pot(path), cap);
    switch (r.status) {
        case MinOrderResult::Status::found:
            out << "m_P=" << r.order << '\n' << "R=" << angle_list(r.witness) << '\n';
            return exit_ok;
        case MinOrderResult::Status::unrealizable:
            out << "unrealizable\n";
            return exit_ok;
        case MinOrderResult::Status::unknown_beyond_cap:
            break;
    }
    out << "unknown>" << cap << '\n';
    return exit_indeterminate;
}

int cmd_enumerate(const std::string& path, std::size_t order, const std::string& usage_text, const Globals& g,
                  std::ostream& out, std::ostream& err) {
    const Pot pot = load_pot(path);
    const EnumerationOptions options{g.budget, g.threads};
    std::vector<Multigraph> graphs;
    try {
        if (usage_text.empty()) {
            graphs = enumerate_order(pot, order, options);
        } else {
            const UsageVector usage = parse_usage(usage_text);
            std::size_t total = 0;
            for (std::size_t r : usage) {
                total += r;
            }
            if (total != order) {
                throw UsageError("usage vector does not sum to the order");
            }
            try {
                graphs = enumerate_complexes(pot, usage, options).graphs;
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
    } catch (const BudgetExceeded& e) {
        err << "INDETERMINATE: " << e.what() << '\n';
        return exit_indeterminate;
    }
    out << "classes=" << graphs.size() << '\n';
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        out << "# class " << k + 1 << '\n' << render_graph(graphs[k]);
    }
    return exit_ok;
}

int cmd_verify(const std::string& path, const std::string& target_spec, int scenario, const Globals& g,
               std::ostream& out) {
    const Pot pot = load_pot(path);
    const Multigraph target = load_target(target_spec);
    const ScenarioReport report = verify_scenario(pot, target, scenario, VerifyOptions{g.budget});
    out << to_string(report.verdict) << '\n';
    if (!report.explanation.empty()) {
        out << "# " << report.explanation << '\n';
    }
    if (report.witness) {
        out << "# witness\n" << render_labeling(pot, *report.witness);
    }
    if (report.counterexample) {
        out << "# counterexample";
        if (report.counterexample_usage) {
            out << " R=" << angle_list(*report.counterexample_usage);
        }
        out << '\n' << render_graph(*report.counterexample);
    }
    switch (report.verdict) {
        case Verdict::pass:
            return exit_ok;
        case Verdict::fail:
            return exit_fail;
        case Verdict::indeterminate:
            break;
    }
    return exit_indeterminate;
}

struct SearchFlags {
    std::string target;
    int scenario = 1;
    std::size_t max_bonds = 0;
    std::size_t max_tiles = 0;
    bool no_prune = false;
    std::uint64_t search_budget = SearchSpec{}.node_budget;
};

int cmd_search_min(const SearchFlags& f, const Globals& g, std::ostream& out) {
    SearchSpec spec;
    spec.target = load_target(f.target);
    spec.scenario = f.scenario;
    spec.max_bonds = f.max_bonds;
    spec.max_tiles = f.max_tiles;
    if (f.no_prune) {
        spec.prune = PruneFlags::none();
    }
    spec.node_budget = f.search_budget;
    if (g.budget_given) {
        spec.verify_budget = g.budget;
    }
    spec.threads = g.threads;
    MinimaResult r;
    try {
        r = search_minima(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!r.bonds_first || !r.tiles_first) {
        out << "no pot within the bounds passes scenario " << f.scenario << '\n'
            << "exhaustive=" << (r.exhaustive ? "yes" : "no") << '\n';
        return r.exhaustive ? exit_fail : exit_indeterminate;
    }
    out << "B=" << r.bonds_first->bonds << " T=" << r.bonds_first->tiles << " order=bonds-first\n";
    out << "B=" << r.tiles_first->bonds << " T=" << r.tiles_first->tiles << " order=tiles-first\n";
    out << "exhaustive=" << (r.exhaustive ? "yes" : "no")
        << " lemma-conditional=" << (r.lemma_conditional ? "yes" : "no") << '\n';
    out << "# witness pot, bonds-first\n" << render_pot(r.bonds_first->pot);
    out << "# witness pot, tiles-first\n" << render_pot(r.tiles_first->pot);
    return r.exhaustive ? exit_ok : exit_indeterminate;
}

struct ReproduceFlags {
    int from = 4;
    int to = 8;
    int search_up_to = 8;
    int exhaustive_up_to = 6;
};

// One table cell: the formula value from the generated pot, optionally
// confirmed by the search. Returns the cell text and updates `status`.
std::string table_cell(std::optional<std::size_t> formula, Verdict formula_verdict,
                       std::optional<std::size_t> searched, const std::string& search_tag, int& status) {
    if (formula_verdict == Verdict::indeterminate) {
        status = std::max(status, static_cast<int>(exit_indeterminate));
        return "?/indeterminate";
    }
    if (formula_verdict == Verdict::fail) {
        status = exit_fail;
        return "fail/formula";
    }
    std::string cell = std::to_string(*formula) + "/formula";
    if (search_tag.empty()) {
        return cell;
    }
    if (!searched) {
        return cell + "+" + search_tag;
    }
    if (*searched != *formula) {
        status = exit_fail;
        return cell + "!=" + std::to_string(*searched) + "/" + search_tag;
    }
    return cell + "+" + search_tag;
}

int cmd_reproduce(const ReproduceFlags& f, const Globals& g, std::ostream& out) {
    if (f.from < 4 || f.to < f.from) {
        throw UsageError("reproduce needs 4 <= --from <= --to");
    }
    int status = exit_ok;
    out << "n\tB1\tT1\tB2\tT2\tB3\tT3\n";
    for (int n = f.from; n <= f.to; ++n) {
        const Multigraph target = wheel(n);
        out << n;
        for (int scenario = 1; scenario <= 3; ++scenario) {
            const Pot pot = scenario < 3 ? wheel_pot_s12(n) : wheel_pot_s3(n);
            const Verdict formula = verify_scenario(pot, target, scenario, VerifyOptions{g.budget}).verdict;

            std::optional<std::size_t> bonds;
            std::optional<std::size_t> tiles;
            std::string tag;
            if (n <= f.search_up_to) {
                SearchSpec spec;
                spec.target = target;
                spec.scenario = scenario;
                spec.threads = g.threads;
                if (n <= f.exhaustive_up_to) {
                    spec.prune = PruneFlags::none();
                }
                const MinimaResult r = search_minima(spec);
                if (!r.exhaustive || !r.bonds_first || !r.tiles_first) {
                    tag = "search-incomplete";
                } else {
                    tag = r.lemma_conditional ? "lemma-search" : "search";
                    bonds = r.bonds_first->bonds;
                    tiles = r.tiles_first->tiles;
                }
            }
            out << '\t' << table_cell(pot.bond_count(), formula, bonds, tag, status) << '\t'
                << table_cell(pot.tile_count(), formula, tiles, tag, status);
        }
        out << '\n';
    }
    return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flexible-tile self-assembly: pots, construction matrices, complexes and minimal pots"};
    app.name("flextile");
    app.set_version_flag("--version", "flextile 0.1.0");
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--threads", globals.threads, "Worker threads for enumeration and search")
        ->check(CLI::Range(1u, 256u));
    auto* budget_opt =
        app.add_option("--budget", globals.budget, "Node cap on the matching search tree")->check(CLI::PositiveNumber);

    std::string family;
    int gen_n = 0;
    auto* gen = app.add_subcommand("gen-pot", "Print one of the generated pot families");
    gen->add_option("--family", family, "wheel-s12, wheel-s3 or cycle-s3")
        ->required()
        ->check(CLI::IsMember({"wheel-s12", "wheel-s3", "cycle-s3"}));
    gen->add_option("--n", gen_n, "Target order")->required();

    std::string pot_path;
    bool show_solution = false;
    auto* matrix = app.add_subcommand("matrix", "Print the augmented construction matrix");
    matrix->add_option("pot", pot_path, "Pot file")->required();
    matrix->add_flag("--solve", show_solution, "Also print the exact solution set");

    std::size_t cap = default_order_cap;
    auto* minord = app.add_subcommand("min-order", "Smallest order the pot can realize");
    minord->add_option("pot", pot_path, "Pot file")->required();
    minord->add_option("--cap", cap, "Largest order to try")->check(CLI::PositiveNumber);

    std::size_t order = 0;
    std::string usage_text;
    auto* enumerate = app.add_subcommand("enumerate", "List every complex class at one order");
    enumerate->add_option("pot", pot_path, "Pot file")->required();
    enumerate->add_option("--order", order, "Complex order")->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--usage", usage_text, "Restrict to one usage vector, e.g. 6,1");

    std::string target;
    int scenario = 1;
    auto* verify = app.add_subcommand("verify", "Check a pot against a target graph");
    verify->add_option("pot", pot_path, "Pot file")->required();
    verify->add_option("--target", target, "wheel:N, cycle:N, complete:N or a graph file")->required();
    verify->add_option("--scenario", scenario, "1, 2 or 3")->required()->check(CLI::Range(1, 3));

    SearchFlags sf;
    auto* search = app.add_subcommand("search-min", "Minimal bond and tile counts by exhaustive search");
    search->add_option("--target", sf.target, "wheel:N, cycle:N, complete:N or a graph file")->required();
    search->add_option("--scenario", sf.scenario, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    search->add_option("--max-bonds", sf.max_bonds, "Largest bond count to consider")->check(CLI::PositiveNumber);
    search->add_option("--max-tiles", sf.max_tiles, "Largest tile count to consider")->check(CLI::PositiveNumber);
    search->add_flag("--no-prune", sf.no_prune, "Disable the structural restrictions at scenario 3");
    search->add_option("--search-budget", sf.search_budget, "Node cap on the labelling search tree")
        ->check(CLI::PositiveNumber);

    ReproduceFlags rf;
    auto* reproduce = app.add_subcommand("reproduce", "Tab-separated table of wheel minima");
    reproduce->add_option("--from", rf.from, "First wheel order");
    reproduce->add_option("--to", rf.to, "Last wheel order");
    reproduce->add_option("--search-up-to", rf.search_up_to, "Run the search for orders up to this");
    reproduce->add_option("--exhaustive-up-to", rf.exhaustive_up_to,
                          "Search without structural restrictions up to this order");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    globals.budget_given = budget_opt->count() > 0;

    try {
        if (*gen) {
            return cmd_gen_pot(family, gen_n, out);
        }
        if (*matrix) {
            return cmd_matrix(pot_path, show_solution, out);
        }
        if (*minord) {
            return cmd_min_order(pot_path, cap, out);
        }
        if (*enumerate) {
            return cmd_enumerate(pot_path, order, usage_text, globals, out, err);
        }
        if (*verify) {
            return cmd_verify(pot_path, target, scenario, globals, out);
        }
        if (*search) {
            return cmd_search_min(sf, globals, out);
        }
        return cmd_reproduce(rf, globals, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const BudgetExceeded& e) {
        err << "INDETERMINATE: " << e.what() << '\n';
        return exit_indeterminate;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

}  // namespace flextile::cli
