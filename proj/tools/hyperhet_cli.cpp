// Command-line front end: every command writes one JSON document (or CSV) to stdout.
// Exit status: 0 success, 2 obstruction verdict, 1 error.

#include "hyperhet/classify.hpp"
#include "hyperhet/field_realizer.hpp"
#include "hyperhet/gh_realizer.hpp"
#include "hyperhet/hypergraph.hpp"
#include "hyperhet/json_io.hpp"
#include "hyperhet/simulator.hpp"
#include "hyperhet/synchrony.hpp"
#include "hyperhet/system.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace hyperhet;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kObstructed = 2;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

void log_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::vector<double> parse_vector(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot read \"" + item + "\" as a number");
        }
    }
    return out;
}

struct CensusArgs {
    std::string file;
};
int run_census(const CensusArgs& a) {
    const Hypergraph h = hypergraph_from_json(read_json_file(a.file));
    if (h.n() != 3) throw std::invalid_argument("census of the canonical subspaces needs 3 vertices");
    Json j = census_to_json(h);
    j["field_screen"] = field_screen(h).reason();
    emit(j);
    return kOk;
}

struct GhArgs {
    std::string file;
    double a = -0.3, b = -7.0 / 30.0, c = -7.0 / 15.0;
    bool homogeneous = false;
    bool nodeunspecific = false;
};
int run_realize_gh(const GhArgs& a) {
    const Hypergraph h = hypergraph_from_json(read_json_file(a.file));
    const GHParams p{a.a, a.b, a.c};
    if (h.n() != 3) throw std::invalid_argument("the cycle system lives on 3 vertices");
    if (!check_gh_conditions(p)) throw std::invalid_argument("parameters violate a+b+c=-1, -1/3<a<0, c<a<b<0");
    const RealizationResult r = realize_gh(h, p, a.homogeneous, a.nodeunspecific);
    Json j = to_json(r);
    j["hypergraph"] = to_json(h);
    j["family"] = Json{{"homogeneous", a.homogeneous}, {"nodeunspecific", a.nodeunspecific}};
    emit(j);
    return r.realized ? kOk : kObstructed;
}

struct FieldArgs {
    std::string file;
    std::uint64_t seed = FieldSearchConfig{}.seed;
    std::uint64_t max_draws = FieldSearchConfig{}.max_draws;
};
int run_realize_field(const FieldArgs& a) {
    const Hypergraph h = hypergraph_from_json(read_json_file(a.file));
    if (h.n() != 3) throw std::invalid_argument("the two-equilibrium cycle is searched on 3 vertices");
    const ScreenVerdict screen = field_screen(h);
    if (!screen.pass) {
        Json j;
        j["found"] = false;
        j["obstruction"] = screen.reason();
        j["census"] = census_to_json(h);
        emit(j);
        return kObstructed;
    }
    FieldSearchConfig cfg;
    cfg.seed = a.seed;
    cfg.max_draws = a.max_draws;
    std::cerr << "searching with seed " << cfg.seed << ", at most " << cfg.max_draws << " draws\n";
    const FieldRealization r = realize_field(h, cfg);
    Json j = to_json(r);
    j["census"] = census_to_json(h);
    emit(j);
    if (!r.found) std::cerr << "no candidate found: " << r.failure << '\n';
    return r.found ? kOk : kError;
}

struct SweepArgs {
    bool all = false;
};
int run_uniform3_sweep(const SweepArgs& a) {
    Json rows = Json::array();
    if (a.all) {
        for (int pi = 0; pi <= 4; ++pi) {
            for (int phi = 0; phi <= 4; ++phi) {
                for (int psi = 0; psi <= 4; ++psi) rows.push_back(uniform3_row(pi, phi, psi));
            }
        }
    } else {
        for (const auto& t : uniform3_admissible_configs()) rows.push_back(uniform3_row(t[0], t[1], t[2]));
    }
    std::size_t feasible = 0;
    for (const auto& r : rows) feasible += r["feasible"].get<bool>() ? 1 : 0;
    emit(Json{{"count", rows.size()}, {"feasible", feasible}, {"rows", rows}});
    return kOk;
}

struct SimArgs {
    std::string file;
    std::string x0;
    double t = 100.0;
    double tol = 1e-10;
    std::string format = "json";
    std::vector<std::string> equilibria;
    double radius = 0.0;
    bool log_coords = false;
    bool states = true;
    std::string method = "dopri5";
};
int run_simulate(const SimArgs& a) {
    const SystemDocument doc = system_from_json(read_json_file(a.file));
    log_warnings(doc.warnings);
    const NetworkSystem sys(doc.hypergraph, doc.scheme);
    const std::vector<double> x0 = parse_vector(a.x0);
    if (x0.size() != sys.dimension()) {
        throw std::invalid_argument("--x0 has " + std::to_string(x0.size()) + " entries for a system of dimension " +
                                    std::to_string(sys.dimension()));
    }
    if (!(a.tol > 0)) throw std::invalid_argument("--tol must be positive");
    if (!(a.t > 0)) throw std::invalid_argument("--t must be positive");
    IntegratorOptions opt;
    opt.rtol = a.tol;
    opt.atol = a.tol * 1e-2;
    opt.method = a.method == "bdf" ? Method::bdf : Method::dopri5;
    const Trajectory traj = a.log_coords ? integrate_log(sys.field(), x0, a.t, opt) : integrate(sys, x0, a.t, opt);
    log_warnings(traj.warnings);

    Json it_json = nullptr;
    if (!a.equilibria.empty()) {
        std::vector<std::vector<double>> eq;
        for (const auto& s : a.equilibria) {
            eq.push_back(parse_vector(s));
            if (eq.back().size() != sys.dimension()) throw std::invalid_argument("--eq has the wrong dimension");
        }
        const double radius = a.radius > 0 ? a.radius : default_dwell_radius(eq);
        const Itinerary it = extract_itinerary(traj, eq, radius);
        it_json = to_json(it);
        std::size_t complete = 0;
        for (const auto& e : it.episodes) complete += e.complete ? 1 : 0;
        if (complete >= 4) {
            const DwellGrowth g = dwell_growth(it);
            it_json["dwell_ratios"] = g.ratios;
            it_json["dwell_asymptote"] = g.asymptote;
            it_json["attracting"] = g.attracting;
        }
    }
    if (a.format == "csv") {
        std::cout << trajectory_csv(traj);
        if (!it_json.is_null()) std::cerr << it_json.dump() << '\n';
    } else {
        emit(Json{{"trajectory", to_json(traj, a.states)}, {"itinerary", it_json}});
    }
    return kOk;
}

struct ClassifyArgs {
    std::string file;
};
int run_classify(const ClassifyArgs& a) {
    const SystemDocument doc = system_from_json(read_json_file(a.file));
    log_warnings(doc.warnings);
    const Classification c = classify(doc.hypergraph, doc.scheme);
    Json matches = Json::array();
    for (const auto& m : c.matches) {
        matches.push_back(Json{{"id", m.id},
                               {"form", m.form},
                               {"class_allows_gh", m.class_allows_gh},
                               {"class_allows_field", m.class_allows_field}});
    }
    emit(Json{{"directed", c.directed},
              {"nodespecific", c.nodespecific},
              {"homogeneous_per_order", c.homogeneous_per_order},
              {"weighted_homogeneous", c.weighted_homogeneous},
              {"uniform", c.uniform},
              {"uniform_order", c.uniform_order ? Json(*c.uniform_order) : Json(nullptr)},
              {"signatures", matches}});
    return kOk;
}

struct EnumArgs {
    int n = 3;
    int max_order = 0;
};
int run_enumerate(const EnumArgs& a) {
    if (a.n < 1) throw std::invalid_argument("--n must be positive");
    const int max_order = a.max_order > 0 ? a.max_order : a.n + 1;
    if (max_order < 2) throw std::invalid_argument("--max-order must be at least 2");
    const auto edges = enumerate_hyperedges(a.n, max_order);
    Json list = Json::array();
    for (const auto& e : edges) {
        Json j = to_json(e);
        j["order"] = e.order();
        list.push_back(j);
    }
    emit(Json{{"n", a.n}, {"max_order", max_order}, {"count", edges.size()}, {"edges", list}});
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heteroclinic cycle realization on hypergraph network dynamics"};
    app.require_subcommand(1);
    int status = kOk;

    CensusArgs census;
    auto* c_census = app.add_subcommand("census", "Robust synchrony subspaces of a 3-vertex hypergraph");
    c_census->add_option("hypergraph", census.file, "Hypergraph JSON file")->required();
    c_census->callback([&] { status = run_census(census); });

    auto* c_realize = app.add_subcommand("realize", "Realize a heteroclinic cycle on a hypergraph");
    c_realize->require_subcommand(1);
    GhArgs gh;
    auto* c_gh = c_realize->add_subcommand("gh", "Three-axis cubic cycle system");
    c_gh->add_option("hypergraph", gh.file, "Hypergraph JSON file")->required();
    c_gh->add_option("--a", gh.a, "Cubic self coefficient")->capture_default_str();
    c_gh->add_option("--b", gh.b, "Coefficient of x_k x_{k+1}^2")->capture_default_str();
    c_gh->add_option("--c", gh.c, "Coefficient of x_k x_{k+2}^2")->capture_default_str();
    c_gh->add_flag("--homogeneous", gh.homogeneous, "Require one coupling function per order");
    c_gh->add_flag("--nodeunspecific", gh.nodeunspecific, "Forbid dependence on the receiving node's state");
    c_gh->callback([&] { status = run_realize_gh(gh); });

    FieldArgs field;
    auto* c_field = c_realize->add_subcommand("field", "Two-equilibrium synchrony cycle (seeded search)");
    c_field->add_option("hypergraph", field.file, "Hypergraph JSON file")->required();
    c_field->add_option("--seed", field.seed, "Search seed")->capture_default_str();
    c_field->add_option("--max-draws", field.max_draws, "Search budget")->capture_default_str();
    c_field->callback([&] { status = run_realize_field(field); });

    auto* c_uniform3 = app.add_subcommand("uniform3", "Three-uniform input-count analysis");
    c_uniform3->require_subcommand(1);
    SweepArgs sweep;
    auto* c_sweep = c_uniform3->add_subcommand("sweep", "Admissible (Pi, Phi, Psi) triples with alpha intervals");
    c_sweep->add_flag("--all", sweep.all, "List all 125 triples, feasible or not");
    c_sweep->callback([&] { status = run_uniform3_sweep(sweep); });

    SimArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Integrate a network system");
    c_sim->add_option("system", sim.file, "System JSON file")->required();
    c_sim->add_option("--x0", sim.x0, "Initial state, comma separated")->required();
    c_sim->add_option("--t", sim.t, "End time")->capture_default_str();
    c_sim->add_option("--tol", sim.tol, "Relative tolerance (absolute is 1e-2 of it)")->capture_default_str();
    c_sim->add_option("--format", sim.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    c_sim->add_option("--eq", sim.equilibria, "Equilibrium for the itinerary, comma separated (repeatable)");
    c_sim->add_option("--radius", sim.radius, "Dwell radius (default 0.05 of the smallest separation)");
    c_sim->add_option("--method", sim.method, "Integrator (bdf copes with long stiff dwells)")
        ->check(CLI::IsMember({"dopri5", "bdf"}))
        ->capture_default_str();
    c_sim->add_flag("--log-coords", sim.log_coords, "Integrate in logarithmic coordinates");
    c_sim->add_flag("!--no-states", sim.states, "Omit the sampled states from JSON output");
    c_sim->callback([&] { status = run_simulate(sim); });

    ClassifyArgs cls;
    auto* c_cls = app.add_subcommand("classify", "Structural flags and matching model classes");
    c_cls->add_option("system", cls.file, "System JSON file")->required();
    c_cls->callback([&] { status = run_classify(cls); });

    EnumArgs en;
    auto* c_enum = app.add_subcommand("enumerate", "List all hyperedges up to a given order");
    c_enum->add_option("--n", en.n, "Number of vertices")->capture_default_str();
    c_enum->add_option("--max-order", en.max_order, "Largest order |tail|+1 (default n+1)");
    c_enum->callback([&] { status = run_enumerate(en); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        emit(Json{{"error", e.what()}});
        return kError;
    }
    return status;
}
