// waymark: landmark placement for bearing-only localization.
//
// Exit codes: 0 ok, 1 infeasible instance, 2 verification failure,
// 3 I/O or parse error, 4 filter nonconvergence.

#include "waymark/generate.hpp"
#include "waymark/instance_io.hpp"
#include "waymark/planner.hpp"
#include "waymark/simulator.hpp"
#include "waymark/svg_plot.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace waymark;

namespace
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_infeasible = 1,
    exit_verify_failed = 2,
    exit_io = 3,
    exit_nonconvergent = 4,
};

struct Options
{
    std::string instance;
    std::string placement;
    std::string trace;
    std::string out;
    std::uint64_t seed = 1;
    bool seed_given = false;
    double step = 0.0;
    std::vector<double> field{4.0, 8.0};
    std::size_t targets = 6;
    double grid = 0.5;
    bool circular = false;
    int retry = 0;
    double range = 2.0;
    double view_angle_deg = 50.0;
    double clearance = 0.05;
};

FieldOfView fov_of(const Options& o) { return o.circular ? FieldOfView::circular : FieldOfView::sector; }

void emit(const std::string& out, const std::string& text)
{
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_text_file(out, text);
}

void print_infeasible(const EdgeInfeasible& err)
{
    std::cerr << "infeasible: edge " << err.edge_index() << " has no double cover beyond local x = "
              << err.local_uncovered_at() << " (world " << err.uncovered_at().x() << ", " << err.uncovered_at().y()
              << ")\n";
}

int cmd_generate(const Options& o)
{
    if (o.field.size() != 2)
        throw ParseError("--field expects two values");

    GenerateOptions g;
    g.field_width = o.field[0];
    g.field_height = o.field[1];
    g.n_targets = o.targets;
    g.grid_spacing = o.grid;
    g.camera = CameraSpec(o.range, deg_to_rad(o.view_angle_deg), o.clearance);

    for (int attempt = 0;; ++attempt)
    {
        g.seed = o.seed + static_cast<std::uint64_t>(attempt);
        const Instance instance = generate_instance(g);
        try
        {
            plan_placement(instance.path, instance.sites, instance.camera, fov_of(o));
            emit(o.out, dump_instance(instance));
            std::cerr << "generated " << instance.path.waypoints().size() << " targets, " << instance.sites.size()
                      << " candidate sites (seed " << g.seed << ")\n";
            return exit_ok;
        }
        catch (const EdgeInfeasible& err)
        {
            if (attempt < o.retry)
                continue;
            emit(o.out, dump_instance(instance));
            std::cerr << "seed " << g.seed << ": ";
            print_infeasible(err);
            return exit_infeasible;
        }
        catch (const AllSitesFiltered& err)
        {
            if (attempt < o.retry)
                continue;
            emit(o.out, dump_instance(instance));
            std::cerr << "seed " << g.seed << ": " << err.what() << "\n";
            return exit_infeasible;
        }
    }
}

int cmd_plan(const Options& o)
{
    const Instance instance = load_instance(o.instance);
    const PlacementFile file{plan_placement(instance.path, instance.sites, instance.camera, fov_of(o)), fov_of(o)};
    emit(o.out, dump_placement(file));

    const auto& p = file.placement;
    for (std::size_t e = 0; e < p.per_edge.size(); ++e)
        std::cerr << "edge " << e << ": " << p.per_edge[e].size() << " landmarks\n";
    std::cerr << "total: " << p.total() << " landmarks\n";
    return exit_ok;
}

int cmd_verify(const Options& o)
{
    const Instance instance = load_instance(o.instance);
    const PlacementFile file = load_placement(o.placement);
    check_placement_matches(instance, file.placement);

    const FieldOfView fov = o.circular ? FieldOfView::circular : file.fov;
    const std::optional<double> step = o.step > 0.0 ? std::optional<double>(o.step) : std::nullopt;
    const PlacementReport report = verify_placement(instance.path, file.placement, instance.camera, step, fov);

    std::ostringstream text;
    for (std::size_t e = 0; e < report.edges.size(); ++e)
    {
        const auto& c = report.edges[e];
        text << "edge " << e << ": samples " << c.samples << ", min visible " << c.min_visible << ", mean visible "
             << c.mean_visible;
        if (c.first_violation)
            text << ", VIOLATION at local x = " << c.first_violation->local << " (world " << c.first_violation->world.x()
                 << ", " << c.first_violation->world.y() << ") with " << c.first_violation->visible << " visible";
        text << "\n";
    }
    text << (report.clean() ? "clean\n" : "violations on " + std::to_string(report.violation_count()) + " edge(s)\n");
    emit(o.out, text.str());
    return report.clean() ? exit_ok : exit_verify_failed;
}

int cmd_simulate(const Options& o)
{
    const Instance instance = load_instance(o.instance);
    const PlacementFile file = load_placement(o.placement);
    check_placement_matches(instance, file.placement);

    SimConfig cfg = instance.sim.value_or(SimConfig{});
    if (o.seed_given)
        cfg.rng_seed = o.seed;

    const SimTrace trace = simulate(instance.path, file.placement, instance.camera, cfg);
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    emit(o.out, csv.str());

    const ContainmentReport rep = three_sigma_report(trace);
    const char* names[] = {"x", "y", "psi"};
    std::cerr << "steps: " << trace.records.size() << ", duration " << trace.records.back().t << " s\n";
    for (int i = 0; i < 3; ++i)
        std::cerr << names[i] << ": within 3 sigma " << 100.0 * rep.axes[i].fraction_inside << "%, max |error| "
                  << rep.axes[i].max_abs_error << ", max sigma " << rep.axes[i].max_sigma << "\n";
    return exit_ok;
}

int cmd_plot(const Options& o)
{
    const Instance instance = load_instance(o.instance);
    std::optional<PlacementFile> file;
    if (!o.placement.empty())
    {
        file = load_placement(o.placement);
        check_placement_matches(instance, file->placement);
    }
    std::vector<TrajectoryPoint> trajectory;
    if (!o.trace.empty())
        trajectory = parse_trace_csv(read_text_file(o.trace));

    emit(o.out, render_svg(instance, file ? &file->placement : nullptr, trajectory));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Landmark placement for bearing-only localization"};
    app.require_subcommand(1);
    Options o;

    auto* generate = app.add_subcommand("generate", "Random targets in a field with grid candidate sites");
    generate->add_option("--field", o.field, "Field width and height in meters")->expected(2);
    generate->add_option("--targets", o.targets, "Number of targets");
    generate->add_option("--grid", o.grid, "Candidate grid spacing in meters");
    generate->add_option("--retry", o.retry, "Regenerate with the next seed up to N times when infeasible");
    generate->add_option("--range", o.range, "Camera range in meters");
    generate->add_option("--view-angle", o.view_angle_deg, "Camera view angle in degrees");
    generate->add_option("--clearance", o.clearance, "Minimum path-to-landmark distance in meters");

    auto* plan = app.add_subcommand("plan", "Choose landmarks edge by edge");
    auto* verify = app.add_subcommand("verify", "Check double visibility along the path");
    verify->add_option("--step", o.step, "Sampling step in meters (default 1e-3 of each edge, at least 1 mm)");
    auto* sim = app.add_subcommand("simulate", "Run the information filter along the path");
    auto* plot = app.add_subcommand("plot", "Render an SVG overlay");
    plot->add_option("--trace", o.trace, "Trace CSV written by simulate");

    for (auto* cmd : {generate, sim})
        cmd->add_option("--seed", o.seed, "Random seed")->each([&o](const std::string&) { o.seed_given = true; });
    for (auto* cmd : {plan, verify, sim, plot})
        cmd->add_option("--instance", o.instance, "Instance file")->required();
    for (auto* cmd : {verify, sim})
        cmd->add_option("--placement", o.placement, "Placement file")->required();
    plot->add_option("--placement", o.placement, "Placement file");
    for (auto* cmd : {generate, plan, verify, sim, plot})
        cmd->add_option("--out", o.out, "Output path (stdout when omitted)");
    for (auto* cmd : {generate, plan, verify})
        cmd->add_flag("--circular-fov", o.circular, "Use an omnidirectional field of view");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_io;
    }

    try
    {
        if (generate->parsed())
            return cmd_generate(o);
        if (plan->parsed())
            return cmd_plan(o);
        if (verify->parsed())
            return cmd_verify(o);
        if (sim->parsed())
            return cmd_simulate(o);
        return cmd_plot(o);
    }
    catch (const EdgeInfeasible& err)
    {
        print_infeasible(err);
        return exit_infeasible;
    }
    catch (const AllSitesFiltered& err)
    {
        std::cerr << "infeasible: " << err.what() << "\n";
        return exit_infeasible;
    }
    catch (const NonconvergentFilter& err)
    {
        std::cerr << "filter failure: " << err.what() << "\n";
        return exit_nonconvergent;
    }
    catch (const std::exception& err)
    {
        std::cerr << "error: " << err.what() << "\n";
        return exit_io;
    }
}
