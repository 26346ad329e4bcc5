// topogroup: generate datasets, run regularized persistence optimization,
// inspect diagrams, check gradients and render snapshots.
//
// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error,
// 4 degenerate run (partial outputs written).

#include "topogroup/error.hpp"
#include "topogroup/experiments.hpp"
#include "topogroup/grad_engine.hpp"
#include "topogroup/io.hpp"
#include "topogroup/optimizer.hpp"
#include "topogroup/persistence.hpp"
#include "topogroup/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace topogroup;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, io_error = 3, degenerate = 4 };

int exit_for(const Error& e)
{
    switch (e.code()) {
    case Errc::Io: return io_error;
    case Errc::DegeneratePair:
    case Errc::DegenerateEdge:
    case Errc::NonFiniteGradient: return degenerate;
    default: return usage;
    }
}

struct GeometryFlags {
    double separation = TwoClusterGeometry{}.center_separation;
    double cluster_radius = TwoClusterGeometry{}.cluster_radius;
    double radius = HorseshoeGeometry{}.radius;
    double thickness = HorseshoeGeometry{}.thickness;
    double opening = HorseshoeGeometry{}.opening_angle;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--separation", separation, "distance between cluster centres");
        cmd->add_option("--cluster-radius", cluster_radius, "radius of each cluster disk");
        cmd->add_option("--radius", radius, "horseshoe radius");
        cmd->add_option("--thickness", thickness, "horseshoe band thickness");
        cmd->add_option("--opening", opening, "horseshoe opening angle in radians");
    }

    DatasetSpec spec(const std::string& shape, std::size_t n, std::uint64_t seed) const
    {
        DatasetSpec s = shape == "horseshoe" ? DatasetSpec::horseshoe_arc(n, seed) : DatasetSpec::two_clusters(n, seed);
        s.clusters.center_separation = separation;
        s.clusters.cluster_radius = cluster_radius;
        s.horseshoe.radius = radius;
        s.horseshoe.thickness = thickness;
        s.horseshoe.opening_angle = opening;
        return s;
    }
};

struct LossFlags {
    std::string loss = "rho0";
    double lambda = 1.0;
    std::string kernel = "uniform";
    double scale = 1.0;
    std::string cap = "enclosing";

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--loss", loss, "loss preset")->check(CLI::IsMember({"rho0", "rho1"}));
        cmd->add_option("--lambda", lambda, "weight of the grouping term")->check(CLI::NonNegativeNumber);
        cmd->add_option("--kernel", kernel, "kernel family")->check(CLI::IsMember({"uniform", "gaussian"}));
        cmd->add_option("--scale", scale, "kernel scale")->check(CLI::PositiveNumber);
        cmd->add_option("--cap", cap, "filtration radius cap: enclosing, none, or a number");
    }

    EvalConfig eval() const
    {
        EvalConfig c;
        c.loss = *loss_preset(loss);
        c.lambda = lambda;
        c.kernel = KernelSpec{*kernel_family_from_name(kernel), scale};
        c.cap = parse_cap(cap);
        return c;
    }

    static RadiusCap parse_cap(const std::string& text)
    {
        if (text == "enclosing") {
            return RadiusCap::enclosing();
        }
        if (text == "none") {
            return RadiusCap::none();
        }
        try {
            std::size_t used = 0;
            const double r = std::stod(text, &used);
            if (used == text.size() && r > 0.0) {
                return RadiusCap::fixed(r);
            }
        } catch (const std::exception&) {
        }
        throw Error(Errc::InvalidArgument, "--cap must be 'enclosing', 'none' or a positive number");
    }
};

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out || !(out << text)) {
        throw Error(Errc::Io, "cannot write " + path.string());
    }
}

std::optional<GroupLabels> labels_if_present(const std::string& explicit_path, const fs::path& points_path)
{
    if (!explicit_path.empty()) {
        return io::read_labels(explicit_path);
    }
    const auto guess = io::labels_path_for(points_path);
    if (!points_path.empty() && fs::exists(guess)) {
        return io::read_labels(guess);
    }
    return std::nullopt;
}

// generate ------------------------------------------------------------------

struct GenerateCmd {
    std::string shape;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string output;
    GeometryFlags geometry;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("generate", "write a synthetic point cloud and its group labels");
        cmd->add_option("--shape", shape, "dataset shape")
            ->required()
            ->check(CLI::IsMember({"two-clusters", "horseshoe"}));
        cmd->add_option("--n", n, "number of points (default 100 / 300)");
        cmd->add_option("--seed", seed, "random seed (default 42 / 7)");
        cmd->add_option("-o,--output", output, "points CSV path")->required();
        geometry.attach(cmd);
        cmd->callback([this] { run(); });
    }

    void run()
    {
        const bool horseshoe = shape == "horseshoe";
        const std::size_t count = n ? n : (horseshoe ? 300 : 100);
        const std::uint64_t s = seed ? seed : (horseshoe ? 7 : 42);
        const auto data = generate(geometry.spec(shape, count, s));
        io::write_points_csv(output, data.cloud.current_rows());
        io::write_labels(io::labels_path_for(output), data.labels);
        std::cout << "wrote " << data.cloud.size() << " points to " << output << "\n";
    }
};

// optimize ------------------------------------------------------------------

struct OptimizeCmd {
    std::string input;
    std::string labels;
    std::string shape;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    GeometryFlags geometry;
    LossFlags loss;
    double lr = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t steps = 500;
    std::size_t snapshot_every = 0;
    std::string output;
    int exit_code = ok;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("optimize", "minimize rho + lambda * tau over point coordinates with Adam");
        auto* in = cmd->add_option("-i,--input", input, "points CSV");
        auto* sh = cmd->add_option("--shape", shape, "generate the input instead of reading it")
                       ->check(CLI::IsMember({"two-clusters", "horseshoe"}));
        in->excludes(sh);
        cmd->add_option("--labels", labels, "group labels file (default: <input>.labels.csv if present)");
        cmd->add_option("--n", n, "points to generate with --shape");
        cmd->add_option("--seed", seed, "seed for --shape");
        geometry.attach(cmd);
        loss.attach(cmd);
        cmd->add_option("--lr", lr, "Adam learning rate")->check(CLI::PositiveNumber);
        cmd->add_option("--beta1", beta1, "Adam beta1");
        cmd->add_option("--beta2", beta2, "Adam beta2");
        cmd->add_option("--eps", eps, "Adam epsilon");
        cmd->add_option("--steps", steps, "number of Adam steps");
        cmd->add_option("--snapshot-every", snapshot_every, "store coordinates every k steps (0: never)");
        cmd->add_option("-o,--output", output, "output directory")->required();
        cmd->callback([this] { run(); });
    }

    void run()
    {
        std::optional<PointCloud> cloud;
        std::optional<GroupLabels> groups;
        if (!shape.empty()) {
            const bool horseshoe = shape == "horseshoe";
            auto data = generate(geometry.spec(shape, n ? n : (horseshoe ? 300 : 100), seed ? seed : (horseshoe ? 7 : 42)));
            cloud = std::move(data.cloud);
            groups = std::move(data.labels);
        } else if (!input.empty()) {
            cloud = PointCloud(io::read_points_csv(input));
            groups = labels_if_present(labels, input);
        } else {
            throw CLI::RequiredError("--input or --shape");
        }

        OptimConfig config;
        config.learning_rate = lr;
        config.beta1 = beta1;
        config.beta2 = beta2;
        config.epsilon = eps;
        config.steps = steps;
        config.snapshot_interval = snapshot_every;
        config.eval = loss.eval();
        config.validate();

        const fs::path dir(output);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());
        }
        std::ofstream traj(dir / "trajectory.jsonl");
        if (!traj) {
            throw Error(Errc::Io, "cannot write " + (dir / "trajectory.jsonl").string());
        }
        const auto result = run_optimization(*cloud, config, [&](const TrajectoryRecord& r) {
            traj << io::trajectory_line(r) << '\n';
            traj.flush();
        });
        if (!traj) {
            throw Error(Errc::Io, "failed writing trajectory");
        }

        io::write_points_csv(dir / "final.csv", result.cloud.current_rows());
        if (groups) {
            io::write_labels(dir / "final.labels.csv", *groups);
        }
        const auto& t = result.trajectory;
        nlohmann::json summary;
        summary["status"] = std::string(run_status_name(t.status));
        summary["message"] = t.message;
        summary["records"] = t.records.size();
        summary["skipped_degenerate_edges"] = t.skipped_edges;
        summary["loss"] = loss.loss;
        summary["lambda"] = config.eval.lambda;
        summary["kernel"] = loss.kernel;
        summary["scale"] = config.eval.kernel.scale;
        summary["learning_rate"] = config.learning_rate;
        summary["steps"] = config.steps;
        if (!t.records.empty()) {
            summary["initial"] = {{"loss", t.records.front().loss}, {"rho", t.records.front().rho},
                                  {"tau", t.records.front().tau}};
            summary["final"] = {{"loss", t.records.back().loss}, {"rho", t.records.back().rho},
                                {"tau", t.records.back().tau}};
        }
        if (groups && groups->ids.size() == result.cloud.size()) {
            summary["distortion"] = distortion(result.cloud, *groups);
        }
        write_text(dir / "summary.json", summary.dump(2) + "\n");

        std::cout << "status " << run_status_name(t.status) << ", " << t.records.size() << " records";
        if (!t.records.empty()) {
            std::cout << ", rho " << io::format_number(t.records.front().rho) << " -> "
                      << io::format_number(t.records.back().rho);
        }
        std::cout << "\n";
        if (t.status != RunStatus::Completed) {
            std::cerr << t.message << "\n";
            exit_code = degenerate;
        }
    }
};

// diagram -------------------------------------------------------------------

struct DiagramCmd {
    std::string input;
    int max_dim = 1;
    std::string cap = "enclosing";
    std::string csv;
    bool all = false;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("diagram", "print the Rips persistence diagrams of a points file");
        cmd->add_option("-i,--input", input, "points CSV")->required();
        cmd->add_option("--max-dim", max_dim, "highest homology dimension")->check(CLI::Range(0, max_supported_dim));
        cmd->add_option("--cap", cap, "filtration radius cap: enclosing, none, or a number");
        cmd->add_option("--csv", csv, "also write every pair with its simplices to this file");
        cmd->add_flag("--all", all, "list zero-persistence pairs too");
        cmd->callback([this] { run(); });
    }

    void run()
    {
        const PointCloud cloud(io::read_points_csv(input));
        const auto d = pairwise_distances(cloud);
        const auto diagrams = rips_persistence(d, max_dim, LossFlags::parse_cap(cap).resolve(d));
        for (const auto& diagram : diagrams) {
            std::cout << io::format_diagram(diagram, all) << "\n";
        }
        if (!csv.empty()) {
            std::ofstream out(csv);
            if (!out) {
                throw Error(Errc::Io, "cannot write " + csv);
            }
            io::write_diagrams_csv(out, diagrams);
        }
    }
};

// check-grad ----------------------------------------------------------------

struct CheckGradCmd {
    std::string input;
    std::size_t n = 15;
    std::uint64_t seed = 1;
    double perturb = 0.05;
    LossFlags loss;
    double h = 1e-5;
    double tolerance = 1e-4;
    bool regularizer_only = false;
    int exit_code = ok;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("check-grad", "compare analytic gradients with central differences");
        cmd->set_help_flag("--help", "print this help message and exit");
        cmd->add_option("-i,--input", input, "points CSV (default: a random cloud)");
        cmd->add_option("--n", n, "points in the random cloud");
        cmd->add_option("--seed", seed, "seed of the random cloud");
        cmd->add_option("--perturb", perturb, "std-dev of the offset between initial and current coordinates");
        loss.attach(cmd);
        cmd->add_option("--h", h, "finite-difference step")->check(CLI::PositiveNumber);
        cmd->add_option("--tolerance", tolerance, "largest accepted relative error");
        cmd->add_flag("--regularizer-only", regularizer_only, "check the grouping term alone");
        cmd->callback([this] { run(); });
    }

    void run()
    {
        const PointCloud base = input.empty() ? random_cloud(n, 2, seed) : PointCloud(io::read_points_csv(input));
        const PointCloud cloud = perturb > 0.0 ? perturbed(base, perturb, seed + 1) : base;
        const auto config = loss.eval();
        const auto report = regularizer_only ? tau_finite_difference_check(cloud, config.kernel, h)
                                             : finite_difference_check(cloud, config, h);
        std::cout << "coordinates " << report.coordinates.size() << ", unstable " << report.unstable_count()
                  << ", max relative error " << io::format_number(report.max_rel_error) << "\n";
        for (const auto& c : report.coordinates) {
            if (c.unstable) {
                std::cout << "unstable point " << c.point << " axis " << c.axis << "\n";
            }
        }
        exit_code = report.max_rel_error < tolerance ? ok : check_failed;
        std::cout << (exit_code == ok ? "PASS" : "FAIL") << " (tolerance " << io::format_number(tolerance) << ")\n";
    }
};

// render --------------------------------------------------------------------

struct RenderCmd {
    std::string input;
    std::string labels;
    std::string output;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("render", "draw a points file or trajectory snapshots as SVG");
        cmd->add_option("-i,--input", input, "points CSV or trajectory.jsonl")->required();
        cmd->add_option("--labels", labels, "group labels used for colouring");
        cmd->add_option("-o,--output", output, "SVG file (single frame) or directory (trajectory)")->required();
        cmd->callback([this] { run(); });
    }

    void run()
    {
        const fs::path in(input);
        if (!fs::exists(in)) {
            throw Error(Errc::Io, "input " + input + " does not exist");
        }
        std::vector<svg::Frame> frames;
        const bool trajectory = in.extension() == ".jsonl";
        if (trajectory) {
            for (auto& r : io::read_trajectory(in)) {
                if (r.points) {
                    frames.push_back({r.step, std::move(*r.points)});
                }
            }
            if (frames.empty()) {
                throw Error(Errc::InvalidArgument, "trajectory has no coordinate snapshots; rerun with --snapshot-every");
            }
        } else {
            frames.push_back({0, io::read_points_csv(in)});
        }
        std::optional<GroupLabels> groups = labels_if_present(labels, trajectory ? fs::path() : in);
        if (!groups && trajectory && fs::exists(in.parent_path() / "final.labels.csv")) {
            groups = io::read_labels(in.parent_path() / "final.labels.csv");
        }
        const auto box = svg::common_view_box(frames);
        const GroupLabels* lp = groups ? &*groups : nullptr;
        if (!trajectory) {
            write_text(output, svg::render(frames.front(), box, lp));
            std::cout << "wrote " << output << "\n";
            return;
        }
        std::error_code ec;
        fs::create_directories(output, ec);
        if (ec) {
            throw Error(Errc::Io, "cannot create " + output + ": " + ec.message());
        }
        for (const auto& f : frames) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%06zu.svg", f.step);
            write_text(fs::path(output) / name, svg::render(f, box, lp));
        }
        std::cout << "wrote " << frames.size() << " frames to " << output << "\n";
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Persistence-diagram optimization of point clouds with a grouping regularizer"};
    app.set_config("--config", "", "TOML/INI file with option values (flags override)");
    app.require_subcommand(1);

    GenerateCmd generate_cmd;
    OptimizeCmd optimize_cmd;
    DiagramCmd diagram_cmd;
    CheckGradCmd check_cmd;
    RenderCmd render_cmd;
    generate_cmd.attach(app);
    optimize_cmd.attach(app);
    diagram_cmd.attach(app);
    check_cmd.attach(app);
    render_cmd.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io_error;
    }
    if (optimize_cmd.exit_code != ok) {
        return optimize_cmd.exit_code;
    }
    return check_cmd.exit_code;
}
