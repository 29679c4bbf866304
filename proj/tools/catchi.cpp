#include "catchi/lattice.hpp"
#include "catchi/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using catchi::cli::RunConfig;

namespace {

void add_common(CLI::App& app, RunConfig& c)
{
    app.add_option("--chi", c.chi, "Curvature bound for CAT tests")->each([&c](const std::string&) { c.chi_set = true; });
    app.add_option("--cat-test", c.chi, "Same as --chi")->each([&c](const std::string&) { c.chi_set = true; });
    app.add_option("--samples", c.samples, "Points per triangle edge");
    app.add_option("--tol", c.tol, "Violation tolerance");
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option("--format", c.format, "json or md");
    app.add_option("--out", c.out, "Write the report here instead of stdout");
    app.add_flag("--expect-fail", c.expect_fail, "Exit 0 only if some check fails");
    app.add_option("--triangles", c.triangles, "Random triangles per test");
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig c;
    CLI::App app{"Comparison-geometry and lattice verification runs"};
    app.set_version_flag("--version", catchi::cli::version());
    app.require_subcommand(1);
    std::vector<std::string> args;

    auto leaf = [&](CLI::App* sub) {
        add_common(*sub, c);
        sub->add_option("args", args, "Positional arguments");
        return sub;
    };

    auto* cat = leaf(app.add_subcommand("cat-check", "CAT test of one triangle from a JSON file"));
    cat->add_option("--input", c.input, "Triangle file");

    auto* cone = leaf(app.add_subcommand("cone", "Cone over a circle: CAT(0) against the circle's CAT(1)"));
    cone->add_option("--circumference", c.circumference, "Circle length: tau, 0.9tau, 3pi, inf, or a number");

    auto* branched = leaf(app.add_subcommand("branched-plane", "k-sheeted branched cover of the plane"));
    branched->add_option("--sheets", c.sheets, "Number of sheets or inf");

    leaf(app.add_subcommand("crushed-demo", "Half-plane with its boundary crushed to a point"));

    auto* mesh = leaf(app.add_subcommand("cusp-mesh-demo", "Geodesic bigon on the cusped surface of revolution"));
    mesh->add_option("--nx", c.nx, "Intervals along the axis");
    mesh->add_option("--nphi", c.nphi, "Intervals around the axis (multiple of 4)");
    mesh->add_option("--x-min", c.x_min);
    mesh->add_option("--x-max", c.x_max);
    mesh->add_option("--x0", c.x0, "Ring of the bigon endpoints");
    mesh->add_flag("!--no-refine", c.refine, "Skip the refined mesh");
    mesh->add_option("--mesh-out", c.mesh_out, "Write the mesh as JSON");

    auto* tangent = leaf(app.add_subcommand("tangent-estimate", "Tangent-cone distances of geodesic germs"));
    tangent->add_option("--theta", c.thetas, "Angles between Euclidean rays");

    auto* lattice = app.add_subcommand("lattice", "Bilinear forms");
    lattice->require_subcommand(1);
    for (auto* sub : {lattice->add_subcommand("signature", "Signature of a named lattice or --gram file"),
                      lattice->add_subcommand("omega", "Period-domain membership of re + i im")}) {
        leaf(sub);
        sub->add_option("--gram", c.gram, "Gram matrix JSON file");
        sub->add_option("--expect", c.expect, "Expected signature, e.g. (3,0,19)");
        sub->add_option("--re", c.re, "Comma-separated real part");
        sub->add_option("--im", c.im, "Comma-separated imaginary part");
    }

    auto* coxeter = app.add_subcommand("coxeter", "ADE root systems");
    coxeter->require_subcommand(1);
    leaf(coxeter->add_subcommand("roots", "Generate and cross-check a root system"));
    leaf(coxeter->add_subcommand("local", "Roots orthogonal to a point"))
        ->add_option("--point", c.point, "Comma-separated coordinates in the simple-root basis");

    auto* sing = app.add_subcommand("singularities", "Y_{p,q,r} arithmetic and cusp cycles");
    sing->alias("cusp");
    sing->require_subcommand(1);
    leaf(sing->add_subcommand("verify-alpha", "Cross-type and same-type alpha analysis"))
        ->add_option("--max-sum", c.max_sum, "Largest p + q + r");
    leaf(sing->add_subcommand("dual-cycle", "Dual of a cusp cycle"));
    leaf(sing->add_subcommand("row", "Cusp table row for p q r, or all rows"))
        ->add_option("--max-sum", c.max_sum, "Largest p + q + r when no triple is given");
    leaf(sing->add_subcommand("weights", "Quasihomogeneity of the exceptional normal forms"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : catchi::cli::kExitConfig;
    }

    for (CLI::App* sub = &app; !sub->get_subcommands().empty();) {
        sub = sub->get_subcommands().front();
        c.command.push_back(sub->get_name());
    }
    c.args = args;

    try {
        const auto report = catchi::cli::run(c);
        const std::string text = report.render(c.format);
        if (c.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(c.out);
            if (!out) {
                std::cerr << "catchi: cannot write " << c.out << "\n";
                return catchi::cli::kExitConfig;
            }
            out << text;
        }
        return catchi::cli::exit_status(report, c.expect_fail);
    } catch (const catchi::cli::ConfigError& e) {
        std::cerr << "catchi: " << e.what() << "\n";
        return catchi::cli::kExitConfig;
    } catch (const catchi::InvariantViolation& e) {
        std::cerr << "catchi: invariant violation: " << e.what() << "\n";
        return catchi::cli::kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "catchi: internal error: " << e.what() << "\n";
        return catchi::cli::kExitInvariant;
    }
}
