// Command-line front end: volumes, delta, omega, tau, intrinsic, sweep, check-report.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tflats/body_io.hpp"
#include "tflats/curvature.hpp"
#include "tflats/intrinsic.hpp"
#include "tflats/parallel.hpp"
#include "tflats/report.hpp"
#include "tflats/schubert.hpp"
#include "tflats/tangency.hpp"
#include "tflats/volumes.hpp"

using namespace tflats;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitNumerical = 4;

constexpr double kPaperDelta13 = 1.7262;

struct Common {
    std::string out;
    std::string format = "report";
    unsigned workers = 0;
    bool table = false;
};

// Parses "a:b:count" into count evenly spaced values including both ends.
std::vector<double> parse_range(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("range must look like start:stop:count");
    const double a = parse_number(parts[0]), b = parse_number(parts[1]);
    const double c = parse_number(parts[2]);
    if (c < 1 || c != std::floor(c)) throw InvalidArgument("range count must be a positive integer");
    const int count = static_cast<int>(c);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    return out;
}

void print_table(std::ostream& os, const RunReport& r) {
    std::size_t width = 4;
    for (const auto& [name, e] : r.results) width = std::max(width, name.size());
    os << r.command << '\n';
    for (const auto& [name, e] : r.results) {
        os << "  " << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::setprecision(12)
           << e.value;
        if (e.error) os << "  (quadrature error " << std::setprecision(3) << *e.error << ")";
        if (e.std_error) os << "  +- " << std::setprecision(3) << *e.std_error << "  [" << *e.samples << " samples]";
        os << '\n';
    }
}

void emit(const Common& c, const RunReport& r, const CsvTable* csv = nullptr) {
    std::string payload;
    if (c.format == "csv") {
        if (csv) {
            payload = csv->str();
        } else {
            std::ostringstream os;
            os << "name,value,error,std_error,samples\n";
            os.precision(17);
            for (const auto& [name, e] : r.results) {
                os << name << ',' << e.value << ',';
                if (e.error) os << *e.error;
                os << ',';
                if (e.std_error) os << *e.std_error;
                os << ',';
                if (e.samples) os << *e.samples;
                os << '\n';
            }
            payload = os.str();
        }
    } else {
        payload = r.dump() + "\n";
    }
    if (c.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(c.out);
        if (!f) throw InvalidArgument("cannot write output file '" + c.out + "'");
        f << payload;
    }
    if (c.table || !c.out.empty()) print_table(std::cout, r);
}

std::array<ConvexBody, 4> four_bodies(const std::vector<ConvexBody>& b) {
    return {b[0], b[1], b[2], b[3]};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volumes of tangent flats, intrinsic volumes and average tangent counts in RP^n"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--out", common.out, "Write the report to this path (table goes to stdout)");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"report", "csv"}));
    app.add_option("--workers", common.workers, "Worker threads (default: all processors)");
    app.add_flag("--table", common.table, "Also print an aligned table to stdout");

    int k = 1, n = 3, level = 4;
    std::uint64_t seed = 1, samples = 1000000, trials = 500;
    int mc_samples = 64;

    auto* volumes = app.add_subcommand("volumes", "Exact volumes of S^n, O(n+1), G(k,n) and the Schubert ratio");
    volumes->add_option("--k", k, "Flat dimension")->required();
    volumes->add_option("--n", n, "Ambient dimension")->required();

    auto* delta = app.add_subcommand("delta", "Expected degree delta_{k,n}");
    delta->add_option("--k", k)->required();
    delta->add_option("--n", n)->required();
    delta->add_option("--samples", samples, "Monte Carlo draws")->check(CLI::PositiveNumber);
    delta->add_option("--seed", seed);

    std::string body_file, method = "convex";
    auto* omega = app.add_subcommand("omega", "|Omega_k(X)| / |Sch(k,n)| for a body file");
    omega->add_option("body", body_file, "Body description file")->required();
    omega->add_option("--k", k)->required();
    omega->add_option("--level", level, "Quadrature refinement level")->check(CLI::Range(0, 40));
    omega->add_option("--method", method, "convex | semialgebraic | h")
        ->check(CLI::IsMember({"convex", "semialgebraic", "h"}));
    omega->add_option("--mc-samples", mc_samples, "Random k-planes per node (semialgebraic)")->check(CLI::PositiveNumber);
    omega->add_option("--seed", seed);

    std::vector<std::string> body_files;
    std::string mode = "formula", delta_source = "paper";
    auto* tau = app.add_subcommand("tau", "Average number of real tangent k-flats");
    tau->add_option("bodies", body_files, "One body file per condition")->required();
    tau->add_option("--k", k);
    tau->add_option("--mode", mode)->check(CLI::IsMember({"formula", "empirical"}));
    tau->add_option("--trials", trials)->check(CLI::PositiveNumber);
    tau->add_option("--samples", samples, "Draws when --delta-source estimate")->check(CLI::PositiveNumber);
    tau->add_option("--seed", seed);
    tau->add_option("--level", level)->check(CLI::Range(0, 40));
    tau->add_option("--delta-source", delta_source, "paper | exact | estimate | <number>");

    double eps = -1.0;
    std::string eps_text;
    auto* intrinsic = app.add_subcommand("intrinsic", "Intrinsic volumes, Steiner tube, sum identity and bounds");
    intrinsic->add_option("body", body_file)->required();
    intrinsic->add_option("--eps", eps_text, "Tube radius for the Steiner formula (radians, e.g. 0.1 or pi/30)");
    intrinsic->add_option("--level", level)->check(CLI::Range(0, 40));

    std::string radii = "pi/12:5*pi/12:5";
    auto* sweep = app.add_subcommand("sweep", "Sphere ratios over a radius grid (closed form vs quadrature)");
    sweep->add_option("--n", n)->required();
    sweep->add_option("--k", k)->required();
    sweep->add_option("--radii", radii, "start:stop:count");
    sweep->add_option("--level", level)->check(CLI::Range(0, 40));

    std::string report_file;
    auto* check = app.add_subcommand("check-report", "Validate a report file against the schema");
    check->add_option("report", report_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    set_default_workers(common.workers);
    RunReport report;
    report.seed = seed;
    auto finish = [&](const CsvTable* csv = nullptr) {
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(common, report, csv);
        return 0;
    };

    try {
        if (*volumes) {
            report.command = "volumes";
            report.parameters = {{"k", k}, {"n", n}};
            if (n < 1 || k < 0 || k > n - 1) throw InvalidArgument("need 0 <= k <= n-1");
            report.add_value("sphere_volume", sphere_volume(n));
            report.add_value("orthogonal_volume", orthogonal_volume(n + 1));
            report.add_value("grassmannian_dim", flat_grassmannian_dim(k, n));
            report.add_value("grassmannian_volume", flat_grassmannian_volume(k, n));
            report.add_value("schubert_ratio", schubert_ratio(k, n).value);
            report.add_value("schubert_volume", schubert_volume(k, n));
            return finish();
        }
        if (*delta) {
            report.command = "delta";
            report.parameters = {{"k", k}, {"n", n}, {"samples", samples}};
            const MCEstimate e = estimate_delta(k, n, samples, seed);
            report.add_estimate("delta", e);
            report.add_value("alpha", alpha_from_delta(k, n, e.mean));
            return finish();
        }
        if (*omega) {
            report.command = "omega";
            const ConvexBody body = load_body(body_file);
            report.parameters = {{"body", body.describe()}, {"k", k}, {"level", level}, {"method", method}};
            if (k < 0 || k > body.n() - 1) throw InvalidArgument("need 0 <= k <= n-1");
            const QuadratureGrid grid = QuadratureGrid::make(body.n() - 1, level);
            if (method == "convex") {
                report.add_quadrature("omega_ratio", omega_ratio_convex(body, k, grid));
            } else if (method == "h") {
                if (k != 1) throw InvalidArgument("the h formula is for k = 1 in RP^3");
                QuadratureValue v = omega_volume_rp3(body, grid);
                report.add_quadrature("omega_volume", v);
                const double s = schubert_volume(1, 3);
                report.add_quadrature("omega_ratio", {v.value / s, v.error / s, v.level});
            } else {
                report.parameters["mc_samples"] = mc_samples;
                RngStream rng(seed, 0);
                report.add_estimate("omega_ratio", omega_ratio_semialgebraic(body, k, grid, mc_samples, rng));
            }
            report.add_value("schubert_volume", schubert_volume(k, body.n()));
            return finish();
        }
        if (*tau) {
            report.command = "tau";
            std::vector<ConvexBody> bodies;
            nlohmann::json names = nlohmann::json::array();
            for (const auto& f : body_files) {
                bodies.push_back(load_body(f));
                names.push_back(bodies.back().describe());
            }
            const int dim = bodies.front().n();
            for (const auto& b : bodies)
                if (b.n() != dim) throw InvalidArgument("all bodies must live in the same RP^n");
            if (k < 0 || k > dim - 1) throw InvalidArgument("need 0 <= k <= n-1");
            const int needed = flat_grassmannian_dim(k, dim);
            if (static_cast<int>(bodies.size()) != needed)
                throw InvalidArgument("tau_" + std::to_string(k) + " in RP^" + std::to_string(dim) + " needs " +
                                      std::to_string(needed) + " bodies, got " + std::to_string(bodies.size()));
            report.parameters = {{"bodies", names}, {"k", k}, {"mode", mode}, {"level", level}};
            if (mode == "empirical") {
                if (k != 1 || dim != 3) throw Unsupported("empirical tau is implemented for lines in RP^3 only");
                report.parameters["trials"] = trials;
                report.add_estimate("tau", tau_empirical(four_bodies(bodies), trials, seed));
                return finish();
            }
            TauInputs in{k, dim, {}, 0.0};
            const QuadratureGrid grid = QuadratureGrid::make(dim - 1, level);
            for (std::size_t i = 0; i < bodies.size(); ++i) {
                const QuadratureValue r = omega_ratio_convex(bodies[i], k, grid);
                in.ratios.push_back(r.value);
                report.add_quadrature("ratio_" + std::to_string(i + 1), r);
            }
            report.parameters["delta_source"] = delta_source;
            if (delta_source == "paper") {
                if (k == 1 && dim == 3) in.delta = kPaperDelta13;
                else in.delta = exact_delta(k, dim);
            } else if (delta_source == "exact") {
                in.delta = exact_delta(k, dim);
            } else if (delta_source == "estimate") {
                report.parameters["samples"] = samples;
                const MCEstimate e = estimate_delta(k, dim, samples, seed);
                report.add_estimate("delta_estimate", e);
                in.delta = e.mean;
            } else {
                in.delta = parse_number(delta_source);
            }
            report.add_value("delta", in.delta);
            report.add_value("tau", tau_formula(in));
            return finish();
        }
        if (*intrinsic) {
            report.command = "intrinsic";
            const ConvexBody body = load_body(body_file);
            report.parameters = {{"body", body.describe()}, {"level", level}};
            const QuadratureGrid grid = QuadratureGrid::make(body.n() - 1, level);
            const IntrinsicProfile p = intrinsic_profile(body, grid);
            for (int j = 0; j < p.n; ++j) report.add_value("V_" + std::to_string(j), p.V[j]);
            for (int j = 0; j < p.n; ++j) {
                report.add_value("omega_ratio_" + std::to_string(j), p.ratios[j]);
                report.add_flag("bound_" + std::to_string(j), p.ratios[j] <= 4.0 + 1e-6);
            }
            report.add_value("volume", p.volume);
            report.add_value("polar_volume", p.polar_volume);
            report.add_value("reach", p.reach);
            report.add_value("quadrature_error", p.error);
            report.add_value("sum_identity_residual", sum_identity_residual(p));
            if (!eps_text.empty()) {
                eps = parse_number(eps_text);
                report.parameters["eps"] = eps;
                if (eps > p.reach)
                    throw DegenerateInput("refusing eps = " + std::to_string(eps) + ": above the reach estimate " +
                                          std::to_string(p.reach) + " where Steiner's formula is not guaranteed");
                report.add_value("tube_volume", steiner_tube_volume(body, eps, p));
            }
            return finish();
        }
        if (*sweep) {
            report.command = "sweep";
            report.parameters = {{"n", n}, {"k", k}, {"radii", radii}, {"level", level}};
            if (n < 2 || k < 0 || k > n - 1) throw InvalidArgument("need n >= 2 and 0 <= k <= n-1");
            CsvTable csv;
            csv.header = {"radius", "closed_form", "quadrature", "quadrature_error"};
            const QuadratureGrid grid = QuadratureGrid::make(n - 1, level);
            int i = 0;
            for (double r : parse_range(radii)) {
                const double closed = sphere_omega_ratio(k, n, r);
                const QuadratureValue q = omega_ratio_convex(ConvexBody::metric_sphere(n, r), k, grid);
                csv.rows.push_back({r, closed, q.value, q.error});
                report.add_quadrature("ratio_" + std::to_string(i++), q);
            }
            return finish(&csv);
        }
        if (*check) {
            std::ifstream f(report_file);
            if (!f) throw InvalidArgument("cannot open report '" + report_file + "'");
            nlohmann::json j;
            try {
                f >> j;
            } catch (const nlohmann::json::exception& e) {
                throw InvalidArgument(std::string("report is not valid JSON: ") + e.what());
            }
            if (const std::string problem = validate_report(j); !problem.empty())
                throw InvalidArgument("invalid report: " + problem);
            std::cout << "ok\n";
            return 0;
        }
    } catch (const DegenerateInput& e) {
        std::cerr << "tflats: degenerate input: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const NumericalFailure& e) {
        std::cerr << "tflats: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Unsupported& e) {
        std::cerr << "tflats: unsupported: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "tflats: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
