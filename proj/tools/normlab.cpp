// normlab command-line frontend: norms, certificates, embedding searches and
// batch experiment suites with JSON reports and mandatory seeds.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "normlab/certificates.hpp"
#include "normlab/construction.hpp"
#include "normlab/embedding.hpp"
#include "normlab/errors.hpp"
#include "normlab/rng.hpp"
#include "normlab/serialization.hpp"
#include "normlab/spaces.hpp"
#include "normlab/version.hpp"

using nlohmann::json;
using namespace normlab;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitDegenerate = 4;

struct Output {
    bool as_json = false;
    int precision = 12;
};

Output g_output;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit_report(const std::string& command, json inputs, json outputs, std::uint64_t seed,
                 double elapsed, const std::function<void()>& human) {
    if (g_output.as_json) {
        const json report{{"command", command}, {"inputs", std::move(inputs)},
                          {"outputs", std::move(outputs)}, {"seed", seed},
                          {"elapsed", elapsed}, {"version", kVersion}};
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout.precision(g_output.precision);
        human();
    }
}

json parse_json_text(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error(std::string(what) + " is not valid JSON");
    return j;
}

FiniteVector parse_vector_arg(const std::string& text, const char* what) {
    return vector_from_json(parse_json_text(text, what));
}

DistanceMatrix load_dmatrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open distance matrix file '" + path + "'");
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return dmatrix_from_csv(in);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw input_error("distance matrix file is not valid JSON");
    return dmatrix_from_json(j);
}

// "U:1.5" or "V:3" -> the built-in counterexample set and its metric
std::pair<PointConfig, DistanceMatrix> builtin_set_for(const std::string& name) {
    const auto colon = name.find(':');
    if (colon == std::string::npos)
        throw input_error("--set expects U:p or V:p");
    const std::string which = name.substr(0, colon);
    double p = 0.0;
    try {
        p = std::stod(name.substr(colon + 1));
    } catch (const std::exception&) {
        throw input_error("bad exponent in --set '" + name + "'");
    }
    if (which == "U") return config_U(p);
    if (which == "V") return config_V(p);
    throw input_error("unknown built-in set '" + which + "' (use U or V)");
}

FiniteVector random_vector(std::mt19937_64& rng, int max_dim, double amp) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_real_distribution<double> val(-amp, amp);
    std::vector<double> v(dim(rng));
    for (auto& x : v) x = val(rng);
    return FiniteVector::from_dense(v);
}

// ---------------------------------------------------------------------------
// subcommand bodies

void cmd_norm(const std::string& space_text, const std::string& vector_text, double tol) {
    const Timer timer;
    const SpaceSpec space = parse_space(space_text);
    const FiniteVector x = parse_vector_arg(vector_text, "--vector");
    const double value = luxemburg_norm(space, x, tol);
    emit_report("norm", json{{"space", space}, {"vector", x}, {"tol", tol}},
                json{{"norm", value}}, 0, timer.seconds(),
                [&] { std::cout << "norm[" << space.label() << "] = " << value << "\n"; });
}

void cmd_certify(const std::string& branch_text, const std::string& space_text,
                 const std::string& x_text, const std::string& y_text) {
    const Timer timer;
    const SpaceSpec space = parse_space(space_text);
    const FiniteVector x = parse_vector_arg(x_text, "--x");
    const FiniteVector y = parse_vector_arg(y_text, "--y");

    ObstructionCertificate cert;
    if (branch_text == "p_lt_2")
        cert = obstruction_certificate_p_lt_2(space, x, y);
    else if (branch_text == "p_gt_2")
        cert = obstruction_certificate_p_gt_2(space, x, y);
    else
        throw input_error("--branch must be p_lt_2 or p_gt_2");

    emit_report("certify",
                json{{"branch", branch_text}, {"space", space}, {"x", x}, {"y", y}},
                json(cert), 0, timer.seconds(), [&] {
                    std::cout << "branch      = " << branch_text << "\n"
                              << "defect      = " << cert.defect << "\n"
                              << "chain_slack = " << cert.chain_slack << "\n"
                              << "identity_gap= " << cert.identity_gap << "\n"
                              << "residuals   = [" << cert.residuals[0] << ", "
                              << cert.residuals[1] << ", " << cert.residuals[2] << ", "
                              << cert.residuals[3] << "]\n"
                              << "verdict     = " << cert.verdict << "\n";
                });
}

void cmd_embed(const std::string& set_name, const std::string& dmatrix_path,
               const std::string& space_text, int dim, int starts, std::uint64_t seed,
               int max_iters, double tol, int threads) {
    const Timer timer;
    if (set_name.empty() == dmatrix_path.empty())
        throw input_error("provide exactly one of --set or --dmatrix");

    json source;
    DistanceMatrix D(0);
    if (!set_name.empty()) {
        auto [config, matrix] = builtin_set_for(set_name);
        D = std::move(matrix);
        source = set_name;
    } else {
        D = load_dmatrix(dmatrix_path);
        source = dmatrix_path;
    }

    const SpaceSpec space = parse_space(space_text);
    OptimizeOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    opts.max_iters = max_iters;
    opts.tol = tol;
    opts.threads = threads;
    const EmbedResult result = optimize_embedding(D, space, dim, opts);

    emit_report("embed",
                json{{"source", source}, {"dmatrix", D}, {"space", space}, {"dim", dim},
                     {"starts", starts}, {"seed", seed}, {"max_iters", max_iters}, {"tol", tol}},
                json(result), seed, timer.seconds(), [&] {
                    std::cout << "distortion = " << result.distortion
                              << "  (starts=" << result.starts_used << ", seed=" << result.seed
                              << ", converged=" << (result.converged ? "yes" : "no") << ")\n";
                });
}

void suite_clarkson(std::vector<double> ps, int pairs, int dim, std::uint64_t seed) {
    const Timer timer;
    if (ps.empty()) ps = {1.2, 1.5, 1.8, 2.0, 3.0, 5.0};
    constexpr double kSlackTol = 1e-12;

    json table = json::array();
    bool pass = true;
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
        auto rng = make_engine(seed, pi);
        double min_slack = std::numeric_limits<double>::infinity();
        long violations = 0;
        for (int k = 0; k < pairs; ++k) {
            const auto rep = clarkson_check(ps[pi], random_vector(rng, dim, 10.0),
                                            random_vector(rng, dim, 10.0));
            min_slack = std::min(min_slack, rep.min_slack());
            if (rep.min_slack() < -kSlackTol) ++violations;
        }
        pass = pass && violations == 0;
        table.push_back(json{{"p", ps[pi]}, {"min_slack", min_slack}, {"violations", violations}});
    }

    // tight disjoint-support case
    const auto tight = clarkson_check(1.5, FiniteVector::unit(1), FiniteVector::unit(2));
    pass = pass && std::abs(tight.slack_upper_2) <= kSlackTol;

    emit_report("suite clarkson",
                json{{"p", ps}, {"pairs", pairs}, {"dim", dim}, {"seed", seed}},
                json{{"table", table}, {"tight_case_slack", tight.slack_upper_2},
                     {"slack_tolerance", kSlackTol}, {"verdict", pass ? "pass" : "fail"}},
                seed, timer.seconds(), [&] {
                    for (const auto& row : table)
                        std::cout << "p=" << row["p"].get<double>()
                                  << "  min_slack=" << row["min_slack"].get<double>()
                                  << "  violations=" << row["violations"].get<long>() << "\n";
                    std::cout << "tight disjoint case slack = " << tight.slack_upper_2 << "\n"
                              << "verdict: " << (pass ? "pass" : "fail") << "\n";
                });
    if (!pass) throw numeric_error("clarkson suite failed");
}

void suite_axioms(const std::string& space_text, int count, std::uint64_t seed) {
    const Timer timer;
    const SpaceSpec space = parse_space(space_text);
    constexpr double kTol = 1e-9;

    auto rng = make_engine(seed, 0);
    std::uniform_real_distribution<double> scale(-4.0, 4.0);
    double max_homogeneity = 0.0, max_triangle = 0.0, max_fixed_point = 0.0;
    for (int k = 0; k < count; ++k) {
        const auto x = random_vector(rng, 16, 10.0);
        const auto y = random_vector(rng, 16, 10.0);
        const double nx = luxemburg_norm(space, x);
        const double ny = luxemburg_norm(space, y);
        const double lambda = scale(rng);

        max_homogeneity = std::max(
            max_homogeneity, std::abs(luxemburg_norm(space, lambda * x) - std::abs(lambda) * nx) /
                                 (1.0 + std::abs(lambda) * nx));
        max_triangle = std::max(
            max_triangle, (luxemburg_norm(space, x + y) - (nx + ny)) / (nx + ny));
        if (!space.is_sup())
            max_fixed_point = std::max(max_fixed_point, std::abs(modular_sum(space, x, nx) - 1.0));
    }
    const bool pass =
        max_homogeneity <= kTol && max_triangle <= kTol && max_fixed_point <= kTol;

    emit_report("suite axioms", json{{"space", space}, {"count", count}, {"seed", seed}},
                json{{"max_homogeneity_dev", max_homogeneity},
                     {"max_triangle_violation", max_triangle},
                     {"max_fixed_point_dev", max_fixed_point}, {"tolerance", kTol},
                     {"verdict", pass ? "pass" : "fail"}},
                seed, timer.seconds(), [&] {
                    std::cout << "homogeneity dev  = " << max_homogeneity << "\n"
                              << "triangle viol.   = " << max_triangle << "\n"
                              << "fixed-point dev  = " << max_fixed_point << "\n"
                              << "verdict: " << (pass ? "pass" : "fail") << "\n";
                });
    if (!pass) throw numeric_error("axioms suite failed");
}

void suite_criterion(double p, double K, int budget, int grid_samples) {
    const Timer timer;
    auto params = IsoCriterionParams::for_construction(p, K);
    GridSpec grid;
    grid.samples_per_index = grid_samples;
    const auto rep = check_iso_criterion(params, budget, grid);
    emit_report("suite criterion",
                json{{"p", p}, {"K", K}, {"budget", budget}, {"grid_samples", grid_samples}},
                json(rep), 0, timer.seconds(), [&] {
                    std::cout << "i0 (offset)     = " << rep.offset << "\n"
                              << "a_min_slack     = " << rep.a_min_slack << "\n"
                              << "a_grid_min_slack= " << rep.a_grid_min_slack << "\n"
                              << "b_partial_sum   = " << rep.b_partial_sum << "\n"
                              << "b_tail_bound    = " << rep.b_tail_bound << "\n"
                              << "verdict: " << (rep.pass ? "pass" : "fail") << "\n";
                });
}

void suite_james(const std::string& space_text, std::vector<int> blocks) {
    const Timer timer;
    const SpaceSpec space = parse_space(space_text);
    if (space.is_sup() || space.family().kind() != FamilyKind::orlicz_pr)
        throw input_error("suite james expects an orlicz space");
    if (blocks.empty()) blocks = {1, 2, 4};

    const double bound = std::pow(2.0, 1.0 / space.family().p());
    json table = json::array();
    bool pass = true;
    double prev = 0.0;
    for (const int n : blocks) {
        if (n < 1) throw input_error("block sizes must be >= 1");
        std::vector<FiniteVector::Entry> xe, ye;
        for (int i = 1; i <= n; ++i) {
            xe.push_back({static_cast<std::uint32_t>(i), 1.0});
            ye.push_back({static_cast<std::uint32_t>(n + i), 1.0});
        }
        const double value = james_objective(space, FiniteVector::from_entries(xe),
                                             FiniteVector::from_entries(ye));
        pass = pass && value > prev && value < bound;
        table.push_back(json{{"n", n}, {"value", value}, {"margin", bound - value}});
        prev = value;
    }
    emit_report("suite james", json{{"space", space}, {"blocks", blocks}},
                json{{"table", table}, {"bound", bound}, {"verdict", pass ? "pass" : "fail"}},
                0, timer.seconds(), [&] {
                    for (const auto& row : table)
                        std::cout << "n=" << row["n"].get<int>()
                                  << "  value=" << row["value"].get<double>()
                                  << "  margin=" << row["margin"].get<double>() << "\n";
                    std::cout << "bound 2^(1/p) = " << bound << "\n"
                              << "verdict: " << (pass ? "pass" : "fail") << "\n";
                });
    if (!pass) throw numeric_error("james suite failed");
}

void suite_residual_curve(const std::string& branch_text, const std::string& space_text,
                          std::vector<int> dims, int starts, std::uint64_t seed, int max_iters,
                          int threads) {
    const Timer timer;
    const SpaceSpec space = parse_space(space_text);
    Branch branch;
    double floor = 0.0;
    if (branch_text == "p_lt_2") {
        branch = Branch::p_lt_2;
        floor = kResidualFloorPlt2;
    } else if (branch_text == "p_gt_2") {
        branch = Branch::p_gt_2;
        floor = kResidualFloorPgt2;
    } else {
        throw input_error("--branch must be p_lt_2 or p_gt_2");
    }
    if (dims.empty()) dims = {2, 4, 8};

    json table = json::array();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dims.size(); ++k) {
        OptimizeOptions opts;
        opts.starts = starts;
        opts.seed = mix_seed(seed, k);  // isolated stream per dimension
        opts.max_iters = max_iters;
        opts.threads = threads;
        const auto result = minimize_isometry_residual(branch, space, dims[k], opts);
        best = std::min(best, result.max_residual);
        table.push_back(json{{"dim", dims[k]}, {"max_residual", result.max_residual},
                             {"residuals", result.residuals}});
    }
    const bool pass = best >= floor;

    emit_report("suite residual-curve",
                json{{"branch", branch_text}, {"space", space}, {"dims", dims},
                     {"starts", starts}, {"seed", seed}, {"max_iters", max_iters}},
                json{{"table", table}, {"best", best}, {"floor", floor},
                     {"verdict", pass ? "pass" : "fail"}},
                seed, timer.seconds(), [&] {
                    for (const auto& row : table)
                        std::cout << "dim=" << row["dim"].get<int>()
                                  << "  max_residual=" << row["max_residual"].get<double>() << "\n";
                    std::cout << "best = " << best << "  floor = " << floor << "\n"
                              << "verdict: " << (pass ? "pass" : "fail") << "\n";
                });
    if (!pass) throw numeric_error("residual floor violated");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"norms, obstruction certificates and embedding experiments in Orlicz and "
                 "modular sequence spaces"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.add_flag("--json", g_output.as_json, "emit a JSON run report instead of text");
    app.add_option("--precision", g_output.precision, "significant digits in text output")
        ->default_val(12);

    // norm
    auto* norm = app.add_subcommand("norm", "Luxemburg norm of a vector");
    std::string norm_space, norm_vector;
    double norm_tol = 1e-12;
    norm->add_option("--space", norm_space, "space spec (JSON or lp:p|orlicz:p,r|modular:p)")
        ->required();
    norm->add_option("--vector", norm_vector, "vector as a JSON array")->required();
    norm->add_option("--tol", norm_tol, "relative tolerance on the norm");
    norm->callback([&] { cmd_norm(norm_space, norm_vector, norm_tol); });

    // certify
    auto* certify = app.add_subcommand("certify", "obstruction certificate for a pair");
    std::string cert_branch, cert_space, cert_x, cert_y;
    certify->add_option("--branch", cert_branch, "p_lt_2 or p_gt_2")->required();
    certify->add_option("--space", cert_space, "space spec")->required();
    certify->add_option("--x", cert_x, "first vector (JSON array)")->required();
    certify->add_option("--y", cert_y, "second vector (JSON array)")->required();
    certify->callback([&] { cmd_certify(cert_branch, cert_space, cert_x, cert_y); });

    // embed
    auto* embed = app.add_subcommand("embed", "minimal-distortion embedding search");
    std::string embed_set, embed_dmatrix, embed_space;
    int embed_dim = 0, embed_starts = 0, embed_max_iters = 2400, embed_threads = 0;
    std::uint64_t embed_seed = 0;
    double embed_tol = 1e-10;
    embed->add_option("--set", embed_set, "built-in point set, U:p or V:p");
    embed->add_option("--dmatrix", embed_dmatrix, "distance matrix file (JSON or .csv)");
    embed->add_option("--space", embed_space, "target space spec")->required();
    embed->add_option("--dim", embed_dim, "ambient dimension")->required();
    embed->add_option("--starts", embed_starts, "number of random starts")->required();
    embed->add_option("--seed", embed_seed, "master seed (mandatory, no wall-clock default)")
        ->required();
    embed->add_option("--max-iters", embed_max_iters, "simplex iterations per start");
    embed->add_option("--tol", embed_tol, "simplex tolerance");
    embed->add_option("--threads", embed_threads, "thread cap (0: NORMLAB_THREADS or hardware)");
    embed->callback([&] {
        cmd_embed(embed_set, embed_dmatrix, embed_space, embed_dim, embed_starts, embed_seed,
                  embed_max_iters, embed_tol, embed_threads);
    });

    // suite
    auto* suite = app.add_subcommand("suite", "batch experiment suites");
    suite->require_subcommand(1);

    auto* clarkson = suite->add_subcommand("clarkson", "Clarkson inequality fuzz");
    std::vector<double> cl_ps;
    int cl_pairs = 10000, cl_dim = 16;
    std::uint64_t cl_seed = 0;
    clarkson->add_option("--p", cl_ps, "exponents (default 1.2,1.5,1.8,2,3,5)")->delimiter(',');
    clarkson->add_option("--pairs", cl_pairs, "random pairs per exponent");
    clarkson->add_option("--dim", cl_dim, "max support size");
    clarkson->add_option("--seed", cl_seed, "master seed")->required();
    clarkson->callback([&] { suite_clarkson(cl_ps, cl_pairs, cl_dim, cl_seed); });

    auto* axioms = suite->add_subcommand("axioms", "norm axioms fuzz");
    std::string ax_space;
    int ax_count = 10000;
    std::uint64_t ax_seed = 0;
    axioms->add_option("--space", ax_space, "space spec")->required();
    axioms->add_option("--count", ax_count, "random vectors");
    axioms->add_option("--seed", ax_seed, "master seed")->required();
    axioms->callback([&] { suite_axioms(ax_space, ax_count, ax_seed); });

    auto* criterion = suite->add_subcommand("criterion", "isomorphism criterion check");
    double cr_p = 0.0, cr_K = 3.0;
    int cr_budget = 1000, cr_grid = 33;
    criterion->add_option("--p", cr_p, "exponent p > 2")->required();
    criterion->add_option("--K", cr_K, "comparison constant");
    criterion->add_option("--budget", cr_budget, "index budget");
    criterion->add_option("--grid-samples", cr_grid, "grid points per index");
    criterion->callback([&] { suite_criterion(cr_p, cr_K, cr_budget, cr_grid); });

    auto* james = suite->add_subcommand("james", "James objective on block pairs");
    std::string jm_space = "orlicz:1.5,1.75";
    std::vector<int> jm_blocks;
    james->add_option("--space", jm_space, "orlicz space spec");
    james->add_option("--blocks", jm_blocks, "block sizes (default 1,2,4)")->delimiter(',');
    james->callback([&] { suite_james(jm_space, jm_blocks); });

    auto* curve = suite->add_subcommand("residual-curve", "isometry residual vs dimension");
    std::string rc_branch, rc_space;
    std::vector<int> rc_dims;
    int rc_starts = 100, rc_max_iters = 2400, rc_threads = 0;
    std::uint64_t rc_seed = 0;
    curve->add_option("--branch", rc_branch, "p_lt_2 or p_gt_2")->required();
    curve->add_option("--space", rc_space, "space spec")->required();
    curve->add_option("--dims", rc_dims, "ambient dimensions (default 2,4,8)")->delimiter(',');
    curve->add_option("--starts", rc_starts, "random starts per dimension");
    curve->add_option("--seed", rc_seed, "master seed")->required();
    curve->add_option("--max-iters", rc_max_iters, "simplex iterations per start");
    curve->add_option("--threads", rc_threads, "thread cap");
    curve->callback([&] {
        suite_residual_curve(rc_branch, rc_space, rc_dims, rc_starts, rc_seed, rc_max_iters,
                             rc_threads);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    } catch (const degenerate_input_error& e) {
        if (g_output.as_json)
            std::cout << json{{"verdict", "degenerate"}, {"error", e.what()}}.dump(2) << "\n";
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
