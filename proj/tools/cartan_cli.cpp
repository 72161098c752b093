// cartan: command-line front end.
//
// Exit codes: 0 success, 1 internal error, 2 usage or schema error,
// 3 solver non-convergence, 4 verification failure.

#include "cartan/barycenter.hpp"
#include "cartan/io.hpp"
#include "cartan/lietrotter.hpp"
#include "cartan/measure.hpp"
#include "cartan/random.hpp"
#include "cartan/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

namespace {

using cartan::io::Json;

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailed = 4;

void emit(const Json& j, const std::string& out) {
    const std::string text = cartan::io::dump(j);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        cartan::io::writeFile(out, text);
    }
}

cartan::SolverOptions solverOptions(const cartan::verify::Tolerances& tol, double cli_tol,
                                    int max_iter, const std::string& init) {
    cartan::SolverOptions o;
    o.residual_tol = cli_tol > 0.0 ? cli_tol : tol.residual;
    o.max_iter = max_iter;
    o.init = init == "arith" ? cartan::InitKind::Arithmetic : cartan::InitKind::LogMean;
    o.validate();
    return o;
}

struct Args {
    std::string input, input_b, output = "-", csv, init = "logmean";
    double tol = 0.0, p = 1.0, kappa = 100.0;
    int max_iter = 1000, trials = 100;
    std::uint64_t seed = 0;
    std::size_t m = 0, atoms = 0;
    std::vector<double> grid;
    std::vector<std::string> suites, pair;
    bool real = false;
};

int runBarycenter(const Args& a, const cartan::verify::Tolerances& tol) {
    const cartan::DiscreteMeasure mu = cartan::io::loadMeasure(a.input);
    const cartan::BarycenterResult r =
        cartan::cartanBarycenter(mu, solverOptions(tol, a.tol, a.max_iter, a.init));
    emit(cartan::io::barycenterToJson(r), a.output);
    if (!r.converged) {
        std::cerr << "cartan: barycenter did not converge (relative residual " << r.relative_residual
                  << " after " << r.iterations << " iterations)\n";
        return kExitNoConvergence;
    }
    return 0;
}

int runWasserstein(const Args& a) {
    const cartan::DiscreteMeasure mu = cartan::io::loadMeasure(a.input);
    const cartan::DiscreteMeasure nu = cartan::io::loadMeasure(a.input_b);
    const cartan::WassersteinResult w = cartan::wasserstein(mu, nu, a.p);
    Json mass = Json::array();
    const Eigen::MatrixXd& f = w.coupling.mass();
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < f.cols(); ++j) row.push_back(f(i, j));
        mass.push_back(std::move(row));
    }
    emit({{"p", a.p}, {"distance", w.distance}, {"coupling", std::move(mass)}}, a.output);
    return 0;
}

int runVerify(Args a, const cartan::verify::Tolerances& tol) {
    std::erase(a.suites, std::string());
    if (a.suites.empty()) {
        std::cerr << "cartan verify: empty suite list\n";
        return kExitUsage;
    }
    for (const std::string& s : a.suites) {
        const auto& names = cartan::verify::suiteNames();
        if (std::find(names.begin(), names.end(), s) == names.end()) {
            std::cerr << "cartan verify: unknown suite '" << s << "'\n";
            return kExitUsage;
        }
    }
    if (a.trials < 1) {
        std::cerr << "cartan verify: --trials must be >= 1\n";
        return kExitUsage;
    }
    cartan::verify::Config c;
    c.seed = a.seed;
    c.trials = a.trials;
    if (a.m > 0) c.m = a.m;
    if (a.atoms > 0) c.atoms = a.atoms;
    c.kappa = a.kappa;
    c.tol = tol;
    if (!a.pair.empty()) {
        c.pair.emplace(cartan::io::loadMatrix(a.pair[0]), cartan::io::loadMatrix(a.pair[1]));
    }
    std::vector<cartan::verify::SuiteResult> results;
    for (const std::string& s : a.suites) results.push_back(cartan::verify::runSuite(s, c));
    emit(cartan::verify::toJson(results, c), a.output);
    bool ok = true;
    for (const auto& r : results) {
        std::cerr << r.suite << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.trials - r.failures
                  << "/" << r.trials << ")\n";
        ok = ok && r.passed();
    }
    return ok ? 0 : kExitVerifyFailed;
}

int runLieTrotter(const Args& a, const cartan::verify::Tolerances& tol) {
    const cartan::DiscreteMeasure mu = cartan::io::loadMeasure(a.input);
    const cartan::TrotterCurve curve =
        cartan::lieTrotterCurve(mu, a.grid, solverOptions(tol, a.tol, a.max_iter, a.init));
    emit(cartan::io::curveToJson(curve), a.output);
    if (!a.csv.empty()) cartan::io::writeFile(a.csv, cartan::io::curveToCsv(curve));
    return 0;
}

int runGen(const Args& a) {
    if (!(a.kappa >= 1.0)) {
        std::cerr << "cartan gen: --kappa must be >= 1\n";
        return kExitUsage;
    }
    if (a.m < 1 || a.atoms < 1) {
        std::cerr << "cartan gen: --m and --atoms must be >= 1\n";
        return kExitUsage;
    }
    cartan::Rng rng(a.seed);
    cartan::MeasureShape shape;
    shape.m = a.m;
    shape.atoms = a.atoms;
    shape.kappa = a.kappa;
    shape.field = a.real ? cartan::Field::Real : cartan::Field::Complex;
    emit(cartan::io::measureToJson(cartan::randomMeasure(rng, shape)), a.output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cartan barycenters of discrete measures on positive definite matrices"};
    app.require_subcommand(1);
    Args a;

    auto* bary = app.add_subcommand("barycenter", "Karcher mean of a measure file");
    bary->add_option("-i,--input", a.input, "measure JSON")->required();
    bary->add_option("--tol", a.tol, "relative residual tolerance");
    bary->add_option("--max-iter", a.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    bary->add_option("--init", a.init, "starting point")->check(CLI::IsMember({"logmean", "arith"}));
    bary->add_option("-o,--output", a.output, "output path (default stdout)");

    auto* wass = app.add_subcommand("wasserstein", "p-Wasserstein distance between two measures");
    wass->add_option("-a", a.input, "first measure JSON")->required();
    wass->add_option("-b", a.input_b, "second measure JSON")->required();
    wass->add_option("-p", a.p, "exponent p >= 1")->check(CLI::Range(1.0, 1e300));
    wass->add_option("-o,--output", a.output, "output path (default stdout)");

    auto* ver = app.add_subcommand("verify", "seeded property suites");
    ver->add_option("--suites", a.suites, "comma separated subset of: contraction, monotonicity, "
                                          "logmaj, commute, agh, trotter, sandwich")
        ->delimiter(',')
        ->required();
    ver->add_option("--seed", a.seed, "64-bit seed");
    ver->add_option("--trials", a.trials, "trials per suite");
    ver->add_option("--m", a.m, "fixed dimension");
    ver->add_option("--atoms", a.atoms, "fixed atom count");
    ver->add_option("--kappa", a.kappa, "condition number cap")->check(CLI::Range(1.0, 1e300));
    ver->add_option("--pair", a.pair, "A.json B.json checked directly by the logmaj suite")
        ->expected(2);
    ver->add_option("-o,--output", a.output, "output path (default stdout)");

    auto* lt = app.add_subcommand("lie-trotter", "curve G(mu^t)^{1/t} against exp(int log X)");
    lt->add_option("-i,--input", a.input, "measure JSON")->required();
    lt->add_option("--grid", a.grid, "comma separated non-zero t values")->delimiter(',')->required();
    lt->add_option("--csv", a.csv, "also write t,distance CSV");
    lt->add_option("--tol", a.tol, "relative residual tolerance before scaling by min(1,|t|)");
    lt->add_option("--max-iter", a.max_iter, "iteration cap")->check(CLI::PositiveNumber);
    lt->add_option("-o,--output", a.output, "output path (default stdout)");

    auto* gen = app.add_subcommand("gen", "seeded random measure");
    gen->add_option("--seed", a.seed, "64-bit seed")->required();
    gen->add_option("--m", a.m, "dimension")->required();
    gen->add_option("--atoms", a.atoms, "number of atoms")->required();
    gen->add_option("--kappa", a.kappa, "condition number cap (>= 1)")->required();
    gen->add_flag("--real", a.real, "real symmetric atoms");
    gen->add_option("-o,--output", a.output, "output path (default stdout)");

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

    try {
        const cartan::verify::Tolerances tol = cartan::verify::tolerancesFromEnvironment();
        if (bary->parsed()) return runBarycenter(a, tol);
        if (wass->parsed()) return runWasserstein(a);
        if (ver->parsed()) return runVerify(a, tol);
        if (lt->parsed()) return runLieTrotter(a, tol);
        if (gen->parsed()) return runGen(a);
    } catch (const cartan::io::SchemaError& e) {
        std::cerr << "cartan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cartan::BarycenterConvergenceError& e) {
        std::cerr << "cartan: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const cartan::DimensionError& e) {
        std::cerr << "cartan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const cartan::DomainError& e) {
        std::cerr << "cartan: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "cartan: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
