#include "commands.hpp"

#include "qcorr/error.hpp"

#include <algorithm>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw qcorr::Error(qcorr::ErrorCode::ParseError, "cannot write " + out);
    f << text;
    if (!text.empty() && text.back() != '\n')
        f << '\n';
}

std::string dump(const nlohmann::json& j, int indent) { return j.dump(indent); }

qcorr::CatalogParams parse_params(const std::vector<std::string>& items) {
    qcorr::CatalogParams p;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw qcorr::Error(qcorr::ErrorCode::ParseError, "parameters must look like name=value");
        try {
            p[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw qcorr::Error(qcorr::ErrorCode::ParseError, "bad parameter value in '" + item + "'");
        }
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace qcorr;
    CLI::App app{"qcorr: two-qubit correlation, steering and steering-ellipsoid toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = kDefaultSeed;
    int indent = 2;
    std::string out;
    app.add_option("--seed", seed, "Master random seed")->capture_default_str();
    app.add_option("--json-indent", indent, "JSON indentation (-1 for compact)")->capture_default_str();
    app.add_option("--out", out, "Write output to a file instead of stdout");

    auto* analyze = app.add_subcommand("analyze", "Correlation report for a state");
    std::string state_arg;
    bool deep = false;
    analyze->add_option("state", state_arg, "State spec file or catalog:<id>[:k=v,...]")->required();
    analyze->add_flag("--deep", deep, "Run the Schrodinger-strength and 1SSDI solvers");

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
    std::string family;
    std::vector<std::string> grid;
    bool numeric = false;
    sweep->add_option("family", family, "bd | bd2param")->required();
    sweep->add_option("--grid", grid, "axis=start:stop:step (bd: c1,c2,c3,diag; bd2param: p,q)");
    sweep->add_flag("--numeric", numeric, "Use the generic optimizers instead of closed forms");

    auto* steering = app.add_subcommand("steering", "Steering feasibility and Schrodinger strength");
    cli::SteeringOptions so;
    std::string alice, bob;
    steering->add_option("--box", so.box_argument, "Box file or catalog:<id>[:k=v,...]");
    steering->add_option("--state", so.state_argument, "State spec file or catalog:<id>[:k=v,...]");
    steering->add_option("--alice", alice, "Alice directions, e.g. 'x;y' or '1,0,0;0,1,0'");
    steering->add_option("--bob", bob, "Trusted directions for Bob");
    steering->add_option("--settings", so.settings, "Number of settings for state input")->capture_default_str();
    steering->add_option("--check", so.checks, "1sdi | 1ssdi | ss (repeatable)");
    steering->add_flag("--exhaustive", so.exhaustive, "Fine grid for the 1SSDI search");

    auto* catalog = app.add_subcommand("catalog", "List catalog ids or build one entry");
    std::string cat_id;
    std::vector<std::string> cat_params;
    catalog->add_option("id", cat_id, "Catalog id to build");
    catalog->add_option("--param", cat_params, "name=value (repeatable)");

    auto* verify = app.add_subcommand("verify-paper", "Check the reference claims");
    std::vector<std::string> only, tol;
    bool verify_json = false;
    verify->add_option("--only", only, "Restrict to claim groups");
    verify->add_option("--tolerance", tol, "group=value tolerance override (repeatable)");
    verify->add_flag("--json", verify_json, "Emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*analyze) {
            cli::AnalyzeOptions ao;
            ao.deep = deep;
            ao.seed = seed;
            emit(dump(cli::analyze_report(load_state_argument(state_arg), ao), indent), out);
        } else if (*sweep) {
            cli::SweepOptions sw;
            sw.family = family;
            sw.numeric = numeric;
            sw.seed = seed;
            for (const auto& g : grid) {
                const auto eq = g.find('=');
                if (eq == std::string::npos)
                    throw Error(ErrorCode::BadGrid, "grid axes must look like name=start:stop:step");
                sw.axes[g.substr(0, eq)] = cli::parse_range(g.substr(eq + 1));
            }
            const cli::SweepResult r = cli::run_sweep(sw);
            emit(r.csv, out);
            if (r.skipped)
                std::cerr << "skipped " << r.skipped << " grid points outside the valid region\n";
        } else if (*steering) {
            so.seed = seed;
            if (!alice.empty())
                so.alice = cli::parse_directions(alice);
            if (!bob.empty())
                so.bob = cli::parse_directions(bob);
            emit(dump(cli::run_steering(so), indent), out);
        } else if (*catalog) {
            if (cat_id.empty())
                emit(dump(cli::catalog_listing(), indent), out);
            else
                emit(dump(cli::catalog_object(cat_id, parse_params(cat_params)), indent), out);
        } else if (*verify) {
            cli::VerifyOptions vo;
            vo.only = only;
            vo.seed = seed;
            for (const auto& t : tol) {
                const auto eq = t.find('=');
                if (eq == std::string::npos)
                    throw Error(ErrorCode::BadParams, "tolerance overrides must look like group=value");
                try {
                    vo.tolerance[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
                } catch (const std::logic_error&) {
                    throw Error(ErrorCode::BadParams, "bad tolerance value in '" + t + "'");
                }
            }
            const auto rows = cli::verify_paper(vo);
            emit(verify_json ? dump(cli::claims_to_json(rows), indent) : cli::claims_to_table(rows), out);
            const bool ok = std::all_of(rows.begin(), rows.end(), [](const cli::ClaimRow& r) { return r.pass; });
            return ok ? 0 : kExitVerification;
        }
    } catch (const Error& e) {
        std::cerr << "error [" << error_name(e.code()) << "]: " << e.what() << '\n';
        return is_validation_error(e.code()) ? kExitValidation : kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return 0;
}
