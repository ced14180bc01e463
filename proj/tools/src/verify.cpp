#include "commands.hpp"

#include "qcorr/bell_diagonal.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qse.hpp"
#include "qcorr/steering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace qcorr::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

class Claims {
public:
    explicit Claims(const VerifyOptions& o) : opt_(o) {}

    bool wants(const std::string& group) const {
        return opt_.only.empty() || std::find(opt_.only.begin(), opt_.only.end(), group) != opt_.only.end();
    }

    double tol(const std::string& group, double fallback) const {
        auto it = opt_.tolerance.find(group);
        return it == opt_.tolerance.end() ? fallback : it->second;
    }

    void equal(const std::string& id, const std::string& group, double expected, double computed, double tolerance) {
        const double t = tol(group, tolerance);
        rows_.push_back({id, group, fmt(expected), fmt(computed), t, std::abs(expected - computed) <= t});
    }
    void below(const std::string& id, const std::string& group, double bound, double computed, double tolerance = 0.0) {
        const double t = tol(group, tolerance);
        rows_.push_back({id, group, "< " + fmt(bound), fmt(computed), t, computed < bound + t});
    }
    void above(const std::string& id, const std::string& group, double bound, double computed, double tolerance = 0.0) {
        const double t = tol(group, tolerance);
        rows_.push_back({id, group, "> " + fmt(bound), fmt(computed), t, computed > bound - t});
    }
    void same(const std::string& id, const std::string& group, const std::string& expected, const std::string& computed) {
        rows_.push_back({id, group, expected, computed, 0.0, expected == computed});
    }

    std::vector<ClaimRow> take() { return std::move(rows_); }

private:
    const VerifyOptions& opt_;
    std::vector<ClaimRow> rows_;
};

const std::vector<std::string> kGroups{"discord", "bd",   "ss",  "lhs", "ssdi",  "scmub",
                                       "rank",    "qse",  "concurrence", "taxonomy", "sweep"};

}  // namespace

std::vector<std::string> verify_groups() { return kGroups; }

std::vector<ClaimRow> verify_paper(const VerifyOptions& o) {
    for (const auto& g : o.only)
        if (std::find(kGroups.begin(), kGroups.end(), g) == kGroups.end())
            throw Error(ErrorCode::BadParams, "unknown claim group '" + g + "'");
    for (const auto& [g, v] : o.tolerance)
        if (std::find(kGroups.begin(), kGroups.end(), g) == kGroups.end() || !(v >= 0.0))
            throw Error(ErrorCode::BadParams, "bad tolerance override for '" + g + "'");

    Claims c(o);
    const OptimizerOptions opt;

    if (c.wants("discord")) {
        const std::vector<std::pair<std::string, double>> golden{
            {"rank2_1way", 0.2018}, {"rank2_2way", 0.1442}, {"tau_prime", 0.3333}, {"tau_dprime", 0.3113},
            {"giorgi_n3", 0.026}};
        for (const auto& [id, v] : golden)
            c.equal("discord." + id, "discord", v, quantum_discord(catalog_state(id), opt), 1e-3);
        c.equal("discord.rank2_1way.reverse", "discord", 0.0,
                quantum_discord(swap_subsystems(catalog_state("rank2_1way")), opt), 1e-3);
        c.equal("discord.rank2_2way.reverse", "discord", 0.1442,
                quantum_discord(swap_subsystems(catalog_state("rank2_2way")), opt), 1e-3);
    }

    if (c.wants("bd")) {
        double dc1 = 0.0, dq2 = 0.0, dq3 = 0.0;
        for (int i = 0; i < 50; ++i) {
            Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(i)));
            const Vec3 raw = random_bell_diagonal_c(rng);
            const BdProfile closed = bd_profile(bd_canonicalize(raw).c);
            const ScmubResult s = scmub(bd_compose(raw), opt);
            dc1 = std::max(dc1, std::abs(s.c1 - closed.c1));
            dq2 = std::max(dq2, std::abs(s.q2 - closed.q2));
            dq3 = std::max(dq3, std::abs(s.q3 - closed.q3));
        }
        c.equal("bd.c1.random50.maxdev", "bd", 0.0, dc1, 1e-4);
        c.equal("bd.q2.random50.maxdev", "bd", 0.0, dq2, 1e-4);
        c.equal("bd.q3.random50.maxdev", "bd", 0.0, dq3, 1e-4);
        for (double p : {0.3, 0.6, 0.9}) {
            const BdTwoParam t = bd_two_param(p, 0.0);
            c.equal("bd.tau_pq.ss2=p(p=" + fmt(p) + ")", "bd", p, t.profile.ss2, 1e-12);
        }
        c.equal("bd.tau_prime.discord", "bd", 0.3333, bd_profile(Vec3::Constant(1.0 / 3.0)).discord, 1e-4);
    }

    if (c.wants("ss")) {
        const auto trusted = default_trusted_directions(2);
        for (int k = 1; k <= 7; ++k) {
            const double v = 0.1 * k;
            c.equal("ss.bb84.V=" + fmt(v), "ss", v, schrodinger_strength_box(bb84_box(v), trusted).value, 1e-3);
        }
        const DensityMatrix bd = bd_compose(Vec3(0.5, 0.3, 0.1));
        c.equal("ss.bd(0.5,0.3,0.1).n2", "ss", 0.3, schrodinger_strength_state(bd, 2).value, 1e-3);
        c.equal("ss.bd(0.5,0.3,0.1).n3", "ss", 0.1, schrodinger_strength_state(bd, 3).value, 1e-2);
        const DensityMatrix tp = catalog_state("tau_prime");
        const DensityMatrix tdp = catalog_state("tau_dprime");
        c.equal("ss.tau_prime.n2", "ss", 1.0 / 3.0, schrodinger_strength_state(tp, 2).value, 1e-3);
        c.equal("ss.tau_prime.n3", "ss", 1.0 / 3.0, schrodinger_strength_state(tp, 3).value, 1e-2);
        c.equal("ss.tau_dprime.n2", "ss", 0.5, schrodinger_strength_state(tdp, 2).value, 1e-3);
        c.equal("ss.tau_dprime.n3", "ss", 0.0, schrodinger_strength_state(tdp, 3).value, 1e-2);
        c.below("ss.giorgi_n3.n2.bound", "ss", 1e-2, schrodinger_strength_state(catalog_state("giorgi_n3"), 2).value);
    }

    if (c.wants("lhs")) {
        const auto trusted = default_trusted_directions(2);
        auto verdict = [&](double v) {
            return lhs_feasibility_1sdi(bb84_box(v), trusted).feasible ? std::string("Feasible") : "Infeasible";
        };
        const double edge = 1.0 / std::sqrt(2.0);
        c.same("lhs.bb84.V=0.5", "lhs", "Feasible", verdict(0.5));
        c.same("lhs.bb84.V=edge-0.01", "lhs", "Feasible", verdict(edge - 0.01));
        c.same("lhs.bb84.V=edge+0.01", "lhs", "Infeasible", verdict(edge + 0.01));
        c.same("lhs.bb84.V=0.9", "lhs", "Infeasible", verdict(0.9));
        c.same("lhs.noise", "lhs", "Feasible",
               lhs_feasibility_1sdi(catalog_box("box_noise"), trusted).feasible ? "Feasible" : "Infeasible");
    }

    if (c.wants("ssdi")) {
        const auto trusted = default_trusted_directions(2);
        LhvLhsOptions lo;
        lo.seed = o.seed;
        const VerdictResult v = superunsteerability_verdict(bb84_box(0.5), trusted, lo);
        c.same("ssdi.bb84.V=0.5", "ssdi", "Superunsteerable", verdict_name(v.verdict));
        const DensityMatrix cq = catalog_state("cq_generic");
        const VerdictResult w =
            superunsteerability_verdict(box_from_directions(cq, {Vec3::UnitX(), Vec3::UnitZ()}, trusted), trusted, lo);
        c.same("ssdi.cq_generic", "ssdi", "ModelFound", verdict_name(w.verdict));
    }

    if (c.wants("scmub")) {
        c.equal("scmub.q2.rank2_1way", "scmub", 0.0, scmub(catalog_state("rank2_1way"), opt).q2, 1e-6);
        c.equal("scmub.q2.rank2_2way", "scmub", 0.0, scmub(catalog_state("rank2_2way"), opt).q2, 1e-6);
        for (std::string id : {"tau_prime", "tau_dprime", "giorgi_n3"})
            c.above("scmub.q2." + id, "scmub", 1e-3, scmub(catalog_state(id), opt).q2);
        c.equal("scmub.q3.tau_dprime", "scmub", 0.0, scmub(catalog_state("tau_dprime"), opt).q3, 1e-6);
    }

    if (c.wants("rank")) {
        const std::vector<std::pair<std::string, int>> expected{
            {"pure_theta_phi", 1}, {"rank2_1way", 2}, {"rank2_2way", 2}, {"tau_dprime", 3}, {"tau_prime", 4}};
        for (const auto& [id, r] : expected)
            c.same("rank.L_R." + id, "rank", std::to_string(r), std::to_string(correlation_rank(catalog_state(id))));
    }

    if (c.wants("qse")) {
        const Vec3 cc(0.5, -0.3, 0.1);
        const SteeringEllipsoid e = steering_ellipsoid(bd_compose(cc));
        c.equal("qse.bd.semiaxes.maxdev", "qse", 0.0, (e.semi_axes - Vec3(0.5, 0.3, 0.1)).cwiseAbs().maxCoeff(), 1e-10);
        c.equal("qse.bd.volume", "qse", 0.015, qse_volume_normalized(bd_compose(cc)), 1e-10);
        c.same("qse.tau_dprime.complete", "qse", "true",
               is_complete_steering(catalog_state("tau_dprime")) ? "true" : "false");
        c.same("qse.giorgi_n3.complete", "qse", "false",
               is_complete_steering(catalog_state("giorgi_n3")) ? "true" : "false");
    }

    if (c.wants("concurrence")) {
        c.equal("concurrence.tau(0.6,0.2)", "concurrence", 0.3, concurrence(bd_two_param(0.6, 0.2).state), 1e-9);
        c.equal("concurrence.tau(0.6,0.2).closed", "concurrence", 0.3, bd_two_param(0.6, 0.2).profile.concurrence,
                1e-9);
    }

    if (c.wants("taxonomy")) {
        auto cls = [&](const std::string& id) {
            return std::to_string(classify_hierarchy(catalog_state(id)).taxonomy_class);
        };
        c.same("taxonomy.rank2_1way", "taxonomy", "1", cls("rank2_1way"));
        c.same("taxonomy.rank2_2way", "taxonomy", "1", cls("rank2_2way"));
        c.same("taxonomy.tau_dprime", "taxonomy", "2", cls("tau_dprime"));
        c.same("taxonomy.giorgi_n3", "taxonomy", "2", cls("giorgi_n3"));
        c.same("taxonomy.tau_prime", "taxonomy", "3", cls("tau_prime"));
    }

    if (c.wants("sweep")) {
        SweepOptions so;
        so.family = "bd2param";
        so.axes["p"] = {0.0, 1.0, 0.05};
        so.axes["q"] = {0.0, 0.0, 1.0};
        const SweepResult r = run_sweep(so);
        std::stringstream ss(r.csv);
        std::string line;
        std::getline(ss, line);
        double dev = 0.0;
        while (std::getline(ss, line)) {
            std::vector<double> v;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                v.push_back(std::stod(cell));
            // columns: p, q, semi x3, C1, Q2, ...
            dev = std::max(dev, std::abs(v[5] - v[6]));
        }
        c.equal("sweep.bd2param.q=0.Q2=C1", "sweep", 0.0, dev, 1e-12);
    }

    return c.take();
}

json claims_to_json(const std::vector<ClaimRow>& rows) {
    json out = json::array();
    for (const ClaimRow& r : rows)
        out.push_back({{"id", r.id},
                       {"group", r.group},
                       {"expected", r.expected},
                       {"computed", r.computed},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
    return out;
}

std::string claims_to_table(const std::vector<ClaimRow>& rows) {
    std::size_t w = 5;
    for (const ClaimRow& r : rows)
        w = std::max(w, r.id.size());
    std::ostringstream os;
    os << std::left << std::setw(static_cast<int>(w) + 2) << "claim" << std::setw(18) << "expected" << std::setw(18)
       << "computed" << std::setw(11) << "tolerance"
       << "result\n";
    int failed = 0;
    for (const ClaimRow& r : rows) {
        os << std::left << std::setw(static_cast<int>(w) + 2) << r.id << std::setw(18) << r.expected << std::setw(18)
           << r.computed << std::setw(11) << fmt(r.tolerance) << (r.pass ? "pass" : "FAIL") << '\n';
        failed += r.pass ? 0 : 1;
    }
    os << rows.size() - static_cast<std::size_t>(failed) << '/' << rows.size() << " claims pass\n";
    return os.str();
}

}  // namespace qcorr::cli
