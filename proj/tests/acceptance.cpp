// Acceptance run: one line per criterion, nonzero exit if any criterion fails.

#include "oracles.hpp"

#include "commands.hpp"

#include "qcorr/bell_diagonal.hpp"
#include "qcorr/catalog.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qse.hpp"
#include "qcorr/random.hpp"
#include "qcorr/steering.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace qcorr;

namespace {

namespace tol {
constexpr double discord = 1e-3;
constexpr double discord_seconds = 2.0;
constexpr double bd_closed_form = 1e-4;
constexpr double ss2 = 1e-3;
constexpr double ss3 = 1e-2;
constexpr double ss_box = 1e-3;
constexpr double lhs_margin = 0.01;
constexpr double no_model_residual = 1e-4;
constexpr double model_residual = 1e-9;
constexpr double q2_zero = 1e-6;
constexpr double q2_positive = 1e-3;
constexpr double semi_axes = 1e-10;
constexpr double containment = 1e-8;
constexpr double slope = -1e-12;
constexpr double csv_curve = 1e-12;
constexpr double ss2_giorgi = 1e-2;
}  // namespace tol

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            if (pass)
                notes << "failed: ";
            else
                notes << "; ";
            notes << what;
            pass = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const std::vector<Vec3> kXY{Vec3::UnitX(), Vec3::UnitY()};

void discord_golden(Outcome& o) {
    const std::vector<std::pair<std::string, double>> golden{
        {"rank2_1way", 0.2018}, {"rank2_2way", 0.1442}, {"tau_prime", 0.3333}, {"tau_dprime", 0.3113}, {"giorgi_n3", 0.026}};
    double worst_dev = 0.0, worst_time = 0.0;
    for (const auto& [id, expected] : golden) {
        const auto t0 = Clock::now();
        const double d = quantum_discord(catalog_state(id));
        const double dt = seconds_since(t0);
        worst_dev = std::max(worst_dev, std::abs(d - expected));
        worst_time = std::max(worst_time, dt);
        o.check(std::abs(d - expected) <= tol::discord, id + " discord " + fmt(d));
        o.check(dt < tol::discord_seconds, id + " took " + fmt(dt) + " s");
    }
    o.notes << (o.pass ? "" : " | ") << "max |dev| " << fmt(worst_dev) << ", slowest " << fmt(worst_time) << " s";
}

void bell_diagonal_closed_forms(Outcome& o) {
    Rng rng(derive_seed(kDefaultSeed, 2));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        const ScmubProfile p = scmub_profile(bd_compose(c));
        const double dev = std::max({std::abs(p.c1 - oracle::bd_curve(c(0))), std::abs(p.q2 - oracle::bd_curve(c(1))),
                                     std::abs(p.q3 - oracle::bd_curve(c(2)))});
        worst = std::max(worst, dev);
        o.check(dev <= tol::bd_closed_form, "sample " + std::to_string(i) + " deviates by " + fmt(dev));
    }
    o.notes << (o.pass ? "" : " | ") << "50 samples, max |dev| " << fmt(worst);
}

void schrodinger_strength(Outcome& o) {
    Rng rng(derive_seed(kDefaultSeed, 3));
    double w2 = 0.0, w3 = 0.0, wb = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        const double v = schrodinger_strength_state(bd_compose(c), 2).value;
        w2 = std::max(w2, std::abs(v - std::abs(c(1))));
        o.check(std::abs(v - std::abs(c(1))) <= tol::ss2, "SS2 sample " + std::to_string(i) + " = " + fmt(v));
    }
    for (int i = 0; i < 5; ++i) {
        const Vec3 c = bd_canonicalize(random_bell_diagonal_c(rng)).c;
        const double v = schrodinger_strength_state(bd_compose(c), 3).value;
        w3 = std::max(w3, std::abs(v - std::abs(c(2))));
        o.check(std::abs(v - std::abs(c(2))) <= tol::ss3, "SS3 sample " + std::to_string(i) + " = " + fmt(v));
    }
    for (int k = 1; k <= 7; ++k) {
        const double v = 0.1 * k;
        const SsResult r = schrodinger_strength_box(bb84_box(v), kXY);
        wb = std::max(wb, std::abs(r.value - v));
        o.check(r.found && std::abs(r.value - v) <= tol::ss_box, "BB84 V=" + fmt(v) + " gives " + fmt(r.value));
    }
    o.notes << (o.pass ? "" : " | ") << "max |dev| SS2 " << fmt(w2) << ", SS3 " << fmt(w3) << ", BB84 box " << fmt(wb);
}

void lhs_threshold(Outcome& o) {
    const double v0 = 1.0 / std::sqrt(2.0);
    int feasible = 0, infeasible = 0;
    for (int k = 0; k <= 100; ++k) {
        const double v = k / 100.0;
        if (v > v0 - tol::lhs_margin && v < v0 + tol::lhs_margin)
            continue;
        const bool f = lhs_feasibility_1sdi(bb84_box(v), kXY).feasible;
        if (v <= v0 - tol::lhs_margin) {
            o.check(f, "V=" + fmt(v) + " infeasible");
            feasible += f;
        } else {
            o.check(!f, "V=" + fmt(v) + " feasible");
            infeasible += !f;
        }
    }
    for (double v : {v0 - tol::lhs_margin, v0 + tol::lhs_margin}) {
        const bool f = lhs_feasibility_1sdi(bb84_box(v), kXY).feasible;
        o.check(f == (v < v0), "edge V=" + fmt(v));
    }
    o.notes << (o.pass ? "" : " | ") << feasible << " feasible below, " << infeasible << " infeasible above";
}

void superunsteerability(Outcome& o) {
    LhvLhsOptions exhaustive;
    exhaustive.exhaustive = true;
    double min_residual = 1e300;
    for (double v : {0.2, 0.5, 0.7}) {
        const VerdictResult r = superunsteerability_verdict(bb84_box(v), kXY, exhaustive);
        const double res = r.search ? r.search->best_residual : 0.0;
        min_residual = std::max(0.0, std::min(min_residual, res));
        o.check(r.verdict == Verdict::Superunsteerable, "BB84 V=" + fmt(v) + " verdict " + verdict_name(r.verdict));
        o.check(res >= tol::no_model_residual, "BB84 V=" + fmt(v) + " residual " + fmt(res));
    }
    Rng rng(derive_seed(kDefaultSeed, 5));
    const std::vector<Vec3> trusted{Vec3::UnitZ(), Vec3::UnitX()};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_cq_state(rng);
        const NoSignalingBox box = box_from_directions(rho, {random_unit_vector(rng), random_unit_vector(rng)}, trusted);
        const LhvLhsResult r = lhvlhs_search_1ssdi(box, trusted);
        const double res = r.model ? lhvlhs_reconstruction_residual(box, trusted, *r.model) : 1.0;
        worst = std::max(worst, res);
        o.check(r.found && res < tol::model_residual, "CQ box " + std::to_string(i) + " residual " + fmt(res));
    }
    o.notes << (o.pass ? "" : " | ") << "BB84 min residual " << fmt(min_residual) << ", CQ worst residual "
            << fmt(worst);
}

void scmub_witnesses(Outcome& o) {
    for (std::string id : {"rank2_1way", "rank2_2way"}) {
        const double q2 = scmub_q2(catalog_state(id)).value;
        o.check(std::abs(q2) <= tol::q2_zero, id + " Q2 " + fmt(q2));
    }
    for (std::string id : {"tau_prime", "tau_dprime", "giorgi_n3"}) {
        const double q2 = scmub_q2(catalog_state(id)).value;
        o.check(q2 > tol::q2_positive, id + " Q2 " + fmt(q2));
    }
    const std::map<std::string, int> ranks{{"pure_theta_phi", 1}, {"rank2_1way", 2}, {"rank2_2way", 2}, {"tau_dprime", 3}, {"tau_prime", 4}};
    for (const auto& [id, lr] : ranks)
        o.check(correlation_rank(catalog_state(id)) == lr, id + " L_R " + std::to_string(correlation_rank(catalog_state(id))));

    std::vector<DensityMatrix> states;
    for (const CatalogEntry& e : catalog_entries())
        if (e.kind == CatalogKind::State)
            states.push_back(catalog_state(e.id));
    Rng rng(derive_seed(kDefaultSeed, 6));
    for (int i = 0; i < 100; ++i) {
        states.push_back(random_state(rng));
        states.push_back(random_cq_state(rng));
    }
    int violations = 0;
    for (const DensityMatrix& rho : states) {
        const bool q2_zero = scmub_q2(rho).value <= tol::q2_zero;
        violations += q2_zero != (correlation_rank(rho) <= 2);
        violations += q2_zero == has_global_coherence(rho);
    }
    o.check(violations == 0, std::to_string(violations) + " equivalence violations");
    o.notes << (o.pass ? "" : " | ") << states.size() << " states checked for Q2=0 <=> L_R<=2 <=> no global coherence";
}

void qse_geometry(Outcome& o) {
    Rng rng(derive_seed(kDefaultSeed, 7));
    double worst_axes = 0.0, worst_vol = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Vec3 c = random_bell_diagonal_c(rng);
        const SteeringEllipsoid e = steering_ellipsoid(bd_compose(c));
        Vec3 expected = c.cwiseAbs();
        std::sort(expected.data(), expected.data() + 3, std::greater<>());
        worst_axes = std::max(worst_axes, (e.semi_axes - expected).cwiseAbs().maxCoeff());
        worst_vol = std::max(worst_vol, std::abs(qse_volume_normalized(bd_compose(c)) - std::abs(c.prod())));
    }
    o.check(worst_axes <= tol::semi_axes, "semi-axes deviate by " + fmt(worst_axes));
    o.check(worst_vol <= tol::semi_axes, "volume deviates by " + fmt(worst_vol));

    std::uniform_real_distribution<> u(0.0, 1.0);
    double worst = 0.0;
    int tested = 0;
    for (const CatalogEntry& entry : catalog_entries()) {
        if (entry.kind != CatalogKind::State || entry.id == "pure_theta_phi")
            continue;
        const DensityMatrix rho = catalog_state(entry.id);
        const SteeringEllipsoid e = steering_ellipsoid(rho);
        for (int k = 0; k < 1000; ++k) {
            const Vec3 m = random_unit_vector(rng) * std::cbrt(u(rng));
            const Vec3 v = steered_bloch(rho, {0.5 * (0.05 + 0.95 * u(rng)), m});
            worst = std::max({worst, e.normalized_radius(v) - 1.0, e.off_span_distance(v)});
        }
        ++tested;
    }
    o.check(worst <= tol::containment, "containment violated by " + fmt(worst));
    o.check(is_complete_steering(catalog_state("tau_dprime")), "tau_dprime not flagged complete");
    o.check(!is_complete_steering(catalog_state("giorgi_n3")), "giorgi_n3 flagged complete");
    o.notes << (o.pass ? "" : " | ") << "axes dev " << fmt(worst_axes) << ", " << tested
            << " states x 1000 POVMs, worst excess " << fmt(std::max(worst, 0.0));
}

void figure_sweep(Outcome& o) {
    cli::SweepOptions s;
    s.family = "bd2param";
    s.axes["p"] = {0.0, 1.0, 1.0 / 49.0};
    s.axes["q"] = {0.0, 1.0, 1.0 / 49.0};
    const cli::SweepResult r = cli::run_sweep(s);

    std::istringstream in(r.csv);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    {
        std::istringstream h(line);
        std::string cell;
        while (std::getline(h, cell, ','))
            header.push_back(cell);
    }
    auto col = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    const std::size_t cp = col("p"), cq = col("q"), s1 = col("semiAxis1"), s2 = col("semiAxis2"), s3 = col("semiAxis3"),
                      c1 = col("C1"), q2 = col("Q2"), q3 = col("Q3");
    o.check(q3 < header.size(), "missing CSV columns");
    if (!o.pass)
        return;

    std::map<long, std::vector<std::vector<double>>> by_q;
    double worst_curve = 0.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::istringstream l(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(l, cell, ','))
            row.push_back(std::stod(cell));
        ++rows;
        worst_curve = std::max({worst_curve, std::abs(row[c1] - oracle::bd_curve(row[s1])),
                                std::abs(row[q2] - oracle::bd_curve(row[s2])), std::abs(row[q3] - oracle::bd_curve(row[s3])),
                                std::abs(row[s1] - row[cp]), std::abs(row[s2] - row[cp]),
                                std::abs(row[s3] - (row[cp] - row[cq]))});
        by_q[std::lround(row[cq] * 49.0)].push_back(row);
    }
    o.check(worst_curve <= tol::csv_curve, "CSV deviates from 1-h((1+x)/2) by " + fmt(worst_curve));

    // Along each fixed q, p increases and so does p - q.
    double min_slope = 1e300;
    for (const auto& [q, line_rows] : by_q)
        for (std::size_t i = 1; i < line_rows.size(); ++i) {
            const auto& a = line_rows[i - 1];
            const auto& b = line_rows[i];
            const double dp = b[cp] - a[cp];
            const double dd = (b[cp] - b[cq]) - (a[cp] - a[cq]);
            min_slope = std::min({min_slope, (b[c1] - a[c1]) / dp, (b[q2] - a[q2]) / dp, (b[q3] - a[q3]) / dd});
        }
    o.check(min_slope >= tol::slope, "negative slope " + fmt(min_slope));
    o.notes << (o.pass ? "" : " | ") << rows << " valid points (" << r.skipped << " outside the family), min slope "
            << fmt(min_slope) << ", curve dev " << fmt(worst_curve);
}

void taxonomy(Outcome& o) {
    for (std::string id : {"rank2_1way", "rank2_2way"}) {
        const int c = classify_hierarchy(catalog_state(id)).taxonomy_class;
        o.check(c == 1, id + " class " + std::to_string(c));
    }
    const double ss2_d = schrodinger_strength_state(catalog_state("tau_dprime"), 2).value;
    HierarchyOptions hd;
    hd.ss2 = ss2_d;
    const HierarchyClass d = classify_hierarchy(catalog_state("tau_dprime"), hd);
    o.check(d.taxonomy_class == 2 && d.ss2_positive.value_or(false), "tau_dprime class " + std::to_string(d.taxonomy_class));
    o.check(std::abs(ss2_d - 0.5) <= tol::ss2, "tau_dprime SS2 " + fmt(ss2_d));

    const double ss2_g = schrodinger_strength_state(catalog_state("giorgi_n3"), 2).value;
    HierarchyOptions hg;
    hg.ss2 = ss2_g;
    const HierarchyClass g = classify_hierarchy(catalog_state("giorgi_n3"), hg);
    o.check(g.taxonomy_class == 2, "giorgi_n3 class " + std::to_string(g.taxonomy_class));
    o.check(ss2_g < tol::ss2_giorgi, "giorgi_n3 SS2 lower bound " + fmt(ss2_g));

    const int t = classify_hierarchy(catalog_state("tau_prime")).taxonomy_class;
    o.check(t == 3, "tau_prime class " + std::to_string(t));
    o.notes << (o.pass ? "" : " | ") << "SS2(tau_dprime) " << fmt(ss2_d) << ", SS2 bound (giorgi_n3) " << fmt(ss2_g);
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "discord golden values", 10.0, discord_golden},
        {2, "Bell-diagonal closed forms", 60.0, bell_diagonal_closed_forms},
        {3, "Schrodinger strength", 300.0, schrodinger_strength},
        {4, "1SDI threshold", 30.0, lhs_threshold},
        {5, "superunsteerability", 300.0, superunsteerability},
        {6, "SCMUB witnesses", 120.0, scmub_witnesses},
        {7, "QSE geometry", 60.0, qse_geometry},
        {8, "figure sweep", 120.0, figure_sweep},
        {9, "taxonomy", 120.0, taxonomy},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double dt = seconds_since(t0);
        o.check(dt <= c.budget_seconds, "exceeded " + fmt(c.budget_seconds) + " s budget");
        failed += !o.pass;
        std::printf("criterion %d %-28s %s  %7.2f s  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", dt, o.notes.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
