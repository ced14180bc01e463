#include "commands.hpp"

#include "qcorr/bell_diagonal.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/qse.hpp"
#include "qcorr/steering.hpp"

#include <chrono>

namespace qcorr::cli {

using nlohmann::json;

namespace {

std::optional<Vec3> bell_diagonal_c(const PauliRepresentation& rep) {
    if (rep.a.norm() > 1e-12 || rep.b.norm() > 1e-12)
        return std::nullopt;
    Mat3 off = rep.T;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 1e-12)
        return std::nullopt;
    return Vec3(rep.T.diagonal());
}

json bd_json(const Vec3& c) {
    const BdCanonical can = bd_canonicalize(c);
    const BdProfile p = bd_profile(can.c);
    json ev = json::array();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            ev.push_back(p.eigenvalues[a][b]);
    return {{"c", vec_to_json(c)},
            {"canonicalC", vec_to_json(can.c)},
            {"eigenvalues", ev},
            {"entangled", p.entangled},
            {"c1", p.c1},
            {"q2", p.q2},
            {"q3", p.q3},
            {"ss2", p.ss2},
            {"ss3", p.ss3},
            {"discord", p.discord},
            {"mutualInfo", p.mutual_info},
            {"qseVolume", p.qse_volume},
            {"concurrence", p.concurrence}};
}

json ellipsoid_summary(const DensityMatrix& rho, SteeringDirection dir) {
    try {
        return json::parse(ellipsoid_to_json(steering_ellipsoid(rho, dir), -1));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularMarginal)
            throw;
        return {{"error", std::string(error_name(e.code()))}, {"message", e.what()}};
    }
}

json lhs_json(const LhsResult& r) {
    return {{"verdict", r.feasible ? "Feasible" : "Infeasible"}, {"residual", r.residual}, {"iterations", r.iterations}};
}

}  // namespace

json analyze_report(const LoadedState& input, const AnalyzeOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const DensityMatrix& rho = input.state;
    if (rho.dim_a() != 2 || rho.dim_b() != 2)
        throw Error(ErrorCode::WrongDimension, "analysis needs a two-qubit state");

    const PauliRepresentation rep = pauli_decompose(rho);
    const OptimizerOptions opt;
    const ScmubProfile prof = scmub_profile(rho, opt);
    const double backward = quantum_discord(swap_subsystems(rho), opt);
    const bool entangled = !is_separable_ppt(rho);

    json report;
    report["schema_version"] = kSchemaVersion;
    report["input"] = input.spec.source;
    report["state"] = pauli_to_json(rep);
    report["profile"] = {{"c1", prof.c1},
                         {"q2", prof.q2},
                         {"q3", prof.q3},
                         {"c1Basis", vec_to_json(prof.c1_basis)},
                         {"q2Basis", vec_to_json(prof.q2_basis)},
                         {"q3Basis", vec_to_json(prof.q3_basis)},
                         {"discord", prof.discord},
                         {"discordReverse", backward},
                         {"mutualInfo", prof.mutual_info},
                         {"correlationRank", prof.correlation_rank},
                         {"globalCoherence", prof.global_coherence},
                         {"c1Clusters", prof.c1_clusters}};
    report["entanglement"] = {{"concurrence", concurrence(rho)}, {"pptSeparable", !entangled}};
    if (auto c = bell_diagonal_c(rep))
        report["bellDiagonal"] = bd_json(*c);
    else
        report["bellDiagonal"] = nullptr;

    const QseClassification qc = classify_qse_state(rho);
    report["qse"] = {{"BA", ellipsoid_summary(rho, SteeringDirection::BA)},
                     {"AB", ellipsoid_summary(rho, SteeringDirection::AB)},
                     {"dimensionClass", qc.dimension_class},
                     {"completeSteeringSufficient", qc.complete_steering},
                     {"discordZeroNeedle", qc.discord_zero_needle}};

    // Default 1SDI check: Alice measures along the C1 and Q2 bases, Bob along x and y.
    const std::vector<Vec3> alice{prof.c1_basis, prof.q2_basis};
    const std::vector<Vec3> bob = default_trusted_directions(2);
    json steering;
    const NoSignalingBox box = box_from_directions(rho, alice, bob);
    steering["settings"] = {{"alice", {vec_to_json(alice[0]), vec_to_json(alice[1])}},
                            {"bob", {vec_to_json(bob[0]), vec_to_json(bob[1])}}};
    steering["oneSidedDI"] = lhs_json(lhs_feasibility_1sdi(box, bob));

    HierarchyOptions hopt;
    if (options.deep) {
        SsStateOptions so;
        const SsStateResult s2 = schrodinger_strength_state(rho, 2, so);
        const SsStateResult s3 = schrodinger_strength_state(rho, 3, so);
        hopt.ss2 = s2.value;
        json s2j = {{"value", s2.value}, {"evaluations", s2.evaluations}, {"candidate", s2.box_result.candidate}};
        s2j["alice"] = json::array();
        s2j["bob"] = json::array();
        for (const Vec3& v : s2.alice)
            s2j["alice"].push_back(vec_to_json(v));
        for (const Vec3& v : s2.bob)
            s2j["bob"].push_back(vec_to_json(v));
        steering["ss2LowerBound"] = s2j;
        steering["ss3LowerBound"] = {{"value", s3.value}, {"evaluations", s3.evaluations}};

        const NoSignalingBox best = box_from_directions(rho, s2.alice, s2.bob);
        LhvLhsOptions lo;
        lo.seed = options.seed;
        const VerdictResult v = superunsteerability_verdict(best, s2.bob, lo);
        json sv = {{"verdict", verdict_name(v.verdict)}, {"oneSidedDI", lhs_json(v.lhs)}};
        if (v.search)
            sv["search"] = {{"bestResidual", v.search->best_residual},
                            {"effectiveResolution", v.search->effective_resolution},
                            {"gridPoints", v.search->grid_points},
                            {"seed", v.search->seed}};
        steering["superunsteerability"] = sv;
    }
    steering["deep"] = options.deep;
    report["steering"] = steering;

    const HierarchyClass h = classify_from_values(prof.discord, backward, prof.global_coherence, entangled, prof.q2,
                                                  prof.q3, hopt);
    report["hierarchy"] = {{"region", region_name(h.region)},
                           {"taxonomyClass", h.taxonomy_class},
                           {"ss2Positive", h.ss2_positive ? json(*h.ss2_positive) : json(nullptr)}};

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report["metadata"] = {{"seed", options.seed},
                          {"tolerances",
                           {{"zero", hopt.zero_tol},
                            {"ss", hopt.ss_tol},
                            {"epsOpt", opt.eps_opt},
                            {"lhs", LhsOptions{}.tolerance},
                            {"semiAxisZero", kSemiAxisZero}}},
                          {"wallTimeSeconds", wall}};
    return report;
}

json strip_timing(json report) {
    if (report.contains("metadata"))
        report["metadata"].erase("wallTimeSeconds");
    return report;
}

}  // namespace qcorr::cli
