#include "commands.hpp"

#include "qcorr/error.hpp"
#include "qcorr/steering.hpp"

#include <sstream>

namespace qcorr::cli {

using nlohmann::json;

std::vector<Vec3> parse_directions(const std::string& text) {
    std::vector<Vec3> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item == "x" || item == "y" || item == "z") {
            out.push_back(item == "x" ? Vec3::UnitX() : item == "y" ? Vec3::UnitY() : Vec3::UnitZ());
            continue;
        }
        std::stringstream is(item);
        std::string comp;
        std::vector<double> v;
        while (std::getline(is, comp, ','))
            try {
                v.push_back(std::stod(comp));
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::ParseError, "bad direction component '" + comp + "'");
            }
        if (v.size() != 3)
            throw Error(ErrorCode::ParseError, "directions need three components");
        const Vec3 n(v[0], v[1], v[2]);
        if (n.norm() < 1e-12)
            throw Error(ErrorCode::InvalidMeasurement, "zero direction");
        out.push_back(n.normalized());
    }
    if (out.empty())
        throw Error(ErrorCode::ParseError, "no directions given");
    return out;
}

namespace {

NoSignalingBox load_box_argument(const std::string& arg) {
    const std::string prefix = "catalog:";
    if (arg.rfind(prefix, 0) != 0)
        return load_box_file(arg);
    const std::string rest = arg.substr(prefix.size());
    const auto colon = rest.find(':');
    CatalogParams params;
    if (colon != std::string::npos) {
        std::stringstream ss(rest.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw Error(ErrorCode::ParseError, "catalog parameters must look like name=value");
            try {
                params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::ParseError, "bad parameter value in '" + item + "'");
            }
        }
    }
    return catalog_box(rest.substr(0, colon), params);
}

json dirs_json(const std::vector<Vec3>& v) {
    json out = json::array();
    for (const Vec3& d : v)
        out.push_back(vec_to_json(d));
    return out;
}

json lhs_json(const LhsResult& r) {
    json j = {{"verdict", r.feasible ? "Feasible" : "Infeasible"},
              {"residual", r.residual},
              {"iterations", r.iterations}};
    if (r.model) {
        json hidden = json::array();
        for (const Mat2c& m : r.model->hidden) {
            // Hidden states as (trace, Bloch vector) pairs.
            const double t = m.trace().real();
            hidden.push_back({{"weight", t},
                              {"bloch",
                               {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()}}});
        }
        j["model"] = hidden;
    }
    return j;
}

json search_json(const LhvLhsResult& r) {
    json j = {{"found", r.found},
              {"bestResidual", r.best_residual},
              {"effectiveResolution", r.effective_resolution},
              {"gridPoints", r.grid_points},
              {"lpSolves", r.lp_solves},
              {"seed", r.seed}};
    if (r.model) {
        json m = json::array();
        for (std::size_t l = 0; l < r.model->weights.size(); ++l) {
            json resp = json::array();
            for (const auto& ra : r.model->response[l])
                resp.push_back({ra[0], ra[1]});
            m.push_back({{"weight", r.model->weights[l]}, {"response", resp}, {"hidden", vec_to_json(r.model->hidden[l])}});
        }
        j["model"] = m;
        j["reconstructionResidual"] = r.model->residual;
    }
    return j;
}

json ss_json(const SsResult& r) {
    json j = {{"value", r.value},
              {"found", r.found},
              {"candidate", r.candidate},
              {"candidatesTested", r.candidates_tested}};
    if (r.found) {
        j["steerablePart"] = box_to_json(r.steerable_part);
        j["unsteerablePart"] = box_to_json(r.unsteerable_part);
        j["certificateResidual"] = r.certificate_residual;
        j["reconstructionError"] = r.reconstruction_error;
    }
    return j;
}

}  // namespace

json run_steering(const SteeringOptions& o) {
    if (o.box_argument.empty() == o.state_argument.empty())
        throw Error(ErrorCode::ParseError, "give exactly one of --box or --state");
    std::vector<std::string> checks = o.checks;
    if (checks.empty())
        checks = {"1sdi"};

    json out;
    out["schema_version"] = kSchemaVersion;
    out["seed"] = o.seed;

    std::optional<LoadedState> state;
    NoSignalingBox box;
    std::vector<Vec3> trusted;
    const bool explicit_settings = !o.alice.empty() || !o.bob.empty();
    if (!o.box_argument.empty()) {
        box = load_box_argument(o.box_argument);
        trusted = o.bob.empty() ? default_trusted_directions(box.ny()) : o.bob;
        out["input"] = {{"box", o.box_argument}};
    } else {
        state = load_state_argument(o.state_argument);
        const std::vector<Vec3> alice = o.alice.empty() ? default_trusted_directions(o.settings) : o.alice;
        trusted = o.bob.empty() ? default_trusted_directions(o.settings) : o.bob;
        box = box_from_directions(state->state, alice, trusted);
        out["input"] = {{"state", state->spec.source}, {"alice", dirs_json(alice)}};
    }
    out["trusted"] = dirs_json(trusted);
    out["box"] = box_to_json(box);

    LhvLhsOptions lo;
    lo.seed = o.seed;
    lo.exhaustive = o.exhaustive;
    for (const std::string& check : checks) {
        if (check == "1sdi") {
            out["1sdi"] = lhs_json(lhs_feasibility_1sdi(box, trusted));
        } else if (check == "1ssdi") {
            const VerdictResult v = superunsteerability_verdict(box, trusted, lo);
            json j = {{"verdict", verdict_name(v.verdict)}, {"oneSidedDI", lhs_json(v.lhs)}};
            if (v.search) {
                j["search"] = search_json(*v.search);
                if (!v.search->found)
                    j["note"] = "no model found by a seeded search; this is evidence, not a certificate";
            }
            out["1ssdi"] = j;
        } else if (check == "ss") {
            if (state && !explicit_settings) {
                const int n = o.settings;
                const SsStateResult r = schrodinger_strength_state(state->state, n);
                out["ss"] = {{"scope", "state"},
                             {"settings", n},
                             {"value", r.value},
                             {"alice", dirs_json(r.alice)},
                             {"bob", dirs_json(r.bob)},
                             {"box", ss_json(r.box_result)},
                             {"evaluations", r.evaluations}};
            } else {
                json j = ss_json(schrodinger_strength_box(box, trusted));
                j["scope"] = "box";
                out["ss"] = j;
            }
        } else {
            throw Error(ErrorCode::ParseError, "unknown check '" + check + "'");
        }
    }
    return out;
}

json catalog_listing() {
    json out = json::array();
    for (const CatalogEntry& e : catalog_entries()) {
        json params = json::array();
        for (const auto& p : e.parameters)
            params.push_back({{"name", p.name},
                              {"default", p.default_value},
                              {"min", p.min},
                              {"max", p.max},
                              {"description", p.description}});
        out.push_back({{"id", e.id},
                       {"kind", e.kind == CatalogKind::State ? "state" : "box"},
                       {"parameters", params},
                       {"reference", e.reference},
                       {"summary", e.summary}});
    }
    return out;
}

json catalog_object(const std::string& id, const CatalogParams& params) {
    const CatalogObject o = catalog_get(id, params);
    if (const auto* s = std::get_if<DensityMatrix>(&o))
        return {{"id", id}, {"state", state_to_json(*s)}, {"pauli", pauli_to_json(pauli_decompose(*s))}};
    return {{"id", id}, {"box", box_to_json(std::get<NoSignalingBox>(o))}};
}

}  // namespace qcorr::cli
