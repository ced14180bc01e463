#include "commands.hpp"

#include "qcorr/bell_diagonal.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/qse.hpp"
#include "qcorr/steering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorr::cli {

Range parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::BadGrid, "cannot parse grid range '" + text + "'");
        }
    }
    if (parts.size() == 1)
        return {parts[0], parts[0], 1.0};
    if (parts.size() != 3)
        throw Error(ErrorCode::BadGrid, "grid range must be start:stop:step");
    return {parts[0], parts[1], parts[2]};
}

std::vector<double> expand_range(const Range& r) {
    if (!std::isfinite(r.start) || !std::isfinite(r.stop) || !std::isfinite(r.step) || r.step <= 0.0)
        throw Error(ErrorCode::BadGrid, "grid step must be positive");
    std::vector<double> out;
    if (r.stop < r.start)
        return out;
    const auto n = static_cast<long>(std::floor((r.stop - r.start) / r.step + 1e-9));
    if (n > 100000)
        throw Error(ErrorCode::BadGrid, "grid too large");
    for (long i = 0; i <= n; ++i)
        out.push_back(r.start + static_cast<double>(i) * r.step);
    return out;
}

namespace {

struct Point {
    std::vector<double> params;
    Vec3 c;
};

struct Row {
    bool valid = false;
    std::vector<double> values;
};

Range axis(const SweepOptions& o, const std::string& name, const Range& fallback) {
    auto it = o.axes.find(name);
    return it == o.axes.end() ? fallback : it->second;
}

Row evaluate(const Point& pt, bool numeric) {
    Row row;
    const Vec3& c = pt.c;
    try {
        validate_bd(c);
    } catch (const Error&) {
        return row;
    }
    const BdProfile p = bd_profile(bd_canonicalize(c).c);
    const DensityMatrix rho = bd_compose(c);
    const Vec3 axes = steering_ellipsoid(rho).semi_axes;
    row.values = pt.params;
    double c1 = p.c1, q2 = p.q2, q3 = p.q3, ss2 = p.ss2, ss3 = p.ss3, discord = p.discord;
    if (numeric) {
        const ScmubProfile s = scmub_profile(rho);
        c1 = s.c1;
        q2 = s.q2;
        q3 = s.q3;
        discord = s.discord;
        ss2 = schrodinger_strength_state(rho, 2).value;
        ss3 = schrodinger_strength_state(rho, 3).value;
    }
    for (double v : {axes(0), axes(1), axes(2), c1, q2, q3, ss2, ss3, discord, p.qse_volume})
        row.values.push_back(v);
    row.valid = true;
    return row;
}

}  // namespace

SweepResult run_sweep(const SweepOptions& o) {
    std::vector<std::string> names;
    std::vector<Point> points;
    if (o.family == "bd") {
        if (o.axes.count("diag")) {
            names = {"x"};
            for (double x : expand_range(o.axes.at("diag")))
                points.push_back({{x}, Vec3::Constant(x)});
        } else {
            names = {"c1", "c2", "c3"};
            const Range zero{0.0, 0.0, 1.0};
            for (double c1 : expand_range(axis(o, "c1", zero)))
                for (double c2 : expand_range(axis(o, "c2", zero)))
                    for (double c3 : expand_range(axis(o, "c3", zero)))
                        points.push_back({{c1, c2, c3}, Vec3(c1, c2, c3)});
        }
    } else if (o.family == "bd2param") {
        names = {"p", "q"};
        for (double p : expand_range(axis(o, "p", {0.0, 1.0, 0.05})))
            for (double q : expand_range(axis(o, "q", {0.0, 0.0, 1.0}))) {
                // tau(p,q) has c = (p-q, -p, p)
                points.push_back({{p, q}, Vec3(p - q, -p, p)});
            }
    } else {
        throw Error(ErrorCode::BadGrid, "unknown sweep family '" + o.family + "'");
    }
    for (const auto& [name, r] : o.axes) {
        const bool known = std::find(names.begin(), names.end(), name) != names.end() ||
                           (o.family == "bd" && (name == "diag" || name == "c1" || name == "c2" || name == "c3"));
        if (!known)
            throw Error(ErrorCode::BadGrid, "axis '" + name + "' does not belong to family " + o.family);
    }
    if (points.empty())
        throw Error(ErrorCode::BadGrid, "empty grid");

    std::vector<Row> rows(points.size());
    opt::parallel_for(points.size(), [&](std::size_t i) {
        if (o.family == "bd2param" && !bd_two_param_valid(points[i].params[0], points[i].params[1]))
            return;
        rows[i] = evaluate(points[i], o.numeric);
    });

    std::ostringstream os;
    os.precision(17);
    for (const auto& n : names)
        os << n << ',';
    os << "semiAxis1,semiAxis2,semiAxis3,C1,Q2,Q3,SS2,SS3,discord,qseVolume\n";
    SweepResult res;
    for (const Row& r : rows) {
        if (!r.valid) {
            ++res.skipped;
            continue;
        }
        for (std::size_t k = 0; k < r.values.size(); ++k)
            os << (k ? "," : "") << r.values[k];
        os << '\n';
        ++res.rows;
    }
    if (res.rows == 0)
        throw Error(ErrorCode::BadGrid, "no valid grid points");
    res.csv = os.str();
    return res;
}

}  // namespace qcorr::cli
