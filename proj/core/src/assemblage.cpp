#include "qcorr/assemblage.hpp"

#include "qcorr/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcorr {

namespace {

std::string sci(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

}  // namespace

void validate_assemblage(const Assemblage& s) {
    if (s.n_settings < 1 || s.n_outcomes < 1 || static_cast<int>(s.members.size()) != s.n_settings)
        throw Error(ErrorCode::InvalidAssemblage, "inconsistent assemblage shape");
    for (const auto& row : s.members) {
        if (static_cast<int>(row.size()) != s.n_outcomes)
            throw Error(ErrorCode::InvalidAssemblage, "inconsistent assemblage shape");
        for (const CMatrix& m : row) {
            if (m.rows() != s.dim || m.cols() != s.dim)
                throw Error(ErrorCode::InvalidAssemblage, "member has wrong dimension");
            const double ev = hermitian_eigenvalues(m).minCoeff();
            if (ev < -kPsdTol)
                throw Error(ErrorCode::InvalidAssemblage, "member has eigenvalue " + sci(ev));
        }
    }
    const double sig = assemblage_signaling(s);
    if (sig > 1e-10)
        throw Error(ErrorCode::InvalidAssemblage, "no-signaling violated by " + sci(sig));
    CMatrix total = CMatrix::Zero(s.dim, s.dim);
    for (const CMatrix& m : s.members[0])
        total += m;
    const double tr_dev = std::abs(total.trace() - cplx(1.0, 0.0));
    if (tr_dev > 1e-10)
        throw Error(ErrorCode::InvalidAssemblage, "total trace differs from 1 by " + sci(tr_dev));
}

double assemblage_signaling(const Assemblage& s) {
    double worst = 0.0;
    CMatrix ref = CMatrix::Zero(s.dim, s.dim);
    for (const CMatrix& m : s.members[0])
        ref += m;
    for (int x = 1; x < s.n_settings; ++x) {
        CMatrix total = CMatrix::Zero(s.dim, s.dim);
        for (const CMatrix& m : s.members[x])
            total += m;
        worst = std::max(worst, (total - ref).cwiseAbs().maxCoeff());
    }
    return worst;
}

NoSignalingBox::NoSignalingBox(int nx, int ny, int na, int nb)
    : nx_(nx), ny_(ny), na_(na), nb_(nb),
      p_(static_cast<std::size_t>(std::max(0, nx * ny * na * nb)), 0.0) {
    if (nx < 1 || ny < 1 || na < 1 || nb < 1)
        throw Error(ErrorCode::InvalidBox, "box dimensions must be positive");
}

double NoSignalingBox::marginal_a(int x, int a) const {
    double s = 0.0;
    for (int y = 0; y < ny_; ++y)
        for (int b = 0; b < nb_; ++b)
            s += (*this)(x, y, a, b);
    return s / ny_;
}

double NoSignalingBox::marginal_b(int y, int b) const {
    double s = 0.0;
    for (int x = 0; x < nx_; ++x)
        for (int a = 0; a < na_; ++a)
            s += (*this)(x, y, a, b);
    return s / nx_;
}

double NoSignalingBox::correlator(int x, int y) const {
    double s = 0.0;
    for (int a = 0; a < na_; ++a)
        for (int b = 0; b < nb_; ++b)
            s += ((a + b) % 2 == 0 ? 1.0 : -1.0) * (*this)(x, y, a, b);
    return s;
}

bool NoSignalingBox::same_shape(const NoSignalingBox& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && na_ == o.na_ && nb_ == o.nb_;
}

double NoSignalingBox::max_abs_difference(const NoSignalingBox& o) const {
    if (!same_shape(o))
        throw Error(ErrorCode::InvalidBox, "boxes have different shapes");
    double d = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i)
        d = std::max(d, std::abs(p_[i] - o.p_[i]));
    return d;
}

BoxDiagnostics diagnose_box(const NoSignalingBox& box) {
    BoxDiagnostics d;
    d.min_entry = *std::min_element(box.data().begin(), box.data().end());
    for (int x = 0; x < box.nx(); ++x) {
        for (int y = 0; y < box.ny(); ++y) {
            double total = 0.0;
            for (int a = 0; a < box.na(); ++a)
                for (int b = 0; b < box.nb(); ++b)
                    total += box(x, y, a, b);
            d.normalization = std::max(d.normalization, std::abs(total - 1.0));
        }
    }
    for (int x = 0; x < box.nx(); ++x) {
        for (int a = 0; a < box.na(); ++a) {
            double ref = 0.0;
            for (int b = 0; b < box.nb(); ++b)
                ref += box(x, 0, a, b);
            for (int y = 1; y < box.ny(); ++y) {
                double m = 0.0;
                for (int b = 0; b < box.nb(); ++b)
                    m += box(x, y, a, b);
                d.signaling_a = std::max(d.signaling_a, std::abs(m - ref));
            }
        }
    }
    for (int y = 0; y < box.ny(); ++y) {
        for (int b = 0; b < box.nb(); ++b) {
            double ref = 0.0;
            for (int a = 0; a < box.na(); ++a)
                ref += box(0, y, a, b);
            for (int x = 1; x < box.nx(); ++x) {
                double m = 0.0;
                for (int a = 0; a < box.na(); ++a)
                    m += box(x, y, a, b);
                d.signaling_b = std::max(d.signaling_b, std::abs(m - ref));
            }
        }
    }
    return d;
}

void validate_box(const NoSignalingBox& box) {
    if (box.data().empty())
        throw Error(ErrorCode::InvalidBox, "empty box");
    for (double v : box.data())
        if (!std::isfinite(v))
            throw Error(ErrorCode::InvalidBox, "non-finite probability");
    const BoxDiagnostics d = diagnose_box(box);
    if (d.min_entry < -1e-12)
        throw Error(ErrorCode::InvalidBox, "negative probability " + sci(d.min_entry));
    if (d.normalization > 1e-10)
        throw Error(ErrorCode::InvalidBox, "normalization off by " + sci(d.normalization));
    if (d.signaling_a > 1e-10)
        throw Error(ErrorCode::InvalidBox, "Alice's marginal depends on y by " + sci(d.signaling_a));
    if (d.signaling_b > 1e-10)
        throw Error(ErrorCode::InvalidBox, "Bob's marginal depends on x by " + sci(d.signaling_b));
}

Assemblage assemblage_from_state(const DensityMatrix& rho, const std::vector<MeasurementSetting>& measurements_a) {
    if (measurements_a.empty())
        throw Error(ErrorCode::InvalidMeasurement, "no measurement settings given");
    const int da = rho.dim_a();
    const int db = rho.dim_b();
    Assemblage s;
    s.n_settings = static_cast<int>(measurements_a.size());
    s.n_outcomes = static_cast<int>(measurements_a[0].effects.size());
    s.dim = db;
    const CMatrix& m = rho.matrix();
    for (const MeasurementSetting& setting : measurements_a) {
        validate_setting(setting, da);
        if (static_cast<int>(setting.effects.size()) != s.n_outcomes)
            throw Error(ErrorCode::InvalidMeasurement, "settings have different outcome counts");
        std::vector<CMatrix> row;
        for (const CMatrix& effect : setting.effects) {
            CMatrix sigma = CMatrix::Zero(db, db);
            // Tr_A[(M ⊗ 1) rho] = sum_ij M_ji rho_(i,j) blocks
            for (int i = 0; i < da; ++i)
                for (int j = 0; j < da; ++j)
                    sigma += effect(j, i) * m.block(i * db, j * db, db, db);
            row.push_back(0.5 * (sigma + sigma.adjoint()));
        }
        s.members.push_back(std::move(row));
    }
    return s;
}

NoSignalingBox box_from_assemblage(const Assemblage& s, const std::vector<MeasurementSetting>& measurements_b) {
    if (measurements_b.empty())
        throw Error(ErrorCode::InvalidMeasurement, "no measurement settings given");
    const int nb = static_cast<int>(measurements_b[0].effects.size());
    for (const MeasurementSetting& setting : measurements_b) {
        validate_setting(setting, s.dim);
        if (static_cast<int>(setting.effects.size()) != nb)
            throw Error(ErrorCode::InvalidMeasurement, "settings have different outcome counts");
    }
    NoSignalingBox box(s.n_settings, static_cast<int>(measurements_b.size()), s.n_outcomes, nb);
    for (int x = 0; x < s.n_settings; ++x)
        for (int y = 0; y < box.ny(); ++y)
            for (int a = 0; a < s.n_outcomes; ++a)
                for (int b = 0; b < nb; ++b)
                    box(x, y, a, b) = (measurements_b[y].effects[b] * s.members[x][a]).trace().real();
    return box;
}

NoSignalingBox box_from_state(const DensityMatrix& rho, const std::vector<MeasurementSetting>& measurements_a,
                              const std::vector<MeasurementSetting>& measurements_b) {
    return box_from_assemblage(assemblage_from_state(rho, measurements_a), measurements_b);
}

std::vector<MeasurementSetting> settings_from_directions(const std::vector<Vec3>& directions) {
    std::vector<MeasurementSetting> out;
    for (const Vec3& n : directions)
        out.push_back(MeasurementSetting::from_basis(QubitBasis(n)));
    return out;
}

NoSignalingBox box_from_directions(const DensityMatrix& rho, const std::vector<Vec3>& alice,
                                   const std::vector<Vec3>& bob) {
    return box_from_state(rho, settings_from_directions(alice), settings_from_directions(bob));
}

}  // namespace qcorr
