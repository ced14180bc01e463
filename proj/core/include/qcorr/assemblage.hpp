#pragma once

#include "qcorr/measurement.hpp"
#include "qcorr/state.hpp"

#include <vector>

namespace qcorr {

// Unnormalized conditional states sigma_{a|x} on the trusted party.
struct Assemblage {
    int n_settings = 0;
    int n_outcomes = 0;
    int dim = 2;
    std::vector<std::vector<CMatrix>> members;  // [x][a]

    const CMatrix& at(int x, int a) const { return members[x][a]; }
};

void validate_assemblage(const Assemblage& assemblage);

// Largest deviation between the x-marginals sum_a sigma_{a|x}.
double assemblage_signaling(const Assemblage& assemblage);

class NoSignalingBox {
public:
    NoSignalingBox() = default;
    NoSignalingBox(int nx, int ny, int na, int nb);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int na() const { return na_; }
    int nb() const { return nb_; }

    double& operator()(int x, int y, int a, int b) { return p_[index(x, y, a, b)]; }
    double operator()(int x, int y, int a, int b) const { return p_[index(x, y, a, b)]; }

    const std::vector<double>& data() const { return p_; }
    std::vector<double>& data() { return p_; }

    // Alice's marginal p(a|x), averaged over y.
    double marginal_a(int x, int a) const;
    double marginal_b(int y, int b) const;

    // Dichotomic correlator sum (-1)^(a+b) p(ab|xy).
    double correlator(int x, int y) const;

    double max_abs_difference(const NoSignalingBox& other) const;
    bool same_shape(const NoSignalingBox& other) const;

private:
    std::size_t index(int x, int y, int a, int b) const {
        return ((static_cast<std::size_t>(x) * ny_ + y) * na_ + a) * nb_ + b;
    }

    int nx_ = 0, ny_ = 0, na_ = 0, nb_ = 0;
    std::vector<double> p_;
};

struct BoxDiagnostics {
    double min_entry = 0.0;
    double normalization = 0.0;
    double signaling_a = 0.0;
    double signaling_b = 0.0;
};

BoxDiagnostics diagnose_box(const NoSignalingBox& box);

// Throws InvalidBox when an invariant fails.
void validate_box(const NoSignalingBox& box);

Assemblage assemblage_from_state(const DensityMatrix& rho, const std::vector<MeasurementSetting>& measurements_a);

NoSignalingBox box_from_assemblage(const Assemblage& assemblage, const std::vector<MeasurementSetting>& measurements_b);

NoSignalingBox box_from_state(const DensityMatrix& rho, const std::vector<MeasurementSetting>& measurements_a,
                              const std::vector<MeasurementSetting>& measurements_b);

// Both parties measure projectively along the given Bloch directions.
NoSignalingBox box_from_directions(const DensityMatrix& rho, const std::vector<Vec3>& alice,
                                   const std::vector<Vec3>& bob);

std::vector<MeasurementSetting> settings_from_directions(const std::vector<Vec3>& directions);

}  // namespace qcorr
