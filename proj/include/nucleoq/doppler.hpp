#pragma once

#include "nucleoq/nucdata.hpp"
#include "nucleoq/units.hpp"

namespace nucleoq {

struct BoostSpec {
    double beta = 0.0;
    double gamma = 1.0;
    double dgamma_rel = 0.0;

    // beta in (-1, 1); negative values describe the inverse transformation.
    static BoostSpec from_beta(double beta, double dgamma_rel = 0.0);
    // Longitudinal Doppler factor sqrt((1+beta)/(1-beta)) = (1+beta) gamma.
    double doppler_factor() const;
    BoostSpec inverse() const;
};

// How the pulse duration maps into the rest frame.
enum class PulseDurationConvention {
    PhotonNumberInvariant,  // T_p' = T_p / ((1+beta) gamma)
    Laboratory              // T_p' = T_p
};

BoostSpec required_beta(Energy E_lab, Energy E_transition, double dgamma_rel = 1e-4);

struct BoostedLaser {
    LaserPulseSpec rest_frame;  // field factor already folded into P_peak as its square
    double field_factor = 1.0;
};

BoostedLaser boost_laser(const LaserPulseSpec& laser, const BoostSpec& boost,
                         PulseDurationConvention convention =
                             PulseDurationConvention::PhotonNumberInvariant);

}  // namespace nucleoq
