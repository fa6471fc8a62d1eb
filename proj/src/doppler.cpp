#include "nucleoq/doppler.hpp"

#include "nucleoq/errors.hpp"

#include <cmath>

namespace nucleoq {

BoostSpec BoostSpec::from_beta(double beta, double dgamma_rel) {
    if (!(beta > -1.0 && beta < 1.0)) throw DomainError("boost velocity must satisfy |beta| < 1");
    if (!(dgamma_rel >= 0)) throw DomainError("relative gamma spread must be non-negative");
    return {beta, 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta)), dgamma_rel};
}

double BoostSpec::doppler_factor() const { return std::sqrt((1.0 + beta) / (1.0 - beta)); }

BoostSpec BoostSpec::inverse() const { return from_beta(-beta, dgamma_rel); }

BoostSpec required_beta(Energy E_lab, Energy E_transition, double dgamma_rel) {
    if (!(E_lab.si() > 0)) throw DomainError("required_beta: laboratory photon energy must be positive");
    if (E_transition < E_lab)
        throw DomainError("required_beta: transition energy below the laboratory photon energy");
    const double D = E_transition.si() / E_lab.si();
    const double D2 = D * D;
    return BoostSpec::from_beta((D2 - 1.0) / (D2 + 1.0), dgamma_rel);
}

BoostedLaser boost_laser(const LaserPulseSpec& laser, const BoostSpec& boost,
                         PulseDurationConvention convention) {
    BoostedLaser out;
    out.field_factor = (1.0 + boost.beta) * boost.gamma;
    const double F = out.field_factor;
    LaserPulseSpec& r = out.rest_frame;
    r = laser;
    r.E_ph = laser.E_ph * boost.doppler_factor();
    r.BW = std::hypot(laser.BW, boost.dgamma_rel);
    r.P_peak = laser.P_peak * (F * F);
    if (convention == PulseDurationConvention::PhotonNumberInvariant) {
        r.T_p = laser.T_p / F;
        r.T_coh = laser.T_coh / F;
    }
    return out;
}

}  // namespace nucleoq
