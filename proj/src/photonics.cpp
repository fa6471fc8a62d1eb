#include "nucleoq/photonics.hpp"

#include "nucleoq/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nucleoq {

namespace k = constants;

double fourier_bandwidth(Time T_p, Energy E_ph, BandwidthConvention convention) {
    if (!(T_p.si() > 0) || !(E_ph.si() > 0))
        throw DomainError("fourier_bandwidth: pulse duration and photon energy must be positive");
    const double action = convention == BandwidthConvention::Planck ? k::h : k::hbar;
    return action / T_p.si() / E_ph.si();
}

double fourier_bandwidth(const LaserPulseSpec& laser, BandwidthConvention convention) {
    return fourier_bandwidth(laser.T_p, laser.E_ph, convention);
}

Length focal_length(Length wavelength, Length d_foc) {
    if (!(wavelength.si() > 0)) throw DomainError("focal_length: wavelength must be positive");
    if (d_foc.si() < 0) throw DomainError("focal_length: negative focal diameter");
    const double r = 0.5 * d_foc.si();
    return Length(2.0 * k::pi / wavelength.si() * r * r);
}

Area focal_area(Length d_foc) {
    const double r = 0.5 * d_foc.si();
    return Area(k::pi * r * r);
}

Length focal_diameter_for_length(Length wavelength, Length length) {
    return Length(2.0 * std::sqrt(length.si() * wavelength.si() / (2.0 * k::pi)));
}

ElectricField field_from_intensity(Intensity I) {
    return ElectricField(std::sqrt(2.0 * I.si() / (k::epsilon0 * k::c)));
}

EffectiveField effective_field(const LaserPulseSpec& laser, Energy Gamma, Energy E_gamma,
                               double focus_efficiency) {
    if (!(Gamma.si() > 0)) throw DomainError("effective_field: width must be positive");
    if (!(E_gamma.si() > 0)) throw DomainError("effective_field: transition energy must be positive");
    if (!(laser.BW > 0)) throw DomainError("effective_field: bandwidth must be positive");
    if (!(laser.d_foc.si() > 0)) throw DomainError("effective_field: focal diameter must be positive");
    if (!(focus_efficiency >= 0 && focus_efficiency <= 1))
        throw DomainError("effective_field: focus efficiency must lie in [0, 1]");
    if (laser.P_peak.si() < 0) throw DomainError("effective_field: negative peak power");

    EffectiveField f;
    const Power P = laser.P_peak * focus_efficiency;
    f.BW_used = laser.BW;
    f.Gamma_used = Gamma;
    f.resonant_fraction = std::min(1.0, Gamma.si() / (laser.BW * E_gamma.si()));
    f.Phi_tot = Frequency(P.si() / laser.E_ph.si());
    f.Phi_res = f.Phi_tot * f.resonant_fraction;
    f.N_tot = f.Phi_tot.si() * laser.T_p.si();
    f.N_res = f.Phi_res.si() * laser.T_p.si();
    f.I_p = Intensity(P.si() / focal_area(laser.d_foc).si());
    f.I_ef = f.I_p * f.resonant_fraction;
    f.E_ef = field_from_intensity(f.I_ef);
    return f;
}

}  // namespace nucleoq
