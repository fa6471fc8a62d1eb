#pragma once

#include "nucleoq/nucdata.hpp"
#include "nucleoq/units.hpp"

namespace nucleoq {

// Energy-time product used for the Fourier-limited bandwidth: dE = h/T_p or hbar/T_p.
enum class BandwidthConvention { Planck, Reduced };

struct EffectiveField {
    Frequency Phi_tot;   // photons per second at peak power
    Frequency Phi_res;   // resonant photons per second
    double N_tot = 0.0;  // photons per pulse
    double N_res = 0.0;  // resonant photons per pulse
    Intensity I_p;
    Intensity I_ef;
    ElectricField E_ef;
    double BW_used = 0.0;
    Energy Gamma_used;
    double resonant_fraction = 0.0;
};

double fourier_bandwidth(Time T_p, Energy E_ph,
                         BandwidthConvention convention = BandwidthConvention::Planck);
double fourier_bandwidth(const LaserPulseSpec& laser,
                         BandwidthConvention convention = BandwidthConvention::Planck);

// Twice the Rayleigh length: (2 pi / lambda) (d_foc / 2)^2.
Length focal_length(Length wavelength, Length d_foc);
Area focal_area(Length d_foc);
// Focal diameter at which focal_length equals the given thickness.
Length focal_diameter_for_length(Length wavelength, Length length);

// Flat-top spectral overlap with the laser bandwidth as stored in `laser`; the
// resonant fraction Gamma/(BW E_gamma) is capped at one.
EffectiveField effective_field(const LaserPulseSpec& laser, Energy Gamma, Energy E_gamma,
                               double focus_efficiency = 1.0);

ElectricField field_from_intensity(Intensity I);

}  // namespace nucleoq
