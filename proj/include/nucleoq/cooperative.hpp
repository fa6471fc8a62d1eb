#pragma once

#include "nucleoq/nucdata.hpp"
#include "nucleoq/units.hpp"

#include <optional>

namespace nucleoq {

enum class ThicknessLimit { FocalLength, PhotoAbsorption, UserThickness };

const char* to_string(ThicknessLimit k);

struct CollectiveContext {
    double f_LM = 0.0;
    Area sigma_R;
    double xi = 0.0;
    Length d_used;
    Length L_foc;
    ThicknessLimit limit_kind = ThicknessLimit::PhotoAbsorption;
    Energy Gamma_enhanced;
};

Energy recoil_energy(Energy E_gamma, Mass M);

double lamb_moessbauer(Energy E_R, Temperature theta_D, Temperature T);
double lamb_moessbauer(const NuclearTransition& t, const TargetMaterial& mat);

Area resonance_cross_section(const NuclearTransition& t, double f_LM);

double effective_thickness(Area sigma_R, const TargetMaterial& mat, Length d);

Energy width_enhancement(double xi, Energy Gamma0);

struct ThicknessChoice {
    Length d;
    ThicknessLimit kind;
};

// Smallest of the focal length, the photo-absorption length and an optional user thickness.
ThicknessChoice used_thickness(Length L_foc, Length inv_mu, std::optional<Length> user = {});

CollectiveContext collective_context(const NuclearTransition& t, const TargetMaterial& mat,
                                     Length d_foc, std::optional<Length> user_thickness = {});

// Coherent forward-scattered intensity after a delta pulse, in units of the incident field
// squared; tau is time in units of the single-nucleus lifetime.
double nfs_intensity_closed(double xi, double tau);
double nfs_intensity_early(double xi, double tau);

struct SeriesResult {
    double value = 0.0;
    int orders = 0;
    bool converged = false;
    double change = 0.0;  // relative change between the last two estimates
};

// Sum of the first `orders` multiple-scattering contributions to the field, squared.
// With `accelerate` the partial sums are passed through a Levin t-transform.
SeriesResult nfs_intensity_series(double xi, double tau, int orders, bool accelerate = true,
                                  double tol = 1e-12);

}  // namespace nucleoq
