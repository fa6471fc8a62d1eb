#pragma once

#include "nucleoq/nucdata.hpp"
#include "nucleoq/specfun.hpp"
#include "nucleoq/units.hpp"

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace nucleoq {

struct SublevelPair {
    HalfInt Mg;
    HalfInt Me;
    Energy gamma;                   // partial decay rate, as a width
    double coupling_per_field = 0;  // matrix element per unit field [J / (V/m)]
};

struct SublevelSystem {
    NuclearTransition transition;
    std::vector<HalfInt> Mg;
    std::vector<HalfInt> Me;
    std::vector<SublevelPair> pairs;
    Energy Gamma;       // total width feeding the partial rates
    Energy detuning;    // rotating-frame offset
    Energy gamma_dec;   // extra coherence damping
    int sigma = +1;     // photon helicity

    Energy coupling(HalfInt mg, HalfInt me, ElectricField E_ef) const;
};

enum class Envelope { Rectangular, Gaussian };

struct EvolveDiagnostics {
    long accepted_steps = 0;
    long rejected_steps = 0;
    double min_population = 0.0;
    double max_trace_error = 0.0;
    double max_coherence_excess = 0.0;  // max of |rho_ge|^2 - rho_gg rho_ee
};

struct DensityMatrixState {
    std::map<HalfInt, double> rho_gg;
    std::map<HalfInt, double> rho_ee;
    std::map<std::pair<HalfInt, HalfInt>, std::complex<double>> rho_ge;
    Time time;
    EvolveDiagnostics diagnostics;
};

// gamma(Mg, Me) = (2Ie+1)/(2L+1) <Ig Mg, Ie -Me | L, Mg-Me>^2 Gamma.
Energy partial_rate(const NuclearTransition& t, HalfInt Mg, HalfInt Me, Energy Gamma);
Energy partial_rate(const NuclearTransition& t, HalfInt Mg, HalfInt Me);

// <Ie Me | H_I | Ig Mg> for a field amplitude E_ef and photon helicity sigma.
Energy coupling_element(const NuclearTransition& t, ElectricField E_ef, HalfInt Mg, HalfInt Me,
                        int sigma = +1);

// Gamma is the width used for relaxation (the collectively enhanced width in solid targets).
SublevelSystem build_system(const NuclearTransition& t, Energy Gamma, Energy detuning = Energy(0.0),
                            Energy gamma_dec = Energy(0.0), int sigma = +1);

DensityMatrixState initial_state(const SublevelSystem& sys);

// Integrates the Bloch equations for one pulse. For the Gaussian envelope `duration`
// is the intensity FWHM and the integration window is three times as long.
DensityMatrixState evolve(const SublevelSystem& sys, ElectricField E_ef, Time duration,
                          double tol = 1e-10, Envelope envelope = Envelope::Rectangular);

double total_excited_population(const DensityMatrixState& state);

}  // namespace nucleoq
