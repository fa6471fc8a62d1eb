#pragma once

#include "nucleoq/bloch.hpp"
#include "nucleoq/cooperative.hpp"
#include "nucleoq/doppler.hpp"
#include "nucleoq/nucdata.hpp"
#include "nucleoq/photonics.hpp"
#include "nucleoq/units.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nucleoq {

enum class TargetMode { SolidState, IonBeam };

const char* to_string(TargetMode m);
TargetMode parse_target_mode(const std::string& text);

struct ScenarioConfig {
    std::string transition;
    std::string laser;
    TargetMode mode = TargetMode::SolidState;
    bool cooperative = true;
    // Request Fourier-limited (self-seeded) operation. Lasers flagged seeded in the
    // dataset always run with their tabulated bandwidth and full coherence.
    bool seeded = true;
    std::optional<Length> d_foc;
    std::optional<Length> thickness;
    std::optional<Power> peak_power;
    std::optional<Frequency> rep_rate;
    Energy detuning{0.0};
    double focus_efficiency = 1.0;
    double dgamma_rel = 1e-4;
    double tol = 1e-10;
    // Use the enhanced width in the Bloch relaxation terms as well as in the photon count.
    bool enhance_relaxation = true;
    BandwidthConvention fourier_convention = BandwidthConvention::Reduced;
    // Photon energy entering the Fourier-limited bandwidth; defaults to 25 keV for solid
    // targets and the laser's own photon energy for ion beams.
    std::optional<Energy> bandwidth_reference;
    PulseDurationConvention pulse_convention = PulseDurationConvention::PhotonNumberInvariant;
    NumberDensity ion_density{1e17};
    int sigma = +1;
    Envelope envelope = Envelope::Rectangular;
};

struct ExcitationResult {
    std::string transition;
    std::string laser;
    TargetMode mode = TargetMode::SolidState;
    bool cooperative = false;
    bool coherent = false;
    double rho_ee = 0.0;
    Rate S;
    double xi = 0.0;
    Energy Gamma0;
    Energy Gamma_used;
    double N_fv = 0.0;
    Length d_used;
    Length L_foc;
    ThicknessLimit limit_kind = ThicknessLimit::PhotoAbsorption;
    double f_LM = 0.0;
    ElectricField E_ef;
    Intensity I_ef;
    double BW_used = 0.0;
    Energy gamma_dec;
    Time T_pulse;  // evolution time in the nuclear frame
    Frequency f_l;
    double alpha = 0.0;
    double beta = 0.0;
    double field_factor = 1.0;
    EvolveDiagnostics diagnostics;
    std::string dataset_hash;
};

Rate signal_rate(double rho_ee, double N_fv, Frequency f_l, double alpha);

ExcitationResult run_scenario(const ScenarioConfig& cfg, const Dataset& data);

struct BatchEntry {
    std::optional<ExcitationResult> result;
    std::string error;
    int error_kind = 0;  // 0 none, 1 parse/data format, 2 domain
};

// Runs independent scenarios on up to `threads` workers; output order follows input order.
std::vector<BatchEntry> run_batch(const std::vector<ScenarioConfig>& cfgs, const Dataset& data,
                                  unsigned threads = 0);

struct SweepPoint {
    Length d_foc;
    double rho_coop = 0.0;
    double rho_nocoop = 0.0;
    double xi = 0.0;
    ThicknessLimit regime = ThicknessLimit::FocalLength;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    Length crossover;  // focal diameter at which L_foc equals 1/mu
};

// With constant_photon_number the peak power is held fixed, so every photon of the
// pulse lands in the focus; otherwise the peak intensity of the nominal focus is kept.
SweepResult focal_sweep(const ScenarioConfig& cfg, const Dataset& data,
                        const std::vector<Length>& d_foc, bool constant_photon_number = true,
                        unsigned threads = 0);

std::vector<Length> log_spaced(Length lo, Length hi, int steps);

enum class TableId { T2, T3, T4, T5 };

TableId parse_table_id(const std::string& text);
const char* to_string(TableId id);

// Reference values: reference[table][isotope][column] -> numbers.
struct ReferenceData {
    std::map<std::string, std::map<std::string, std::map<std::string, std::vector<double>>>>
        tables;
};

ReferenceData load_reference(const std::filesystem::path& path);

struct TableCell {
    std::string column;
    std::string quantity;
    double computed = 0.0;
    std::optional<double> reference;
    std::optional<double> ratio;  // computed / reference
};

struct TableRow {
    std::string isotope;
    std::vector<TableCell> cells;
};

struct TableResult {
    TableId id = TableId::T2;
    std::vector<TableRow> rows;
    std::vector<std::string> skipped;
};

// Recomputes a reference table. `base` supplies the knobs shared by every cell; the
// table fixes mode, seeding and the laser set.
TableResult reproduce_table(TableId id, const Dataset& data, const ReferenceData& ref,
                            const ScenarioConfig& base = {}, unsigned threads = 0);

// Relative gamma spread at which the ion-beam population for (transition, laser) equals
// `target_rho`. Bisection on log(dgamma_rel) over [1e-7, 1e-1].
double calibrate_dgamma_rel(const ScenarioConfig& cfg, const Dataset& data, double target_rho);

}  // namespace nucleoq
