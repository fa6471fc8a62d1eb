#pragma once

#include "nucleoq/specfun.hpp"
#include "nucleoq/units.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nucleoq {

struct Multipolarity {
    enum class Kind { Electric, Magnetic };

    Kind kind = Kind::Magnetic;
    int L = 1;

    static Multipolarity parse(const std::string& text);  // "E1", "M1", "E2", ...
    std::string to_string() const;
    AngularMomentum order() const { return AngularMomentum(2 * L); }
};

struct NuclearTransition {
    std::string isotope;
    AngularMomentum Ig;
    AngularMomentum Ie;
    Energy E_gamma;
    Multipolarity multipolarity;
    // B(lambda L, Ig -> Ie) in e^2 fm^2L (electric) or muN^2 fm^(2L-2) (magnetic).
    std::optional<double> B_reduced;
    std::optional<Energy> Gamma0;
    std::optional<Time> half_life;  // source of Gamma0 when given in the data file
    double alpha_IC = 0.0;
    std::string material;  // empty for bare-ion records
};

struct TargetMaterial {
    std::string id;
    NumberDensity N;
    Temperature theta_D;
    Temperature T = units::K(300.0);
    Mass M;
    Length inv_mu;
    double enrichment = 1.0;
};

struct LaserPulseSpec {
    std::string id;
    Energy E_ph;
    double BW = 0.0;
    Time T_p;
    Time T_coh;
    Power P_peak;
    Frequency rep_rate;
    std::optional<Frequency> rep_rate_design;
    Length d_foc = units::nm(100.0);
    bool seeded = false;
};

struct ValidationIssue {
    enum class Severity { Warning, Error };
    Severity severity = Severity::Error;
    std::string record;
    std::string message;
};

struct Dataset {
    std::vector<NuclearTransition> transitions;
    std::vector<TargetMaterial> materials;
    std::vector<LaserPulseSpec> lasers;

    const NuclearTransition& transition(const std::string& id) const;
    const TargetMaterial& material(const std::string& id) const;
    const LaserPulseSpec& laser(const std::string& id) const;
    const TargetMaterial& material_for(const NuclearTransition& t) const;
    bool has_transition(const std::string& id) const;

    // FNV-1a hash of the canonical serialization, as 16 hex digits.
    std::string hash() const;
};

// Directory named by NUCLEOQ_DATA, else the repository data directory.
std::filesystem::path default_data_dir();

// Accepts a data file or a directory containing nuclear.toml.
Dataset load_dataset(const std::filesystem::path& path);
Dataset load_dataset_from_string(const std::string& text, const std::string& source = "<string>");

// Parse without enforcing invariants; used by validation front ends.
Dataset parse_dataset(const std::string& text, const std::string& source = "<string>");

std::vector<ValidationIssue> validate_dataset(const Dataset& ds);

std::string serialize_dataset(const Dataset& ds);

std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t v);

// Radiative width from the stored reduced transition probability.
Energy gamma_rad_from_B(const NuclearTransition& t);
// Radiative width from B if present, else Gamma0/(1+alpha).
Energy gamma_rad(const NuclearTransition& t);
// Gamma0 as stored, else Gamma_rad (1 + alpha).
Energy total_width(const NuclearTransition& t);

// B(down) and B(up) in SI (C^2 m^2L), inverted from the width when B is absent.
double B_down_SI(const NuclearTransition& t);
double B_up_SI(const NuclearTransition& t);

// Conversion factor from the conventional B unit to C^2 m^2L.
double B_unit_SI(const Multipolarity& mp);

// Gamma_rad [J] = prefactor * B [C^2 m^2L].
double radiative_prefactor(const Multipolarity& mp, Energy E_gamma);

}  // namespace nucleoq
