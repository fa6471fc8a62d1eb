#include "nucleoq/pipeline.hpp"

#include "nucleoq/errors.hpp"
#include "nucleoq/toml.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace nucleoq {

namespace k = constants;

const char* to_string(TargetMode m) {
    return m == TargetMode::SolidState ? "solid" : "ion";
}

TargetMode parse_target_mode(const std::string& text) {
    if (text == "solid" || text == "SolidState") return TargetMode::SolidState;
    if (text == "ion" || text == "IonBeam") return TargetMode::IonBeam;
    throw ParseError("unknown target mode '" + text + "' (expected 'solid' or 'ion')");
}

Rate signal_rate(double rho_ee, double N_fv, Frequency f_l, double alpha) {
    if (!(rho_ee >= 0) || !(N_fv >= 0) || !(f_l.si() >= 0) || !(alpha >= 0))
        throw DomainError("signal_rate: arguments must be non-negative");
    return f_l * (rho_ee * N_fv / (1.0 + alpha));
}

namespace {

struct ResolvedLaser {
    LaserPulseSpec spec;
    bool coherent = false;
    Energy gamma_dec{0.0};
};

// Applies overrides and fixes the bandwidth / coherence model for the scenario.
ResolvedLaser resolve_laser(const ScenarioConfig& cfg, const LaserPulseSpec& base) {
    ResolvedLaser r;
    r.spec = base;
    if (cfg.d_foc) r.spec.d_foc = *cfg.d_foc;
    if (cfg.peak_power) r.spec.P_peak = *cfg.peak_power;
    if (cfg.rep_rate) r.spec.rep_rate = *cfg.rep_rate;
    if (!(r.spec.d_foc.si() > 0)) throw DomainError("focal diameter must be positive");
    if (r.spec.P_peak.si() < 0) throw DomainError("peak power must be non-negative");
    r.coherent = base.seeded || cfg.seeded;
    if (cfg.seeded && !base.seeded) {
        Energy E_ref = cfg.bandwidth_reference.value_or(
            cfg.mode == TargetMode::SolidState ? units::keV(25.0) : base.E_ph);
        r.spec.BW = fourier_bandwidth(base.T_p, E_ref, cfg.fourier_convention);
    }
    return r;
}

ExcitationResult run_solid(const ScenarioConfig& cfg, const Dataset& data,
                           const NuclearTransition& t, ResolvedLaser las) {
    const TargetMaterial& mat = data.material_for(t);
    ExcitationResult res;
    res.Gamma0 = total_width(t);
    const CollectiveContext ctx = collective_context(t, mat, las.spec.d_foc, cfg.thickness);
    res.xi = ctx.xi;
    res.f_LM = ctx.f_LM;
    res.d_used = ctx.d_used;
    res.L_foc = ctx.L_foc;
    res.limit_kind = ctx.limit_kind;
    res.cooperative = cfg.cooperative;
    res.Gamma_used = cfg.cooperative ? ctx.Gamma_enhanced : res.Gamma0;
    res.alpha = t.alpha_IC;

    LaserPulseSpec op = las.spec;
    op.E_ph = t.E_gamma;
    const EffectiveField eff = effective_field(op, res.Gamma_used, t.E_gamma, cfg.focus_efficiency);
    res.E_ef = eff.E_ef;
    res.I_ef = eff.I_ef;
    res.BW_used = op.BW;
    res.coherent = las.coherent;
    res.gamma_dec = las.coherent ? Energy(0.0) : width_of(Rate(1.0 / op.T_coh.si()));
    res.T_pulse = op.T_p;

    const Energy relax = cfg.enhance_relaxation ? res.Gamma_used : res.Gamma0;
    const SublevelSystem sys = build_system(t, relax, cfg.detuning, res.gamma_dec, cfg.sigma);
    const DensityMatrixState st = evolve(sys, res.E_ef, op.T_p, cfg.tol, cfg.envelope);
    res.rho_ee = total_excited_population(st);
    res.diagnostics = st.diagnostics;

    res.N_fv = mat.N.si() * mat.enrichment * focal_area(op.d_foc).si() * res.d_used.si();
    res.f_l = op.rep_rate;
    return res;
}

ExcitationResult run_ion(const ScenarioConfig& cfg, const NuclearTransition& t,
                         ResolvedLaser las) {
    ExcitationResult res;
    res.Gamma0 = gamma_rad(t);
    res.Gamma_used = res.Gamma0;
    res.cooperative = false;
    res.alpha = 0.0;
    res.xi = 0.0;

    const BoostSpec boost = required_beta(las.spec.E_ph, t.E_gamma, cfg.dgamma_rel);
    const BoostedLaser rest = boost_laser(las.spec, boost, cfg.pulse_convention);
    res.beta = boost.beta;
    res.field_factor = rest.field_factor;

    const EffectiveField eff =
        effective_field(rest.rest_frame, res.Gamma_used, t.E_gamma, cfg.focus_efficiency);
    res.E_ef = eff.E_ef;
    res.I_ef = eff.I_ef;
    res.BW_used = rest.rest_frame.BW;
    res.coherent = las.coherent;
    res.gamma_dec =
        las.coherent ? Energy(0.0) : width_of(Rate(1.0 / rest.rest_frame.T_coh.si()));
    res.T_pulse = rest.rest_frame.T_p;

    const SublevelSystem sys = build_system(t, res.Gamma_used, cfg.detuning, res.gamma_dec, cfg.sigma);
    const DensityMatrixState st = evolve(sys, res.E_ef, res.T_pulse, cfg.tol, cfg.envelope);
    res.rho_ee = total_excited_population(st);
    res.diagnostics = st.diagnostics;

    res.L_foc = focal_length(wavelength(las.spec.E_ph), las.spec.d_foc);
    res.d_used = res.L_foc;
    res.limit_kind = ThicknessLimit::FocalLength;
    res.N_fv = cfg.ion_density.si() * focal_area(las.spec.d_foc).si() * res.d_used.si();
    res.f_l = las.spec.rep_rate;
    return res;
}

template <class E>
[[noreturn]] void rethrow_with(const ScenarioConfig& cfg, const E& e) {
    throw E("scenario " + cfg.transition + "/" + cfg.laser + ": " + e.what());
}

}  // namespace

ExcitationResult run_scenario(const ScenarioConfig& cfg, const Dataset& data) {
    try {
        if (!(cfg.focus_efficiency >= 0 && cfg.focus_efficiency <= 1))
            throw DomainError("focus efficiency must lie in [0, 1]");
        if (!(cfg.tol > 0)) throw DomainError("integrator tolerance must be positive");
        const NuclearTransition& t = data.transition(cfg.transition);
        const ResolvedLaser las = resolve_laser(cfg, data.laser(cfg.laser));
        ExcitationResult res = cfg.mode == TargetMode::SolidState ? run_solid(cfg, data, t, las)
                                                                  : run_ion(cfg, t, las);
        res.transition = cfg.transition;
        res.laser = cfg.laser;
        res.mode = cfg.mode;
        res.rho_ee = std::clamp(res.rho_ee, 0.0, 1.0);
        res.S = signal_rate(res.rho_ee, res.N_fv, res.f_l, res.alpha);
        res.dataset_hash = data.hash();
        return res;
    } catch (const DomainError& e) {
        rethrow_with(cfg, e);
    } catch (const DataError& e) {
        rethrow_with(cfg, e);
    } catch (const StiffnessError& e) {
        rethrow_with(cfg, e);
    }
}

namespace {

template <class F>
void parallel_for(size_t n, unsigned threads, F&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(n, 1)));
    if (threads <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (size_t i = next++; i < n; i = next++) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<BatchEntry> run_batch(const std::vector<ScenarioConfig>& cfgs, const Dataset& data,
                                  unsigned threads) {
    std::vector<BatchEntry> out(cfgs.size());
    parallel_for(cfgs.size(), threads, [&](size_t i) {
        try {
            out[i].result = run_scenario(cfgs[i], data);
        } catch (const ParseError& e) {
            out[i].error = e.what();
            out[i].error_kind = 1;
        } catch (const std::exception& e) {
            out[i].error = e.what();
            out[i].error_kind = 2;
        }
    });
    return out;
}

std::vector<Length> log_spaced(Length lo, Length hi, int steps) {
    if (!(lo.si() > 0) || !(hi.si() > 0)) throw DomainError("sweep bounds must be positive");
    if (hi < lo) throw DomainError("sweep upper bound below lower bound");
    if (lo == hi) return {lo};
    if (steps < 2) throw DomainError("a sweep over a range needs at least two steps");
    std::vector<Length> v;
    const double a = std::log(lo.si()), b = std::log(hi.si());
    for (int i = 0; i < steps; ++i) {
        if (i == 0) v.push_back(lo);
        else if (i == steps - 1) v.push_back(hi);
        else v.push_back(Length(std::exp(a + (b - a) * i / (steps - 1))));
    }
    return v;
}

SweepResult focal_sweep(const ScenarioConfig& cfg, const Dataset& data,
                        const std::vector<Length>& d_foc, bool constant_photon_number,
                        unsigned threads) {
    if (cfg.mode != TargetMode::SolidState)
        throw DomainError("focal sweep requires a solid-state target");
    for (Length d : d_foc)
        if (!(d.si() > 0)) throw DomainError("focal diameters must be positive");
    const NuclearTransition& t = data.transition(cfg.transition);
    const TargetMaterial& mat = data.material_for(t);
    const LaserPulseSpec& las = data.laser(cfg.laser);
    const Length nominal = cfg.d_foc.value_or(las.d_foc);
    const Power P = cfg.peak_power.value_or(las.P_peak);

    SweepResult out;
    out.crossover = focal_diameter_for_length(wavelength(t.E_gamma), mat.inv_mu);
    out.points.resize(d_foc.size());
    std::vector<ScenarioConfig> cfgs;
    for (Length d : d_foc) {
        ScenarioConfig c = cfg;
        c.d_foc = d;
        if (constant_photon_number) c.peak_power = P;
        else c.peak_power = P * ratio(d * d, nominal * nominal);
        c.cooperative = true;
        cfgs.push_back(c);
        c.cooperative = false;
        cfgs.push_back(c);
    }
    std::vector<ExcitationResult> res(cfgs.size());
    std::exception_ptr err;
    std::mutex mu;
    parallel_for(cfgs.size(), threads, [&](size_t i) {
        try {
            res[i] = run_scenario(cfgs[i], data);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
        }
    });
    if (err) std::rethrow_exception(err);
    for (size_t i = 0; i < d_foc.size(); ++i) {
        SweepPoint& p = out.points[i];
        p.d_foc = d_foc[i];
        p.rho_coop = res[2 * i].rho_ee;
        p.rho_nocoop = res[2 * i + 1].rho_ee;
        p.xi = res[2 * i].xi;
        p.regime = res[2 * i].limit_kind;
    }
    return out;
}

TableId parse_table_id(const std::string& text) {
    std::string s = text;
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (s == "T2" || s == "TABLE2") return TableId::T2;
    if (s == "T3" || s == "TABLE3") return TableId::T3;
    if (s == "T4" || s == "TABLE4") return TableId::T4;
    if (s == "T5" || s == "TABLE5") return TableId::T5;
    throw ParseError("unknown table id '" + text + "' (expected T2, T3, T4 or T5)");
}

const char* to_string(TableId id) {
    switch (id) {
        case TableId::T2: return "T2";
        case TableId::T3: return "T3";
        case TableId::T4: return "T4";
        case TableId::T5: return "T5";
    }
    return "?";
}

ReferenceData load_reference(const std::filesystem::path& path) {
    const toml::Value root = toml::parse_file(path);
    ReferenceData ref;
    auto numbers = [](const toml::Value& v) {
        if (!v.is_array()) throw ParseError("line " + std::to_string(v.line) + ": expected an array");
        std::vector<double> out;
        for (const auto& x : v.items) out.push_back(x.as_number());
        return out;
    };
    for (size_t i = 0; i < root.keys.size(); ++i) {
        const std::string& table = root.keys[i];
        const toml::Value& tv = root.items[i];
        if (!tv.is_table()) throw ParseError(path.string() + ": '" + table + "' is not a table");
        auto& dst = ref.tables[table];
        for (size_t j = 0; j < tv.keys.size(); ++j) {
            const toml::Value& row = tv.items[j];
            if (row.is_table()) {
                for (size_t c = 0; c < row.keys.size(); ++c)
                    dst[tv.keys[j]][row.keys[c]] = numbers(row.items[c]);
            } else {
                dst[tv.keys[j]][""] = numbers(row);
            }
        }
    }
    return ref;
}

namespace {

std::optional<double> ref_value(const ReferenceData& ref, const std::string& table,
                                const std::string& iso, const std::string& col, size_t idx) {
    auto t = ref.tables.find(table);
    if (t == ref.tables.end()) return std::nullopt;
    auto r = t->second.find(iso);
    if (r == t->second.end()) return std::nullopt;
    auto c = r->second.find(col);
    if (c == r->second.end() || c->second.size() <= idx) return std::nullopt;
    return c->second[idx];
}

TableCell make_cell(std::string col, std::string qty, double computed, std::optional<double> refv) {
    TableCell cell{std::move(col), std::move(qty), computed, refv, std::nullopt};
    if (refv && *refv != 0.0) cell.ratio = computed / *refv;
    return cell;
}

}  // namespace

TableResult reproduce_table(TableId id, const Dataset& data, const ReferenceData& ref,
                            const ScenarioConfig& base, unsigned threads) {
    TableResult out;
    out.id = id;
    const std::string table = id == TableId::T2   ? "table2"
                              : id == TableId::T3 ? "table3"
                              : id == TableId::T4 ? "table4"
                                                  : "table5";

    // Row order follows the dataset, which lists isotopes in table order.
    std::vector<std::string> rows;
    const auto it = ref.tables.find(table);
    if (it == ref.tables.end()) throw DataError("reference data has no '" + table + "'");
    for (const auto& t : data.transitions)
        if (it->second.count(t.isotope)) rows.push_back(t.isotope);
    for (const auto& [iso, cols] : it->second)
        if (!data.has_transition(iso)) out.skipped.push_back(iso);

    if (id == TableId::T2) {
        for (const auto& iso : rows) {
            const NuclearTransition& t = data.transition(iso);
            if (t.material.empty()) {
                out.skipped.push_back(iso);
                continue;
            }
            const TargetMaterial& mat = data.material_for(t);
            const Length d_foc = base.d_foc.value_or(units::nm(100.0));
            const CollectiveContext ctx = collective_context(t, mat, d_foc, base.thickness);
            TableRow row{iso, {}};
            row.cells.push_back(make_cell("", "f_LM", ctx.f_LM, ref_value(ref, table, iso, "", 0)));
            row.cells.push_back(make_cell("", "inv_mu_um", units::to_um(mat.inv_mu),
                                          ref_value(ref, table, iso, "", 1)));
            row.cells.push_back(make_cell("", "L_foc_um", units::to_um(ctx.L_foc),
                                          ref_value(ref, table, iso, "", 2)));
            row.cells.push_back(make_cell("", "xi", ctx.xi, ref_value(ref, table, iso, "", 3)));
            out.rows.push_back(std::move(row));
        }
        return out;
    }

    std::vector<std::string> lasers;
    if (id == TableId::T4) lasers = {"EuXFEL", "LCLS", "SACLA"};
    else lasers = {"EuXFEL", "LCLS", "SACLA", "XFELO"};

    std::vector<ScenarioConfig> cfgs;
    for (const auto& iso : rows) {
        for (const auto& l : lasers) {
            ScenarioConfig c = base;
            c.transition = iso;
            c.laser = l;
            c.mode = id == TableId::T5 ? TargetMode::IonBeam : TargetMode::SolidState;
            c.seeded = id != TableId::T4;
            c.cooperative = id != TableId::T5 && base.cooperative;
            cfgs.push_back(c);
        }
    }
    const auto results = run_batch(cfgs, data, threads);
    size_t idx = 0;
    for (const auto& iso : rows) {
        TableRow row{iso, {}};
        bool failed = false;
        for (const auto& l : lasers) {
            const BatchEntry& b = results[idx++];
            if (!b.result) {
                failed = true;
                continue;
            }
            row.cells.push_back(
                make_cell(l, "rho_ee", b.result->rho_ee, ref_value(ref, table, iso, l, 0)));
            row.cells.push_back(
                make_cell(l, "S_per_s", b.result->S.si(), ref_value(ref, table, iso, l, 1)));
        }
        if (failed) out.skipped.push_back(iso);
        else out.rows.push_back(std::move(row));
    }
    return out;
}

double calibrate_dgamma_rel(const ScenarioConfig& cfg, const Dataset& data, double target_rho) {
    if (!(target_rho > 0)) throw DomainError("calibration target must be positive");
    ScenarioConfig c = cfg;
    c.mode = TargetMode::IonBeam;
    auto rho_at = [&](double lg) {
        c.dgamma_rel = std::pow(10.0, lg);
        return run_scenario(c, data).rho_ee;
    };
    double lo = -7.0, hi = -1.0;
    const double r_lo = rho_at(lo), r_hi = rho_at(hi);
    if (!(target_rho <= r_lo && target_rho >= r_hi))
        throw DomainError("calibration target outside the population range reachable by the "
                          "relative gamma spread");
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (rho_at(mid) > target_rho) lo = mid;
        else hi = mid;
    }
    return std::pow(10.0, 0.5 * (lo + hi));
}

}  // namespace nucleoq
