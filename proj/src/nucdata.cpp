#include "nucleoq/nucdata.hpp"

#include "nucleoq/errors.hpp"
#include "nucleoq/toml.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace nucleoq {

namespace {

namespace k = constants;

constexpr double kKeV = 1e3 * k::e;
constexpr double kEV = k::e;
constexpr double kNs = 1e-9;
constexpr double kFs = 1e-15;
constexpr double kUm = 1e-6;
constexpr double kNm = 1e-9;

const char* kDataFileName = "nuclear.toml";

// Nearest double y with y * scale == si, so that serialization reloads bit-identically.
double to_unit_exact(double si, double scale) {
    double y = si / scale;
    if (y * scale == si) return y;
    double lo = y, hi = y;
    for (int i = 0; i < 8; ++i) {
        lo = std::nextafter(lo, -INFINITY);
        hi = std::nextafter(hi, INFINITY);
        if (lo * scale == si) return lo;
        if (hi * scale == si) return hi;
    }
    return y;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

class RecordReader {
public:
    RecordReader(const toml::Value& table, std::string record)
        : t_(table), record_(std::move(record)) {}

    const toml::Value* get(const std::string& key) {
        used_.insert(key);
        return t_.find(key);
    }

    double number(const std::string& key) {
        const toml::Value* v = get(key);
        if (!v) fail("missing required key '" + key + "'");
        if (!v->is_number()) fail("key '" + key + "' must be a number");
        return v->as_number();
    }

    std::optional<double> opt_number(const std::string& key) {
        const toml::Value* v = get(key);
        if (!v) return std::nullopt;
        if (!v->is_number()) fail("key '" + key + "' must be a number");
        return v->as_number();
    }

    double number_or(const std::string& key, double fallback) {
        return opt_number(key).value_or(fallback);
    }

    std::string string(const std::string& key) {
        const toml::Value* v = get(key);
        if (!v) fail("missing required key '" + key + "'");
        if (!v->is_string()) fail("key '" + key + "' must be a string");
        return v->text;
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        const toml::Value* v = get(key);
        if (!v) return fallback;
        if (!v->is_string()) fail("key '" + key + "' must be a string");
        return v->text;
    }

    bool boolean_or(const std::string& key, bool fallback) {
        const toml::Value* v = get(key);
        if (!v) return fallback;
        if (v->type != toml::Value::Type::Bool) fail("key '" + key + "' must be a boolean");
        return v->boolean;
    }

    AngularMomentum spin(const std::string& key) {
        const toml::Value* v = get(key);
        if (!v) fail("missing required key '" + key + "'");
        try {
            if (v->is_string()) return AngularMomentum::parse(v->text);
            if (v->is_number()) return AngularMomentum::from_double(v->as_number());
        } catch (const DomainError& e) {
            fail(e.what());
        }
        fail("key '" + key + "' must be a spin such as \"3/2\"");
    }

    void finish() {
        for (const auto& key : t_.keys)
            if (!used_.count(key)) fail("unknown key '" + key + "'");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(record_ + " (line " + std::to_string(t_.line) + "): " + msg);
    }

private:
    const toml::Value& t_;
    std::string record_;
    std::set<std::string> used_;
};

const toml::Value* section(const toml::Value& root, const char* name) {
    const toml::Value* s = root.find(name);
    if (s && !s->is_table()) throw ParseError(std::string("'") + name + "' must be a table");
    return s;
}

}  // namespace

Multipolarity Multipolarity::parse(const std::string& text) {
    if (text.size() < 2 || (text[0] != 'E' && text[0] != 'M'))
        throw DomainError("invalid multipolarity '" + text + "'");
    Multipolarity m;
    m.kind = text[0] == 'E' ? Kind::Electric : Kind::Magnetic;
    try {
        size_t pos = 0;
        m.L = std::stoi(text.substr(1), &pos);
        if (pos != text.size() - 1) throw DomainError("");
    } catch (const std::exception&) {
        throw DomainError("invalid multipolarity '" + text + "'");
    }
    if (m.L < 1) throw DomainError("multipolarity order must be >= 1 in '" + text + "'");
    return m;
}

std::string Multipolarity::to_string() const {
    return (kind == Kind::Electric ? "E" : "M") + std::to_string(L);
}

const NuclearTransition& Dataset::transition(const std::string& id) const {
    for (const auto& t : transitions)
        if (t.isotope == id) return t;
    throw DataError("unknown transition '" + id + "'");
}

bool Dataset::has_transition(const std::string& id) const {
    for (const auto& t : transitions)
        if (t.isotope == id) return true;
    return false;
}

const TargetMaterial& Dataset::material(const std::string& id) const {
    for (const auto& m : materials)
        if (m.id == id) return m;
    throw DataError("unknown material '" + id + "'");
}

const LaserPulseSpec& Dataset::laser(const std::string& id) const {
    for (const auto& l : lasers)
        if (l.id == id) return l;
    throw DataError("unknown laser '" + id + "'");
}

const TargetMaterial& Dataset::material_for(const NuclearTransition& t) const {
    if (t.material.empty())
        throw DataError("transition '" + t.isotope + "' has no target material");
    return material(t.material);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string Dataset::hash() const { return hex64(fnv1a(serialize_dataset(*this))); }

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("NUCLEOQ_DATA"); env && *env) return env;
#ifdef NUCLEOQ_DEFAULT_DATA_DIR
    return NUCLEOQ_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

Dataset parse_dataset(const std::string& text, const std::string& source) {
    toml::Value root = toml::parse(text, source);
    Dataset ds;

    if (const auto* sec = section(root, "transition")) {
        for (size_t i = 0; i < sec->keys.size(); ++i) {
            const std::string& id = sec->keys[i];
            if (!sec->items[i].is_table()) throw ParseError("transition." + id + " must be a table");
            RecordReader r(sec->items[i], "transition." + id);
            NuclearTransition t;
            t.isotope = id;
            t.E_gamma = Energy(r.number("E_gamma_keV") * kKeV);
            t.Ig = r.spin("Ig");
            t.Ie = r.spin("Ie");
            try {
                t.multipolarity = Multipolarity::parse(r.string("multipolarity"));
            } catch (const DomainError& e) {
                r.fail(e.what());
            }
            t.B_reduced = r.opt_number("B_down");
            if (auto hl = r.opt_number("half_life_ns")) {
                t.half_life = Time(*hl * kNs);
                t.Gamma0 = Energy(k::hbar * k::ln2 / t.half_life->si());
            }
            if (auto g = r.opt_number("Gamma0_eV")) {
                if (t.half_life) r.fail("give either half_life_ns or Gamma0_eV, not both");
                t.Gamma0 = Energy(*g * kEV);
            }
            t.alpha_IC = r.number_or("alpha", 0.0);
            t.material = r.string_or("material", "");
            r.finish();
            ds.transitions.push_back(std::move(t));
        }
    }

    if (const auto* sec = section(root, "material")) {
        for (size_t i = 0; i < sec->keys.size(); ++i) {
            const std::string& id = sec->keys[i];
            if (!sec->items[i].is_table()) throw ParseError("material." + id + " must be a table");
            RecordReader r(sec->items[i], "material." + id);
            TargetMaterial m;
            m.id = id;
            m.N = NumberDensity(r.number("N_per_m3"));
            m.theta_D = Temperature(r.number("theta_D_K"));
            m.T = Temperature(r.number_or("T_K", 300.0));
            m.M = Mass(r.number("mass_u") * k::u);
            m.inv_mu = Length(r.number("inv_mu_um") * kUm);
            m.enrichment = r.number_or("enrichment", 1.0);
            r.finish();
            ds.materials.push_back(std::move(m));
        }
    }

    if (const auto* sec = section(root, "laser")) {
        for (size_t i = 0; i < sec->keys.size(); ++i) {
            const std::string& id = sec->keys[i];
            if (!sec->items[i].is_table()) throw ParseError("laser." + id + " must be a table");
            RecordReader r(sec->items[i], "laser." + id);
            LaserPulseSpec l;
            l.id = id;
            l.E_ph = Energy(r.number("E_max_eV") * kEV);
            l.BW = r.number("BW");
            l.T_p = Time(r.number("Tp_fs") * kFs);
            l.T_coh = Time(r.number("Tcoh_fs") * kFs);
            l.P_peak = Power(r.number("Ppeak_W"));
            l.rep_rate = Frequency(r.number("rep_rate_Hz"));
            if (auto d = r.opt_number("rep_rate_design_Hz")) l.rep_rate_design = Frequency(*d);
            l.d_foc = Length(r.number_or("d_foc_nm", 100.0) * kNm);
            l.seeded = r.boolean_or("seeded", false);
            r.finish();
            ds.lasers.push_back(std::move(l));
        }
    }

    for (const auto& key : root.keys)
        if (key != "transition" && key != "material" && key != "laser")
            throw ParseError(source + ": unknown top-level section '" + key + "'");
    return ds;
}

std::vector<ValidationIssue> validate_dataset(const Dataset& ds) {
    using S = ValidationIssue::Severity;
    std::vector<ValidationIssue> out;
    auto err = [&](const std::string& rec, const std::string& msg) {
        out.push_back({S::Error, rec, msg});
    };

    std::set<std::string> material_ids;
    for (const auto& m : ds.materials) {
        std::string rec = "material." + m.id;
        if (!material_ids.insert(m.id).second) err(rec, "duplicate id");
        if (!(m.N.si() > 0)) err(rec, "number density must be positive");
        if (!(m.theta_D.si() > 0)) err(rec, "Debye temperature must be positive");
        if (!(m.T.si() > 0)) err(rec, "temperature must be positive");
        if (!(m.M.si() > 0)) err(rec, "atomic mass must be positive");
        if (!(m.inv_mu.si() > 0)) err(rec, "photo-absorption length must be positive");
        if (!(m.enrichment > 0 && m.enrichment <= 1)) err(rec, "enrichment must lie in (0, 1]");
    }

    for (const auto& t : ds.transitions) {
        std::string rec = "transition." + t.isotope;
        if (!(t.E_gamma.si() > 0)) err(rec, "E_gamma must be positive");
        if (!t.B_reduced && !t.Gamma0) err(rec, "needs B_down or a width (half_life_ns/Gamma0_eV)");
        if (t.B_reduced && !(*t.B_reduced >= 0)) err(rec, "B_down must be non-negative");
        if (t.Gamma0 && !(t.Gamma0->si() > 0)) err(rec, "width must be positive");
        if (!(t.alpha_IC >= 0)) err(rec, "alpha must be non-negative");
        if (!triangle(t.Ig, t.Ie, t.multipolarity.order()))
            err(rec, "triangle rule |Ig-Ie| <= L <= Ig+Ie violated");
        if (!t.material.empty() && !material_ids.count(t.material))
            err(rec, "unknown material '" + t.material + "'");
        if (t.B_reduced && t.Gamma0 && t.alpha_IC >= 0 && t.E_gamma.si() > 0 &&
            t.Gamma0->si() > 0) {
            double from_b = gamma_rad_from_B(t).si();
            double from_w = t.Gamma0->si() / (1.0 + t.alpha_IC);
            double dev = std::abs(from_b - from_w) / from_w;
            if (dev > 0.2) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "radiative width from B_down deviates by %.1f%% from "
                              "Gamma0/(1+alpha)",
                              100.0 * dev);
                out.push_back({S::Warning, rec, buf});
            }
        }
    }

    std::set<std::string> laser_ids;
    for (const auto& l : ds.lasers) {
        std::string rec = "laser." + l.id;
        if (!laser_ids.insert(l.id).second) err(rec, "duplicate id");
        if (!(l.E_ph.si() > 0)) err(rec, "photon energy must be positive");
        if (!(l.BW > 0)) err(rec, "bandwidth must be positive");
        if (!(l.T_p.si() > 0)) err(rec, "pulse duration must be positive");
        if (!(l.T_coh.si() > 0)) err(rec, "coherence time must be positive");
        if (!(l.P_peak.si() > 0)) err(rec, "peak power must be positive");
        if (!(l.rep_rate.si() > 0)) err(rec, "repetition rate must be positive");
        if (!(l.d_foc.si() > 0)) err(rec, "focal diameter must be positive");
    }
    return out;
}

Dataset load_dataset_from_string(const std::string& text, const std::string& source) {
    Dataset ds = parse_dataset(text, source);
    std::string errors;
    for (const auto& issue : validate_dataset(ds))
        if (issue.severity == ValidationIssue::Severity::Error)
            errors += "\n  " + issue.record + ": " + issue.message;
    if (!errors.empty()) throw DataError(source + ": invalid records:" + errors);
    return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::filesystem::path file = path;
    if (std::filesystem::is_directory(path)) file = path / kDataFileName;
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("cannot open data file '" + file.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_dataset_from_string(ss.str(), file.string());
}

std::string serialize_dataset(const Dataset& ds) {
    std::ostringstream o;
    for (const auto& t : ds.transitions) {
        o << "[transition." << t.isotope << "]\n";
        o << "E_gamma_keV = " << fmt(to_unit_exact(t.E_gamma.si(), kKeV)) << "\n";
        o << "Ig = \"" << t.Ig.to_string() << "\"\n";
        o << "Ie = \"" << t.Ie.to_string() << "\"\n";
        o << "multipolarity = \"" << t.multipolarity.to_string() << "\"\n";
        if (t.half_life) o << "half_life_ns = " << fmt(to_unit_exact(t.half_life->si(), kNs)) << "\n";
        else if (t.Gamma0) o << "Gamma0_eV = " << fmt(to_unit_exact(t.Gamma0->si(), kEV)) << "\n";
        o << "alpha = " << fmt(t.alpha_IC) << "\n";
        if (t.B_reduced) o << "B_down = " << fmt(*t.B_reduced) << "\n";
        if (!t.material.empty()) o << "material = \"" << t.material << "\"\n";
        o << "\n";
    }
    for (const auto& m : ds.materials) {
        o << "[material." << m.id << "]\n";
        o << "N_per_m3 = " << fmt(m.N.si()) << "\n";
        o << "theta_D_K = " << fmt(m.theta_D.si()) << "\n";
        o << "T_K = " << fmt(m.T.si()) << "\n";
        o << "mass_u = " << fmt(to_unit_exact(m.M.si(), k::u)) << "\n";
        o << "inv_mu_um = " << fmt(to_unit_exact(m.inv_mu.si(), kUm)) << "\n";
        o << "enrichment = " << fmt(m.enrichment) << "\n\n";
    }
    for (const auto& l : ds.lasers) {
        o << "[laser." << l.id << "]\n";
        o << "E_max_eV = " << fmt(to_unit_exact(l.E_ph.si(), kEV)) << "\n";
        o << "BW = " << fmt(l.BW) << "\n";
        o << "Tp_fs = " << fmt(to_unit_exact(l.T_p.si(), kFs)) << "\n";
        o << "Tcoh_fs = " << fmt(to_unit_exact(l.T_coh.si(), kFs)) << "\n";
        o << "Ppeak_W = " << fmt(l.P_peak.si()) << "\n";
        o << "rep_rate_Hz = " << fmt(l.rep_rate.si()) << "\n";
        if (l.rep_rate_design) o << "rep_rate_design_Hz = " << fmt(l.rep_rate_design->si()) << "\n";
        o << "d_foc_nm = " << fmt(to_unit_exact(l.d_foc.si(), kNm)) << "\n";
        o << "seeded = " << (l.seeded ? "true" : "false") << "\n\n";
    }
    return o.str();
}

double B_unit_SI(const Multipolarity& mp) {
    const int L = mp.L;
    if (mp.kind == Multipolarity::Kind::Electric)
        return k::e * k::e * std::pow(1e-15, 2 * L);
    return k::muN * k::muN * std::pow(1e-15, 2 * L - 2) / (k::c * k::c);
}

double radiative_prefactor(const Multipolarity& mp, Energy E_gamma) {
    const int L = mp.L;
    const double kwave = E_gamma.si() / (k::hbar * k::c);
    const double df = static_cast<double>(double_factorial(2 * L + 1));
    return (2.0 * L + 2.0) / (k::epsilon0 * L * df * df) * std::pow(kwave, 2 * L + 1);
}

Energy gamma_rad_from_B(const NuclearTransition& t) {
    if (!t.B_reduced) throw DataError("transition '" + t.isotope + "' has no B_down");
    return Energy(radiative_prefactor(t.multipolarity, t.E_gamma) * *t.B_reduced *
                  B_unit_SI(t.multipolarity));
}

Energy gamma_rad(const NuclearTransition& t) {
    if (t.B_reduced) return gamma_rad_from_B(t);
    if (t.Gamma0) return *t.Gamma0 / (1.0 + t.alpha_IC);
    throw DataError("transition '" + t.isotope + "' has neither B_down nor a width");
}

Energy total_width(const NuclearTransition& t) {
    if (t.Gamma0) return *t.Gamma0;
    return gamma_rad_from_B(t) * (1.0 + t.alpha_IC);
}

double B_down_SI(const NuclearTransition& t) {
    if (t.B_reduced) return *t.B_reduced * B_unit_SI(t.multipolarity);
    return gamma_rad(t).si() / radiative_prefactor(t.multipolarity, t.E_gamma);
}

double B_up_SI(const NuclearTransition& t) {
    return static_cast<double>(t.Ie.multiplicity()) / t.Ig.multiplicity() * B_down_SI(t);
}

}  // namespace nucleoq
