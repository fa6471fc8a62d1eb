#include "nucleoq/cli.hpp"

#include "nucleoq/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef NUCLEOQ_VERSION
#define NUCLEOQ_VERSION "0.0.0"
#endif
#ifndef NUCLEOQ_DEFAULT_PRESET_DIR
#define NUCLEOQ_DEFAULT_PRESET_DIR "presets"
#endif

namespace nucleoq::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

namespace {

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void key_error(const std::string& source, const toml::Value& v, const std::string& msg) {
    throw ParseError(source + ":" + std::to_string(v.line) + ": " + msg);
}

double positive(const std::string& source, const std::string& key, const toml::Value& v) {
    const double x = v.as_number();
    if (!(x > 0)) key_error(source, v, "'" + key + "' must be positive");
    return x;
}

double non_negative(const std::string& source, const std::string& key, const toml::Value& v) {
    const double x = v.as_number();
    if (!(x >= 0)) key_error(source, v, "'" + key + "' must be non-negative");
    return x;
}

// Returns false when the key is not a scenario setting.
bool apply_key(ScenarioConfig& c, const std::string& key, const toml::Value& v,
               const std::string& src) {
    if (key == "isotope" || key == "transition") c.transition = v.as_string();
    else if (key == "laser") c.laser = v.as_string();
    else if (key == "mode") c.mode = parse_target_mode(v.as_string());
    else if (key == "cooperative") c.cooperative = v.as_bool();
    else if (key == "seeded") c.seeded = v.as_bool();
    else if (key == "d_foc_nm") c.d_foc = units::nm(positive(src, key, v));
    else if (key == "thickness_um") c.thickness = units::um(positive(src, key, v));
    else if (key == "peak_power_W") c.peak_power = units::W(non_negative(src, key, v));
    else if (key == "rep_rate_Hz") c.rep_rate = units::Hz(non_negative(src, key, v));
    else if (key == "detuning_eV") c.detuning = units::eV(v.as_number());
    else if (key == "focus_efficiency") {
        c.focus_efficiency = v.as_number();
        if (!(c.focus_efficiency >= 0 && c.focus_efficiency <= 1))
            key_error(src, v, "'focus_efficiency' must lie in [0, 1]");
    } else if (key == "dgamma_rel") c.dgamma_rel = non_negative(src, key, v);
    else if (key == "tol") c.tol = positive(src, key, v);
    else if (key == "enhance_relaxation") c.enhance_relaxation = v.as_bool();
    else if (key == "fourier_convention") {
        const std::string& s = v.as_string();
        if (s == "hbar") c.fourier_convention = BandwidthConvention::Reduced;
        else if (s == "h") c.fourier_convention = BandwidthConvention::Planck;
        else key_error(src, v, "'fourier_convention' must be \"hbar\" or \"h\"");
    } else if (key == "bandwidth_reference_keV") c.bandwidth_reference = units::keV(positive(src, key, v));
    else if (key == "pulse_transform") {
        const std::string& s = v.as_string();
        if (s == "lorentz") c.pulse_convention = PulseDurationConvention::PhotonNumberInvariant;
        else if (s == "none") c.pulse_convention = PulseDurationConvention::Laboratory;
        else key_error(src, v, "'pulse_transform' must be \"lorentz\" or \"none\"");
    } else if (key == "ion_density_per_m3") c.ion_density = units::per_m3(positive(src, key, v));
    else if (key == "helicity") {
        const auto h = v.as_integer();
        if (h != 1 && h != -1) key_error(src, v, "'helicity' must be 1 or -1");
        c.sigma = static_cast<int>(h);
    } else if (key == "envelope") {
        const std::string& s = v.as_string();
        if (s == "rectangular") c.envelope = Envelope::Rectangular;
        else if (s == "gaussian") c.envelope = Envelope::Gaussian;
        else key_error(src, v, "'envelope' must be \"rectangular\" or \"gaussian\"");
    } else return false;
    return true;
}

void apply_table(ScenarioConfig& c, const toml::Value& t, const std::string& src,
                 const std::string& where) {
    for (size_t i = 0; i < t.keys.size(); ++i)
        if (!apply_key(c, t.keys[i], t.items[i], src))
            key_error(src, t.items[i], "unknown key '" + t.keys[i] + "' in " + where);
}

std::vector<std::string> string_list(const toml::Value& v, const std::string& src) {
    if (!v.is_array()) key_error(src, v, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& x : v.items) out.push_back(x.as_string());
    return out;
}

const toml::Value& require_table(const toml::Value& v, const std::string& src, const std::string& name) {
    if (!v.is_table()) key_error(src, v, "'" + name + "' must be a table");
    return v;
}

}  // namespace

ScenarioFile parse_scenario_file(const std::string& text, const std::string& source) {
    const toml::Value root = toml::parse(text, source);
    ScenarioFile f;
    ScenarioConfig defaults;
    if (const auto* d = root.find("defaults"))
        apply_table(defaults, require_table(*d, source, "defaults"), source, "[defaults]");

    int jobs = 0;
    for (size_t i = 0; i < root.keys.size(); ++i) {
        const std::string& k = root.keys[i];
        const toml::Value& v = root.items[i];
        if (k == "defaults") continue;
        if (k == "grid") {
            require_table(v, source, k);
            std::vector<std::string> isotopes, lasers;
            std::vector<bool> coop{defaults.cooperative};
            for (size_t j = 0; j < v.keys.size(); ++j) {
                const std::string& gk = v.keys[j];
                const toml::Value& gv = v.items[j];
                if (gk == "isotopes") isotopes = string_list(gv, source);
                else if (gk == "lasers") lasers = string_list(gv, source);
                else if (gk == "cooperative") {
                    if (!gv.is_array()) key_error(source, gv, "'cooperative' must be an array");
                    coop.clear();
                    for (const auto& x : gv.items) coop.push_back(x.as_bool());
                } else key_error(source, gv, "unknown key '" + gk + "' in [grid]");
            }
            for (const auto& iso : isotopes)
                for (const auto& l : lasers)
                    for (bool cp : coop) {
                        ScenarioConfig c = defaults;
                        c.transition = iso;
                        c.laser = l;
                        c.cooperative = cp;
                        f.scenarios.push_back(c);
                    }
        } else if (k == "scenario") {
            if (!v.is_array()) key_error(source, v, "'scenario' must be an array of tables");
            for (const auto& entry : v.items) {
                ScenarioConfig c = defaults;
                apply_table(c, require_table(entry, source, "scenario"), source, "[[scenario]]");
                if (c.transition.empty() || c.laser.empty())
                    key_error(source, entry, "scenario needs 'isotope' and 'laser'");
                f.scenarios.push_back(c);
            }
        } else if (k == "nfs") {
            require_table(v, source, k);
            ++jobs;
            f.kind = ScenarioFile::Kind::Nfs;
            for (size_t j = 0; j < v.keys.size(); ++j) {
                const std::string& nk = v.keys[j];
                const toml::Value& nv = v.items[j];
                if (nk == "xi") f.nfs.xi = nv.as_number();
                else if (nk == "tau_max") f.nfs.tau_max = nv.as_number();
                else if (nk == "samples") f.nfs.samples = static_cast<int>(nv.as_integer());
                else key_error(source, nv, "unknown key '" + nk + "' in [nfs]");
            }
        } else if (k == "sweep") {
            require_table(v, source, k);
            ++jobs;
            f.kind = ScenarioFile::Kind::Sweep;
            f.sweep.base = defaults;
            for (size_t j = 0; j < v.keys.size(); ++j) {
                const std::string& sk = v.keys[j];
                const toml::Value& sv = v.items[j];
                if (sk == "dfoc_min_nm") f.sweep.d_min = units::nm(positive(source, sk, sv));
                else if (sk == "dfoc_max_nm") f.sweep.d_max = units::nm(positive(source, sk, sv));
                else if (sk == "steps") f.sweep.steps = static_cast<int>(sv.as_integer());
                else if (sk == "constant_photon_number") f.sweep.constant_photon_number = sv.as_bool();
                else if (!apply_key(f.sweep.base, sk, sv, source))
                    key_error(source, sv, "unknown key '" + sk + "' in [sweep]");
            }
            if (f.sweep.base.transition.empty() || f.sweep.base.laser.empty())
                key_error(source, v, "[sweep] needs 'isotope' and 'laser'");
        } else if (k == "table") {
            require_table(v, source, k);
            ++jobs;
            f.kind = ScenarioFile::Kind::Table;
            f.table.base = defaults;
            const toml::Value* id = v.find("id");
            if (!id) key_error(source, v, "[table] needs 'id'");
            f.table.id = parse_table_id(id->as_string());
            for (size_t j = 0; j < v.keys.size(); ++j)
                if (v.keys[j] != "id") key_error(source, v.items[j], "unknown key '" + v.keys[j] + "' in [table]");
        } else {
            key_error(source, v, "unknown top-level entry '" + k + "'");
        }
    }
    if (jobs > 1 || (jobs == 1 && !f.scenarios.empty()))
        throw ParseError(source + ": a scenario file holds either scenarios or a single [nfs], "
                                  "[sweep] or [table] job");
    return f;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_file(ss.str(), path);
}

std::string describe(const ScenarioConfig& c) {
    std::ostringstream o;
    auto opt = [](const auto& q) { return q ? exact(q->si()) : std::string("default"); };
    o << "transition=" << c.transition << " laser=" << c.laser << " mode=" << to_string(c.mode)
      << " cooperative=" << c.cooperative << " seeded=" << c.seeded << " d_foc=" << opt(c.d_foc)
      << " thickness=" << opt(c.thickness) << " peak_power=" << opt(c.peak_power)
      << " rep_rate=" << opt(c.rep_rate) << " detuning=" << exact(c.detuning.si())
      << " focus_efficiency=" << exact(c.focus_efficiency) << " dgamma_rel=" << exact(c.dgamma_rel)
      << " tol=" << exact(c.tol) << " enhance_relaxation=" << c.enhance_relaxation
      << " fourier=" << (c.fourier_convention == BandwidthConvention::Reduced ? "hbar" : "h")
      << " bandwidth_reference=" << opt(c.bandwidth_reference) << " pulse_transform="
      << (c.pulse_convention == PulseDurationConvention::PhotonNumberInvariant ? "lorentz" : "none")
      << " ion_density=" << exact(c.ion_density.si()) << " helicity=" << c.sigma
      << " envelope=" << (c.envelope == Envelope::Rectangular ? "rectangular" : "gaussian");
    return o.str();
}

namespace {

std::string header_line(const std::string& hash) {
    return std::string("# nucleoq ") + NUCLEOQ_VERSION + " manifest " + hash + "\n";
}

}  // namespace

std::string scenarios_csv(const std::vector<ExcitationResult>& rows, const std::string& hash) {
    std::string s = header_line(hash);
    s += "isotope,laser,mode,cooperative,xi,Gamma_eV,E_ef_V_per_m,rho_ee,S_per_s\n";
    for (const auto& r : rows) {
        s += r.transition + "," + r.laser + "," + to_string(r.mode) + "," +
             (r.cooperative ? "true" : "false") + "," + format_number(r.xi) + "," +
             format_number(units::to_eV(r.Gamma_used)) + "," + format_number(r.E_ef.si()) + "," +
             format_number(r.rho_ee) + "," + format_number(r.S.si()) + "\n";
    }
    return s;
}

std::string nfs_csv(const NfsRequest& req, const std::string& hash) {
    if (!(req.xi > 0)) throw DomainError("nfs: xi must be positive");
    if (!(req.tau_max > 0)) throw DomainError("nfs: tau_max must be positive");
    if (req.samples < 2) throw DomainError("nfs: at least two samples are required");
    std::string s = header_line(hash);
    s += "tau,I_closed,I_exp_decay,I_enhanced\n";
    for (int i = 0; i < req.samples; ++i) {
        const double tau = i == req.samples - 1 ? req.tau_max : req.tau_max * i / (req.samples - 1);
        const double xi2 = req.xi * req.xi;
        s += format_number(tau) + "," + format_number(nfs_intensity_closed(req.xi, tau)) + "," +
             format_number(xi2 * std::exp(-tau)) + "," +
             format_number(nfs_intensity_early(req.xi, tau)) + "\n";
    }
    return s;
}

std::string sweep_csv(const SweepResult& res, const std::string& hash) {
    std::string s = header_line(hash);
    s += "# crossover_d_foc_m " + format_number(res.crossover.si()) + "\n";
    s += "d_foc,rho_ee_coop,rho_ee_nocoop,regime\n";
    for (const auto& p : res.points)
        s += format_number(p.d_foc.si()) + "," + format_number(p.rho_coop) + "," +
             format_number(p.rho_nocoop) + "," + to_string(p.regime) + "\n";
    return s;
}

std::string table_csv(const TableResult& res, const std::string& hash) {
    std::string s = header_line(hash);
    for (const auto& sk : res.skipped) s += "# skipped " + sk + "\n";
    s += "table,isotope,column,quantity,computed,reference,ratio\n";
    for (const auto& row : res.rows)
        for (const auto& c : row.cells)
            s += std::string(to_string(res.id)) + "," + row.isotope + "," + c.column + "," +
                 c.quantity + "," + format_number(c.computed) + "," +
                 (c.reference ? format_number(*c.reference) : "") + "," +
                 (c.ratio ? format_number(*c.ratio) : "") + "\n";
    return s;
}

namespace {

struct Manifest {
    json body;  // everything that determines the output

    std::string hash() const { return hex64(fnv1a(body.dump())); }
};

Manifest make_manifest(const std::string& command, const std::string& dataset_hash) {
    Manifest m;
    m.body["tool"] = "nucleoq";
    m.body["version"] = NUCLEOQ_VERSION;
    m.body["command"] = command;
    m.body["dataset_hash"] = dataset_hash;
    return m;
}

void write_output(const std::string& path, const std::string& csv, const Manifest& m,
                  std::ostream& out) {
    if (path.empty() || path == "-") {
        out << csv;
        return;
    }
    {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ParseError("cannot write '" + path + "'");
        f << csv;
        if (!f) throw ParseError("failed writing '" + path + "'");
    }
    json side = m.body;
    side["manifest_hash"] = m.hash();
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    side["timestamp"] = epoch ? json(epoch) : json(nullptr);
    side["determinism"] = "no random number generation; output depends only on the fields above";
    std::ofstream f(path + ".manifest.json", std::ios::binary);
    if (!f) throw ParseError("cannot write '" + path + ".manifest.json'");
    f << side.dump(2) << "\n";
}

struct DataOptions {
    std::string data_dir;
    unsigned threads = 0;

    Dataset load() const {
        return load_dataset(data_dir.empty() ? default_data_dir() : fs::path(data_dir));
    }
    fs::path reference() const {
        return (data_dir.empty() ? default_data_dir() : fs::path(data_dir)) / "reference.toml";
    }
};

json echo(const std::vector<ScenarioConfig>& cfgs) {
    json a = json::array();
    for (const auto& c : cfgs) a.push_back(describe(c));
    return a;
}

int do_scenarios(const std::vector<ScenarioConfig>& cfgs, const DataOptions& opt,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
    const Dataset data = opt.load();
    const auto batch = run_batch(cfgs, data, opt.threads);
    int code = 0;
    std::vector<ExcitationResult> rows;
    for (const auto& b : batch) {
        if (b.result) {
            rows.push_back(*b.result);
        } else {
            err << "error: " << b.error << "\n";
            code = std::max(code, b.error_kind);
        }
    }
    if (code) return code;
    Manifest m = make_manifest("run", data.hash());
    m.body["scenarios"] = echo(cfgs);
    write_output(out_path, scenarios_csv(rows, m.hash()), m, out);
    return 0;
}

int do_nfs(const NfsRequest& req, const std::string& out_path, std::ostream& out) {
    Manifest m = make_manifest("nfs", "");
    m.body["xi"] = exact(req.xi);
    m.body["tau_max"] = exact(req.tau_max);
    m.body["samples"] = req.samples;
    const std::string csv = nfs_csv(req, m.hash());
    write_output(out_path, csv, m, out);
    return 0;
}

int do_sweep(const SweepRequest& req, const DataOptions& opt, const std::string& out_path,
             std::ostream& out) {
    const Dataset data = opt.load();
    const auto ds = log_spaced(req.d_min, req.d_max, req.steps);
    const SweepResult res = focal_sweep(req.base, data, ds, req.constant_photon_number, opt.threads);
    Manifest m = make_manifest("sweep", data.hash());
    m.body["base"] = describe(req.base);
    m.body["dfoc_min_m"] = exact(req.d_min.si());
    m.body["dfoc_max_m"] = exact(req.d_max.si());
    m.body["steps"] = req.steps;
    m.body["constant_photon_number"] = req.constant_photon_number;
    m.body["crossover_d_foc_m"] = format_number(res.crossover.si());
    write_output(out_path, sweep_csv(res, m.hash()), m, out);
    return 0;
}

int do_table(const TableRequest& req, const DataOptions& opt, const std::string& out_path,
             std::ostream& out) {
    const Dataset data = opt.load();
    const ReferenceData ref = load_reference(opt.reference());
    const TableResult res = reproduce_table(req.id, data, ref, req.base, opt.threads);
    Manifest m = make_manifest(std::string("table ") + to_string(req.id), data.hash());
    m.body["base"] = describe(req.base);
    write_output(out_path, table_csv(res, m.hash()), m, out);
    return 0;
}

int do_file(const ScenarioFile& f, const DataOptions& opt, const std::string& out_path,
            std::ostream& out, std::ostream& err) {
    switch (f.kind) {
        case ScenarioFile::Kind::Scenarios: return do_scenarios(f.scenarios, opt, out_path, out, err);
        case ScenarioFile::Kind::Nfs: return do_nfs(f.nfs, out_path, out);
        case ScenarioFile::Kind::Sweep: return do_sweep(f.sweep, opt, out_path, out);
        case ScenarioFile::Kind::Table: return do_table(f.table, opt, out_path, out);
    }
    return 0;
}

int do_validate(const std::string& dir, std::ostream& out, std::ostream& err) {
    fs::path p = dir.empty() ? default_data_dir() : fs::path(dir);
    if (fs::is_directory(p)) p /= "nuclear.toml";
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const Dataset ds = parse_dataset(ss.str(), p.string());
    int errors = 0, warnings = 0;
    for (const auto& issue : validate_dataset(ds)) {
        const bool hard = issue.severity == ValidationIssue::Severity::Error;
        (hard ? errors : warnings)++;
        err << (hard ? "error: " : "warning: ") << issue.record << ": " << issue.message << "\n";
    }
    out << p.string() << ": " << ds.transitions.size() << " transitions, " << ds.materials.size()
        << " materials, " << ds.lasers.size() << " lasers, " << errors << " errors, " << warnings
        << " warnings, hash " << ds.hash() << "\n";
    return errors ? 2 : 0;
}

int do_reproduce(const std::string& preset_dir, const std::string& out_dir, const DataOptions& opt,
                 std::ostream& out, std::ostream& err) {
    const fs::path pdir = preset_dir.empty() ? fs::path(NUCLEOQ_DEFAULT_PRESET_DIR) : fs::path(preset_dir);
    if (!fs::is_directory(pdir)) throw ParseError("preset directory '" + pdir.string() + "' not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(pdir))
        if (e.path().extension() == ".toml") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    fs::create_directories(out_dir);
    int code = 0;
    for (const auto& f : files) {
        const std::string target = (fs::path(out_dir) / f.stem()).string() + ".csv";
        const int rc = do_file(load_scenario_file(f.string()), opt, target, out, err);
        out << f.stem().string() << " -> " << target << (rc ? " (failed)" : "") << "\n";
        code = std::max(code, rc);
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nuclear excitation by intense x-ray pulses", "nucleoq"};
    app.set_version_flag("--version", NUCLEOQ_VERSION);
    app.require_subcommand(1);

    DataOptions opt;
    std::string out_path;

    auto add_data = [&](CLI::App* sub) {
        sub->add_option("--data", opt.data_dir, "Data directory or file (default: $NUCLEOQ_DATA)");
        sub->add_option("--threads", opt.threads, "Worker threads (0 = hardware concurrency)");
    };

    std::string scenario_path;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or preset");
    run_cmd->add_option("--scenario", scenario_path, "Scenario TOML file")->required();
    run_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");
    add_data(run_cmd);

    NfsRequest nfs;
    auto* nfs_cmd = app.add_subcommand("nfs", "Coherent forward-scattering curves");
    nfs_cmd->add_option("--xi", nfs.xi, "Effective thickness")->required();
    nfs_cmd->add_option("--tau-max", nfs.tau_max, "Largest time in lifetimes")->required();
    nfs_cmd->add_option("--samples", nfs.samples, "Number of evenly spaced samples")->required();
    nfs_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");

    SweepRequest sweep;
    double dmin_nm = 7.0, dmax_nm = 100.0;
    bool fixed_intensity = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Focal-diameter sweep with and without cooperative effects");
    sweep_cmd->add_option("--isotope", sweep.base.transition, "Transition id")->required();
    sweep_cmd->add_option("--laser", sweep.base.laser, "Laser id")->required();
    sweep_cmd->add_option("--dfoc-min", dmin_nm, "Smallest focal diameter [nm]")->required();
    sweep_cmd->add_option("--dfoc-max", dmax_nm, "Largest focal diameter [nm]")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "Log-spaced points")->required();
    sweep_cmd->add_flag("--fixed-intensity", fixed_intensity,
                        "Scale the peak power with the focal area instead of keeping it fixed");
    sweep_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");
    add_data(sweep_cmd);

    std::string validate_dir;
    auto* validate_cmd = app.add_subcommand("validate", "Check dataset invariants");
    validate_cmd->add_option("--data", validate_dir, "Data directory or file (default: $NUCLEOQ_DATA)");

    std::string table_id;
    auto* table_cmd = app.add_subcommand("table", "Recompute a reference table with comparison ratios");
    table_cmd->add_option("--id", table_id, "T2, T3, T4 or T5")->required();
    table_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");
    add_data(table_cmd);

    std::string preset_dir, out_dir = "results";
    auto* repro_cmd = app.add_subcommand("reproduce", "Run every preset into a directory");
    repro_cmd->add_option("--presets", preset_dir, "Preset directory");
    repro_cmd->add_option("--out-dir", out_dir, "Output directory");
    add_data(repro_cmd);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (*run_cmd) return do_file(load_scenario_file(scenario_path), opt, out_path, out, err);
        if (*nfs_cmd) return do_nfs(nfs, out_path, out);
        if (*sweep_cmd) {
            sweep.d_min = units::nm(dmin_nm);
            sweep.d_max = units::nm(dmax_nm);
            sweep.constant_photon_number = !fixed_intensity;
            return do_sweep(sweep, opt, out_path, out);
        }
        if (*validate_cmd) return do_validate(validate_dir, out, err);
        if (*table_cmd) {
            TableRequest req;
            req.id = parse_table_id(table_id);
            return do_table(req, opt, out_path, out);
        }
        if (*repro_cmd) return do_reproduce(preset_dir, out_dir, opt, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace nucleoq::cli
