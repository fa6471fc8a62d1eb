#include "nucleoq/cli.hpp"
#include "nucleoq/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace nucleoq;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

size_t data_rows(const std::string& csv) {
    size_t n = 0;
    for (const auto& l : lines(csv))
        if (!l.empty() && l[0] != '#') ++n;
    return n > 0 ? n - 1 : 0;
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "nucleoq_cli_tests";
    fs::create_directories(d);
    return d / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
    fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kPresets = NUCLEOQ_SOURCE_DIR "/presets/";

}  // namespace

TEST_CASE("run: table3 preset") {
    auto r = cli_run({"run", "--scenario", kPresets + "table3.toml"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    CHECK(ls[0].rfind("# nucleoq 1.0.0 manifest ", 0) == 0);
    CHECK(ls[1] == "isotope,laser,mode,cooperative,xi,Gamma_eV,E_ef_V_per_m,rho_ee,S_per_s");
    CHECK(data_rows(r.out) == 64);
    CHECK(r.out.find("Fe57,EuXFEL,solid,true,") != std::string::npos);
}

TEST_CASE("run: empty scenario list writes only the header") {
    auto p = write_file("empty.toml", "# nothing here\n");
    auto r = cli_run({"run", "--scenario", p.string()});
    CHECK(r.code == 0);
    CHECK(data_rows(r.out) == 0);
    CHECK(lines(r.out).size() == 2);
}

TEST_CASE("run: unknown isotope is a data error naming the record") {
    auto p = write_file("unknown.toml", "[[scenario]]\nisotope = \"Zz999\"\nlaser = \"EuXFEL\"\n");
    auto r = cli_run({"run", "--scenario", p.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("Zz999") != std::string::npos);
}

TEST_CASE("run: parse errors exit 1 with a location") {
    auto p = write_file("bad.toml", "[[scenario]]\nisotope = \"Fe57\"\nlaser = \"EuXFEL\"\nwidth = 3\n");
    auto r = cli_run({"run", "--scenario", p.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find(":4:") != std::string::npos);

    auto q = write_file("bad2.toml", "[[scenario]]\nisotope = Fe57\n");
    CHECK(cli_run({"run", "--scenario", q.string()}).code == 1);
    CHECK(cli_run({"run"}).code == 1);
    CHECK(cli_run({"frobnicate"}).code == 1);
    CHECK(cli_run({"nfs", "--xi", "abc", "--tau-max", "1", "--samples", "3"}).code == 1);
}

TEST_CASE("run: sidecar manifest and byte-identical reruns") {
    auto out = scratch("t3.csv");
    fs::remove(out);
    REQUIRE(cli_run({"run", "--scenario", kPresets + "table3.toml", "--out", out.string()}).code == 0);
    const std::string first = read_file(out);
    REQUIRE(cli_run({"run", "--scenario", kPresets + "table3.toml", "--out", out.string(),
                     "--threads", "3"})
                .code == 0);
    CHECK(read_file(out) == first);
    const std::string manifest = read_file(out.string() + ".manifest.json");
    CHECK(manifest.find("\"dataset_hash\"") != std::string::npos);
    CHECK(manifest.find("66a4b2b32398e089") != std::string::npos);
    CHECK(manifest.find("\"version\": \"1.0.0\"") != std::string::npos);
}

TEST_CASE("nfs") {
    auto r = cli_run({"nfs", "--xi", "10", "--tau-max", "1", "--samples", "2"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1] == "tau,I_closed,I_exp_decay,I_enhanced");
    CHECK(ls[2].rfind("0.00000e+00,1.00000e+02,1.00000e+02,", 0) == 0);
    CHECK(ls[3].rfind("1.00000e+00,", 0) == 0);
    CHECK(ls[3].find(",3.67879e+01,") != std::string::npos);

    CHECK(cli_run({"nfs", "--xi", "0", "--tau-max", "1", "--samples", "2"}).code == 2);
    CHECK(cli_run({"nfs", "--xi", "1", "--tau-max", "1", "--samples", "1"}).code == 2);
    CHECK(cli_run({"nfs", "--xi", "1", "--tau-max", "-1", "--samples", "5"}).code == 2);

    auto f = cli_run({"run", "--scenario", kPresets + "fig1.toml"});
    CHECK(f.code == 0);
    CHECK(data_rows(f.out) == 201);
}

TEST_CASE("sweep") {
    auto r = cli_run({"sweep", "--isotope", "Fe57", "--laser", "XFELO", "--dfoc-min", "20",
                      "--dfoc-max", "20", "--steps", "1"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    CHECK(ls[1].rfind("# crossover_d_foc_m ", 0) == 0);
    const double crossover = std::stod(ls[1].substr(20));
    CHECK(crossover == doctest::Approx(35e-9).epsilon(0.02));
    CHECK(ls[2] == "d_foc,rho_ee_coop,rho_ee_nocoop,regime");
    CHECK(ls[3].rfind("2.00000e-08,", 0) == 0);
    CHECK(ls[3].find("focal_length") != std::string::npos);

    auto f = cli_run({"run", "--scenario", kPresets + "fig2.toml"});
    CHECK(f.code == 0);
    CHECK(data_rows(f.out) == 40);

    CHECK(cli_run({"sweep", "--isotope", "Fe57", "--laser", "XFELO", "--dfoc-min", "50",
                   "--dfoc-max", "20", "--steps", "4"})
              .code == 2);
    CHECK(cli_run({"sweep", "--isotope", "Fe57", "--laser", "XFELO", "--dfoc-min", "20",
                   "--dfoc-max", "50", "--steps", "1"})
              .code == 2);
}

TEST_CASE("validate") {
    auto ok = cli_run({"validate", "--data", NUCLEOQ_SOURCE_DIR "/data"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("0 errors") != std::string::npos);

    std::string text = read_file(NUCLEOQ_SOURCE_DIR "/data/nuclear.toml");
    const std::string key = "[transition.Ta181]";
    auto pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    auto a = text.find("alpha =", pos);
    auto eol = text.find('\n', a);
    std::string bad = text;
    bad.replace(a, eol - a, "alpha = -1.0");
    auto p = write_file("neg_alpha.toml", bad);
    auto r = cli_run({"validate", "--data", p.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("Ta181") != std::string::npos);

    auto b = text.find("B_down", pos);
    REQUIRE(b != std::string::npos);
    REQUIRE(b < text.find("[material.Ta181]"));
    auto beol = text.find('\n', b);
    const double B = std::stod(text.substr(text.find('=', b) + 1, beol));
    std::string warn = text;
    warn.replace(b, beol - b, "B_down = " + std::to_string(2.5 * B));
    auto w = write_file("b_mismatch.toml", warn);
    auto rw = cli_run({"validate", "--data", w.string()});
    CHECK(rw.code == 0);
    CHECK(rw.err.find("Ta181") != std::string::npos);
    CHECK(rw.out.find("1 warnings") != std::string::npos);
}

TEST_CASE("table") {
    auto r = cli_run({"table", "--id", "T2"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out)[1] == "table,isotope,column,quantity,computed,reference,ratio");
    CHECK(data_rows(r.out) == 64);
    CHECK(cli_run({"table", "--id", "T9"}).code == 1);
}

TEST_CASE("executable exit codes") {
    auto status = [](const std::string& args) {
        std::string cmd = std::string("\"") + NUCLEOQ_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
        int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("validate") == 0);
    CHECK(status("nfs --xi 0 --tau-max 1 --samples 3") == 2);
    CHECK(status("nosuchcommand") == 1);
}

TEST_CASE("scenario file parsing") {
    auto f = cli::parse_scenario_file(
        "[defaults]\nseeded = false\nd_foc_nm = 50\n[grid]\nisotopes = [\"Fe57\", \"Pt193\"]\n"
        "lasers = [\"EuXFEL\"]\ncooperative = [true, false]\n",
        "grid.toml");
    CHECK(f.kind == cli::ScenarioFile::Kind::Scenarios);
    REQUIRE(f.scenarios.size() == 4);
    for (const auto& s : f.scenarios) {
        CHECK(!s.seeded);
        REQUIRE(s.d_foc);
        CHECK(units::to_nm(*s.d_foc) == doctest::Approx(50.0));
    }
    CHECK_THROWS_AS(cli::parse_scenario_file("[nfs]\nxi = 1\n[[scenario]]\nisotope = \"Fe57\"\nlaser = \"LCLS\"\n", "x"),
                    ParseError);
    CHECK(cli::format_number(1.23e8) == "1.23000e+08");
    CHECK(cli::format_number(0.0) == "0.00000e+00");
}
