#include "nucleoq/errors.hpp"
#include "nucleoq/nucdata.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace nucleoq;

namespace {

const Dataset& shipped() {
    static const Dataset ds = load_dataset(default_data_dir());
    return ds;
}

const char* kMinimal = R"(
[transition.X]
E_gamma_keV = 10.0
Ig = "1/2"
Ie = "3/2"
multipolarity = "M1"
half_life_ns = 100.0
alpha = 1.0
material = "X"

[material.X]
N_per_m3 = 1e28
theta_D_K = 300
mass_u = 57
inv_mu_um = 10
)";

}  // namespace

TEST_CASE("shipped records") {
    const auto& ds = shipped();
    const auto& fe = ds.transition("Fe57");
    CHECK(units::to_eV(fe.E_gamma) == doctest::Approx(14413.0).epsilon(1e-12));
    CHECK(fe.Ig.twice() == 1);
    CHECK(fe.Ie.twice() == 3);
    CHECK(fe.multipolarity.to_string() == "M1");
    const auto& sn = ds.transition("Sn119");
    CHECK(units::to_eV(sn.E_gamma) == doctest::Approx(23871.0).epsilon(1e-12));
    CHECK(sn.multipolarity.to_string() == "M1");
    CHECK(ds.material("Fe57").N.si() == doctest::Approx(8.49e28).epsilon(1e-12));
    CHECK(ds.material("Fe57").enrichment == 1.0);
    CHECK(ds.material("Fe57").T.si() == 300.0);
    const auto& xfelo = ds.laser("XFELO");
    CHECK(xfelo.rep_rate.si() == 1e6);
    REQUIRE(xfelo.rep_rate_design);
    CHECK(xfelo.rep_rate_design->si() == 1e8);
    CHECK(xfelo.seeded);
    CHECK(ds.laser("SACLA").T_coh == ds.laser("SACLA").T_p);
    CHECK_THROWS_WITH_AS(ds.transition("Xx999"), doctest::Contains("Xx999"), DataError);
}

TEST_CASE("shipped dataset passes validation and the triangle rule") {
    const auto& ds = shipped();
    for (const auto& issue : validate_dataset(ds)) {
        INFO(issue.record << ": " << issue.message);
        CHECK(issue.severity != ValidationIssue::Severity::Error);
    }
    for (const auto& t : ds.transitions) CHECK(triangle(t.Ig, t.Ie, t.multipolarity.order()));
}

TEST_CASE("empty file gives an empty dataset") {
    const Dataset ds = load_dataset_from_string("");
    CHECK(ds.transitions.empty());
    CHECK(ds.materials.empty());
    CHECK(ds.lasers.empty());
}

TEST_CASE("Fe57 widths") {
    const auto& fe = shipped().transition("Fe57");
    const double G0 = constants::hbar * constants::ln2 / 98.3e-9;
    CHECK(total_width(fe).si() == doctest::Approx(G0).epsilon(1e-12));
    CHECK(units::to_eV(total_width(fe)) == doctest::Approx(4.66e-9).epsilon(2e-3));
    const double oracle = G0 / (1.0 + 8.56);
    CHECK(std::abs(gamma_rad_from_B(fe).si() / oracle - 1.0) < 0.2);
}

TEST_CASE("radiative width scaling") {
    NuclearTransition t = shipped().transition("Fe57");
    t.B_reduced = 0.0;
    CHECK(gamma_rad_from_B(t).si() == 0.0);
    t = shipped().transition("Fe57");
    const double g1 = gamma_rad_from_B(t).si();
    t.E_gamma = t.E_gamma * 2.0;
    CHECK(gamma_rad_from_B(t).si() / g1 == doctest::Approx(8.0).epsilon(1e-12));

    NuclearTransition e2 = t;
    e2.multipolarity = Multipolarity::parse("E2");
    e2.Ig = AngularMomentum(0);
    e2.Ie = AngularMomentum(4);
    const double a = gamma_rad_from_B(e2).si();
    e2.E_gamma = e2.E_gamma * 2.0;
    CHECK(gamma_rad_from_B(e2).si() / a == doctest::Approx(32.0).epsilon(1e-12));

    double prev = -1.0;
    for (double B = 0.01; B < 10; B *= 2) {
        t.B_reduced = B;
        CHECK(gamma_rad_from_B(t).si() > prev);
        prev = gamma_rad_from_B(t).si();
    }
}

TEST_CASE("width sources") {
    Dataset ds = load_dataset_from_string(kMinimal);
    NuclearTransition t = ds.transition("X");
    CHECK(total_width(t).si() == doctest::Approx(constants::hbar * constants::ln2 / 100e-9));
    CHECK(gamma_rad(t).si() == doctest::Approx(total_width(t).si() / 2.0));
    t.Gamma0.reset();
    t.half_life.reset();
    t.alpha_IC = 0.0;
    t.B_reduced = 0.05;
    CHECK(total_width(t).si() == gamma_rad(t).si());
    // B(up) = (2Ie+1)/(2Ig+1) B(down)
    CHECK(B_up_SI(t) / B_down_SI(t) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("serialization round trip is bit-identical") {
    const auto& ds = shipped();
    const std::string text = serialize_dataset(ds);
    const Dataset back = load_dataset_from_string(text);
    REQUIRE(back.transitions.size() == ds.transitions.size());
    for (size_t i = 0; i < ds.transitions.size(); ++i) {
        const auto& a = ds.transitions[i];
        const auto& b = back.transitions[i];
        CHECK(a.isotope == b.isotope);
        CHECK(std::memcmp(&a.E_gamma, &b.E_gamma, sizeof(double)) == 0);
        CHECK(a.alpha_IC == b.alpha_IC);
        CHECK(a.B_reduced == b.B_reduced);
        CHECK(a.Gamma0.has_value() == b.Gamma0.has_value());
        if (a.Gamma0) CHECK(a.Gamma0->si() == b.Gamma0->si());
        CHECK(a.Ig == b.Ig);
        CHECK(a.Ie == b.Ie);
    }
    for (size_t i = 0; i < ds.materials.size(); ++i) {
        CHECK(ds.materials[i].N.si() == back.materials[i].N.si());
        CHECK(ds.materials[i].M.si() == back.materials[i].M.si());
        CHECK(ds.materials[i].inv_mu.si() == back.materials[i].inv_mu.si());
        CHECK(ds.materials[i].theta_D.si() == back.materials[i].theta_D.si());
    }
    for (size_t i = 0; i < ds.lasers.size(); ++i) {
        CHECK(ds.lasers[i].E_ph.si() == back.lasers[i].E_ph.si());
        CHECK(ds.lasers[i].T_p.si() == back.lasers[i].T_p.si());
        CHECK(ds.lasers[i].T_coh.si() == back.lasers[i].T_coh.si());
        CHECK(ds.lasers[i].P_peak.si() == back.lasers[i].P_peak.si());
        CHECK(ds.lasers[i].d_foc.si() == back.lasers[i].d_foc.si());
        CHECK(ds.lasers[i].BW == back.lasers[i].BW);
    }
    CHECK(serialize_dataset(back) == text);
    CHECK(back.hash() == ds.hash());
    CHECK(ds.hash().size() == 16);
}

TEST_CASE("validation flags broken records") {
    std::string neg = kMinimal;
    neg.replace(neg.find("alpha = 1.0"), 11, "alpha = -1.0");
    const auto issues = validate_dataset(parse_dataset(neg));
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].severity == ValidationIssue::Severity::Error);
    CHECK(issues[0].record == "transition.X");
    CHECK_THROWS_AS(load_dataset_from_string(neg), DataError);

    std::string tri = kMinimal;
    tri.replace(tri.find("\"3/2\""), 5, "\"7/2\"");
    CHECK(validate_dataset(parse_dataset(tri)).size() == 1);

    std::string mat = kMinimal;
    mat.replace(mat.find("material = \"X\""), 14, "material = \"Y\"");
    CHECK_THROWS_WITH_AS(load_dataset_from_string(mat), doctest::Contains("unknown material"),
                         DataError);

    // consistent B gives no issue, a factor 2 off gives a warning
    Dataset ok = parse_dataset(kMinimal);
    NuclearTransition& t = ok.transitions[0];
    const double B = t.Gamma0->si() / 2.0 / radiative_prefactor(t.multipolarity, t.E_gamma) /
                     B_unit_SI(t.multipolarity);
    t.B_reduced = B;
    CHECK(validate_dataset(ok).empty());
    t.B_reduced = 2.0 * B;
    const auto w = validate_dataset(ok);
    REQUIRE(w.size() == 1);
    CHECK(w[0].severity == ValidationIssue::Severity::Warning);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(load_dataset_from_string("[transition.X]\nfoo = 1\n"), ParseError);
    CHECK_THROWS_AS(load_dataset_from_string("[transition.X\n"), ParseError);
    CHECK_THROWS_AS(load_dataset_from_string("[bogus]\n"), ParseError);
    std::string dup = std::string(kMinimal) + "[material.X]\nN_per_m3 = 1\n";
    CHECK_THROWS_AS(load_dataset_from_string(dup), ParseError);
    CHECK_THROWS_AS(load_dataset_from_string("x = inf\n"), ParseError);
    CHECK_THROWS_AS(load_dataset(std::filesystem::path("/nonexistent/dir")), ParseError);
}

TEST_CASE("multipolarity parsing") {
    const auto m = Multipolarity::parse("E2");
    CHECK(m.kind == Multipolarity::Kind::Electric);
    CHECK(m.L == 2);
    CHECK(Multipolarity::parse("M1").to_string() == "M1");
    CHECK_THROWS_AS(Multipolarity::parse("X1"), DomainError);
    CHECK_THROWS_AS(Multipolarity::parse("E0"), DomainError);
}
