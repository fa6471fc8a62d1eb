#include "nucleoq/doppler.hpp"
#include "nucleoq/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace nucleoq;

namespace {

LaserPulseSpec lab() {
    LaserPulseSpec l;
    l.id = "lab";
    l.E_ph = units::keV(12.4);
    l.BW = 3e-4;
    l.T_p = units::fs(100);
    l.T_coh = units::fs(2);
    l.P_peak = units::W(4e10);
    l.rep_rate = units::Hz(30);
    l.d_foc = units::nm(100);
    l.seeded = true;
    return l;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("required velocity") {
    CHECK(required_beta(units::keV(10), units::keV(10)).beta == 0.0);
    CHECK(required_beta(units::keV(10), units::keV(20)).beta == 0.6);
    CHECK(required_beta(units::keV(12.4), units::keV(35.843)).beta == doctest::Approx(0.7863).epsilon(1e-4));
    CHECK_THROWS_AS(required_beta(units::keV(20), units::keV(10)), DomainError);
    CHECK_THROWS_AS(required_beta(Energy(0.0), units::keV(10)), DomainError);
    const BoostSpec b = BoostSpec::from_beta(0.6);
    CHECK(b.gamma == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(b.doppler_factor() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(BoostSpec::from_beta(1.0), DomainError);
}

TEST_CASE("boost examples") {
    const LaserPulseSpec l = lab();
    const auto id = boost_laser(l, BoostSpec::from_beta(0.0));
    CHECK(id.rest_frame.E_ph == l.E_ph);
    CHECK(id.rest_frame.BW == l.BW);
    CHECK(id.rest_frame.T_p == l.T_p);
    CHECK(id.rest_frame.P_peak == l.P_peak);
    CHECK(id.field_factor == 1.0);

    const auto p = boost_laser(l, BoostSpec::from_beta(0.0, 4e-4));
    CHECK(p.rest_frame.BW == 5e-4);

    const auto b = boost_laser(l, BoostSpec::from_beta(0.6));
    CHECK(rel(b.rest_frame.E_ph.si(), 2.0 * l.E_ph.si()) < 1e-15);
    CHECK(b.field_factor == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(rel(b.rest_frame.P_peak.si(), 4.0 * l.P_peak.si()) < 1e-15);
    CHECK(rel(b.rest_frame.T_p.si(), 0.5 * l.T_p.si()) < 1e-15);

    const auto lab_time = boost_laser(l, BoostSpec::from_beta(0.6), PulseDurationConvention::Laboratory);
    CHECK(lab_time.rest_frame.T_p == l.T_p);
    CHECK(lab_time.rest_frame.T_coh == l.T_coh);
}

TEST_CASE("round trip restores every field") {
    const LaserPulseSpec l = lab();
    for (double beta : {0.1, 0.6, 0.7863, 0.95, 0.999}) {
        const BoostSpec b = BoostSpec::from_beta(beta);
        const auto there = boost_laser(l, b);
        const auto back = boost_laser(there.rest_frame, b.inverse());
        CHECK(rel(back.rest_frame.E_ph.si(), l.E_ph.si()) < 1e-12);
        CHECK(rel(back.rest_frame.BW, l.BW) < 1e-12);
        CHECK(rel(back.rest_frame.T_p.si(), l.T_p.si()) < 1e-12);
        CHECK(rel(back.rest_frame.T_coh.si(), l.T_coh.si()) < 1e-12);
        CHECK(rel(back.rest_frame.P_peak.si(), l.P_peak.si()) < 1e-12);
        CHECK(back.rest_frame.d_foc == l.d_foc);
        CHECK(back.rest_frame.rep_rate == l.rep_rate);
        CHECK(rel(there.field_factor * back.field_factor, 1.0) < 1e-12);
    }
}

TEST_CASE("required velocity brings the photon energy onto resonance") {
    const LaserPulseSpec l = lab();
    for (double E : {12.4, 14.0, 35.843, 60.0, 120.0}) {
        const BoostSpec b = required_beta(l.E_ph, units::keV(E), 1e-4);
        const auto r = boost_laser(l, b);
        CHECK(rel(r.rest_frame.E_ph.si(), units::keV(E).si()) < 1e-12);
        CHECK(rel(r.field_factor, E / 12.4) < 1e-12);
        CHECK(r.rest_frame.BW >= std::max(l.BW, 1e-4));
    }
}
