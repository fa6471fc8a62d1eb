#include "nucleoq/units.hpp"

#include <doctest.h>

#include <type_traits>

using namespace nucleoq;

TEST_CASE("dimension algebra") {
    static_assert(std::is_same_v<decltype(Power() / Area()), Intensity>);
    static_assert(std::is_same_v<decltype(Energy() / Time()), Power>);
    static_assert(std::is_same_v<decltype(Length() * Length()), Area>);
    static_assert(std::is_same_v<decltype(Area() * Length() * NumberDensity()), Scalar>);
    static_assert(std::is_same_v<decltype(sqrt(Intensity() / Quantity<Dim<-3, -1, 4, 2, 0>>() /
                                                Quantity<Dim<1, 0, -1, 0, 0>>())),
                                 ElectricField>);
    CHECK(ratio(units::keV(1.0), units::eV(1000.0)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("conversions round trip") {
    CHECK(units::to_keV(units::keV(14.413)) == doctest::Approx(14.413).epsilon(1e-15));
    CHECK(units::to_fs(units::fs(100.0)) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(units::to_um(units::um(21.9)) == doctest::Approx(21.9).epsilon(1e-15));
    CHECK(units::to_nm(units::nm(7.0)) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(units::to_ns(units::ns(98.3)) == doctest::Approx(98.3).epsilon(1e-15));
}

TEST_CASE("wavelength of the Fe57 line") {
    CHECK(wavelength(units::keV(14.413)).si() == doctest::Approx(0.8602e-10).epsilon(1e-4));
    CHECK(wavelength(units::eV(12398.42)).si() == doctest::Approx(1e-10).epsilon(1e-6));
}

TEST_CASE("width and rate") {
    const Energy G = units::eV(4.66e-9);
    CHECK(width_of(rate_of(G)).si() == doctest::Approx(G.si()).epsilon(1e-15));
}
