#pragma once

#include <cmath>
#include <compare>

namespace nucleoq {

// SI dimension exponents: length, mass, time, current, temperature.
template <int L, int M, int T, int I, int K>
struct Dim {
    static constexpr int length = L;
    static constexpr int mass = M;
    static constexpr int time = T;
    static constexpr int current = I;
    static constexpr int temperature = K;
};

template <class A, class B>
using DimMul = Dim<A::length + B::length, A::mass + B::mass, A::time + B::time,
                   A::current + B::current, A::temperature + B::temperature>;
template <class A, class B>
using DimDiv = Dim<A::length - B::length, A::mass - B::mass, A::time - B::time,
                   A::current - B::current, A::temperature - B::temperature>;

template <class D>
class Quantity {
public:
    using dim = D;

    constexpr Quantity() = default;
    constexpr explicit Quantity(double si) : v_(si) {}

    constexpr double si() const { return v_; }

    constexpr Quantity operator+(Quantity o) const { return Quantity(v_ + o.v_); }
    constexpr Quantity operator-(Quantity o) const { return Quantity(v_ - o.v_); }
    constexpr Quantity operator-() const { return Quantity(-v_); }
    constexpr Quantity operator*(double s) const { return Quantity(v_ * s); }
    constexpr Quantity operator/(double s) const { return Quantity(v_ / s); }
    constexpr Quantity& operator+=(Quantity o) { v_ += o.v_; return *this; }
    constexpr Quantity& operator-=(Quantity o) { v_ -= o.v_; return *this; }
    constexpr Quantity& operator*=(double s) { v_ *= s; return *this; }

    constexpr auto operator<=>(const Quantity&) const = default;

private:
    double v_ = 0.0;
};

template <class D>
constexpr Quantity<D> operator*(double s, Quantity<D> q) { return q * s; }

template <class A, class B>
constexpr Quantity<DimMul<A, B>> operator*(Quantity<A> a, Quantity<B> b) {
    return Quantity<DimMul<A, B>>(a.si() * b.si());
}

template <class A, class B>
constexpr Quantity<DimDiv<A, B>> operator/(Quantity<A> a, Quantity<B> b) {
    return Quantity<DimDiv<A, B>>(a.si() / b.si());
}

template <class D>
constexpr Quantity<DimDiv<Dim<0, 0, 0, 0, 0>, D>> operator/(double s, Quantity<D> q) {
    return Quantity<DimDiv<Dim<0, 0, 0, 0, 0>, D>>(s / q.si());
}

// Dimensionless ratios collapse to plain doubles.
template <class D>
constexpr double ratio(Quantity<D> a, Quantity<D> b) { return a.si() / b.si(); }

template <class D>
Quantity<Dim<D::length / 2, D::mass / 2, D::time / 2, D::current / 2, D::temperature / 2>>
sqrt(Quantity<D> q) {
    static_assert(D::length % 2 == 0 && D::mass % 2 == 0 && D::time % 2 == 0 &&
                      D::current % 2 == 0 && D::temperature % 2 == 0,
                  "sqrt of a quantity with odd dimension exponents");
    return Quantity<Dim<D::length / 2, D::mass / 2, D::time / 2, D::current / 2,
                        D::temperature / 2>>(std::sqrt(q.si()));
}

using Scalar = Quantity<Dim<0, 0, 0, 0, 0>>;
using Length = Quantity<Dim<1, 0, 0, 0, 0>>;
using Area = Quantity<Dim<2, 0, 0, 0, 0>>;
using Volume = Quantity<Dim<3, 0, 0, 0, 0>>;
using NumberDensity = Quantity<Dim<-3, 0, 0, 0, 0>>;
using Mass = Quantity<Dim<0, 1, 0, 0, 0>>;
using Time = Quantity<Dim<0, 0, 1, 0, 0>>;
using Frequency = Quantity<Dim<0, 0, -1, 0, 0>>;
using Temperature = Quantity<Dim<0, 0, 0, 0, 1>>;
using Energy = Quantity<Dim<2, 1, -2, 0, 0>>;
using Power = Quantity<Dim<2, 1, -3, 0, 0>>;
using Intensity = Quantity<Dim<0, 1, -3, 0, 0>>;
using ElectricField = Quantity<Dim<1, 1, -3, -1, 0>>;
using Charge = Quantity<Dim<0, 0, 1, 1, 0>>;
using Rate = Frequency;

namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double h = 6.62607015e-34;           // J s
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double e = 1.602176634e-19;          // C
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double kB = 1.380649e-23;            // J/K
inline constexpr double u = 1.66053906660e-27;        // kg
inline constexpr double muN = 5.0507837461e-27;       // J/T
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double ln2 = 0.69314718055994530942;
}  // namespace constants

namespace units {
inline constexpr Energy eV(double x) { return Energy(x * constants::e); }
inline constexpr Energy keV(double x) { return Energy(x * 1e3 * constants::e); }
inline constexpr Time s(double x) { return Time(x); }
inline constexpr Time ns(double x) { return Time(x * 1e-9); }
inline constexpr Time fs(double x) { return Time(x * 1e-15); }
inline constexpr Length m(double x) { return Length(x); }
inline constexpr Length um(double x) { return Length(x * 1e-6); }
inline constexpr Length nm(double x) { return Length(x * 1e-9); }
inline constexpr Length angstrom(double x) { return Length(x * 1e-10); }
inline constexpr Power W(double x) { return Power(x); }
inline constexpr Frequency Hz(double x) { return Frequency(x); }
inline constexpr Temperature K(double x) { return Temperature(x); }
inline constexpr Mass u(double x) { return Mass(x * constants::u); }
inline constexpr NumberDensity per_m3(double x) { return NumberDensity(x); }

inline constexpr double to_eV(Energy E) { return E.si() / constants::e; }
inline constexpr double to_keV(Energy E) { return E.si() / (1e3 * constants::e); }
inline constexpr double to_fs(Time t) { return t.si() * 1e15; }
inline constexpr double to_ns(Time t) { return t.si() * 1e9; }
inline constexpr double to_um(Length x) { return x.si() * 1e6; }
inline constexpr double to_nm(Length x) { return x.si() * 1e9; }
}  // namespace units

// Photon wavelength for a given photon energy.
inline Length wavelength(Energy E) {
    return Length(2.0 * constants::pi * constants::hbar * constants::c / E.si());
}

// Width <-> rate conversions (Gamma = hbar / tau).
inline Rate rate_of(Energy width) { return Rate(width.si() / constants::hbar); }
inline Energy width_of(Rate r) { return Energy(r.si() * constants::hbar); }

}  // namespace nucleoq
