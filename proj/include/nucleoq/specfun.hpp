#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nucleoq {

// Half-integer stored as twice its value. Used for projections (may be negative).
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt from_twice(int t) { return HalfInt(t); }
    static HalfInt from_double(double v);

    constexpr double value() const { return 0.5 * twice; }
    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr HalfInt operator-() const { return HalfInt(-twice); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice + o.twice); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice - o.twice); }
    constexpr auto operator<=>(const HalfInt&) const = default;
};

// Non-negative half-integer angular momentum (3/2 is stored as 3).
class AngularMomentum {
public:
    constexpr AngularMomentum() = default;
    explicit AngularMomentum(int twice_value);

    static AngularMomentum from_twice(int t) { return AngularMomentum(t); }
    static AngularMomentum from_double(double v);
    // Accepts "3/2", "2", "0.5".
    static AngularMomentum parse(const std::string& text);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr int multiplicity() const { return twice_ + 1; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }
    constexpr HalfInt as_projection() const { return HalfInt(twice_); }

    // Projections -j, -j+1, ..., j.
    std::vector<HalfInt> projections() const;
    std::string to_string() const;

    constexpr auto operator<=>(const AngularMomentum&) const = default;

private:
    int twice_ = 0;
};

bool triangle(AngularMomentum a, AngularMomentum b, AngularMomentum c);

// <j1 m1, j2 m2 | j m>, Condon-Shortley phase, exact rational evaluation.
double clebsch_gordan(AngularMomentum j1, HalfInt m1, AngularMomentum j2, HalfInt m2,
                      AngularMomentum j, HalfInt m);

double bessel_j1(double x);

// Integral of x/(e^x - 1) from 0 to upper; upper may be +infinity.
double debye_integral(double upper);

std::uint64_t double_factorial(int n);

}  // namespace nucleoq
