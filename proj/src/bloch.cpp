#include "nucleoq/bloch.hpp"

#include "nucleoq/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>

namespace nucleoq {

namespace k = constants;
namespace ode = boost::numeric::odeint;

namespace {

void check_projection(AngularMomentum j, HalfInt m, const char* what) {
    if (std::abs(m.twice) > j.twice() || (j.twice() - m.twice) % 2 != 0)
        throw DomainError(std::string("invalid ") + what + " projection " +
                          std::to_string(m.twice) + "/2 for spin " + j.to_string());
}

// Coupling per unit field for the given sublevels.
double coupling_factor(const NuclearTransition& t, HalfInt Mg, HalfInt Me, int sigma) {
    const int L = t.multipolarity.L;
    const AngularMomentum Lj = t.multipolarity.order();
    if (Me.twice - Mg.twice != -2 * sigma) return 0.0;
    if (2 * L < std::abs(2 * sigma)) return 0.0;
    const double cg = clebsch_gordan(t.Ie, Me, t.Ig, -Mg, Lj, HalfInt(-2 * sigma));
    if (cg == 0.0) return 0.0;
    const double kwave = t.E_gamma.si() / (k::hbar * k::c);
    const double df = static_cast<double>(double_factorial(2 * L + 1));
    return std::sqrt(2.0 * k::pi) * std::sqrt((L + 1.0) / L) * std::pow(kwave, L - 1) / df * cg *
           std::sqrt(static_cast<double>(t.Ig.multiplicity())) * std::sqrt(B_up_SI(t));
}

}  // namespace

Energy partial_rate(const NuclearTransition& t, HalfInt Mg, HalfInt Me, Energy Gamma) {
    check_projection(t.Ig, Mg, "ground");
    check_projection(t.Ie, Me, "excited");
    const int L = t.multipolarity.L;
    const HalfInt M = Mg - Me;
    if (std::abs(M.twice) > 2 * L) return Energy(0.0);
    const double cg = clebsch_gordan(t.Ig, Mg, t.Ie, -Me, t.multipolarity.order(), M);
    return Gamma * (static_cast<double>(t.Ie.multiplicity()) / (2 * L + 1) * cg * cg);
}

Energy partial_rate(const NuclearTransition& t, HalfInt Mg, HalfInt Me) {
    return partial_rate(t, Mg, Me, total_width(t));
}

Energy coupling_element(const NuclearTransition& t, ElectricField E_ef, HalfInt Mg, HalfInt Me,
                        int sigma) {
    check_projection(t.Ig, Mg, "ground");
    check_projection(t.Ie, Me, "excited");
    if (sigma != 1 && sigma != -1) throw DomainError("photon helicity must be +1 or -1");
    if (E_ef.si() < 0) throw DomainError("coupling_element: negative field amplitude");
    return Energy(E_ef.si() * coupling_factor(t, Mg, Me, sigma));
}

Energy SublevelSystem::coupling(HalfInt mg, HalfInt me, ElectricField E_ef) const {
    for (const auto& p : pairs)
        if (p.Mg == mg && p.Me == me) return Energy(p.coupling_per_field * E_ef.si());
    return Energy(0.0);
}

SublevelSystem build_system(const NuclearTransition& t, Energy Gamma, Energy detuning,
                            Energy gamma_dec, int sigma) {
    if (sigma != 1 && sigma != -1) throw DomainError("photon helicity must be +1 or -1");
    if (Gamma.si() < 0) throw DomainError("build_system: negative width");
    if (gamma_dec.si() < 0) throw DomainError("build_system: negative decoherence rate");
    if (!triangle(t.Ig, t.Ie, t.multipolarity.order()))
        throw DomainError("transition '" + t.isotope + "' violates the triangle rule");
    SublevelSystem sys;
    sys.transition = t;
    sys.Mg = t.Ig.projections();
    sys.Me = t.Ie.projections();
    sys.Gamma = Gamma;
    sys.detuning = detuning;
    sys.gamma_dec = gamma_dec;
    sys.sigma = sigma;
    for (HalfInt mg : sys.Mg) {
        for (HalfInt me : sys.Me) {
            SublevelPair p{mg, me, partial_rate(t, mg, me, Gamma), coupling_factor(t, mg, me, sigma)};
            if (p.gamma.si() != 0.0 || p.coupling_per_field != 0.0) sys.pairs.push_back(p);
        }
    }
    return sys;
}

DensityMatrixState initial_state(const SublevelSystem& sys) {
    DensityMatrixState s;
    const double p = 1.0 / static_cast<double>(sys.Mg.size());
    for (HalfInt mg : sys.Mg) s.rho_gg[mg] = p;
    for (HalfInt me : sys.Me) s.rho_ee[me] = 0.0;
    for (const auto& pr : sys.pairs)
        if (pr.coupling_per_field != 0.0) s.rho_ge[{pr.Mg, pr.Me}] = 0.0;
    s.time = Time(0.0);
    return s;
}

namespace {

using State = std::vector<double>;

// Variables are scaled by the drive strength a = min(1, Omega_max T):
//   y[g]            ground depletion        (rho_gg0 - rho_gg) / a^2
//   y[ng + e]       excited population      rho_ee / a^2
//   y[ng+ne+2c ..]  coherence (re, im)      rho_ge / a
// so that weak-drive trajectories stay O(1) and the tolerance acts relatively.
struct Rhs {
    int ng = 0, ne = 0;
    double a = 1.0;
    double p0 = 0.0;                 // initial ground population per sublevel
    double det = 0.0;                // detuning * T / hbar
    double dec = 0.0;                // gamma_dec * T / hbar
    std::vector<double> loss;        // total decay of each excited sublevel, * T / hbar
    struct Decay { int g, e; double rate; };
    std::vector<Decay> decays;
    struct Drive { int g, e; double omega; double damp; };  // omega = V T / (hbar a)
    std::vector<Drive> drives;
    Envelope envelope = Envelope::Rectangular;
    double window = 1.0;  // integration end in units of T

    double shape(double s) const {
        if (envelope == Envelope::Rectangular) return 1.0;
        const double c = 0.5 * window;
        return std::exp(-2.0 * k::ln2 * (s - c) * (s - c));
    }

    void operator()(const State& y, State& dy, double s) const {
        std::fill(dy.begin(), dy.end(), 0.0);
        const double f = shape(s);
        const double a2 = a * a;
        for (int e = 0; e < ne; ++e) dy[ng + e] -= loss[e] * y[ng + e];
        for (const auto& d : decays) dy[d.g] -= d.rate * y[ng + d.e];
        for (size_t c = 0; c < drives.size(); ++c) {
            const auto& dr = drives[c];
            const size_t ir = ng + ne + 2 * c, ii = ir + 1;
            const double re = y[ir], im = y[ii];
            const double w = dr.omega * f;
            // rho_gg - rho_ee expressed through the scaled variables
            const double inversion = p0 - a2 * y[dr.g] - a2 * y[ng + dr.e];
            dy[ir] = -det * im - dr.damp * re;
            dy[ii] = det * re + w * inversion - dr.damp * im;
            dy[ng + dr.e] += 2.0 * w * im;
            dy[dr.g] += 2.0 * w * im;
        }
    }
};

}  // namespace

DensityMatrixState evolve(const SublevelSystem& sys, ElectricField E_ef, Time duration, double tol,
                          Envelope envelope) {
    if (E_ef.si() < 0) throw DomainError("evolve: negative field amplitude");
    if (duration.si() < 0) throw DomainError("evolve: negative duration");
    if (!(tol > 0)) throw DomainError("evolve: tolerance must be positive");

    DensityMatrixState out = initial_state(sys);
    const double T = duration.si();
    const double window = envelope == Envelope::Gaussian ? 3.0 : 1.0;
    out.time = Time(T * window);
    out.diagnostics.min_population = 0.0;

    double vmax = 0.0;
    for (const auto& p : sys.pairs) vmax = std::max(vmax, std::abs(p.coupling_per_field));
    const double omega_T = 2.0 * vmax * E_ef.si() * T / k::hbar;
    if (omega_T == 0.0 || T == 0.0) return out;

    Rhs rhs;
    rhs.ng = static_cast<int>(sys.Mg.size());
    rhs.ne = static_cast<int>(sys.Me.size());
    rhs.a = std::min(1.0, omega_T);
    rhs.p0 = 1.0 / rhs.ng;
    rhs.det = sys.detuning.si() * T / k::hbar;
    rhs.dec = sys.gamma_dec.si() * T / k::hbar;
    rhs.loss.assign(rhs.ne, 0.0);
    rhs.envelope = envelope;
    rhs.window = window;

    auto gi = [&](HalfInt m) {
        return static_cast<int>(std::find(sys.Mg.begin(), sys.Mg.end(), m) - sys.Mg.begin());
    };
    auto ei = [&](HalfInt m) {
        return static_cast<int>(std::find(sys.Me.begin(), sys.Me.end(), m) - sys.Me.begin());
    };
    std::vector<std::pair<HalfInt, HalfInt>> drive_keys;
    for (const auto& p : sys.pairs) {
        const double rate = p.gamma.si() * T / k::hbar;
        const int g = gi(p.Mg), e = ei(p.Me);
        if (rate != 0.0) {
            rhs.loss[e] += rate;
            // population returning to the ground sublevel lowers the scaled depletion
            rhs.decays.push_back({g, e, rate});
        }
        if (p.coupling_per_field != 0.0) {
            const double omega = p.coupling_per_field * E_ef.si() * T / (k::hbar * rhs.a);
            rhs.drives.push_back({g, e, omega, 0.5 * rate + rhs.dec});
            drive_keys.emplace_back(p.Mg, p.Me);
        }
    }

    const size_t n = rhs.ng + rhs.ne + 2 * rhs.drives.size();
    State y(n, 0.0);

    auto observe = [&](const State& st) {
        auto& d = out.diagnostics;
        const double a2 = rhs.a * rhs.a;
        double trace = 0.0;
        for (int g = 0; g < rhs.ng; ++g) {
            const double p = rhs.p0 - a2 * st[g];
            trace += p;
            d.min_population = std::min(d.min_population, p);
        }
        for (int e = 0; e < rhs.ne; ++e) {
            trace += a2 * st[rhs.ng + e];
            d.min_population = std::min(d.min_population, st[rhs.ng + e]);
        }
        d.max_trace_error = std::max(d.max_trace_error, std::abs(trace - 1.0));
        for (size_t c = 0; c < rhs.drives.size(); ++c) {
            const auto& dr = rhs.drives[c];
            const double re = st[rhs.ng + rhs.ne + 2 * c], im = st[rhs.ng + rhs.ne + 2 * c + 1];
            const double pg = rhs.p0 - a2 * st[dr.g];
            const double excess = (re * re + im * im) - pg * st[rhs.ng + dr.e];
            d.max_coherence_excess = std::max(d.max_coherence_excess, excess);
        }
    };

    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>());
    double s = 0.0;
    double ds = std::min(window, 0.01);
    const double s_end = window;
    const double min_step = 1e-14 * s_end;
    const long max_steps = 20'000'000;
    observe(y);
    while (s < s_end) {
        if (s + ds > s_end) ds = s_end - s;
        auto res = stepper.try_step(rhs, y, s, ds);
        if (res == ode::success) {
            ++out.diagnostics.accepted_steps;
            observe(y);
        } else {
            ++out.diagnostics.rejected_steps;
            if (ds < min_step)
                throw StiffnessError("Bloch integration step size underflow at t/T = " +
                                     std::to_string(s) + "; relax the tolerance (tol = " +
                                     std::to_string(tol) + ")");
        }
        if (out.diagnostics.accepted_steps + out.diagnostics.rejected_steps > max_steps)
            throw StiffnessError("Bloch integration exceeded the step budget; relax the tolerance");
    }

    const double a = rhs.a, a2 = a * a;
    for (int g = 0; g < rhs.ng; ++g) out.rho_gg[sys.Mg[g]] = rhs.p0 - a2 * y[g];
    for (int e = 0; e < rhs.ne; ++e) out.rho_ee[sys.Me[e]] = a2 * y[rhs.ng + e];
    for (size_t c = 0; c < rhs.drives.size(); ++c) {
        const size_t ir = rhs.ng + rhs.ne + 2 * c;
        out.rho_ge[drive_keys[c]] = std::complex<double>(a * y[ir], a * y[ir + 1]);
    }
    return out;
}

double total_excited_population(const DensityMatrixState& state) {
    double s = 0.0;
    for (const auto& [m, p] : state.rho_ee) s += p;
    return s;
}

}  // namespace nucleoq
