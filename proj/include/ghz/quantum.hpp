#pragma once

// Exact three-qubit machinery for the GHZ experiment: the state vector, Pauli
// products, Born-rule joint distributions for equatorial analyzer settings,
// and the local-commutativity mean-invariance check.
//
// Conventions (fixed so amplitude vectors are bit-reproducible):
//   * Product basis labels (s1,s2,s3) in {+z,-z}^3, ordered lexicographically
//     with +z before -z.  Index bit layout: particle 1 is the most significant
//     bit, +z = 0.  So index 0 = |+z,+z,+z> and index 7 = |-z,-z,-z>.
//   * Equatorial eigenvectors |a_phi> = (|+z> + a e^{i phi} |-z>)/sqrt(2) for
//     outcome a = +-1.  The global phase is a convention; every quantity
//     computed here is insensitive to it.
//   * Setting angles are radians in (-pi, pi]; x-hat is phi = 0, y-hat is
//     phi = pi/2.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>

#include "ghz/errors.hpp"

namespace ghz {

using Amplitude = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Tolerances used throughout: algebraic identities on exact states get
// kAlgebraTol, summed quantities (normalization, marginals) get kSumTol.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kSumTol = 1e-9;

enum class Axis { X, Y, Z };

inline char axis_letter(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        default: return 'z';
    }
}

// Maps phi into (-pi, pi].
inline double normalize_angle(double phi) {
    double r = std::remainder(phi, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

// One equatorial analyzer direction.
struct Setting {
    double phi = 0.0;

    Setting() = default;
    explicit Setting(double angle) : phi(normalize_angle(angle)) {}

    static Setting x() { return Setting(0.0); }
    static Setting y() { return Setting(kPi / 2.0); }

    bool is_x() const { return std::abs(phi) <= kAlgebraTol; }
    bool is_y() const { return std::abs(phi - kPi / 2.0) <= kAlgebraTol; }

    // The measurement basis when the setting is canonical; throws otherwise.
    Axis axis() const {
        if (is_x()) return Axis::X;
        if (is_y()) return Axis::Y;
        throw UnsupportedSettings("setting angle " + std::to_string(phi) +
                                  " is neither x (0) nor y (pi/2)");
    }

    bool is_canonical() const { return is_x() || is_y(); }

    friend bool operator==(const Setting& a, const Setting& b) { return a.phi == b.phi; }
};

struct SettingTriple {
    Setting s1, s2, s3;

    SettingTriple() = default;
    SettingTriple(Setting a, Setting b, Setting c) : s1(a), s2(b), s3(c) {}
    SettingTriple(double a, double b, double c) : s1(a), s2(b), s3(c) {}

    const Setting& party(int j) const {
        switch (j) {
            case 1: return s1;
            case 2: return s2;
            case 3: return s3;
            default: throw InvalidParam("party index must be 1, 2 or 3");
        }
    }

    double phase_sum() const { return s1.phi + s2.phi + s3.phi; }

    bool is_canonical() const {
        return s1.is_canonical() && s2.is_canonical() && s3.is_canonical();
    }

    // Compact label such as "xxx" or "xyy" for canonical triples.
    std::string label() const {
        std::string out;
        for (int j = 1; j <= 3; ++j) out += axis_letter(party(j).axis());
        return out;
    }

    friend bool operator==(const SettingTriple& a, const SettingTriple& b) {
        return a.s1 == b.s1 && a.s2 == b.s2 && a.s3 == b.s3;
    }
};

// The four setting triples appearing in the GHZ parity identities, in the
// fixed order (x,x,x), (x,y,y), (y,x,y), (y,y,x).
inline std::array<SettingTriple, 4> canonical_triples() {
    const Setting x = Setting::x();
    const Setting y = Setting::y();
    return {SettingTriple{x, x, x}, SettingTriple{x, y, y},
            SettingTriple{y, x, y}, SettingTriple{y, y, x}};
}

// True for exactly the four triples above (not for e.g. yyy, whose branch
// structure is eight-fold and outside every canonical-triple contract).
inline bool is_canonical_triple(const SettingTriple& s) {
    if (!s.is_canonical()) return false;
    for (const SettingTriple& t : canonical_triples())
        if (s.label() == t.label()) return true;
    return false;
}

struct OutcomeTriple {
    int a = +1, b = +1, c = +1;  // each exactly +-1

    OutcomeTriple() = default;
    OutcomeTriple(int a_, int b_, int c_) : a(a_), b(b_), c(c_) {
        if (std::abs(a) != 1 || std::abs(b) != 1 || std::abs(c) != 1)
            throw InvalidParam("outcomes must be +1 or -1");
    }

    int party(int j) const {
        switch (j) {
            case 1: return a;
            case 2: return b;
            case 3: return c;
            default: throw InvalidParam("party index must be 1, 2 or 3");
        }
    }

    int parity() const { return a * b * c; }

    // Index in the fixed enumeration order: +1 before -1, party 1 most
    // significant.  (+,+,+) -> 0, (-,-,-) -> 7.
    int index() const { return ((a < 0) << 2) | ((b < 0) << 1) | (c < 0); }

    static OutcomeTriple from_index(int i) {
        return OutcomeTriple((i & 4) ? -1 : +1, (i & 2) ? -1 : +1, (i & 1) ? -1 : +1);
    }

    std::string label() const {
        auto sign = [](int v) { return v > 0 ? '+' : '-'; };
        return {sign(a), sign(b), sign(c)};
    }

    friend bool operator==(const OutcomeTriple& l, const OutcomeTriple& r) {
        return l.a == r.a && l.b == r.b && l.c == r.c;
    }
};

inline std::array<OutcomeTriple, 8> all_outcomes() {
    std::array<OutcomeTriple, 8> out;
    for (int i = 0; i < 8; ++i) out[i] = OutcomeTriple::from_index(i);
    return out;
}

// Normalized 8-component state over the three-qubit z product basis.
struct PureState {
    std::array<Amplitude, 8> amps{};

    double norm_sq() const {
        double s = 0.0;
        for (const auto& amp : amps) s += std::norm(amp);
        return s;
    }

    double norm() const { return std::sqrt(norm_sq()); }

    bool is_normalized(double tol = kAlgebraTol) const {
        for (const auto& amp : amps)
            if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) return false;
        return std::abs(norm() - 1.0) <= tol;
    }

    friend bool operator==(const PureState& a, const PureState& b) {
        return a.amps == b.amps;
    }
};

// Probability over the 8 outcome triples, indexed by OutcomeTriple::index().
struct JointDistribution {
    std::array<double, 8> probs{};

    double prob(const OutcomeTriple& o) const { return probs[o.index()]; }

    // Clamps the -1e-12-size negative dust allowed internally; use for output.
    double prob_clamped(const OutcomeTriple& o) const {
        return std::max(0.0, probs[o.index()]);
    }

    double sum() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }

    bool is_valid(double entry_tol = kAlgebraTol, double sum_tol = kSumTol) const {
        for (double p : probs)
            if (!(p >= -entry_tol && p <= 1.0 + entry_tol)) return false;
        return std::abs(sum() - 1.0) <= sum_tol;
    }

    static JointDistribution point_mass(const OutcomeTriple& o) {
        JointDistribution d;
        d.probs[o.index()] = 1.0;
        return d;
    }
};

// ---------------------------------------------------------------------------
// Operations

// (|+z,+z,+z> - |-z,-z,-z>)/sqrt(2)
inline PureState ghz_state() {
    PureState s;
    const double r = 1.0 / std::sqrt(2.0);
    s.amps[0] = Amplitude(r, 0.0);
    s.amps[7] = Amplitude(-r, 0.0);
    return s;
}

// sigma_a |s> on one site of a basis vector: returns (new bit, phase).
// Bit convention: 0 = +z, 1 = -z.
inline std::pair<int, Amplitude> pauli_on_bit(Axis axis, int bit) {
    switch (axis) {
        case Axis::X: return {bit ^ 1, Amplitude(1.0, 0.0)};
        case Axis::Y: return {bit ^ 1, bit == 0 ? Amplitude(0.0, 1.0) : Amplitude(0.0, -1.0)};
        default:      return {bit, bit == 0 ? Amplitude(1.0, 0.0) : Amplitude(-1.0, 0.0)};
    }
}

// Applies sigma_axis on one particle (1..3), identity on the others.
inline PureState apply_single_site_pauli(const PureState& state, int site, Axis axis) {
    if (site < 1 || site > 3) throw InvalidParam("site must be 1, 2 or 3");
    const int shift = 3 - site;  // particle 1 occupies the most significant bit
    PureState out;
    for (int i = 0; i < 8; ++i) {
        const int bit = (i >> shift) & 1;
        auto [nb, phase] = pauli_on_bit(axis, bit);
        const int j = (i & ~(1 << shift)) | (nb << shift);
        out.amps[j] += phase * state.amps[i];
    }
    return out;
}

// (sigma_a1 x sigma_a2 x sigma_a3) |state>
inline PureState apply_pauli_product(const PureState& state, const std::array<Axis, 3>& axes) {
    PureState out = state;
    for (int j = 1; j <= 3; ++j) out = apply_single_site_pauli(out, j, axes[j - 1]);
    return out;
}

// <a_phi1, b_phi2, c_phi3 | state> in the equatorial eigenbasis convention
// above.  Per-site bra coefficients: <a_phi|+z> = 1/sqrt(2),
// <a_phi|-z> = a e^{-i phi}/sqrt(2).
inline Amplitude projection_amplitude(const PureState& state, const SettingTriple& settings,
                                      const OutcomeTriple& outcome) {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<std::array<Amplitude, 2>, 3> bra;  // [party][bit]
    for (int j = 1; j <= 3; ++j) {
        const double phi = settings.party(j).phi;
        bra[j - 1][0] = Amplitude(r, 0.0);
        bra[j - 1][1] = static_cast<double>(outcome.party(j)) * std::polar(r, -phi);
    }
    Amplitude acc(0.0, 0.0);
    for (int i = 0; i < 8; ++i) {
        const Amplitude coeff = bra[0][(i >> 2) & 1] * bra[1][(i >> 1) & 1] * bra[2][i & 1];
        acc += coeff * state.amps[i];
    }
    return acc;
}

// Born-rule joint distribution |<a_phi1, b_phi2, c_phi3|state>|^2.
inline JointDistribution born_joint(const PureState& state, const SettingTriple& settings) {
    JointDistribution d;
    for (int i = 0; i < 8; ++i)
        d.probs[i] = std::norm(projection_amplitude(state, settings, OutcomeTriple::from_index(i)));
    return d;
}

// Closed form for the GHZ state on the equatorial plane:
//   P(a,b,c) = (1 - abc cos(phi1 + phi2 + phi3)) / 8.
// Kept as an independent cross-check oracle for born_joint; not used by it.
inline JointDistribution closed_form_ghz(const SettingTriple& settings) {
    JointDistribution d;
    const double c = std::cos(settings.phase_sum());
    for (int i = 0; i < 8; ++i) {
        const OutcomeTriple o = OutcomeTriple::from_index(i);
        d.probs[i] = (1.0 - static_cast<double>(o.parity()) * c) / 8.0;
    }
    return d;
}

// Single-party marginal (P(+1), P(-1)) obtained by summing out the other two.
inline std::array<double, 2> marginal(const JointDistribution& dist, int party) {
    if (party < 1 || party > 3) throw InvalidParam("party must be 1, 2 or 3");
    std::array<double, 2> m{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const OutcomeTriple o = OutcomeTriple::from_index(i);
        m[o.party(party) > 0 ? 0 : 1] += dist.probs[i];
    }
    return m;
}

// Real expectation <state| sigma_axis(site) |state>.
inline double pauli_expectation(const PureState& state, int site, Axis axis) {
    const PureState applied = apply_single_site_pauli(state, site, axis);
    Amplitude acc(0.0, 0.0);
    for (int i = 0; i < 8; ++i) acc += std::conj(state.amps[i]) * applied.amps[i];
    return acc.real();
}

// |<O_A> after e^{-i dt O_B} minus <O_A> before|, with O_A, O_B single-site
// Paulis embedded by tensoring with identity.  Zero for distinct sites: the
// operators commute.  Uses the closed form e^{-i dt sigma} =
// cos(dt) I - i sin(dt) sigma, exact for any Pauli.
inline double commuting_mean_invariance(const PureState& state, int site_a, Axis axis_a,
                                        int site_b, Axis axis_b, double dt) {
    const double before = pauli_expectation(state, site_a, axis_a);

    const PureState rotated_part = apply_single_site_pauli(state, site_b, axis_b);
    PureState evolved;
    const Amplitude cos_dt(std::cos(dt), 0.0);
    const Amplitude minus_i_sin_dt(0.0, -std::sin(dt));
    for (int i = 0; i < 8; ++i)
        evolved.amps[i] = cos_dt * state.amps[i] + minus_i_sin_dt * rotated_part.amps[i];

    const double after = pauli_expectation(evolved, site_a, axis_a);
    return std::abs(after - before);
}

}  // namespace ghz
