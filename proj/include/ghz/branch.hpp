#pragma once

// Everettian branch bookkeeping for the GHZ protocol.
//
// Stage t0: product of the GHZ state with ready observers.  Stage t1: each
// observer has measured locally; terms carry three per-observer records.
// Stage t2: the observers have compared data; each term carries a single
// joint record label and is deliberately not factorized per observer.
//
// Also the weak-law typicality experiment: exact binomial deviation measures
// and a seeded Monte Carlo sampler under Born weights or uniform branch
// counting.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ghz/errors.hpp"
#include "ghz/quantum.hpp"
#include "ghz/random.hpp"

namespace ghz {

enum class Observer { A, B, C };

inline char observer_letter(Observer o) {
    switch (o) {
        case Observer::A: return 'A';
        case Observer::B: return 'B';
        default: return 'C';
    }
}

enum class Stage { T0, T1, T2 };

inline std::string stage_name(Stage s) {
    switch (s) {
        case Stage::T0: return "t0";
        case Stage::T1: return "t1";
        default: return "t2";
    }
}

struct BranchTerm {
    std::array<std::string, 3> records;   // per-observer local record labels
    std::optional<std::string> shared;    // joint record label, t2 only
    Amplitude amplitude;

    double weight() const { return std::norm(amplitude); }
};

struct BranchState {
    Stage stage = Stage::T0;
    std::vector<BranchTerm> terms;

    double total_weight() const {
        double s = 0.0;
        for (const auto& t : terms) s += t.weight();
        return s;
    }

    bool is_normalized(double tol = kSumTol) const {
        return std::abs(total_weight() - 1.0) <= tol;
    }
};

// "A:+x"-style local record for one observer.
inline std::string local_record_label(Observer obs, int outcome, Axis basis) {
    std::string s;
    s += observer_letter(obs);
    s += ':';
    s += outcome > 0 ? '+' : '-';
    s += axis_letter(basis);
    return s;
}

// "(+x,+y,-y)"-style joint record shared by all observers at t2.
inline std::string joint_record_label(const SettingTriple& settings, const OutcomeTriple& o) {
    std::string s = "(";
    for (int j = 1; j <= 3; ++j) {
        s += o.party(j) > 0 ? '+' : '-';
        s += axis_letter(settings.party(j).axis());
        s += j < 3 ? "," : ")";
    }
    return s;
}

// The pre-measurement stage: GHZ state times ready observers, one term.
inline BranchState initial_state() {
    BranchState state;
    state.stage = Stage::T0;
    state.terms.push_back(BranchTerm{{"A:0", "B:0", "C:0"}, std::nullopt, Amplitude(1.0, 0.0)});
    return state;
}

// Unitary record formation for one canonical setting triple: returns the
// branch decompositions at t1 (local records only) and t2 (joint records).
// Both stages keep exactly the four terms of nonzero amplitude.
inline std::pair<BranchState, BranchState> evolve(const SettingTriple& settings) {
    if (!is_canonical_triple(settings))
        throw UnsupportedSettings("branch evolution is defined on the four canonical setting "
                                  "triples only");

    const PureState psi = ghz_state();
    BranchState t1{Stage::T1, {}};
    BranchState t2{Stage::T2, {}};
    for (int i = 0; i < 8; ++i) {
        const OutcomeTriple o = OutcomeTriple::from_index(i);
        const Amplitude amp = projection_amplitude(psi, settings, o);
        if (std::norm(amp) <= kAlgebraTol) continue;

        std::array<std::string, 3> records;
        for (int j = 1; j <= 3; ++j) {
            records[j - 1] = local_record_label(static_cast<Observer>(j - 1), o.party(j),
                                                settings.party(j).axis());
        }
        t1.terms.push_back(BranchTerm{records, std::nullopt, amp});
        t2.terms.push_back(BranchTerm{records, joint_record_label(settings, o), amp});
    }
    return {std::move(t1), std::move(t2)};
}

// Groups the terms by one observer's record; weights are summed squared
// amplitudes.  Order follows the first appearance of each record.
inline std::vector<std::pair<std::string, double>> relative_worlds(const BranchState& state,
                                                                   Observer observer) {
    std::vector<std::pair<std::string, double>> worlds;
    for (const auto& term : state.terms) {
        const std::string& record = term.records[static_cast<int>(observer)];
        auto it = std::find_if(worlds.begin(), worlds.end(),
                               [&](const auto& w) { return w.first == record; });
        if (it == worlds.end()) worlds.emplace_back(record, term.weight());
        else it->second += term.weight();
    }
    return worlds;
}

// ---------------------------------------------------------------------------
// Typicality (weak law of large numbers)

enum class MeasureKind { Born, BranchCount };
enum class TypicalityMethod { Exact, MonteCarlo };

inline std::string measure_kind_name(MeasureKind k) {
    return k == MeasureKind::Born ? "born" : "branch_count";
}

struct TypicalityResult {
    long long n = 0;
    double epsilon = 0.0;
    // Exact mode: the measure of {|k/n - p| > eps}.  Monte Carlo mode: the
    // 0/1 indicator of the run's own deviation |f - reference| > eps.
    double measure_of_deviation_set = 0.0;
    std::optional<double> empirical_frequency;
    std::optional<double> reference;  // Born weight of the tracked event
    MeasureKind measure_kind = MeasureKind::Born;
    TypicalityMethod method = TypicalityMethod::Exact;
    std::optional<std::uint64_t> seed;
    std::string generator;  // PRNG identity for Monte Carlo runs
};

namespace detail {

inline double log_binom_pmf(long long n, long long k, double p) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0) +
           static_cast<double>(k) * std::log(p) + static_cast<double>(n - k) * std::log1p(-p);
}

}  // namespace detail

// Exact binomial deviation measure for a tracked event of measure p repeated
// n times:  sum over {k : |k/n - p| > eps} of C(n,k) p^k (1-p)^(n-k),
// accumulated in log space.
inline TypicalityResult typicality_exact(double p, long long n, double eps) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParam("p must lie in [0, 1]");
    if (!(eps > 0.0)) throw InvalidParam("epsilon must be positive");
    if (n < 1) throw InvalidParam("n must be at least 1");
    if (n > 1'000'000) throw InvalidParam("exact mode supports n up to 10^6");

    auto deviant = [&](long long k) {
        return std::abs(static_cast<double>(k) / static_cast<double>(n) - p) > eps;
    };

    double measure = 0.0;
    if (p == 0.0 || p == 1.0) {
        const long long k_certain = p == 0.0 ? 0 : n;
        measure = deviant(k_certain) ? 1.0 : 0.0;
    } else {
        std::vector<double> log_terms;
        for (long long k = 0; k <= n; ++k)
            if (deviant(k)) log_terms.push_back(detail::log_binom_pmf(n, k, p));
        if (!log_terms.empty()) {
            const double m = *std::max_element(log_terms.begin(), log_terms.end());
            double s = 0.0;
            for (double t : log_terms) s += std::exp(t - m);
            measure = std::exp(m) * s;
        }
    }

    TypicalityResult result;
    result.n = n;
    result.epsilon = eps;
    result.measure_of_deviation_set = std::min(measure, 1.0);
    result.measure_kind = MeasureKind::Born;
    result.method = TypicalityMethod::Exact;
    return result;
}

// Monte Carlo repetition experiment over the realized t2 branches of `state`.
// Born mode draws branches with their squared-amplitude weights; branch-count
// mode draws uniformly over the distinct branches ("democracy" between them).
// The deviation reference is the Born weight of the tracked branch in both
// modes, which is exactly what makes the branch-count run drift visible.
inline TypicalityResult typicality_monte_carlo(const BranchState& state,
                                               const std::string& tracked_label, long long n,
                                               double eps, MeasureKind kind, std::uint64_t seed) {
    if (n < 1) throw InvalidParam("n must be at least 1");
    if (!(eps > 0.0)) throw InvalidParam("epsilon must be positive");
    if (state.terms.empty()) throw InvalidParam("branch state has no terms");
    if (!state.is_normalized())
        throw InvalidParam("branch state weights do not sum to 1");

    std::vector<double> weights;
    double born_reference = 0.0;
    std::optional<std::size_t> tracked_index;
    for (std::size_t i = 0; i < state.terms.size(); ++i) {
        const auto& term = state.terms[i];
        const std::string label = term.shared.value_or(term.records[0]);
        weights.push_back(kind == MeasureKind::Born ? term.weight()
                                                    : 1.0 / static_cast<double>(state.terms.size()));
        if (label == tracked_label) {
            tracked_index = i;
            born_reference = term.weight();
        }
    }

    std::vector<double> cumulative(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cumulative[i] = acc;
    }

    SplitMix64 rng(seed);
    long long hits = 0;
    for (long long rep = 0; rep < n; ++rep) {
        const double u = rng.next_double() * acc;
        std::size_t pick = static_cast<std::size_t>(
            std::lower_bound(cumulative.begin(), cumulative.end(), u,
                             [](double c, double v) { return c <= v; }) -
            cumulative.begin());
        if (pick >= weights.size()) pick = weights.size() - 1;  // u rounded up to acc
        if (tracked_index && pick == *tracked_index) ++hits;
    }

    const double frequency = static_cast<double>(hits) / static_cast<double>(n);

    TypicalityResult result;
    result.n = n;
    result.epsilon = eps;
    result.empirical_frequency = frequency;
    result.reference = born_reference;
    result.measure_of_deviation_set = std::abs(frequency - born_reference) > eps ? 1.0 : 0.0;
    result.measure_kind = kind;
    result.method = TypicalityMethod::MonteCarlo;
    result.seed = seed;
    result.generator = kGeneratorName;
    return result;
}

// Same experiment phrased over a canonical setting triple and a tracked
// outcome triple.
inline TypicalityResult typicality_monte_carlo(const SettingTriple& settings,
                                               const OutcomeTriple& tracked, long long n,
                                               double eps, MeasureKind kind, std::uint64_t seed) {
    const BranchState t2 = evolve(settings).second;
    return typicality_monte_carlo(t2, joint_record_label(settings, tracked), n, eps, kind, seed);
}

}  // namespace ghz
