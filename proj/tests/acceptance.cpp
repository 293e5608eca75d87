// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion.  Exits non-zero if any fail.

#include <cmath>
#include <cstdio>
#include <vector>

#include "ghz/branch.hpp"
#include "ghz/logic.hpp"
#include "ghz/models.hpp"
#include "ghz/ontology.hpp"
#include "ghz/quantum.hpp"

using namespace ghz;

namespace {

int failures = 0;

void criterion(int num, const char* name, bool pass) {
    std::printf("criterion %2d [%s] %s\n", num, pass ? "PASS" : "FAIL", name);
    if (!pass) ++failures;
}

// Pinned replay value for the seed-42 Born-mode run below (splitmix64,
// n = 10^4, settings xxx, tracked outcome ++-).
constexpr double kRecordedSeed42Frequency = 0.2433;  // 2433 hits in 10^4 draws

}  // namespace

int main() {
    const PureState psi = ghz_state();
    const auto canon = canonical_triples();
    const std::vector<SettingTriple> triples(canon.begin(), canon.end());

    // 1. The four Pauli-product identities with eigenvalues (-1,+1,+1,+1).
    {
        bool pass = true;
        for (const ParityConstraint& c : ghz_constraints()) {
            const PureState out = apply_pauli_product(psi, c.bases);
            for (int i = 0; i < 8; ++i)
                pass = pass &&
                       std::abs(out.amps[i] - static_cast<double>(c.target) * psi.amps[i]) < 1e-12;
        }
        criterion(1, "pauli-product eigenvalues (-1,+1,+1,+1), componentwise residual < 1e-12",
                  pass);
    }

    // 2. Exhaustive impossibility: 0 of 64 satisfy all four constraints; the 8
    //    satisfying the three +1 constraints all force A1 A2 A3 = +1.
    {
        const EnumerationSummary s = enumerate_assignments();
        bool pass = s.total == 64 && s.all_four_count == 0 && s.joint_123_count == 8;
        int joint_seen = 0;
        for (const EnumerationRow& row : s.witnesses) {
            if (!row.joint_123()) continue;
            ++joint_seen;
            pass = pass && row.assignment.a[0] * row.assignment.a[1] * row.assignment.a[2] == +1;
        }
        pass = pass && joint_seen == 8;
        criterion(2, "enumeration: 0/64 satisfy all four, 8 satisfy the +1 triple with A1A2A3=+1",
                  pass);
    }

    // 3. The superdeterministic model reproduces the Born distribution on all
    //    four canonical triples, per entry.
    {
        SuperdeterministicGHZModel model;
        bool pass = true;
        for (const SettingTriple& s : triples) {
            const JointDistribution predicted = predict_joint(model, s, psi);
            const JointDistribution born = born_joint(psi, s);
            for (int i = 0; i < 8; ++i)
                pass = pass && std::abs(predicted.probs[i] - born.probs[i]) < 1e-12;
        }
        criterion(3, "superdeterministic model matches born_joint, per-entry residual < 1e-12",
                  pass);
    }

    // 4 & 5. The audit matrix rows and the meta-theorem disjunction for every
    //        bundled model (bb, superdet, all 64 local-deterministic).
    {
        const AuditReport bb = run_audit_battery(BeltramettiBugajskiModel{psi}, psi);
        const AuditReport sd = run_audit_battery(SuperdeterministicGHZModel{}, psi);
        bool matrix = bb.setting_independence.pass && !bb.factorizability.pass &&
                      sd.factorizability.pass && !sd.setting_independence.pass;
        bool meta = bb.meta_theorem_holds() && sd.meta_theorem_holds();
        for (int idx = 0; idx < 64; ++idx) {
            const AuditReport ld =
                run_audit_battery(LocalDeterministicModel{ValueAssignment::from_index(idx)}, psi);
            matrix = matrix && ld.factorizability.pass && ld.setting_independence.pass &&
                     !ld.quantum_agreement.pass;
            meta = meta && ld.meta_theorem_holds();
        }
        criterion(4, "audit matrix: bb {si PASS, fact FAIL}, superdet {fact PASS, si FAIL}, "
                     "localdet x64 {fact PASS, si PASS, qa FAIL}",
                  matrix);
        criterion(5, "meta-theorem: every bundled model fails at least one of "
                     "{quantum agreement, factorizability, setting independence}",
                  meta);
    }

    // 6. Forced determinism of the superdeterministic model: 0/1 responses and
    //    +-1 derived local values matching each atom's own parity target.
    {
        SuperdeterministicGHZModel model;
        const int target_parity[4] = {-1, +1, +1, +1};
        bool pass = true;
        for (int t = 0; t < 4; ++t) {
            for (const auto& [lambda, weight] : model.support(triples[t], psi).atoms) {
                int parity = 1;
                for (int j = 1; j <= 3; ++j) {
                    const Setting& local = triples[t].party(j);
                    const double p_plus = model.party_response(j, +1, lambda, local, psi);
                    const double p_minus = model.party_response(j, -1, lambda, local, psi);
                    for (double p : {p_plus, p_minus})
                        pass = pass && std::min(std::abs(p), std::abs(p - 1.0)) <= 1e-9;
                    const double value = p_plus - p_minus;
                    pass = pass && std::abs(std::abs(value) - 1.0) <= 1e-9;
                    parity *= value > 0.0 ? 1 : -1;
                }
                pass = pass && parity == target_parity[t];
            }
        }
        pass = pass && derive_determinism(model, psi).pass;
        criterion(6, "determinism: superdet responses in {0,1}, derived values +-1 with the "
                     "triple's parity",
                  pass);
    }

    // 7. Non-signaling: commuting mean invariance across distinct sites, and
    //    uniform single-party marginals of the quantum prediction.
    {
        bool pass = true;
        PureState up;
        up.amps[0] = Amplitude(1.0, 0.0);
        SplitMix64 rng(1234);
        PureState random;
        for (auto& amp : random.amps)
            amp = Amplitude(rng.next_double() - 0.5, rng.next_double() - 0.5);
        {
            const double n = random.norm();
            for (auto& amp : random.amps) amp /= n;
        }
        const Axis axes[3] = {Axis::X, Axis::Y, Axis::Z};
        const double dts[5] = {0.37, 1.0, -0.6, 2.25, kPi / 3.0};
        const PureState* sweep_states[3] = {&psi, &up, &random};
        for (const PureState* state : sweep_states)
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 3; ++b) {
                    if (a == b) continue;
                    for (Axis ax_a : axes)
                        for (Axis ax_b : axes)
                            for (double dt : dts)
                                pass = pass &&
                                       commuting_mean_invariance(*state, a, ax_a, b, ax_b, dt) <
                                           1e-12;
                }
        for (const SettingTriple& s : triples) {
            const JointDistribution d = born_joint(psi, s);
            for (int party = 1; party <= 3; ++party) {
                const auto m = marginal(d, party);
                pass = pass && std::abs(m[0] - 0.5) <= 1e-9 && std::abs(m[1] - 0.5) <= 1e-9;
            }
        }
        criterion(7, "non-signaling: distinct-site mean invariance < 1e-12, all marginals "
                     "(1/2, 1/2)",
                  pass);
    }

    // 8. Branch structure: four quarter-weight t2 worlds with the right
    //    parity; two half-weight t1 worlds per observer, settings-independent.
    {
        const int target_parity[4] = {-1, +1, +1, +1};
        bool pass = true;
        for (int t = 0; t < 4; ++t) {
            const auto [t1, t2] = evolve(triples[t]);
            pass = pass && t2.terms.size() == 4;
            for (const BranchTerm& term : t2.terms) {
                pass = pass && term.shared.has_value() &&
                       std::abs(term.weight() - 0.25) <= 1e-9;
                int parity = 1;
                for (int pos : {1, 4, 7}) parity *= (*term.shared)[pos] == '+' ? 1 : -1;
                pass = pass && parity == target_parity[t];
            }
            for (Observer obs : {Observer::A, Observer::B, Observer::C}) {
                const auto worlds = relative_worlds(t1, obs);
                pass = pass && worlds.size() == 2 && std::abs(worlds[0].second - 0.5) <= 1e-9 &&
                       std::abs(worlds[1].second - 0.5) <= 1e-9;
            }
        }
        criterion(8, "branch structure: 4 joint t2 worlds at 1/4 with correct parity; 2 relative "
                     "t1 worlds at 1/2",
                  pass);
    }

    // 9. Weak law: the exact deviation measure strictly decreases along the
    //    grid and the Monte Carlo replay is bit-exact.
    {
        bool pass = true;
        double previous = 2.0;
        for (long long n : {10LL, 100LL, 1000LL, 10000LL}) {
            const double m = typicality_exact(0.5, n, 0.1).measure_of_deviation_set;
            pass = pass && m < previous;
            previous = m;
        }
        pass = pass && previous < 1e-3;

        const SettingTriple xxx = triples[0];
        const OutcomeTriple tracked(+1, +1, -1);
        const TypicalityResult first =
            typicality_monte_carlo(xxx, tracked, 10000, 0.02, MeasureKind::Born, 42);
        const TypicalityResult second =
            typicality_monte_carlo(xxx, tracked, 10000, 0.02, MeasureKind::Born, 42);
        pass = pass && first.empirical_frequency.has_value() &&
               *first.empirical_frequency == *second.empirical_frequency &&
               *first.empirical_frequency == kRecordedSeed42Frequency &&
               std::abs(*first.empirical_frequency - 0.25) <= 0.02;
        criterion(9, "weak law: exact measure strictly decreasing, n=10^4 value < 1e-3, seed-42 "
                     "replay bit-exact",
                  pass);
    }

    // 10. The Born computation agrees with the closed form on the 64-point
    //     equatorial grid.
    {
        const double angles[4] = {-kPi / 2.0, 0.0, kPi / 2.0, kPi};
        bool pass = true;
        for (double a : angles)
            for (double b : angles)
                for (double c : angles) {
                    const SettingTriple s{a, b, c};
                    const JointDistribution born = born_joint(psi, s);
                    const JointDistribution closed = closed_form_ghz(s);
                    for (int i = 0; i < 8; ++i)
                        pass = pass && std::abs(born.probs[i] - closed.probs[i]) <= 1e-12;
                }
        criterion(10, "born_joint equals closed_form_ghz on the 64-point grid within 1e-12", pass);
    }

    if (failures == 0) std::printf("acceptance: all 10 criteria passed\n");
    else std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
