#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ghz/logic.hpp"
#include "ghz/models.hpp"
#include "ghz/ontology.hpp"
#include "ghz/random.hpp"

using namespace ghz;

namespace {

std::vector<SettingTriple> canonical_list() {
    const auto canon = canonical_triples();
    return {canon.begin(), canon.end()};
}

std::set<std::array<double, 3>> angle_set(const WeightedSupport& s) {
    std::set<std::array<double, 3>> out;
    for (const auto& [beable, w] : s.atoms) out.insert(beable.angle_triple());
    return out;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("local response family") {
    CHECK(local_response(+1, 0.0, Axis::X) == 1.0);
    CHECK(local_response(-1, kPi, Axis::X) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(local_response(+1, kPi / 2, Axis::X) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(local_response(+1, kPi / 2, Axis::Y) == 1.0);
    CHECK(local_response(-1, -kPi / 2, Axis::Y) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(local_response(+1, 0.0, Axis::Y) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(local_response(0, 0.0, Axis::X), InvalidParam);
    CHECK_THROWS_AS(local_response(+1, 0.0, Axis::Z), UnsupportedSettings);

    SplitMix64 rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const double theta = (rng.next_double() - 0.5) * 2 * kPi;
        for (Axis basis : {Axis::X, Axis::Y}) {
            const double p = local_response(+1, theta, basis);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(std::abs(p + local_response(-1, theta, basis) - 1.0) <= 1e-15);
        }
    }
}

TEST_CASE("superdeterministic support atoms") {
    const SettingTriple xxx{Setting::x(), Setting::x(), Setting::x()};
    const SettingTriple xyy{Setting::x(), Setting::y(), Setting::y()};

    const WeightedSupport sx = superdet_support(xxx);
    REQUIRE(sx.atoms.size() == 4);
    for (const auto& [beable, w] : sx.atoms) CHECK(w == 0.25);
    CHECK(std::abs(sx.total_weight() - 1.0) <= 1e-15);
    CHECK(angle_set(sx) == std::set<std::array<double, 3>>{
                               {0.0, 0.0, kPi}, {0.0, kPi, 0.0}, {kPi, 0.0, 0.0}, {kPi, kPi, kPi}});

    const WeightedSupport sy = superdet_support(xyy);
    REQUIRE(sy.atoms.size() == 4);
    for (const auto& [beable, w] : sy.atoms) {
        const auto& theta = beable.angle_triple();
        CHECK((theta[0] == 0.0 || theta[0] == kPi));
        CHECK(std::abs(std::abs(theta[1]) - kPi / 2) <= 1e-15);
        CHECK(std::abs(std::abs(theta[2]) - kPi / 2) <= 1e-15);
        // sign triple parity +1 under the angle dictionary
        const int v1 = theta[0] == 0.0 ? +1 : -1;
        const int v2 = theta[1] > 0 ? +1 : -1;
        const int v3 = theta[2] > 0 ? +1 : -1;
        CHECK(v1 * v2 * v3 == +1);
    }

    CHECK_THROWS_AS(superdet_support(SettingTriple{Setting::y(), Setting::y(), Setting::y()}),
                    UnsupportedSettings);
    CHECK_THROWS_AS(superdet_support(SettingTriple{kPi / 6, 0.0, 0.0}), UnsupportedSettings);
}

TEST_CASE("superdeterministic model matches the Born oracle on all four triples") {
    const PureState psi = ghz_state();
    SuperdeterministicGHZModel model;
    for (const SettingTriple& s : canonical_list()) {
        const JointDistribution predicted = predict_joint(model, s, psi);
        const JointDistribution born = born_joint(psi, s);
        for (int i = 0; i < 8; ++i) CHECK(std::abs(predicted.probs[i] - born.probs[i]) <= 1e-12);
    }
}

TEST_CASE("superdeterministic atoms respond as point masses") {
    const PureState psi = ghz_state();
    SuperdeterministicGHZModel model;
    for (const SettingTriple& s : canonical_list()) {
        for (const auto& [lambda, w] : model.support(s, psi).atoms) {
            for (int j = 1; j <= 3; ++j) {
                const double p = model.party_response(j, +1, lambda, s.party(j), psi);
                CHECK((std::abs(p) <= 1e-12 || std::abs(p - 1.0) <= 1e-12));
            }
        }
    }
}

TEST_CASE("superdeterministic atom (0,0,pi) under xxx derives A = (+1,+1,-1)") {
    const PureState psi = ghz_state();
    SuperdeterministicGHZModel model;
    const Beable lambda = Beable::angles("probe", 0.0, 0.0, kPi);
    const Setting x = Setting::x();
    const double a1 = model.party_response(1, +1, lambda, x, psi) -
                      model.party_response(1, -1, lambda, x, psi);
    const double a2 = model.party_response(2, +1, lambda, x, psi) -
                      model.party_response(2, -1, lambda, x, psi);
    const double a3 = model.party_response(3, +1, lambda, x, psi) -
                      model.party_response(3, -1, lambda, x, psi);
    CHECK(a1 == doctest::Approx(+1.0).epsilon(1e-15));
    CHECK(a2 == doctest::Approx(+1.0).epsilon(1e-15));
    CHECK(a3 == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("ontic-state model support and responses") {
    const PureState psi = ghz_state();
    BeltramettiBugajskiModel model(psi);
    const SettingTriple xxx{Setting::x(), Setting::x(), Setting::x()};

    const WeightedSupport s = model.support(xxx, psi);
    REQUIRE(s.atoms.size() == 1);
    CHECK(s.atoms[0].second == 1.0);

    const Beable& lambda = s.atoms[0].first;
    CHECK(std::abs(model.joint_response(OutcomeTriple(+1, -1, +1), lambda, xxx, psi) - 0.25) <=
          1e-12);
    CHECK(std::abs(model.joint_response(OutcomeTriple(+1, +1, +1), lambda, xxx, psi)) <= 1e-12);

    CHECK_FALSE(model.declares_factorization());
    CHECK_THROWS_AS(model.party_response(1, +1, lambda, Setting::x(), psi), PreconditionFailed);
}

TEST_CASE("local-deterministic model realizes its assignment") {
    const PureState psi = ghz_state();
    const SettingTriple xyy{Setting::x(), Setting::y(), Setting::y()};

    LocalDeterministicModel model(ValueAssignment{});  // all +1
    const JointDistribution d = predict_joint(model, xyy, psi);
    CHECK(d.prob(OutcomeTriple(+1, +1, +1)) == 1.0);

    const auto settings = canonical_list();
    CHECK(audit_factorizability(model, settings, psi).pass);
    CHECK(audit_setting_independence(model, settings, psi).pass);
    CHECK_FALSE(quantum_agreement(model, settings, psi).pass);
}

TEST_CASE("no local-deterministic assignment agrees with quantum mechanics") {
    const PureState psi = ghz_state();
    const auto settings = canonical_list();
    for (int idx = 0; idx < 64; ++idx) {
        LocalDeterministicModel model(ValueAssignment::from_index(idx));
        CHECK_FALSE(quantum_agreement(model, settings, psi).pass);
        CHECK(audit_factorizability(model, settings, psi).pass);
        CHECK(audit_setting_independence(model, settings, psi).pass);
    }
}

TEST_CASE("the audit matrix reproduces the expected verdict rows") {
    const PureState psi = ghz_state();

    const AuditReport bb = run_audit_battery(BeltramettiBugajskiModel{psi}, psi);
    CHECK(bb.setting_independence.pass);
    CHECK_FALSE(bb.factorizability.pass);
    CHECK(bb.quantum_agreement.pass);
    CHECK(bb.nonsignaling.pass);

    const AuditReport sd = run_audit_battery(SuperdeterministicGHZModel{}, psi);
    CHECK(sd.factorizability.pass);
    CHECK_FALSE(sd.setting_independence.pass);
    CHECK(sd.quantum_agreement.pass);
    CHECK(sd.nonsignaling.pass);

    const AuditReport ld =
        run_audit_battery(LocalDeterministicModel{ValueAssignment::from_index(5)}, psi);
    CHECK(ld.factorizability.pass);
    CHECK(ld.setting_independence.pass);
    CHECK_FALSE(ld.quantum_agreement.pass);

    for (const AuditReport* r : {&bb, &sd, &ld}) CHECK(r->meta_theorem_holds());
}

TEST_CASE("factory helpers construct the registered models") {
    const PureState psi = ghz_state();
    CHECK(beltrametti_bugajski(psi)->name() == "beltrametti-bugajski");
    CHECK(superdeterministic_ghz()->name() == "superdeterministic-ghz");
    CHECK(local_deterministic(ValueAssignment::from_label("++-+++"))->name() ==
          "local-deterministic:++-+++");
}

}  // TEST_SUITE
