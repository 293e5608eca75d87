#pragma once

// The three bundled ontological models:
//   * Beltrametti-Bugajski: the quantum state itself as the single beable.
//   * The superdeterministic GHZ model: four angle-triple atoms per canonical
//     setting triple, factorized cosine/sine responses.
//   * Local-deterministic assignment models: one settings-independent atom
//     whose responses realize a fixed A_j/B_j value table.

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ghz/errors.hpp"
#include "ghz/ontology.hpp"
#include "ghz/logic.hpp"
#include "ghz/quantum.hpp"

namespace ghz {

// P_j(alpha | theta, basis): (1 + alpha cos theta)/2 along x,
// (1 + alpha sin theta)/2 along y.
inline double local_response(int alpha, double theta, Axis basis) {
    if (alpha != 1 && alpha != -1) throw InvalidParam("outcome must be +1 or -1");
    switch (basis) {
        case Axis::X: return (1.0 + alpha * std::cos(theta)) / 2.0;
        case Axis::Y: return (1.0 + alpha * std::sin(theta)) / 2.0;
        default: throw UnsupportedSettings("local response is defined for x and y only");
    }
}

// The four-atom support of the superdeterministic model: sign triples
// (v1,v2,v3) with v1 v2 v3 = -1 for (x,x,x) and +1 for the other three
// canonical triples, mapped to angles by +x -> 0, -x -> pi, +y -> pi/2,
// -y -> -pi/2.  Defined only on the four canonical triples.
inline WeightedSupport superdet_support(const SettingTriple& settings) {
    if (!is_canonical_triple(settings))
        throw UnsupportedSettings("the superdeterministic model is defined only on xxx, xyy, "
                                  "yxy and yyx");
    std::array<Axis, 3> bases{};
    for (int j = 1; j <= 3; ++j) bases[j - 1] = settings.party(j).axis();
    const int required_parity =
        (bases[0] == Axis::X && bases[1] == Axis::X && bases[2] == Axis::X) ? -1 : +1;

    auto angle_of = [](int v, Axis basis) {
        if (basis == Axis::X) return v > 0 ? 0.0 : kPi;
        return v > 0 ? kPi / 2.0 : -kPi / 2.0;
    };

    WeightedSupport support;
    for (int mask = 0; mask < 8; ++mask) {
        const int v[3] = {(mask & 4) ? -1 : +1, (mask & 2) ? -1 : +1, (mask & 1) ? -1 : +1};
        if (v[0] * v[1] * v[2] != required_parity) continue;
        std::string id = "(";
        std::array<double, 3> theta{};
        for (int j = 0; j < 3; ++j) {
            theta[j] = angle_of(v[j], bases[j]);
            id += (v[j] > 0 ? '+' : '-');
            id += axis_letter(bases[j]);
            id += j < 2 ? "," : ")";
        }
        support.atoms.emplace_back(Beable::angles(id, theta[0], theta[1], theta[2]), 0.25);
    }
    return support;
}

// Ontic quantum state model: a single beable, the state itself, for every
// settings choice; the joint response is the Born weight of that state.
// Exposes only the joint response (the Born rule is inherently joint), so the
// factorizability audit derives the marginals itself.
class BeltramettiBugajskiModel final : public OntologicalModel {
public:
    explicit BeltramettiBugajskiModel(const PureState& psi) : psi_(psi) {
        if (!psi.is_normalized())
            throw PreconditionFailed("Beltrametti-Bugajski model requires a normalized state");
    }

    std::string name() const override { return "beltrametti-bugajski"; }

    WeightedSupport support(const SettingTriple&, const PureState&) const override {
        WeightedSupport s;
        s.atoms.emplace_back(Beable::state("theta=psi", psi_), 1.0);
        return s;
    }

    double joint_response(const OutcomeTriple& outcome, const Beable& lambda,
                          const SettingTriple& settings, const PureState&) const override {
        return born_joint(lambda.state_ref(), settings).prob(outcome);
    }

private:
    PureState psi_;
};

// The explicit superdeterministic GHZ model: setting-dependent angle atoms,
// factorized local responses.
class SuperdeterministicGHZModel final : public OntologicalModel {
public:
    std::string name() const override { return "superdeterministic-ghz"; }

    WeightedSupport support(const SettingTriple& settings, const PureState&) const override {
        return superdet_support(settings);
    }

    bool declares_factorization() const override { return true; }

    double party_response(int party, int outcome, const Beable& lambda, const Setting& setting,
                          const PureState&) const override {
        if (party < 1 || party > 3) throw InvalidParam("party must be 1, 2 or 3");
        return local_response(outcome, lambda.angle_triple()[party - 1], setting.axis());
    }

    double joint_response(const OutcomeTriple& outcome, const Beable& lambda,
                          const SettingTriple& settings, const PureState& psi) const override {
        return product_joint_response(outcome, lambda, settings, psi);
    }
};

// A candidate local-deterministic theory: one settings-independent beable and
// 0/1 responses read off a fixed value assignment.
class LocalDeterministicModel final : public OntologicalModel {
public:
    explicit LocalDeterministicModel(const ValueAssignment& v) : assignment_(v) {}

    std::string name() const override { return "local-deterministic:" + assignment_.label(); }

    const ValueAssignment& assignment() const { return assignment_; }

    WeightedSupport support(const SettingTriple&, const PureState&) const override {
        WeightedSupport s;
        s.atoms.emplace_back(Beable::token("lambda0"), 1.0);
        return s;
    }

    bool declares_factorization() const override { return true; }

    double party_response(int party, int outcome, const Beable&, const Setting& setting,
                          const PureState&) const override {
        return outcome == assignment_.value(party, setting.axis()) ? 1.0 : 0.0;
    }

    double joint_response(const OutcomeTriple& outcome, const Beable& lambda,
                          const SettingTriple& settings, const PureState& psi) const override {
        return product_joint_response(outcome, lambda, settings, psi);
    }

private:
    ValueAssignment assignment_;
};

inline std::unique_ptr<OntologicalModel> beltrametti_bugajski(const PureState& psi) {
    return std::make_unique<BeltramettiBugajskiModel>(psi);
}

inline std::unique_ptr<OntologicalModel> superdeterministic_ghz() {
    return std::make_unique<SuperdeterministicGHZModel>();
}

inline std::unique_ptr<OntologicalModel> local_deterministic(const ValueAssignment& v) {
    return std::make_unique<LocalDeterministicModel>(v);
}

}  // namespace ghz
