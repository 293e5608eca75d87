#pragma once

// Declarative ontological model documents (JSON).  A document lists the
// setting triples the model covers, per-triple beable atoms as angle triples
// with weights, and the party response: either the named cosine family
// (P(+1) = (1 + cos theta)/2 along x, (1 + sin theta)/2 along y) or an
// explicit per-(party, basis, angle) table of P(+1).
//
// Example:
//   {
//     "name": "my-model",
//     "settings_triples": ["xxx", "xyy", "yxy", "yyx"],
//     "support": {
//       "xxx": [{"theta": [0.0, 0.0, 3.141592653589793], "weight": 0.25}, ...],
//       ...
//     },
//     "response_family": "cosine"
//   }
// or, instead of "response_family":
//   "response_table": [
//     {"party": 1, "basis": "x", "theta": 0.0, "p_plus": 1.0}, ...
//   ]

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ghz/errors.hpp"
#include "ghz/models.hpp"
#include "ghz/ontology.hpp"

namespace ghz {

namespace detail {

struct ResponseTableEntry {
    int party;
    Axis basis;
    double theta;
    double p_plus;
};

inline SettingTriple parse_triple_label(const std::string& label, const std::string& where) {
    if (label.size() != 3)
        throw MalformedModel(where + ": setting label '" + label + "' must have 3 characters");
    Setting s[3];
    for (int j = 0; j < 3; ++j) {
        if (label[j] == 'x') s[j] = Setting::x();
        else if (label[j] == 'y') s[j] = Setting::y();
        else
            throw MalformedModel(where + ": setting label '" + label +
                                 "' may contain only 'x' and 'y'");
    }
    return SettingTriple{s[0], s[1], s[2]};
}

}  // namespace detail

// A model fully described by a document: per-triple supports plus factorized
// responses.  Declared-factorized by construction.
class DeclarativeModel final : public OntologicalModel {
public:
    DeclarativeModel(std::string name, std::map<std::string, WeightedSupport> supports,
                     std::optional<std::vector<detail::ResponseTableEntry>> table)
        : name_(std::move(name)), supports_(std::move(supports)), table_(std::move(table)) {}

    std::string name() const override { return name_; }

    WeightedSupport support(const SettingTriple& settings, const PureState&) const override {
        if (!settings.is_canonical())
            throw UnsupportedSettings("model '" + name_ + "' covers canonical settings only");
        auto it = supports_.find(settings.label());
        if (it == supports_.end())
            throw UnsupportedSettings("model '" + name_ + "' does not cover settings " +
                                      settings.label());
        return it->second;
    }

    bool declares_factorization() const override { return true; }

    double party_response(int party, int outcome, const Beable& lambda, const Setting& setting,
                          const PureState&) const override {
        const double theta = lambda.angle_triple()[party - 1];
        const Axis basis = setting.axis();
        if (!table_) return local_response(outcome, theta, basis);
        for (const auto& entry : *table_) {
            if (entry.party == party && entry.basis == basis &&
                std::abs(entry.theta - theta) <= kAuditTol) {
                return outcome > 0 ? entry.p_plus : 1.0 - entry.p_plus;
            }
        }
        throw MalformedModel("model '" + name_ + "': response_table has no entry for party " +
                             std::to_string(party) + ", basis " +
                             std::string(1, axis_letter(basis)) + ", theta " +
                             std::to_string(theta));
    }

    double joint_response(const OutcomeTriple& outcome, const Beable& lambda,
                          const SettingTriple& settings, const PureState& psi) const override {
        return product_joint_response(outcome, lambda, settings, psi);
    }

private:
    std::string name_;
    std::map<std::string, WeightedSupport> supports_;
    std::optional<std::vector<detail::ResponseTableEntry>> table_;
};

// Parses a model document.  Throws MalformedModel with a field diagnostic on
// any structural problem.
inline std::unique_ptr<OntologicalModel> parse_model_document(const json& doc,
                                                              const std::string& where) {
    if (!doc.is_object()) throw MalformedModel(where + ": document must be a JSON object");

    const std::string name = doc.value("name", std::string("declarative-model"));

    if (!doc.contains("settings_triples") || !doc["settings_triples"].is_array() ||
        doc["settings_triples"].empty())
        throw MalformedModel(where + ": settings_triples: expected a non-empty array");
    if (!doc.contains("support") || !doc["support"].is_object())
        throw MalformedModel(where + ": support: expected an object keyed by setting label");

    std::map<std::string, WeightedSupport> supports;
    for (const auto& entry : doc["settings_triples"]) {
        if (!entry.is_string())
            throw MalformedModel(where + ": settings_triples: entries must be strings");
        const std::string label = entry.get<std::string>();
        detail::parse_triple_label(label, where + ": settings_triples");  // validates
        if (supports.count(label))
            throw MalformedModel(where + ": settings_triples: duplicate label '" + label + "'");
        if (!doc["support"].contains(label))
            throw MalformedModel(where + ": support: missing atoms for '" + label + "'");

        const json& atoms = doc["support"][label];
        if (!atoms.is_array() || atoms.empty())
            throw MalformedModel(where + ": support." + label + ": expected a non-empty array");
        WeightedSupport support;
        int index = 0;
        for (const auto& atom : atoms) {
            const std::string field = where + ": support." + label + "[" + std::to_string(index) + "]";
            if (!atom.is_object() || !atom.contains("theta") || !atom.contains("weight"))
                throw MalformedModel(field + ": atom needs 'theta' and 'weight'");
            const json& theta = atom["theta"];
            if (!theta.is_array() || theta.size() != 3)
                throw MalformedModel(field + ".theta: expected an array of 3 angles");
            for (const auto& t : theta)
                if (!t.is_number()) throw MalformedModel(field + ".theta: angles must be numbers");
            if (!atom["weight"].is_number())
                throw MalformedModel(field + ".weight: expected a number");
            const double weight = atom["weight"].get<double>();
            if (!(weight >= 0.0)) throw MalformedModel(field + ".weight: must be nonnegative");
            const std::string id = atom.value("id", label + "#" + std::to_string(index));
            support.atoms.emplace_back(Beable::angles(id, theta[0].get<double>(),
                                                      theta[1].get<double>(),
                                                      theta[2].get<double>()),
                                       weight);
            ++index;
        }
        try {
            support.validate();
        } catch (const MalformedModel& e) {
            throw MalformedModel(where + ": support." + label + ": " + e.what());
        }
        supports.emplace(label, std::move(support));
    }

    const bool has_family = doc.contains("response_family");
    const bool has_table = doc.contains("response_table");
    if (has_family == has_table)
        throw MalformedModel(where +
                             ": exactly one of response_family and response_table is required");

    std::optional<std::vector<detail::ResponseTableEntry>> table;
    if (has_family) {
        const json& fam = doc["response_family"];
        if (!fam.is_string() || fam.get<std::string>() != "cosine")
            throw MalformedModel(where + ": response_family: the only named family is 'cosine'");
    } else {
        const json& rows = doc["response_table"];
        if (!rows.is_array() || rows.empty())
            throw MalformedModel(where + ": response_table: expected a non-empty array");
        table.emplace();
        int index = 0;
        for (const auto& row : rows) {
            const std::string field = where + ": response_table[" + std::to_string(index) + "]";
            if (!row.is_object() || !row.contains("party") || !row.contains("basis") ||
                !row.contains("theta") || !row.contains("p_plus"))
                throw MalformedModel(field + ": entry needs party, basis, theta, p_plus");
            const int party = row["party"].get<int>();
            if (party < 1 || party > 3) throw MalformedModel(field + ".party: must be 1, 2 or 3");
            const std::string basis = row["basis"].get<std::string>();
            if (basis != "x" && basis != "y")
                throw MalformedModel(field + ".basis: must be 'x' or 'y'");
            const double p_plus = row["p_plus"].get<double>();
            if (!(p_plus >= 0.0 && p_plus <= 1.0))
                throw MalformedModel(field + ".p_plus: must lie in [0, 1]");
            table->push_back({party, basis == "x" ? Axis::X : Axis::Y,
                              normalize_angle(row["theta"].get<double>()), p_plus});
            ++index;
        }
    }

    return std::make_unique<DeclarativeModel>(name, std::move(supports), std::move(table));
}

inline std::unique_ptr<OntologicalModel> load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedModel("model file '" + path + "': cannot open");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw MalformedModel("model file '" + path + "': " + e.what());
    }
    return parse_model_document(doc, "model file '" + path + "'");
}

// Model specs accepted by the CLI: "bb", "superdet", "localdet:<6 signs>",
// "file:<path>".
inline std::unique_ptr<OntologicalModel> make_model(const std::string& spec) {
    if (spec == "bb") return beltrametti_bugajski(ghz_state());
    if (spec == "superdet") return superdeterministic_ghz();
    if (spec.rfind("localdet:", 0) == 0) {
        try {
            return local_deterministic(ValueAssignment::from_label(spec.substr(9)));
        } catch (const InvalidParam& e) {
            throw MalformedModel("model spec '" + spec + "': " + e.what());
        }
    }
    if (spec.rfind("file:", 0) == 0) return load_model_file(spec.substr(5));
    throw MalformedModel("unknown model spec '" + spec +
                         "' (expected bb, superdet, localdet:<signs> or file:<path>)");
}

}  // namespace ghz
