#pragma once

// The combinatorial heart of the GHZ theorem: candidate deterministic value
// assignments, the four parity constraints on them, and the exhaustive
// impossibility proof over all 2^6 assignments.

#include <array>
#include <cstdlib>
#include <string>
#include <vector>

#include "ghz/errors.hpp"
#include "ghz/quantum.hpp"

namespace ghz {

// One candidate assignment of predetermined outcomes: A_j for an x-measurement
// on particle j, B_j for a y-measurement.
struct ValueAssignment {
    std::array<int, 3> a{+1, +1, +1};
    std::array<int, 3> b{+1, +1, +1};

    int value(int party, Axis basis) const {
        if (party < 1 || party > 3) throw InvalidParam("party must be 1, 2 or 3");
        switch (basis) {
            case Axis::X: return a[party - 1];
            case Axis::Y: return b[party - 1];
            default: throw InvalidParam("assignment values exist for x and y only");
        }
    }

    // 6-bit encoding A1 A2 A3 B1 B2 B3, A1 most significant, +1 -> 0.
    int index() const {
        int idx = 0;
        for (int v : a) idx = (idx << 1) | (v < 0);
        for (int v : b) idx = (idx << 1) | (v < 0);
        return idx;
    }

    static ValueAssignment from_index(int idx) {
        if (idx < 0 || idx > 63) throw InvalidParam("assignment index must be in [0, 63]");
        ValueAssignment v;
        for (int j = 0; j < 3; ++j) v.a[j] = (idx >> (5 - j)) & 1 ? -1 : +1;
        for (int j = 0; j < 3; ++j) v.b[j] = (idx >> (2 - j)) & 1 ? -1 : +1;
        return v;
    }

    // Six-sign string in the encoding order, e.g. "++-+++".
    std::string label() const {
        std::string s;
        for (int v : a) s += v > 0 ? '+' : '-';
        for (int v : b) s += v > 0 ? '+' : '-';
        return s;
    }

    static ValueAssignment from_label(const std::string& s) {
        if (s.size() != 6) throw InvalidParam("assignment label must have 6 signs");
        ValueAssignment v;
        for (int j = 0; j < 6; ++j) {
            int sign;
            if (s[j] == '+') sign = +1;
            else if (s[j] == '-') sign = -1;
            else throw InvalidParam("assignment label may contain only '+' and '-'");
            (j < 3 ? v.a[j] : v.b[j - 3]) = sign;
        }
        return v;
    }

    friend bool operator==(const ValueAssignment& l, const ValueAssignment& r) {
        return l.a == r.a && l.b == r.b;
    }
};

struct ParityConstraint {
    std::array<Axis, 3> bases{Axis::X, Axis::X, Axis::X};
    int target = +1;

    std::string label() const {
        std::string s;
        for (Axis ax : bases) s += axis_letter(ax);
        return s;
    }
};

// The four parity constraints forced by the GHZ eigen-identities, in the fixed
// order (x,x,x) -> -1, (x,y,y) -> +1, (y,x,y) -> +1, (y,y,x) -> +1.
inline std::array<ParityConstraint, 4> ghz_constraints() {
    return {ParityConstraint{{Axis::X, Axis::X, Axis::X}, -1},
            ParityConstraint{{Axis::X, Axis::Y, Axis::Y}, +1},
            ParityConstraint{{Axis::Y, Axis::X, Axis::Y}, +1},
            ParityConstraint{{Axis::Y, Axis::Y, Axis::X}, +1}};
}

inline bool satisfies(const ValueAssignment& v, const ParityConstraint& c) {
    int product = 1;
    for (int j = 1; j <= 3; ++j) product *= v.value(j, c.bases[j - 1]);
    return product == c.target;
}

struct EnumerationRow {
    ValueAssignment assignment;
    std::array<bool, 4> satisfied{};  // one flag per ghz_constraints() entry

    bool all_four() const {
        return satisfied[0] && satisfied[1] && satisfied[2] && satisfied[3];
    }
    // Constraints 2-4 only (the product argument's premises).
    bool joint_123() const { return satisfied[1] && satisfied[2] && satisfied[3]; }
};

struct EnumerationSummary {
    int total = 0;
    std::array<int, 4> per_constraint_counts{};
    int joint_123_count = 0;  // assignments satisfying constraints 2-4 jointly
    int all_four_count = 0;   // assignments satisfying all four (the GHZ count: 0)
    std::vector<EnumerationRow> witnesses;  // all 64 rows, in 6-bit index order
};

// Checks every one of the 64 assignments against the four constraints.
// Exhaustive by construction; nothing is sampled.
inline EnumerationSummary enumerate_assignments() {
    EnumerationSummary summary;
    const auto constraints = ghz_constraints();
    summary.witnesses.reserve(64);
    for (int idx = 0; idx < 64; ++idx) {
        EnumerationRow row;
        row.assignment = ValueAssignment::from_index(idx);
        for (int c = 0; c < 4; ++c) {
            row.satisfied[c] = satisfies(row.assignment, constraints[c]);
            if (row.satisfied[c]) ++summary.per_constraint_counts[c];
        }
        if (row.joint_123()) ++summary.joint_123_count;
        if (row.all_four()) ++summary.all_four_count;
        summary.witnesses.push_back(row);
        ++summary.total;
    }
    return summary;
}

}  // namespace ghz
