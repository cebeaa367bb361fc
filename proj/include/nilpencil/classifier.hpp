#pragma once

// Einstein-nilradical decision procedure on pencil invariants.

#include <optional>

#include "nilpencil/pencil.hpp"

namespace nilpencil {

enum class VerdictCase { Generic, Subsingular };

enum class FailedCondition {
    None,
    A_i,            // generic: some divisor power > 1
    A_ii,           // generic: a root value repeats >= u/2 + w times
    B_nilpotent_l,  // subsingular: group-2 power > 1
    B_a,            // subsingular: S1 = 0 branch fails (or S1 < 0)
    B_b_k,          // subsingular: some 2 k_j^2 >= 2 S2 / S1
    B_b_l,          // subsingular: some floor((l_i^2+1)/2) >= 2 S2 / S1
};

struct Verdict {
    bool is_einstein = false;
    VerdictCase verdict_case = VerdictCase::Generic;
    FailedCondition failed = FailedCondition::None;

    // subsingular labeling: group 1 holds the lexicographically larger
    // (max power, count) root value
    int u1 = 0, u2 = 0;                 // u', u''
    std::vector<int> group1, group2;    // divisor powers per group
    std::optional<Rat> root1, root2;    // the two root values, if present
    Rat S1, S2;                         // populated iff Subsingular

    // root at which the generic repetition bound fails (witness input)
    std::optional<Rat> witness_root;
};

Verdict classify(const PencilInvariants& inv);

}  // namespace nilpencil
