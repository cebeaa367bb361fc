#include "nilpencil/classifier.hpp"

#include <algorithm>
#include <map>

namespace nilpencil {

Verdict classify(const PencilInvariants& inv) {
    Verdict v;
    std::map<Rat, std::vector<int>> by_root;  // root value -> powers
    for (const auto& d : inv.real_divisors) by_root[d.root].push_back(d.power);
    int u = static_cast<int>(inv.real_divisors.size());
    int w = static_cast<int>(inv.complex_divisors.size());

    bool generic = w > 0 || by_root.size() >= 3;
    if (generic) {
        v.verdict_case = VerdictCase::Generic;
        for (const auto& d : inv.real_divisors)
            if (d.power != 1) v.failed = FailedCondition::A_i;
        for (const auto& d : inv.complex_divisors)
            if (d.power != 1) v.failed = FailedCondition::A_i;
        if (v.failed == FailedCondition::None) {
            // #{i: a_i = x} < u/2 + w for every x, strict
            for (const auto& [root, powers] : by_root)
                if (2 * static_cast<int>(powers.size()) >= u + 2 * w) {
                    v.failed = FailedCondition::A_ii;
                    v.witness_root = root;
                    break;
                }
        }
        v.is_einstein = v.failed == FailedCondition::None;
        return v;
    }

    v.verdict_case = VerdictCase::Subsingular;
    // labeling per the lexicographic rule: group 1 has the larger
    // (max power, count); ties broken toward the smaller root value
    std::vector<std::pair<Rat, std::vector<int>>> groups(by_root.begin(), by_root.end());
    auto key = [](const std::vector<int>& powers) {
        int mx = 0;
        for (int l : powers) mx = std::max(mx, l);
        return std::pair<int, int>(mx, static_cast<int>(powers.size()));
    };
    if (groups.size() == 2 && key(groups[1].second) > key(groups[0].second))
        std::swap(groups[0], groups[1]);
    if (!groups.empty()) {
        v.group1 = groups[0].second;
        v.root1 = groups[0].first;
    }
    if (groups.size() == 2) {
        v.group2 = groups[1].second;
        v.root2 = groups[1].first;
    }
    v.u1 = static_cast<int>(v.group1.size());
    v.u2 = static_cast<int>(v.group2.size());

    Rat sum_l1(0), sum_cube(0);
    for (int l : v.group1) {
        sum_l1 += l;
        sum_cube += Rat(2 * l * l * l + l, 6);
    }
    v.S1 = sum_l1 - v.u2;
    v.S2 = 1 + sum_cube;
    for (int k : inv.minimal_indices) v.S2 += Rat(k * (k + 1) * (2 * k + 1), 6);

    for (int l : v.group2)
        if (l != 1) {
            v.failed = FailedCondition::B_nilpotent_l;
            v.is_einstein = false;
            return v;
        }
    if (v.S1 == 0) {
        for (int l : v.group1)
            if (l != 1) {
                v.failed = FailedCondition::B_a;
                v.is_einstein = false;
                return v;
            }
        v.is_einstein = true;
        return v;
    }
    if (v.S1 < 0) {
        v.failed = FailedCondition::B_a;
        v.is_einstein = false;
        return v;
    }
    Rat bound = 2 * v.S2 / v.S1;
    for (int k : inv.minimal_indices)
        if (!(Rat(2 * k * k) < bound)) {
            v.failed = FailedCondition::B_b_k;
            v.is_einstein = false;
            return v;
        }
    for (int l : v.group1)
        if (!(Rat((l * l + 1) / 2) < bound)) {
            v.failed = FailedCondition::B_b_l;
            v.is_einstein = false;
            return v;
        }
    v.is_einstein = true;
    return v;
}

}  // namespace nilpencil
