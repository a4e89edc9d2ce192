#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wpt/errors.hpp"
#include "wpt/resonator.hpp"

namespace wpt {

/// Symmetric matrix of mutual inductances (henries) between resonators.
/// The diagonal is identically zero; set() writes both triangles.
class CouplingSet {
public:
    CouplingSet() = default;

    explicit CouplingSet(int n) : n_(n), m_(static_cast<size_t>(n) * n, 0.0) {
        if (n < 0) throw ModelError("coupling set: negative dimension");
    }

    int size() const { return n_; }

    double at(int i, int j) const {
        check_index(i);
        check_index(j);
        return m_[static_cast<size_t>(i) * n_ + j];
    }

    void set(int i, int j, double henries) {
        check_index(i);
        check_index(j);
        if (i == j) {
            if (henries != 0.0)
                throw ModelError("coupling set: diagonal entries must stay zero");
            return;
        }
        m_[static_cast<size_t>(i) * n_ + j] = henries;
        m_[static_cast<size_t>(j) * n_ + i] = henries;
    }

    bool operator==(const CouplingSet&) const = default;

private:
    void check_index(int i) const {
        if (i < 0 || i >= n_)
            throw ModelError("coupling set: index " + std::to_string(i) +
                             " out of range for dimension " + std::to_string(n_));
    }

    int n_ = 0;
    std::vector<double> m_;
};

/// Unordered pair of roles; used to address whole classes of couplings
/// (every slab cell matches Role::mm_cell).
struct RolePair {
    Role a;
    Role b;

    bool matches(Role x, Role y) const {
        return (a == x && b == y) || (a == y && b == x);
    }

    bool operator==(const RolePair&) const = default;
};

/// The non-adjacent pairs of the four-coil chain whose couplings are weak
/// enough to drop: driver-cell, transmitter-receiver, cell-load, driver-load.
inline std::vector<RolePair> default_neglect_policy() {
    return {
        {Role::driver, Role::mm_cell},
        {Role::transmitter, Role::receiver},
        {Role::mm_cell, Role::load},
        {Role::driver, Role::load},
    };
}

/// Copy `couplings` with every entry linking a policy pair forced to zero.
/// Idempotent; preserves symmetry; all other entries untouched.
inline CouplingSet apply_neglect_rule(const CouplingSet& couplings,
                                      std::span<const ResonatorNode> nodes,
                                      std::span<const RolePair> policy) {
    if (couplings.size() != static_cast<int>(nodes.size()))
        throw ModelError("apply_neglect_rule: coupling dimension " +
                         std::to_string(couplings.size()) +
                         " does not match resonator count " +
                         std::to_string(nodes.size()));
    CouplingSet out = couplings;
    const int n = couplings.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (const RolePair& p : policy) {
                if (p.matches(nodes[i].role, nodes[j].role)) {
                    out.set(i, j, 0.0);
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace wpt
