#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wpt/coupling_set.hpp"
#include "wpt/errors.hpp"
#include "wpt/resonator.hpp"

namespace wpt {

/// Sinusoidal source: amplitude and internal resistance.
struct SourceSpec {
    double v_source = 1.0;  // volts
    double r_source = 50.0; // ohms

    void validate() const {
        if (!(v_source > 0.0))
            throw DomainError("source: v_source must be > 0 for excitation");
        if (!(r_source >= 0.0))
            throw DomainError("source: r_source must be >= 0");
    }

    bool operator==(const SourceSpec&) const = default;
};

/// Termination resistance added to the load-coil loop.
struct LoadSpec {
    double r_load = 50.0; // ohms

    void validate() const {
        if (!(r_load >= 0.0))
            throw DomainError("load: r_load must be >= 0");
    }

    bool operator==(const LoadSpec&) const = default;
};

/// The full resonator network: ordered loops, mutual couplings, source and
/// load terminations. The source drives the driver row; r_load is added to
/// the load row's self-impedance.
struct SystemModel {
    std::vector<ResonatorNode> resonators;
    CouplingSet couplings;
    SourceSpec source;
    LoadSpec load;

    int count() const { return static_cast<int>(resonators.size()); }

    int index_of(Role role) const {
        for (int i = 0; i < count(); ++i)
            if (resonators[i].role == role) return i;
        return -1;
    }

    int driver_index() const { return index_of(Role::driver); }
    int load_index() const { return index_of(Role::load); }

    std::vector<int> cell_indices() const {
        std::vector<int> out;
        for (int i = 0; i < count(); ++i)
            if (resonators[i].role == Role::mm_cell) out.push_back(i);
        return out;
    }

    /// Structural checks: one driver, at most one of each non-cell role,
    /// distinct cell indices, per-resonator parameter ranges, coupling
    /// dimension/symmetry/zero-diagonal (by construction) and the
    /// coefficient bound |M| <= sqrt(L_i * L_j).
    void validate() const {
        if (resonators.empty())
            throw ModelError("model: no resonators");
        int drivers = 0, txs = 0, rxs = 0, loads = 0;
        std::vector<int> cells_seen;
        for (size_t i = 0; i < resonators.size(); ++i) {
            const ResonatorNode& node = resonators[i];
            node.params.validate(std::string(role_name(node.role)) + "[" +
                                 std::to_string(i) + "]");
            switch (node.role) {
                case Role::driver: ++drivers; break;
                case Role::transmitter: ++txs; break;
                case Role::receiver: ++rxs; break;
                case Role::load: ++loads; break;
                case Role::mm_cell:
                    for (int seen : cells_seen)
                        if (seen == node.cell_index)
                            throw ModelError("model: duplicate mm_cell index " +
                                             std::to_string(node.cell_index));
                    cells_seen.push_back(node.cell_index);
                    break;
            }
        }
        if (drivers != 1)
            throw ModelError("model: expected exactly one driver, found " +
                             std::to_string(drivers));
        if (txs > 1 || rxs > 1 || loads > 1)
            throw ModelError("model: duplicate transmitter/receiver/load role");
        source.validate();
        load.validate();
        if (couplings.size() != count())
            throw ModelError("model: coupling dimension " +
                             std::to_string(couplings.size()) +
                             " does not match resonator count " +
                             std::to_string(count()));
        for (int i = 0; i < count(); ++i) {
            for (int j = i + 1; j < count(); ++j) {
                const double m = couplings.at(i, j);
                const double bound = std::sqrt(resonators[i].params.inductance *
                                               resonators[j].params.inductance);
                if (std::abs(m) > bound * (1.0 + 1e-12))
                    throw ModelError("model: |M| between " +
                                     std::string(role_name(resonators[i].role)) +
                                     " and " +
                                     std::string(role_name(resonators[j].role)) +
                                     " exceeds sqrt(L_i*L_j)");
            }
        }
    }

    bool operator==(const SystemModel&) const = default;
};

/// Remove every mm_cell row/column, keeping all remaining couplings.
inline SystemModel strip_mm_cells(const SystemModel& model) {
    std::vector<int> keep;
    for (int i = 0; i < model.count(); ++i)
        if (model.resonators[i].role != Role::mm_cell) keep.push_back(i);
    SystemModel out;
    out.source = model.source;
    out.load = model.load;
    out.couplings = CouplingSet(static_cast<int>(keep.size()));
    for (size_t a = 0; a < keep.size(); ++a) {
        out.resonators.push_back(model.resonators[keep[a]]);
        for (size_t b = a + 1; b < keep.size(); ++b)
            out.couplings.set(static_cast<int>(a), static_cast<int>(b),
                              model.couplings.at(keep[a], keep[b]));
    }
    return out;
}

}  // namespace wpt
