#pragma once

#include <string>

#include "wpt/errors.hpp"

namespace wpt {

/// Lumped series R-L-C values of one resonator loop (coil or slab cell).
/// All quantities in SI base units (ohm, henry, farad).
struct ResonatorParams {
    double resistance = 0.0;
    double inductance = 0.0;
    double capacitance = 0.0;

    void validate(const std::string& context = "resonator") const {
        if (!(resistance >= 0.0))
            throw DomainError(context + ": resistance must be >= 0");
        if (!(inductance > 0.0))
            throw DomainError(context + ": inductance must be > 0");
        if (!(capacitance > 0.0))
            throw DomainError(context + ": capacitance must be > 0");
    }

    bool operator==(const ResonatorParams&) const = default;
};

/// Split-parameter form of a slab unit cell. The loop resistance is the sum
/// of ohmic and dielectric losses; the loop capacitance is the sum of the
/// stray capacitance and the tunable compensation capacitor.
struct MmUnitCellParams {
    double r_ohmic = 0.0;
    double r_dielectric = 0.0;
    double c_stray = 0.0;
    double c_compensation = 0.0;
    double inductance = 0.0;

    double total_resistance() const { return r_ohmic + r_dielectric; }
    double total_capacitance() const { return c_stray + c_compensation; }

    /// Collapse to lumped form. Totals must be strictly positive.
    ResonatorParams lumped() const {
        ResonatorParams p{total_resistance(), inductance, total_capacitance()};
        if (!(p.resistance >= 0.0))
            throw DomainError("mm cell: total resistance must be >= 0");
        if (!(p.capacitance > 0.0))
            throw DomainError("mm cell: total capacitance must be > 0");
        if (!(p.inductance > 0.0))
            throw DomainError("mm cell: inductance must be > 0");
        return p;
    }

    bool operator==(const MmUnitCellParams&) const = default;
};

enum class Role { driver, transmitter, mm_cell, receiver, load };

inline const char* role_name(Role r) {
    switch (r) {
        case Role::driver: return "driver";
        case Role::transmitter: return "transmitter";
        case Role::mm_cell: return "mm_cell";
        case Role::receiver: return "receiver";
        case Role::load: return "load";
    }
    return "?";
}

/// One loop of the resonator network. cell_index distinguishes slab cells
/// (1-based); it is 0 for every other role.
struct ResonatorNode {
    Role role = Role::driver;
    int cell_index = 0;
    ResonatorParams params;

    bool operator==(const ResonatorNode&) const = default;
};

}  // namespace wpt
