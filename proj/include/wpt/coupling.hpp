#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "wpt/coupling_set.hpp"
#include "wpt/errors.hpp"
#include "wpt/model.hpp"

namespace wpt {

inline constexpr double kMu0 = 4e-7 * std::numbers::pi;

/// Circular filament loop on a shared axis. Multi-turn windings are treated
/// as stacked filaments at one radius, so mutuals scale with the turn count.
struct LoopGeometry {
    double radius = 0.0;        // meters
    int turns = 1;
    double axial_position = 0.0; // meters, signed along the shared axis

    void validate(const std::string& context = "loop") const {
        if (!(radius > 0.0))
            throw GeometryError(context + ": radius must be > 0");
        if (turns < 1)
            throw GeometryError(context + ": turns must be >= 1");
    }
};

namespace detail {

inline constexpr std::size_t kQuadratureEvalCap = 1'000'000;

/// Adaptive Simpson on [a, b]. `tol` is an absolute tolerance for the
/// interval; each split halves it. Accepts the Richardson-extrapolated
/// estimate once |S_fine - S_coarse| <= 15 tol.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth,
                        std::size_t& evals) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    if ((evals += 2) > kQuadratureEvalCap)
        throw QuadratureError("adaptive quadrature exceeded evaluation budget");
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
    const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
    std::size_t evals = 3;
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    const double scale = std::max(std::abs(whole), 1e-300);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale, 60, evals);
}

}  // namespace detail

/// Mutual inductance of two coaxial circular loops via the Neumann double
/// integral. Angular symmetry reduces it to a single integral,
///   M = N_a N_b mu0 r_a r_b \int_0^pi cos(t) / sqrt(r_a^2 + r_b^2 + d^2
///                                              - 2 r_a r_b cos(t)) dt,
/// evaluated adaptively to 1e-8 relative tolerance. Positive for
/// co-oriented loops; symmetric in its arguments.
inline double coaxial_loop_mutual(const LoopGeometry& a, const LoopGeometry& b) {
    a.validate("loop a");
    b.validate("loop b");
    const double d = std::abs(a.axial_position - b.axial_position);
    if (d == 0.0 && a.radius == b.radius)
        throw GeometryError(
            "coaxial_loop_mutual: coincident filaments (zero separation, equal radii)");

    const double ra = a.radius, rb = b.radius;
    const double s2 = ra * ra + rb * rb + d * d;
    auto integrand = [=](double t) {
        return std::cos(t) / std::sqrt(s2 - 2.0 * ra * rb * std::cos(t));
    };
    const double integral = detail::integrate(integrand, 0.0, std::numbers::pi, 1e-8);
    return static_cast<double>(a.turns) * static_cast<double>(b.turns) * kMu0 *
           ra * rb * integral;
}

/// M = k sqrt(L_a L_b). |k| must not exceed 1.
inline double coupling_from_k(double k, double l_a, double l_b) {
    if (!(l_a > 0.0) || !(l_b > 0.0))
        throw DomainError("coupling_from_k: inductances must be > 0");
    if (!(std::abs(k) <= 1.0))
        throw DomainError("coupling_from_k: |k| = " + std::to_string(std::abs(k)) +
                          " exceeds 1");
    return k * std::sqrt(l_a * l_b);
}

/// Sampled mutual inductance versus separation for one resonator pair.
struct CouplingTable {
    struct Row {
        double separation; // meters
        double m;          // henries
    };
    std::vector<Row> rows;

    void validate() const {
        if (rows.size() < 2)
            throw DomainError("coupling table: at least 2 rows required");
        for (size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i].separation > rows[i - 1].separation))
                throw DomainError("coupling table: separations must be strictly increasing");
    }
};

/// Piecewise-linear interpolation, exact at the knots. Queries outside the
/// table range are an error; there is no silent extrapolation.
inline double interpolate_coupling(const CouplingTable& table, double separation) {
    table.validate();
    const auto& rows = table.rows;
    if (separation < rows.front().separation || separation > rows.back().separation)
        throw ExtrapolationError(
            "interpolate_coupling: separation " + std::to_string(separation) +
            " m outside table range [" + std::to_string(rows.front().separation) +
            ", " + std::to_string(rows.back().separation) + "]");
    auto hi = std::lower_bound(rows.begin(), rows.end(), separation,
                               [](const CouplingTable::Row& r, double s) {
                                   return r.separation < s;
                               });
    if (hi->separation == separation) return hi->m;
    const auto lo = hi - 1;
    const double t = (separation - lo->separation) / (hi->separation - lo->separation);
    return lo->m + t * (hi->m - lo->m);
}

/// Axial layout of the coil chain. The transmitter sits at the origin; the
/// slab plane, receiver and load coil lie at increasing positions, the
/// driver behind the transmitter. All slab cells share the slab plane
/// (their lateral offsets are not modeled), so each cell sees the same
/// coupling to every coil.
struct ChainLayout {
    double driver_offset = 0.01;    // driver-to-transmitter spacing, m
    double transfer_distance = 0.4; // transmitter-to-receiver spacing, m
    double slab_position = 0.2;     // transmitter-to-slab spacing, m
    double load_offset = 0.01;      // receiver-to-load spacing, m

    void validate() const {
        if (!(driver_offset > 0.0) || !(load_offset > 0.0) ||
            !(transfer_distance > 0.0))
            throw GeometryError("chain layout: offsets and transfer distance must be > 0");
    }

    void validate_slab() const {
        validate();
        if (!(slab_position > 0.0) || !(slab_position < transfer_distance))
            throw GeometryError("chain layout: slab position " +
                                std::to_string(slab_position) +
                                " m must lie strictly inside (0, " +
                                std::to_string(transfer_distance) + ")");
    }

    double position_of(Role role) const {
        switch (role) {
            case Role::driver: return -driver_offset;
            case Role::transmitter: return 0.0;
            case Role::mm_cell: return slab_position;
            case Role::receiver: return transfer_distance;
            case Role::load: return transfer_distance + load_offset;
        }
        return 0.0;
    }
};

/// Per-role loop shapes for the analytic coupling path.
struct ChainLoops {
    LoopGeometry driver{0.012, 3, 0.0};
    LoopGeometry transmitter{0.012, 3, 0.0};
    LoopGeometry cell{0.012, 1, 0.0};
    LoopGeometry receiver{0.012, 3, 0.0};
    LoopGeometry load_coil{0.012, 3, 0.0};

    const LoopGeometry& for_role(Role role) const {
        switch (role) {
            case Role::driver: return driver;
            case Role::transmitter: return transmitter;
            case Role::mm_cell: return cell;
            case Role::receiver: return receiver;
            case Role::load: return load_coil;
        }
        return transmitter;
    }
};

struct ChainCouplingOptions {
    /// Keep the direct transmitter-receiver term so that removing the slab
    /// leaves a live link. The neglect list below never names that pair.
    bool include_direct_tx_rx = true;
    /// Uniform cell-to-cell mutual (henries). The slab cells are loosely
    /// disconnected, so this defaults to zero.
    double cell_to_cell_m = 0.0;
    std::vector<RolePair> neglect = {
        {Role::driver, Role::mm_cell},
        {Role::mm_cell, Role::load},
        {Role::driver, Role::load},
    };
};

/// Populate couplings for the coil chain from loop geometry: the adjacent
/// pairs (driver-tx, tx-cell, cell-rx, rx-load), optionally the direct
/// tx-rx term, a uniform cell-to-cell value, then the neglect list.
inline CouplingSet build_chain_couplings(const SystemModel& model,
                                         const ChainLayout& layout,
                                         const ChainLoops& loops,
                                         const ChainCouplingOptions& options = {}) {
    const bool has_cells = !model.cell_indices().empty();
    if (has_cells)
        layout.validate_slab();
    else
        layout.validate();

    const int n = model.count();
    CouplingSet out(n);
    auto placed = [&](int i) {
        LoopGeometry g = loops.for_role(model.resonators[i].role);
        g.axial_position = layout.position_of(model.resonators[i].role);
        return g;
    };
    auto adjacent = [&](Role x, Role y) {
        static constexpr RolePair kAdjacent[] = {
            {Role::driver, Role::transmitter},
            {Role::transmitter, Role::mm_cell},
            {Role::mm_cell, Role::receiver},
            {Role::receiver, Role::load},
        };
        for (const RolePair& p : kAdjacent)
            if (p.matches(x, y)) return true;
        return false;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Role ri = model.resonators[i].role;
            const Role rj = model.resonators[j].role;
            if (ri == Role::mm_cell && rj == Role::mm_cell) {
                out.set(i, j, options.cell_to_cell_m);
                continue;
            }
            const bool wanted =
                adjacent(ri, rj) ||
                (options.include_direct_tx_rx &&
                 RolePair{Role::transmitter, Role::receiver}.matches(ri, rj));
            if (wanted) out.set(i, j, coaxial_loop_mutual(placed(i), placed(j)));
        }
    }
    return apply_neglect_rule(out, model.resonators, options.neglect);
}

/// Same chain construction from dimensionless coefficients: each named role
/// pair receives M = k sqrt(L_i L_j). Pairs absent from the list stay zero.
inline CouplingSet build_chain_couplings(
    const SystemModel& model,
    const std::vector<std::pair<RolePair, double>>& coefficients,
    const std::vector<RolePair>& neglect = {}) {
    const int n = model.count();
    CouplingSet out(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (const auto& [pair, k] : coefficients) {
                if (pair.matches(model.resonators[i].role, model.resonators[j].role)) {
                    out.set(i, j,
                            coupling_from_k(k, model.resonators[i].params.inductance,
                                            model.resonators[j].params.inductance));
                    break;
                }
            }
        }
    }
    return apply_neglect_rule(out, model.resonators, neglect);
}

}  // namespace wpt
