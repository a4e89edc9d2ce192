#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "wpt/errors.hpp"
#include "wpt/model.hpp"

namespace wpt {

using Complex = std::complex<double>;

/// Series-loop impedance Z = R + j(wL - 1/(wC)). Singular at w = 0 (the
/// series capacitor is open at DC), so nonpositive w is rejected.
inline Complex self_impedance(const ResonatorParams& params, double omega) {
    if (!(omega > 0.0))
        throw DomainError("self_impedance: omega must be > 0");
    params.validate();
    return {params.resistance,
            omega * params.inductance - 1.0 / (omega * params.capacitance)};
}

struct KvlSystem {
    Eigen::MatrixXcd z;
    Eigen::VectorXcd v;
};

/// Assemble the loop-equation system at angular frequency omega: one row per
/// resonator, self-impedances on the diagonal (source resistance added on
/// the driver row, termination resistance on the load row), j*w*M off the
/// diagonal, and the source amplitude as the only nonzero excitation entry.
/// The matrix is complex symmetric, not Hermitian.
inline KvlSystem build_kvl_matrix(const SystemModel& model, double omega) {
    model.validate();
    if (!(omega > 0.0))
        throw DomainError("build_kvl_matrix: omega must be > 0");

    const int n = model.count();
    KvlSystem sys;
    sys.z = Eigen::MatrixXcd::Zero(n, n);
    sys.v = Eigen::VectorXcd::Zero(n);

    for (int i = 0; i < n; ++i) {
        Complex zii = self_impedance(model.resonators[i].params, omega);
        if (model.resonators[i].role == Role::driver)
            zii += model.source.r_source;
        if (model.resonators[i].role == Role::load)
            zii += model.load.r_load;
        sys.z(i, i) = zii;
        for (int j = i + 1; j < n; ++j) {
            const Complex zij(0.0, omega * model.couplings.at(i, j));
            sys.z(i, j) = zij;
            sys.z(j, i) = zij;
        }
    }
    sys.v(model.driver_index()) = model.source.v_source;
    return sys;
}

namespace detail {

/// Condition estimate above this reports the system as singular instead of
/// returning garbage; lossless models can be exactly singular at isolated
/// frequencies.
inline constexpr double kMaxConditionEstimate = 1e14;
inline constexpr double kMaxRelativeResidual = 1e-10;

}  // namespace detail

/// Solve Z I = v by direct LU factorization with partial pivoting.
/// The accepted solution satisfies |Z I - v| <= 1e-10 |v|; one step of
/// iterative refinement is applied if the first residual misses that bound.
inline Eigen::VectorXcd solve_currents(const SystemModel& model, double omega) {
    const KvlSystem sys = build_kvl_matrix(model, omega);

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.z);
    const double rcond = lu.rcond();
    if (!(rcond > 1.0 / detail::kMaxConditionEstimate))
        throw SingularSystemError(
            "solve_currents: singular or ill-conditioned system at omega = " +
            std::to_string(omega) + " rad/s (condition estimate " +
            std::to_string(rcond > 0.0 ? 1.0 / rcond : INFINITY) + ")",
            omega);

    Eigen::VectorXcd x = lu.solve(sys.v);
    const double vnorm = sys.v.norm();
    double residual = (sys.z * x - sys.v).norm();
    if (residual > 1e-13 * vnorm) {
        x += lu.solve(sys.v - sys.z * x);
        residual = (sys.z * x - sys.v).norm();
    }
    if (!x.allFinite() || residual > detail::kMaxRelativeResidual * vnorm)
        throw SingularSystemError(
            "solve_currents: residual " + std::to_string(residual) +
                " exceeds tolerance at omega = " + std::to_string(omega),
            omega);
    return x;
}

/// Collapse n identical slab cells into one effective resonator.
///
/// With identical cells (impedance Z_c, cell-to-cell mutual M_cc, coupling
/// M_ck to each outside loop k) every cell carries the same current I_c, so
/// the n cell rows are one equation:
///   [Z_c + j w (n-1) M_cc] I_c + j w sum_k M_ck I_k = 0
/// Substituting I_e = sqrt(n) I_c with M_ek = sqrt(n) M_ck reproduces both
/// this row and every outside row exactly, with the effective self-
/// inductance absorbing the cell-to-cell term: L_e = L_c + (n-1) M_cc.
/// Outside-loop currents of the reduced model equal the full solve.
inline SystemModel reduce_slab(const SystemModel& model) {
    model.validate();
    const std::vector<int> cells = model.cell_indices();
    if (cells.empty()) return model;
    const int n_cells = static_cast<int>(cells.size());

    const ResonatorParams cell_params = model.resonators[cells[0]].params;
    for (int c : cells)
        if (!(model.resonators[c].params == cell_params))
            throw ReductionError("reduce_slab: cells do not share identical parameters");

    std::vector<int> outside;
    for (int i = 0; i < model.count(); ++i)
        if (model.resonators[i].role != Role::mm_cell) outside.push_back(i);

    for (int k : outside) {
        const double m0 = model.couplings.at(cells[0], k);
        for (int c : cells)
            if (model.couplings.at(c, k) != m0)
                throw ReductionError(
                    "reduce_slab: cell couplings to " +
                    std::string(role_name(model.resonators[k].role)) +
                    " differ across cells");
    }
    double m_cc = 0.0;
    if (n_cells > 1) {
        m_cc = model.couplings.at(cells[0], cells[1]);
        for (size_t a = 0; a < cells.size(); ++a)
            for (size_t b = a + 1; b < cells.size(); ++b)
                if (model.couplings.at(cells[a], cells[b]) != m_cc)
                    throw ReductionError("reduce_slab: cell-to-cell couplings differ");
    }

    ResonatorParams eff = cell_params;
    eff.inductance += (n_cells - 1) * m_cc;
    if (!(eff.inductance > 0.0))
        throw ReductionError("reduce_slab: effective cell inductance is nonpositive");

    const double scale = std::sqrt(static_cast<double>(n_cells));
    SystemModel out;
    out.source = model.source;
    out.load = model.load;
    int eff_index = -1;
    for (int i : outside) {
        if (i > cells[0] && eff_index < 0) {
            eff_index = static_cast<int>(out.resonators.size());
            out.resonators.push_back({Role::mm_cell, 1, eff});
        }
        out.resonators.push_back(model.resonators[i]);
    }
    if (eff_index < 0) {
        eff_index = static_cast<int>(out.resonators.size());
        out.resonators.push_back({Role::mm_cell, 1, eff});
    }

    out.couplings = CouplingSet(out.count());
    auto full_index = [&](int reduced) {
        // position of a reduced-model outside node in the full model
        int seen = 0;
        for (int i : outside) {
            int pos = i < cells[0] ? seen : seen + 1;
            if (pos == reduced) return i;
            ++seen;
        }
        return -1;
    };
    for (int a = 0; a < out.count(); ++a) {
        for (int b = a + 1; b < out.count(); ++b) {
            double m;
            if (a == eff_index || b == eff_index) {
                const int other = full_index(a == eff_index ? b : a);
                m = scale * model.couplings.at(cells[0], other);
            } else {
                m = model.couplings.at(full_index(a), full_index(b));
            }
            out.couplings.set(a, b, m);
        }
    }
    return out;
}

}  // namespace wpt
