#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fhidep/potential.hpp"

namespace fhidep {

/// Uniform time grid with Dirichlet ends.
struct GridSpec {
    double t_min;
    double t_max;
    int num_points;

    double spacing() const { return (t_max - t_min) / (num_points - 1); }
    void validate() const;  // t_min < t_max, num_points >= 64
};

/**
 * Lowest eigenpairs of the central-difference Hamiltonian
 * H = -kinetic d^2/dt^2 + V(t) with Dirichlet boundaries.
 *
 * Eigenvalues ascend strictly; eigenvectors have unit Euclidean norm and
 * num_points entries (boundary zeros included). convergence_rel holds the
 * per-level relative change against a half-resolution solve.
 */
struct GridSolution {
    GridSpec spec;
    std::vector<double> eigenvalues;                 // cPn, eV
    std::vector<std::vector<double>> eigenvectors;   // unit norm
    std::vector<double> convergence_rel;
};

/// Generic Dirichlet eigensolve, Sturm-sequence bisection + inverse iteration.
GridSolution solve_spectrum_on_grid(const std::function<double(double)>& potential,
                                    double kinetic_coeff, const GridSpec& spec,
                                    int count, bool with_convergence = true);

/// The same solve for one potential instance; kinetic coefficient
/// hbar^2 / (2 m c^2). Eigenvalues are cPn in eV.
GridSolution solve_grid_spectrum(const PotentialConfig& config,
                                 const UnitSystem& units, const GridSpec& spec,
                                 int count);

/// ||H psi - cPn psi||_2 / ||psi||_2 with the same discretization.
/// psi_on_grid must have num_points entries and norm > 1e-12.
double residual_norm(const PotentialConfig& config, const UnitSystem& units,
                     double cPn_eV, std::span<const double> psi_on_grid,
                     const GridSpec& spec);

/**
 * Suggest a grid for a config: a box centred on the well minimum te, sized
 * by the harmonic length scale w = sqrt(hbar/(mc^2 omega)) so the lowest
 * `levels` states fit with margin, clipped on the right by the time where
 * V reaches De(1 - 1e-4), with num_points resolving w. Advisory only.
 */
GridSpec domain_advisor(const PotentialConfig& config, const UnitSystem& units,
                        int levels = 8);

namespace detail {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, offdiag)
/// strictly below x (Sturm sequence count).
int sturm_count_below(std::span<const double> diag, std::span<const double> offdiag,
                      double x);

}  // namespace detail

}  // namespace fhidep
