#include "fhidep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace fhidep {

void GridSpec::validate() const {
    if (!(t_min < t_max) || !std::isfinite(t_min) || !std::isfinite(t_max)) {
        throw invalid_parameter("GridSpec: need finite t_min < t_max");
    }
    if (num_points < 64) {
        throw invalid_parameter("GridSpec: num_points must be >= 64, got " +
                                std::to_string(num_points));
    }
}

namespace detail {

int sturm_count_below(std::span<const double> diag, std::span<const double> offdiag,
                      double x) {
    const double eps = std::numeric_limits<double>::epsilon();
    int count = 0;
    double u = 1.0;
    for (size_t i = 0; i < diag.size(); ++i) {
        double v = 0.0;
        if (i > 0) {
            const double e = offdiag[i - 1];
            v = u != 0.0 ? e * e / u : std::abs(e) / eps;
        }
        u = diag[i] - x - v;
        if (u < 0.0) ++count;
    }
    return count;
}

}  // namespace detail

namespace {

struct Tridiag {
    std::vector<double> d;  // interior diagonal
    std::vector<double> e;  // off-diagonal, size d.size()-1
    double t_min, h;
};

Tridiag assemble(const std::function<double(double)>& potential, double kinetic,
                 const GridSpec& spec) {
    const int m = spec.num_points - 2;  // Dirichlet interior
    Tridiag t;
    t.t_min = spec.t_min;
    t.h = spec.spacing();
    const double k2 = kinetic / (t.h * t.h);
    t.d.resize(static_cast<size_t>(m));
    t.e.assign(static_cast<size_t>(m - 1), -k2);
    for (int i = 0; i < m; ++i) {
        t.d[static_cast<size_t>(i)] = 2.0 * k2 + potential(spec.t_min + (i + 1) * t.h);
    }
    return t;
}

// Bisection for the k-th (0-based) eigenvalue between Gerschgorin bounds.
double bisect_eigenvalue(const Tridiag& t, int k, double lo, double hi, double scale) {
    const double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 20000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * eps * (std::abs(lo) + std::abs(hi)) + 1e-300) {
            return mid;
        }
        if (detail::sturm_count_below(t.d, t.e, mid) >= k + 1) {
            hi = mid;
        } else {
            lo = mid;
        }
        (void)scale;
    }
    throw numerical_error("bisect_eigenvalue: interval failed to contract after 20000 steps");
}

// One inverse-iteration solve of (T - lambda I) y = x, partial pivoting.
void solve_shifted(const Tridiag& t, double lambda, std::vector<double>& x) {
    const size_t m = t.d.size();
    std::vector<double> a(m), b(m), c(m, 0.0);  // diag, super1, super2 after pivoting
    std::vector<double> sub(m, 0.0);
    for (size_t i = 0; i < m; ++i) a[i] = t.d[i] - lambda;
    std::vector<double> low(m - 1);
    for (size_t i = 0; i + 1 < m; ++i) low[i] = t.e[i];
    for (size_t i = 0; i + 1 < m; ++i) b[i] = t.e[i];
    b[m - 1] = 0.0;

    const double tiny = std::numeric_limits<double>::min() * 1e4;
    for (size_t i = 0; i + 1 < m; ++i) {
        if (std::abs(low[i]) > std::abs(a[i])) {
            std::swap(a[i], low[i]);
            std::swap(b[i], a[i + 1]);
            std::swap(c[i], b[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (std::abs(a[i]) < tiny) a[i] = tiny;
        const double f = low[i] / a[i];
        a[i + 1] -= f * b[i];
        b[i + 1] -= f * c[i];
        x[i + 1] -= f * x[i];
    }
    if (std::abs(a[m - 1]) < tiny) a[m - 1] = tiny;
    x[m - 1] /= a[m - 1];
    if (m >= 2) {
        x[m - 2] = (x[m - 2] - b[m - 2] * x[m - 1]) / a[m - 2];
    }
    for (size_t ii = m; ii-- > 2;) {
        const size_t i = ii - 2;
        x[i] = (x[i] - b[i] * x[i + 1] - c[i] * x[i + 2]) / a[i];
    }
}

void normalize_vec(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    if (s > 0.0) {
        for (double& x : v) x /= s;
    }
}

std::vector<double> inverse_iteration(const Tridiag& t, double lambda,
                                      const std::vector<std::vector<double>>& previous,
                                      double cluster_tol,
                                      const std::vector<double>& prev_lambdas) {
    const size_t m = t.d.size();
    std::vector<double> v(m);
    for (size_t i = 0; i < m; ++i) {
        v[i] = std::sin(0.7 + 1.9 * static_cast<double>(i + 1));
    }
    normalize_vec(v);
    for (int it = 0; it < 4; ++it) {
        solve_shifted(t, lambda, v);
        // Project out close neighbours to keep clustered pairs orthogonal.
        for (size_t j = 0; j < previous.size(); ++j) {
            if (std::abs(prev_lambdas[j] - lambda) > cluster_tol) continue;
            double dot = 0.0;
            for (size_t i = 0; i < m; ++i) dot += v[i] * previous[j][i];
            for (size_t i = 0; i < m; ++i) v[i] -= dot * previous[j][i];
        }
        normalize_vec(v);
    }
    // Deterministic sign: the largest component points up.
    size_t imax = 0;
    for (size_t i = 1; i < m; ++i) {
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    }
    if (v[imax] < 0.0) {
        for (double& x : v) x = -x;
    }
    return v;
}

std::vector<double> eigenvalues_only(const std::function<double(double)>& potential,
                                     double kinetic, const GridSpec& spec, int count) {
    const Tridiag t = assemble(potential, kinetic, spec);
    const size_t m = t.d.size();
    double lo = t.d[0], hi = t.d[0];
    for (size_t i = 0; i < m; ++i) {
        const double r = (i > 0 ? std::abs(t.e[i - 1]) : 0.0) +
                         (i + 1 < m ? std::abs(t.e[i]) : 0.0);
        lo = std::min(lo, t.d[i] - r);
        hi = std::max(hi, t.d[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));
    lo -= 1e-12 * scale;
    hi += 1e-12 * scale;
    std::vector<double> vals(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        vals[static_cast<size_t>(k)] = bisect_eigenvalue(t, k, lo, hi, scale);
        lo = vals[static_cast<size_t>(k)];  // eigenvalues ascend
    }
    return vals;
}

}  // namespace

GridSolution solve_spectrum_on_grid(const std::function<double(double)>& potential,
                                    double kinetic_coeff, const GridSpec& spec,
                                    int count, bool with_convergence) {
    spec.validate();
    if (kinetic_coeff <= 0.0 || !std::isfinite(kinetic_coeff)) {
        throw invalid_parameter("solve_spectrum_on_grid: kinetic coefficient must be > 0");
    }
    if (count < 1) throw invalid_parameter("solve_spectrum_on_grid: count must be >= 1");
    if (count > spec.num_points / 4) {
        throw invalid_parameter("solve_spectrum_on_grid: count " + std::to_string(count) +
                                " too large for " + std::to_string(spec.num_points) +
                                " grid points (must be <= num_points/4)");
    }

    const Tridiag t = assemble(potential, kinetic_coeff, spec);
    GridSolution sol;
    sol.spec = spec;
    sol.eigenvalues = eigenvalues_only(potential, kinetic_coeff, spec, count);

    const double scale = std::abs(sol.eigenvalues.back()) + std::abs(sol.eigenvalues[0]);
    const double cluster_tol = 1e-8 * scale + 1e-300;
    std::vector<std::vector<double>> interior;
    for (int k = 0; k < count; ++k) {
        interior.push_back(inverse_iteration(t, sol.eigenvalues[static_cast<size_t>(k)],
                                             interior, cluster_tol, sol.eigenvalues));
    }
    for (auto& v : interior) {
        std::vector<double> full(static_cast<size_t>(spec.num_points), 0.0);
        std::copy(v.begin(), v.end(), full.begin() + 1);
        sol.eigenvectors.push_back(std::move(full));
    }

    if (with_convergence) {
        GridSpec half = spec;
        half.num_points = (spec.num_points + 1) / 2;
        const auto coarse = eigenvalues_only(potential, kinetic_coeff, half, count);
        sol.convergence_rel.resize(static_cast<size_t>(count));
        for (int k = 0; k < count; ++k) {
            const double fine = sol.eigenvalues[static_cast<size_t>(k)];
            sol.convergence_rel[static_cast<size_t>(k)] =
                std::abs(fine - coarse[static_cast<size_t>(k)]) /
                std::max(std::abs(fine), 1e-300);
        }
    }
    return sol;
}

GridSolution solve_grid_spectrum(const PotentialConfig& config, const UnitSystem& units,
                                 const GridSpec& spec, int count) {
    config.validate();
    const double kinetic =
        units.hbar_eV_ns * units.hbar_eV_ns / (2.0 * mass_energy(units, config.molecule.mu));
    return solve_spectrum_on_grid([&](double t) { return evaluate_potential(config, t); },
                                  kinetic, spec, count);
}

double residual_norm(const PotentialConfig& config, const UnitSystem& units,
                     double cPn_eV, std::span<const double> psi_on_grid,
                     const GridSpec& spec) {
    spec.validate();
    if (static_cast<int>(psi_on_grid.size()) != spec.num_points) {
        throw invalid_parameter("residual_norm: psi has " +
                                std::to_string(psi_on_grid.size()) + " entries, grid has " +
                                std::to_string(spec.num_points));
    }
    double norm2 = 0.0;
    for (double v : psi_on_grid) norm2 += v * v;
    const double norm = std::sqrt(norm2);
    if (norm <= 1e-12) {
        throw invalid_parameter("residual_norm: degenerate input, ||psi|| <= 1e-12");
    }
    const double kinetic =
        units.hbar_eV_ns * units.hbar_eV_ns / (2.0 * mass_energy(units, config.molecule.mu));
    const double h = spec.spacing();
    const double k2 = kinetic / (h * h);
    double r2 = 0.0;
    for (int i = 1; i + 1 < spec.num_points; ++i) {
        const size_t u = static_cast<size_t>(i);
        const double t = spec.t_min + i * h;
        const double hpsi = -k2 * (psi_on_grid[u + 1] - 2.0 * psi_on_grid[u] +
                                   psi_on_grid[u - 1]) +
                            evaluate_potential(config, t) * psi_on_grid[u];
        const double r = hpsi - cPn_eV * psi_on_grid[u];
        r2 += r * r;
    }
    return std::sqrt(r2) / norm;
}

GridSpec domain_advisor(const PotentialConfig& config, const UnitSystem& units,
                        int levels) {
    config.validate();
    units.validate();
    if (levels < 1) throw invalid_parameter("domain_advisor: levels must be >= 1");
    const MoleculeParams& m = config.molecule;
    const double alpha = config.alpha;
    const double mc2 = mass_energy(units, m.mu);
    const double se = std::exp(2.0 * alpha * (m.te - m.t0)) / m.q;

    // Harmonic scale at the minimum: V''(te) = 8 De alpha^2 se^2 / (1-se)^2.
    const double vpp = 8.0 * m.De * alpha * alpha * se * se / ((1.0 - se) * (1.0 - se));
    const double omega = std::sqrt(vpp / mc2);
    const double w = std::sqrt(units.hbar_eV_ns / (mc2 * omega));

    const double half = w * (3.0 * std::sqrt(2.0 * levels + 1.0) + 10.0);
    double t_lo = m.te - half;
    double t_hi = m.te + half;

    // Clip on the right by the time where V reaches De (1 - 1e-4).
    const double r = std::sqrt(1.0 - 1e-4);
    const double s_turn = (se - r) / (1.0 - r);
    if (s_turn * m.q > 0.0) {
        const double t_turn = m.t0 + std::log(s_turn * m.q) / (2.0 * alpha);
        t_hi = std::min(t_hi, t_turn + 1.0 / alpha);
    }
    // For q > 0 the denominator vanishes at finite time; stay clear of it.
    if (m.q > 0.0) {
        const double t_pole = m.t0 + std::log(m.q) / (2.0 * alpha);
        t_hi = std::min(t_hi, t_pole - 1e-3 / alpha);
    }
    if (!(t_lo < t_hi)) {
        throw numerical_error("domain_advisor: clipped interval is empty");
    }

    GridSpec spec;
    spec.t_min = t_lo;
    spec.t_max = t_hi;
    const double target_h = w / 32.0;
    long np = static_cast<long>(std::ceil((t_hi - t_lo) / target_h)) + 1;
    np = std::clamp(np, 2049L, 200001L);
    np |= 1;  // odd point count halves cleanly for the convergence solve
    spec.num_points = static_cast<int>(np);
    return spec;
}

}  // namespace fhidep
