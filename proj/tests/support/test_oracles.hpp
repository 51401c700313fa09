#pragma once

// Test-side oracles, kept independent of the library implementation paths
// they are used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace oracles {

// Deterministic uniform draws: identical sequences on every platform.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen_() % static_cast<uint64_t>(hi - lo + 1));
    }

  private:
    std::mt19937_64 gen_;
};

// Generalized binomial coefficient C(z, m) for integer m >= 0.
inline double binom(double z, int m) {
    double r = 1.0;
    for (int j = 1; j <= m; ++j) r *= (z - m + j) / j;
    return r;
}

// Jacobi polynomial by the explicit finite sum,
// P_n^{(a,b)}(x) = sum_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^{n-k}.
inline double jacobi_finite_sum(int n, double a, double b, double x) {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
        total += binom(n + a, n - k) * binom(n + b, k) *
                 std::pow((x - 1.0) / 2.0, k) * std::pow((x + 1.0) / 2.0, n - k);
    }
    return total;
}

// First and second derivative via the parameter-shift identity
// d/dx P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)}.
inline double djacobi_finite_sum(int n, double a, double b, double x) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_finite_sum(n - 1, a + 1.0, b + 1.0, x);
}

inline double d2jacobi_finite_sum(int n, double a, double b, double x) {
    if (n <= 1) return 0.0;
    return 0.25 * (n + a + b + 1.0) * (n + a + b + 2.0) *
           jacobi_finite_sum(n - 2, a + 2.0, b + 2.0, x);
}

// Tanh-sinh quadrature over (-1, 1). The integrand receives x together with
// stable distances to the endpoints so it can handle singular weight factors.
inline double tanh_sinh(const std::function<double(double x, double one_minus_x,
                                                   double one_plus_x)>& f) {
    const double tmax = 3.5;
    double h = 0.5;
    const auto g = [&](double t) {
        const double z = 0.5 * M_PI * std::sinh(t);
        const double u = std::tanh(z);
        const double dist_hi = 2.0 / (1.0 + std::exp(2.0 * z));   // 1 - u
        const double dist_lo = 2.0 / (1.0 + std::exp(-2.0 * z));  // 1 + u
        const double du = 0.5 * M_PI * std::cosh(t) /
                          (std::cosh(z) * std::cosh(z));
        if (du < 1e-290) return 0.0;
        return f(u, dist_hi, dist_lo) * du;
    };
    double total = 0.0;
    for (double t = -tmax; t <= tmax + h / 2; t += h) total += g(t);
    total *= h;
    double prev = total;
    for (int level = 1; level < 12; ++level) {
        h /= 2;
        double add = 0.0;
        for (double t = -tmax + h; t < tmax; t += 2 * h) add += g(t);
        total = total / 2 + add * h;
        if (level > 4 && std::abs(total - prev) < 1e-15 * (1.0 + std::abs(total))) break;
        prev = total;
    }
    return total;
}

// One synthetic coefficient set for the mathematical (0,1) domain, with a
// standard-family quantization root zeta1 >= 0.25 for every n <= 3.
struct SyntheticSet {
    double A, C, L;
    double inv_R;
    std::array<double, 4> zeta1_root;  // the closed-form root per level
};

inline SyntheticSet draw_synthetic_set(Rng& rng) {
    for (;;) {
        SyntheticSet s;
        s.A = rng.uniform(4.0, 60.0);
        s.C = rng.uniform(-20.0, 2.0 * s.A - 4.0);
        s.L = rng.uniform(s.C - s.A - 40.0, s.C - s.A);
        const double disc = s.C - s.A - s.L + 0.25;
        if (disc < 0.05) continue;
        s.inv_R = 0.5 + std::sqrt(disc);
        bool ok = true;
        for (int n = 0; n <= 3; ++n) {
            const double z1 = (2.0 * s.A - s.C - n * n - (2.0 * n + 1.0) * s.inv_R) /
                              (2.0 * (n + s.inv_R));
            if (z1 < 0.25) {
                ok = false;
                break;
            }
            s.zeta1_root[static_cast<size_t>(n)] = z1;
        }
        if (ok) return s;
    }
}

/**
 * Scaled sup-norm residual of the dimensionless equation in polynomial form,
 *   sigma^2 psi'' + sigma (1-s) psi' + (-zeta1^2 + zeta2 s - zeta3 s^2) psi,
 * evaluated with analytic derivatives assembled from the finite-sum Jacobi
 * oracle (independent of the library's recurrence path).
 */
inline double ode_residual_supnorm(double zeta1, double inv_R, double zeta2,
                                   double zeta3, int n, double s_lo, double s_hi,
                                   int points) {
    const double a = 2.0 * zeta1;
    const double b = 2.0 * inv_R - 1.0;
    double res_max = 0.0, psi_max = 0.0;
    for (int i = 0; i < points; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / (points - 1);
        const double x = 1.0 - 2.0 * s;
        const double P = jacobi_finite_sum(n, a, b, x);
        const double dP = -2.0 * djacobi_finite_sum(n, a, b, x);
        const double d2P = 4.0 * d2jacobi_finite_sum(n, a, b, x);
        const double f = std::pow(s, zeta1) * std::pow(1.0 - s, inv_R);
        const double lf = zeta1 / s - inv_R / (1.0 - s);  // f'/f
        const double d2f_over_f = zeta1 * (zeta1 - 1.0) / (s * s) -
                                  2.0 * zeta1 * inv_R / (s * (1.0 - s)) +
                                  inv_R * (inv_R - 1.0) / ((1.0 - s) * (1.0 - s));
        const double psi = f * P;
        const double dpsi = f * (lf * P + dP);
        const double d2psi = f * (d2f_over_f * P + 2.0 * lf * dP + d2P);
        const double sig = s * (1.0 - s);
        const double sigt = -zeta1 * zeta1 + zeta2 * s - zeta3 * s * s;
        const double r = sig * sig * d2psi + sig * (1.0 - s) * dpsi + sigt * psi;
        res_max = std::max(res_max, std::abs(r));
        psi_max = std::max(psi_max, std::abs(psi));
    }
    const double scale =
        psi_max * (1.0 + zeta1 * zeta1 + std::abs(zeta2) + std::abs(zeta3));
    return res_max / scale;
}

// Minimal XML well-formedness check: tag balance, quoting, one root element.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    size_t i = 0;
    int roots = 0;
    const auto skip_decl = [&](const char* open, const char* close) {
        if (text.compare(i, std::strlen(open), open) == 0) {
            const size_t end = text.find(close, i);
            if (end == std::string::npos) return false;
            i = end + std::strlen(close);
            return true;
        }
        return false;
    };
    while (i < text.size()) {
        if (text[i] != '<') {
            if (text[i] == '>') return false;
            ++i;
            continue;
        }
        if (skip_decl("<?", "?>") || skip_decl("<!--", "-->")) continue;
        const size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        const bool closing = tag[0] == '/';
        const bool self_closing = tag.back() == '/';
        if (closing) {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else {
            std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
            if (name.empty()) return false;
            // attribute quotes must balance
            if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
            if (!self_closing) {
                if (stack.empty()) ++roots;
                stack.push_back(name);
            } else if (stack.empty()) {
                ++roots;
            }
        }
        if (roots > 1) return false;
    }
    return stack.empty() && roots == 1;
}

}  // namespace oracles
