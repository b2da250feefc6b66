// SPDX-License-Identifier: Apache-2.0
// Mild-form solver for u_t = u_xx + f(x, u) + d/dx g(x, u) + sigma(t, x) dmu/dx
// by Picard iteration of
//   (A u)(t) = S(t) u0 + J1 f(pi_N u) + J2 (-g(pi_N u)) + theta(t).
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "smpde/grid.hpp"
#include "smpde/heat.hpp"
#include "smpde/measure.hpp"
#include "smpde/profile.hpp"
#include "smpde/stochastic_convolution.hpp"

namespace smpde {

/// f(y, r) = a(y) + k r  (linear)  or  a(y) + k sin r  (sine).
struct DriftSpec {
    enum class Kind { zero, linear, sine };
    Kind kind = Kind::zero;
    Profile a{};
    double k = 0.0;

    double operator()(double y, double r) const;
};

/// g(y, r) = g1 + g2 with g1 = b(y) + k1 r and g2 = c2 r^2.
struct FluxSpec {
    Profile b{};
    double k1 = 0.0;
    double c2 = 0.0;

    double operator()(double y, double r) const;
};

struct InitialSpec {
    enum class Kind { zero, heat_kernel, bump, profile };
    Kind kind = Kind::zero;
    double t0 = 1.0;        // heat_kernel: p(t0, y - center)
    double l2_norm = 1.0;   // bump: Gaussian rescaled to this discrete L2 norm
    double width = 1.0;     // bump: exp(-((y - center) / width)^2)
    double center = 0.0;
    Profile shape{};        // profile: u0 = shape(y)

    static InitialSpec zero() { return {}; }
    static InitialSpec heat_kernel(double t0, double center = 0.0);
    static InitialSpec bump(double l2_norm, double width, double center = 0.0);
    static InitialSpec from_profile(Profile p);

    Field on(const GridSpec& grid) const;
};

std::string to_string(DriftSpec::Kind kind);
DriftSpec::Kind drift_kind_from_string(const std::string& name);
std::string to_string(InitialSpec::Kind kind);
InitialSpec::Kind initial_kind_from_string(const std::string& name);

struct CoefficientSet {
    /// Declared growth and Lipschitz constants:
    ///   |f| <= |a(y)| + K |r|,  |g1| <= |b(y)| + K |r|,  |g2| <= K r^2,
    ///   |f(r1) - f(r2)|, |g1(r1) - g1(r2)| <= L |r1 - r2|.
    struct Declared {
        double K = 0.0;
        double L = 0.0;
    };

    InitialSpec u0{};
    DriftSpec f{};
    FluxSpec g{};
    SigmaSpec sigma{};
    std::optional<Declared> declared;  // derived from the coefficients when absent

    Declared constants() const;
    /// Spot-checks the declared bounds on 1e3 random (y, r1, r2); throws AssumptionError.
    void validate() const;

    static CoefficientSet heat();
    /// f = 0, g = r^2 / 2, u0 a bump of L2 norm 1, sigma constant.
    static CoefficientSet burgers(double sigma_value = 0.0);
};

struct SolverConfig {
    GridSpec grid{};
    double N = 0.0;  // <= 0: select_N heuristic
    double lambda_weight = 0.0;  // <= 0: 50 / T
    std::size_t max_iter = 100;
    double tol = 1e-10;
    bool adaptive_N = false;
    std::size_t max_retries = 8;
    double n_margin = 4.0;
    enum class Start { semigroup_plus_theta, zero };
    Start start = Start::semigroup_plus_theta;

    double effective_lambda() const { return lambda_weight > 0.0 ? lambda_weight : 50.0 / grid.t_max; }
    void validate() const;
};

struct SolveReport {
    std::size_t iterations = 0;
    std::vector<double> successive_distances;
    double final_residual = 0.0;
    double sup_t_l2_norm = 0.0;
    bool cutoff_active = false;
    double N_used = 0.0;
    std::size_t retries = 0;
    double wall_time = 0.0;
};

struct SolveResult {
    SpaceTimeField u;
    SolveReport report;
};

/// Radial projection onto the L2 ball of radius N.
Field project_pi_n(const Field& v, double N);
void project_pi_n_inplace(std::span<double> v, double dx, double N);

/// sqrt of the trapezoid rule for int_0^T e^{-lambda t} ||u(t)||^2 dt.
double weighted_norm(const SpaceTimeField& u, double lambda_weight);

struct R1R2 {
    double r1 = 0.0;
    double r2 = 0.0;
};
/// R1 = sup_t (||z||_2^2 + ||z||_4^4 + ||z||_inf^2), R2 = sup_t ||z||_inf^2.
R1R2 compute_r1_r2(const SpaceTimeField& zeta);

struct NSelection {
    double N = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
};
/// N = margin (||u0|| + sup_t ||theta(t)|| + 1).
NSelection select_N(const Field& u0, const SpaceTimeField& theta, double margin = 4.0);

/// Precomputed pieces shared by every Picard step on one problem.
class MildOperator {
public:
    MildOperator(const CoefficientSet& coeffs, SpaceTimeField theta);

    const GridSpec& grid() const { return grid_; }
    const Field& u0() const { return u0_; }
    const SpaceTimeField& theta() const { return theta_; }
    const SpaceTimeField& free_part() const { return free_; }  // S(t) u0 + theta
    const HeatOperators& heat() const { return heat_; }

    /// A u with cutoff N; N = +inf gives the uncut operator.
    SpaceTimeField apply(const SpaceTimeField& u, double N) const;

private:
    GridSpec grid_;
    CoefficientSet coeffs_;
    Field u0_;
    SpaceTimeField theta_;
    HeatOperators heat_;
    SpaceTimeField free_;
};

SpaceTimeField apply_A(const SpaceTimeField& u, const CoefficientSet& coeffs, const SpaceTimeField& theta, double N);

/// Picard iteration with a precomputed theta.
SolveResult picard_solve(const MildOperator& op, const SolverConfig& config);
/// Computes theta from the sample, then iterates.
SolveResult picard_solve(const CoefficientSet& coeffs, const MeasureSample& sample, const SolverConfig& config);

/// weighted_norm(u - A u) for the uncut operator.
double uncut_residual(const MildOperator& op, const SpaceTimeField& u, double lambda_weight);

}  // namespace smpde
