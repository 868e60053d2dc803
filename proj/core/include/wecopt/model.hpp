#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wecopt/geometry.hpp"

namespace wecopt {

inline constexpr double kGravity = 9.81;         // m/s^2
inline constexpr double kWaterDensity = 1025.0;  // kg/m^3

// Physical constants of one fully submerged three-tether converter.
// Defaults are the reference CETO-like buoy.
struct WecParameters {
    double buoy_radius = 5.0;          // m
    double water_depth = 50.0;         // m
    double submergence_depth = 8.0;    // m
    double mass = 376.0e3;             // kg
    double tether_angle_deg = 55.0;    // degrees; carried but unused by the point-absorber kernel
    double pto_stiffness = 2.7e5;      // N/m
    double pto_damping = 1.3e5;        // N s/m

    // Throws DomainError when an invariant is violated.
    void validate() const;
};

// Hydrodynamic coefficients of a layout at one (omega, beta). Rows and columns
// are ordered (surge, sway, heave) per buoy, buoys in layout order.
struct HydroCoefficients {
    double omega = 0.0;
    double beta = 0.0;
    Eigen::MatrixXd added_mass;      // A, 3N x 3N
    Eigen::MatrixXd radiation_damping;  // B, 3N x 3N
    Eigen::VectorXcd excitation;     // F_exc, 3N, per unit wave amplitude
};

struct MotionSolution {
    double omega = 0.0;
    double beta = 0.0;
    Eigen::VectorXcd displacement;   // 3N complex amplitudes
};

struct PowerBreakdown {
    double total = 0.0;              // W
    std::vector<double> per_buoy;    // W
};

struct RadiationMatrices {
    Eigen::MatrixXd added_mass;
    Eigen::MatrixXd radiation_damping;
};

// Source of A, B and F_exc. The optimizers only see this interface, so an
// exact multiple-scattering backend can replace the point-absorber model.
class InteractionKernel {
public:
    virtual ~InteractionKernel() = default;

    // A and B at omega. Independent of wave heading.
    virtual RadiationMatrices radiation(const Layout& layout, const WecParameters& params,
                                        double omega) const = 0;

    // Excitation per unit amplitude for heading beta (rad).
    virtual Eigen::VectorXcd excitation(const Layout& layout, const WecParameters& params,
                                        double omega, double beta) const = 0;
};

// Point-absorber approximation for identical deeply submerged spheres.
//
//   a_iso     = (2/3) pi rho r^3
//   b_iso(w)  = rho g pi r^2 / w * (k r)^3 * exp(-2 k d_s)
//   B_ij      = b_iso sinc(k d_ij)
//   A_ij      = -(b_iso / w) cos(k d_ij) / (k d_ij)
//   F_i       = rho g pi r^2 exp(-k d_s) (cos b, sin b, i) exp(i k (x_i cos b + y_i sin b))
//
// The same scalar coupling applies to surge, sway and heave; there is no
// coupling between different DOFs. sinc is a positive-definite function, so
// B is PSD for any layout.
class PointAbsorberKernel final : public InteractionKernel {
public:
    RadiationMatrices radiation(const Layout& layout, const WecParameters& params,
                                double omega) const override;
    Eigen::VectorXcd excitation(const Layout& layout, const WecParameters& params,
                                double omega, double beta) const override;

    static double isolated_added_mass(const WecParameters& params);
    static double isolated_damping(const WecParameters& params, double omega);
    static double excitation_magnitude(const WecParameters& params, double omega);
};

// Shared default kernel instance.
const InteractionKernel& default_kernel();

// Deep-water dispersion k = omega^2 / g.
double dispersion_wavenumber(double omega);

// Throws DegenerateGeometryError when two buoys coincide.
HydroCoefficients kernel_matrices(const Layout& layout, const WecParameters& params,
                                  double omega, double beta,
                                  const InteractionKernel& kernel = default_kernel());

// Solves (-(M+A) w^2 + (B+B_pto) i w + K_pto) x = F_exc.
// Throws NumericalError when the condition estimate exceeds 1e12 or the
// residual bound 1e-8 (|F| + 1) fails.
MotionSolution solve_motion(const HydroCoefficients& coeffs, const WecParameters& params);

// (w^2 / 2) x^H B_pto x, split per buoy.
PowerBreakdown regular_wave_power(const MotionSolution& motion, const WecParameters& params);

PowerBreakdown farm_power_regular(const Layout& layout, const WecParameters& params,
                                  double omega, double beta,
                                  const InteractionKernel& kernel = default_kernel());

// Per-buoy regular-wave power over a (beta, omega) grid. Each omega is
// factorized once and reused for every heading.
class RegularPowerGrid {
public:
    RegularPowerGrid(std::size_t n_buoys, std::size_t n_betas, std::size_t n_omegas)
        : n_buoys_(n_buoys), n_betas_(n_betas), n_omegas_(n_omegas),
          values_(n_buoys * n_betas * n_omegas, 0.0) {}

    double& at(std::size_t beta_idx, std::size_t omega_idx, std::size_t buoy) {
        return values_[(beta_idx * n_omegas_ + omega_idx) * n_buoys_ + buoy];
    }
    double at(std::size_t beta_idx, std::size_t omega_idx, std::size_t buoy) const {
        return values_[(beta_idx * n_omegas_ + omega_idx) * n_buoys_ + buoy];
    }

    std::size_t n_buoys() const noexcept { return n_buoys_; }
    std::size_t n_betas() const noexcept { return n_betas_; }
    std::size_t n_omegas() const noexcept { return n_omegas_; }

private:
    std::size_t n_buoys_;
    std::size_t n_betas_;
    std::size_t n_omegas_;
    std::vector<double> values_;
};

RegularPowerGrid farm_power_grid(const Layout& layout, const WecParameters& params,
                                 std::span<const double> betas,
                                 std::span<const double> omegas,
                                 const InteractionKernel& kernel = default_kernel());

}  // namespace wecopt
