#include "wecopt/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wecopt/errors.hpp"

namespace wecopt {

namespace {

constexpr double kMaxCondition = 1e12;
constexpr double kResidualTolerance = 1e-8;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

void check_layout(const Layout& layout) {
    if (layout.empty()) throw DomainError("layout must contain at least one buoy");
    if (!layout.all_finite()) throw DomainError("layout contains a non-finite coordinate");
    for (std::size_t i = 0; i < layout.size(); ++i) {
        for (std::size_t j = i + 1; j < layout.size(); ++j) {
            if (layout[i] == layout[j]) {
                std::ostringstream msg;
                msg << "buoys " << i << " and " << j << " coincide";
                throw DegenerateGeometryError(msg.str());
            }
        }
    }
}

// Expands a per-buoy scalar coupling matrix to the 3N (surge, sway, heave) system.
Eigen::MatrixXd expand_dofs(const Eigen::MatrixXd& scalar) {
    const Eigen::Index n = scalar.rows();
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index c = 0; c < 3; ++c) full(3 * i + c, 3 * j + c) = scalar(i, j);
        }
    }
    return full;
}

// Factorized system matrix of one frequency.
class FrequencySystem {
public:
    FrequencySystem(const Eigen::MatrixXd& added_mass, const Eigen::MatrixXd& damping,
                    const WecParameters& params, double omega, double beta)
        : omega_(omega), beta_(beta) {
        const Eigen::Index n = added_mass.rows();
        const std::complex<double> jw(0.0, omega);
        system_ = (-(omega * omega) * added_mass).cast<std::complex<double>>() + jw * damping.cast<std::complex<double>>();
        const std::complex<double> diag =
            -(omega * omega) * params.mass + jw * params.pto_damping + params.pto_stiffness;
        for (Eigen::Index i = 0; i < n; ++i) system_(i, i) += diag;

        lu_.compute(system_);
        const double rcond = lu_.rcond();
        if (!std::isfinite(rcond) || rcond * kMaxCondition < 1.0) {
            std::ostringstream msg;
            msg << "ill-conditioned motion system (rcond " << rcond << ") at omega=" << omega
                << " beta=" << beta;
            throw NumericalError(msg.str(), omega, beta);
        }
    }

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs, double beta) const {
        Eigen::VectorXcd x = lu_.solve(rhs);
        const double residual = (system_ * x - rhs).norm();
        if (!x.allFinite() || !(residual <= kResidualTolerance * (rhs.norm() + 1.0))) {
            std::ostringstream msg;
            msg << "motion solve residual " << residual << " too large at omega=" << omega_
                << " beta=" << beta;
            throw NumericalError(msg.str(), omega_, beta);
        }
        return x;
    }

private:
    double omega_;
    double beta_;
    Eigen::MatrixXcd system_;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

void accumulate_power(const Eigen::VectorXcd& x, double omega, const WecParameters& params,
                      std::span<double> per_buoy) {
    const double scale = 0.5 * omega * omega * params.pto_damping;
    for (std::size_t b = 0; b < per_buoy.size(); ++b) {
        double sq = 0.0;
        for (Eigen::Index c = 0; c < 3; ++c) sq += std::norm(x(3 * static_cast<Eigen::Index>(b) + c));
        per_buoy[b] = scale * sq;
    }
}

}  // namespace

void WecParameters::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(what);
    };
    require(buoy_radius > 0.0, "buoy_radius must be positive");
    require(water_depth > 0.0, "water_depth must be positive");
    require(submergence_depth > 0.0, "submergence_depth must be positive");
    require(submergence_depth < water_depth, "submergence_depth must be below water_depth");
    require(mass > 0.0, "mass must be positive");
    require(tether_angle_deg > 0.0 && tether_angle_deg < 90.0, "tether_angle must lie in (0, 90) degrees");
    require(pto_stiffness > 0.0, "pto_stiffness must be positive");
    require(pto_damping > 0.0, "pto_damping must be positive");
}

double dispersion_wavenumber(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be positive");
    return omega * omega / kGravity;
}

double PointAbsorberKernel::isolated_added_mass(const WecParameters& params) {
    const double r = params.buoy_radius;
    return 2.0 / 3.0 * std::numbers::pi * kWaterDensity * r * r * r;
}

double PointAbsorberKernel::isolated_damping(const WecParameters& params, double omega) {
    const double k = dispersion_wavenumber(omega);
    const double r = params.buoy_radius;
    const double b0 = kWaterDensity * kGravity * std::numbers::pi * r * r / omega;
    const double kr = k * r;
    return b0 * kr * kr * kr * std::exp(-2.0 * k * params.submergence_depth);
}

double PointAbsorberKernel::excitation_magnitude(const WecParameters& params, double omega) {
    const double k = dispersion_wavenumber(omega);
    const double r = params.buoy_radius;
    return kWaterDensity * kGravity * std::numbers::pi * r * r * std::exp(-k * params.submergence_depth);
}

RadiationMatrices PointAbsorberKernel::radiation(const Layout& layout, const WecParameters& params,
                                                 double omega) const {
    check_layout(layout);
    const double k = dispersion_wavenumber(omega);
    const double a_iso = isolated_added_mass(params);
    const double b_iso = isolated_damping(params, omega);

    const auto n = static_cast<Eigen::Index>(layout.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, i) = a_iso;
        b(i, i) = b_iso;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double kd = k * distance(layout[static_cast<std::size_t>(i)],
                                           layout[static_cast<std::size_t>(j)]);
            const double bij = b_iso * sinc(kd);
            const double aij = -(b_iso / omega) * std::cos(kd) / kd;
            b(i, j) = b(j, i) = bij;
            a(i, j) = a(j, i) = aij;
        }
    }
    return {expand_dofs(a), expand_dofs(b)};
}

Eigen::VectorXcd PointAbsorberKernel::excitation(const Layout& layout, const WecParameters& params,
                                                 double omega, double beta) const {
    check_layout(layout);
    const double k = dispersion_wavenumber(omega);
    const double f0 = excitation_magnitude(params, omega);
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);

    const auto n = static_cast<Eigen::Index>(layout.size());
    Eigen::VectorXcd f(3 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = layout[static_cast<std::size_t>(i)];
        const std::complex<double> phase = std::polar(f0, k * (p.x * cb + p.y * sb));
        f(3 * i + 0) = phase * cb;
        f(3 * i + 1) = phase * sb;
        f(3 * i + 2) = phase * std::complex<double>(0.0, 1.0);
    }
    return f;
}

const InteractionKernel& default_kernel() {
    static const PointAbsorberKernel kernel;
    return kernel;
}

HydroCoefficients kernel_matrices(const Layout& layout, const WecParameters& params, double omega,
                                  double beta, const InteractionKernel& kernel) {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    auto rad = kernel.radiation(layout, params, omega);
    HydroCoefficients out;
    out.omega = omega;
    out.beta = beta;
    out.added_mass = std::move(rad.added_mass);
    out.radiation_damping = std::move(rad.radiation_damping);
    out.excitation = kernel.excitation(layout, params, omega, beta);
    return out;
}

MotionSolution solve_motion(const HydroCoefficients& coeffs, const WecParameters& params) {
    const Eigen::Index n = coeffs.excitation.size();
    if (n == 0 || n % 3 != 0 || coeffs.added_mass.rows() != n || coeffs.added_mass.cols() != n ||
        coeffs.radiation_damping.rows() != n || coeffs.radiation_damping.cols() != n) {
        throw DomainError("hydrodynamic coefficient dimensions are inconsistent");
    }
    FrequencySystem system(coeffs.added_mass, coeffs.radiation_damping, params, coeffs.omega,
                           coeffs.beta);
    return {coeffs.omega, coeffs.beta, system.solve(coeffs.excitation, coeffs.beta)};
}

PowerBreakdown regular_wave_power(const MotionSolution& motion, const WecParameters& params) {
    const Eigen::Index n = motion.displacement.size();
    if (n % 3 != 0 || !motion.displacement.allFinite()) {
        throw DomainError("motion solution must hold finite 3N entries");
    }
    PowerBreakdown out;
    out.per_buoy.assign(static_cast<std::size_t>(n / 3), 0.0);
    accumulate_power(motion.displacement, motion.omega, params, out.per_buoy);
    for (double p : out.per_buoy) out.total += p;
    return out;
}

PowerBreakdown farm_power_regular(const Layout& layout, const WecParameters& params, double omega,
                                  double beta, const InteractionKernel& kernel) {
    return regular_wave_power(solve_motion(kernel_matrices(layout, params, omega, beta, kernel), params),
                              params);
}

RegularPowerGrid farm_power_grid(const Layout& layout, const WecParameters& params,
                                 std::span<const double> betas, std::span<const double> omegas,
                                 const InteractionKernel& kernel) {
    RegularPowerGrid grid(layout.size(), betas.size(), omegas.size());
    std::vector<double> per_buoy(layout.size());
    for (std::size_t w = 0; w < omegas.size(); ++w) {
        const double omega = omegas[w];
        if (!(omega > 0.0)) throw DomainError("omega must be positive");
        const auto rad = kernel.radiation(layout, params, omega);
        const FrequencySystem system(rad.added_mass, rad.radiation_damping, params, omega,
                                     betas.empty() ? 0.0 : betas.front());
        for (std::size_t b = 0; b < betas.size(); ++b) {
            const auto x = system.solve(kernel.excitation(layout, params, omega, betas[b]), betas[b]);
            accumulate_power(x, omega, params, per_buoy);
            for (std::size_t i = 0; i < layout.size(); ++i) grid.at(b, w, i) = per_buoy[i];
        }
    }
    return grid;
}

}  // namespace wecopt
