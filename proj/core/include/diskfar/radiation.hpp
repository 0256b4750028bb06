// radiation.hpp - far fields by Hertzian-dipole superposition and by surface
// equivalence (near-to-far transform), spherical power integrals, collection
// efficiency into numerical apertures, and the phenomenological scale fit.
//
// Conventions: engineering time dependence exp(+j w t), outgoing spherical
// waves exp(-j k r). Exported fields drop the common 1/R amplitude and the
// global exp(-j k R) phase (Fraunhofer normalization), so E_theta/E_phi carry
// an arbitrary common scale and S_r = (|E_theta|^2 + |E_phi|^2) / eta_med.
#pragma once

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "diskfar/geometry.hpp"
#include "diskfar/nearfield.hpp"

namespace diskfar {

/// Uniform spherical grid; theta in [0, pi], phi in [0, 2*pi).
struct SphericalGrid {
    double theta0 = 0.0;
    double dtheta = 0.0;
    int ntheta = 0;
    double phi0 = 0.0;
    double dphi = 0.0;
    int nphi = 0;

    static SphericalGrid full_sphere(double resolution_deg);
    static SphericalGrid upper_hemisphere(double resolution_deg);

    double theta(int i) const { return theta0 + i * dtheta; }
    double phi(int j) const { return phi0 + j * dphi; }
    double theta_max() const { return theta(ntheta - 1); }
    std::size_t size() const { return static_cast<std::size_t>(ntheta) * nphi; }
    /// True when the phi samples tile the full circle (trapezoid weights wrap).
    bool phi_periodic() const;
    bool covers_full_sphere() const;
    bool same_sampling(const SphericalGrid& other) const;

    void validate() const;
};

struct FarFieldGrid {
    SphericalGrid grid;
    std::vector<cplx> e_theta;
    std::vector<cplx> e_phi;
    std::vector<double> s_r;
    double eta_med = 0.0;
    double k = 0.0;

    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * grid.nphi + j; }

    /// Builds the grid and derives S_r pointwise from the field components.
    static FarFieldGrid make(SphericalGrid g, std::vector<cplx> e_theta, std::vector<cplx> e_phi,
                             double eta_med, double k);
};

struct FarFieldMode {
    enum class Kind { fraunhofer, finite_radius };
    Kind kind = Kind::fraunhofer;
    double radius = 0.0;

    static FarFieldMode fraunhofer() { return {Kind::fraunhofer, 0.0}; }
    static FarFieldMode finite_radius(double r) { return {Kind::finite_radius, r}; }
};

/// Far-field superposition of Hertzian dipoles:
///   E = (eta l k / 4 pi j) * sum_n G_n * [theta_hat (Ix ct cp + Iy ct sp - Iz st)
///                                         + phi_hat (-Ix sp + Iy cp)]
/// with G_n = exp(+j k rhat.r'_n) in fraunhofer mode and
/// G_n = exp(-j k |R rhat - r'_n|) / |R rhat - r'_n| at finite radius.
/// Grid points are computed independently, so results are identical for any
/// thread count.
FarFieldGrid dipole_farfield(const DipoleArray& dipoles, const SphericalGrid& grid,
                             FarFieldMode mode = FarFieldMode::fraunhofer(), int threads = 1);

/// Integration region on the sphere.
struct Region {
    enum class Kind { full_sphere, cone, annulus };
    Kind kind = Kind::full_sphere;
    double theta_lo = 0.0;
    double theta_hi = pi;

    static Region full_sphere() { return {Kind::full_sphere, 0.0, pi}; }
    static Region cone(double theta_max) { return {Kind::cone, 0.0, theta_max}; }
    static Region annulus(double theta_lo, double theta_hi) {
        return {Kind::annulus, theta_lo, theta_hi};
    }
};

/// Integral of S_r sin(theta) dtheta dphi by the trapezoid rule on the stored
/// grid; region boundaries that fall between samples use a linearly
/// interpolated integrand for the partial interval.
double total_power(const FarFieldGrid& ff, Region region);

/// Fraction of total radiated power inside the upward cone
/// theta <= arcsin(NA / n_collect). Requires a full-sphere grid.
double collection_efficiency(const FarFieldGrid& ff, double na, double n_collect);

std::vector<std::pair<double, double>> efficiency_curve(const FarFieldGrid& ff,
                                                        std::span<const double> na_values,
                                                        double n_collect);

/// Equivalent electric/magnetic surface currents sampled on a uniform planar
/// monitor (fixed z), with the medium they radiate in.
struct SurfaceCurrents {
    std::vector<Vec3> points;
    std::vector<CVec3> j_s; // electric surface current density
    std::vector<CVec3> m_s; // magnetic surface current density
    double cell_area = 0.0;
    double mu = 0.0;      // medium permeability
    double epsilon = 0.0; // medium permittivity
    double k = 0.0;       // wavenumber in the medium

    double impedance() const { return std::sqrt(mu / epsilon); }
    void validate() const;
};

/// Far-zone surface-equivalence transform. Radiation integrals
///   N = sum J_s exp(+j k rhat.r') dA,  L = sum M_s exp(+j k rhat.r') dA,
/// then E_theta = -(j k / 4 pi)(L_phi + eta N_theta),
///      E_phi   = +(j k / 4 pi)(L_theta - eta N_phi).
/// Same normalization as dipole_farfield, so the two paths are directly
/// comparable.
FarFieldGrid ntf_surface(const SurfaceCurrents& sc, const SphericalGrid& grid, int threads = 1);

struct AlphaFit {
    double alpha = 0.0;
    double rmse = 0.0;
    double theta_max = 0.0;
};

inline constexpr double default_alpha_theta_max = 70.0 * pi / 180.0;

/// Least-squares scale between two patterns over theta <= theta_max:
/// alpha = <S_model, S_ref> / <S_model, S_model>, unweighted over grid points.
/// Patterns are fitted as given; normalize them beforehand when comparing
/// across models.
AlphaFit alpha_fit(const FarFieldGrid& model, const FarFieldGrid& reference,
                   double theta_max = default_alpha_theta_max);

/// Text format: header lines `ntheta`, `nphi`, `dtheta_deg`, `dphi_deg`, then
/// one row per grid point: theta_deg phi_deg Re/Im E_theta Re/Im E_phi S_r
/// (theta outer, phi inner).
void write_farfield(const std::filesystem::path& path, const FarFieldGrid& ff);
FarFieldGrid read_farfield(const std::filesystem::path& path);

} // namespace diskfar
