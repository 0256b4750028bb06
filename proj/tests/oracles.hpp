// oracles.hpp - independent reference computations for the tests: exact
// Hertzian-dipole near fields, brute-force lattice enumeration, closed-form
// cone power fractions, and pattern comparison metrics. Everything here is
// derived from textbook closed forms, not from the library's evaluation path.
#pragma once

#include <cmath>
#include <vector>

#include "diskfar/geometry.hpp"
#include "diskfar/lattice.hpp"
#include "diskfar/radiation.hpp"

namespace oracles {

using diskfar::cplx;
using diskfar::CVec3;
using diskfar::Vec3;

// Exact fields of a Hertzian dipole with complex current vector I (times
// length l) at `pos`, engineering convention exp(+jwt), exp(-jkr):
//   E = (eta l / 4pi) e^{-jkr} [ -(jk/r)(1 + 1/(jkr) - 1/(kr)^2) I_t
//                               + (2/r^2)(1 + 1/(jkr)) (rhat.I) rhat ]
//   H = (jk l / 4pi r)(1 + 1/(jkr)) e^{-jkr} (I x rhat)
// with I_t the component of I transverse to rhat.
struct AnalyticDipole {
    Vec3 pos{};
    CVec3 current{};
    double length = 0.01;
    double k = 2.0 * diskfar::pi;
    double eta = diskfar::vacuum_impedance;

    void fields(Vec3 where, CVec3& e, CVec3& h) const {
        const Vec3 r = where - pos;
        const double rr = r.norm();
        const double kr = k * rr;
        const Vec3 rhat = (1.0 / rr) * r;
        const cplx j(0.0, 1.0);
        const cplx expf = std::polar(1.0, -kr);

        const cplx radial_amp = current.x * rhat.x + current.y * rhat.y + current.z * rhat.z;
        const CVec3 transverse{current.x - radial_amp * rhat.x, current.y - radial_amp * rhat.y,
                               current.z - radial_amp * rhat.z};

        const cplx ct = -(j * k / rr) * (1.0 + 1.0 / (j * kr) - 1.0 / (kr * kr));
        const cplx cr = (2.0 / (rr * rr)) * (1.0 + 1.0 / (j * kr)) * radial_amp;
        const cplx ce = eta * length / (4.0 * diskfar::pi) * expf;
        e = {ce * (ct * transverse.x + cr * rhat.x), ce * (ct * transverse.y + cr * rhat.y),
             ce * (ct * transverse.z + cr * rhat.z)};

        const CVec3 ixr = cross(current, CVec3{cplx(rhat.x), cplx(rhat.y), cplx(rhat.z)});
        const cplx ch = (j * k * length / (4.0 * diskfar::pi * rr)) * (1.0 + 1.0 / (j * kr)) * expf;
        h = {ch * ixr.x, ch * ixr.y, ch * ixr.z};
    }
};

// Love equivalence currents of a set of dipoles, sampled at cell centers of a
// square window in the plane z = z0 with outward normal +z:
// J_s = z x H, M_s = -z x E.
inline diskfar::SurfaceCurrents
sample_equivalence_plane(const std::vector<AnalyticDipole>& dipoles, double half_width,
                         double spacing, double z0, double k, double eta) {
    diskfar::SurfaceCurrents sc;
    sc.cell_area = spacing * spacing;
    sc.epsilon = 8.8541878128e-12;
    sc.mu = eta * eta * sc.epsilon; // sqrt(mu/eps) == eta
    sc.k = k;
    const int n = static_cast<int>(std::lround(2.0 * half_width / spacing));
    sc.points.reserve(static_cast<std::size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const Vec3 p{-half_width + (ix + 0.5) * spacing, -half_width + (iy + 0.5) * spacing,
                         z0};
            CVec3 e{}, h{};
            for (const auto& d : dipoles) {
                CVec3 ed, hd;
                d.fields(p, ed, hd);
                e = e + ed;
                h = h + hd;
            }
            sc.points.push_back(p);
            sc.j_s.push_back({-h.y, h.x, cplx(0.0)});
            sc.m_s.push_back({e.y, -e.x, cplx(0.0)});
        }
    }
    return sc;
}

// All lattice points n1*a1 + n2*a2 - (u, v) with |n1|, |n2| <= n_max and
// distance <= extent from the origin; plain double loop, no pruning.
inline std::vector<Vec3> brute_force_lattice(double a, double u, double v, double extent,
                                             int n_max) {
    std::vector<Vec3> pts;
    const double s3 = std::sqrt(3.0);
    for (int n1 = -n_max; n1 <= n_max; ++n1) {
        for (int n2 = -n_max; n2 <= n_max; ++n2) {
            const double x = (n1 + 0.5 * n2) * a - u;
            const double y = n2 * 0.5 * s3 * a - v;
            if (std::hypot(x, y) <= extent * (1.0 + 1e-12)) pts.push_back({x, y, 0.0});
        }
    }
    return pts;
}

// Closed-form power fraction of a z-oriented Hertzian dipole inside the cone
// theta <= theta0: integral of sin^3 over the cone divided by the full-sphere
// value 4/3.
inline double z_dipole_cone_fraction(double theta0) {
    const double c = std::cos(theta0);
    return (2.0 / 3.0 - c + c * c * c / 3.0) / (4.0 / 3.0);
}

// sin(theta)-weighted relative L2 distance between two S_r patterns on the
// same grid, restricted to theta <= theta_cap.
inline double pattern_rel_l2(const diskfar::FarFieldGrid& a, const diskfar::FarFieldGrid& b,
                             double theta_cap) {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < a.grid.ntheta; ++i) {
        if (a.grid.theta(i) > theta_cap + 1e-12) break;
        const double w = std::sin(a.grid.theta(i));
        for (int j = 0; j < a.grid.nphi; ++j) {
            const std::size_t at = a.idx(i, j);
            const double d = a.s_r[at] - b.s_r[at];
            num += w * d * d;
            den += w * b.s_r[at] * b.s_r[at];
        }
    }
    return std::sqrt(num / den);
}

} // namespace oracles
