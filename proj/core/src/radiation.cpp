// radiation.cpp - dipole-array and surface-equivalence far fields, spherical
// quadrature, collection efficiency, and the alpha scale fit

#include "diskfar/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "diskfar/errors.hpp"

namespace diskfar {

namespace {

constexpr double kAngleTol = 1e-9;

void run_rows(int nrows, int threads, const std::function<void(int, int)>& body) {
    threads = std::clamp(threads, 1, nrows);
    if (threads == 1) {
        body(0, nrows);
        return;
    }
    const int chunk = (nrows + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const int i0 = t * chunk;
        const int i1 = std::min(nrows, i0 + chunk);
        if (i0 >= i1) break;
        pool.emplace_back(body, i0, i1);
    }
    for (auto& th : pool) th.join();
}

} // namespace

namespace {

int exact_divisions(double span_deg, double resolution_deg) {
    if (!(resolution_deg > 0.0) || resolution_deg > 90.0)
        throw InvalidParameter("grid resolution must lie in (0, 90] degrees");
    const double n = span_deg / resolution_deg;
    const long rounded = std::lround(n);
    if (std::abs(n - rounded) > 1e-9)
        throw InvalidParameter("grid resolution must divide " + std::to_string(span_deg) +
                               " degrees evenly (got " + std::to_string(resolution_deg) + ")");
    return static_cast<int>(rounded);
}

} // namespace

SphericalGrid SphericalGrid::full_sphere(double resolution_deg) {
    SphericalGrid g;
    g.dtheta = deg2rad(resolution_deg);
    g.dphi = g.dtheta;
    g.ntheta = exact_divisions(180.0, resolution_deg) + 1;
    g.nphi = exact_divisions(360.0, resolution_deg);
    g.validate();
    return g;
}

SphericalGrid SphericalGrid::upper_hemisphere(double resolution_deg) {
    SphericalGrid g;
    g.dtheta = deg2rad(resolution_deg);
    g.dphi = g.dtheta;
    g.ntheta = exact_divisions(90.0, resolution_deg) + 1;
    g.nphi = exact_divisions(360.0, resolution_deg);
    g.validate();
    return g;
}

bool SphericalGrid::phi_periodic() const { return std::abs(nphi * dphi - 2.0 * pi) < kAngleTol; }

bool SphericalGrid::covers_full_sphere() const {
    return theta0 <= kAngleTol && theta_max() >= pi - kAngleTol && phi_periodic();
}

bool SphericalGrid::same_sampling(const SphericalGrid& other) const {
    return std::abs(theta0 - other.theta0) < kAngleTol &&
           std::abs(dtheta - other.dtheta) < kAngleTol && ntheta == other.ntheta &&
           std::abs(phi0 - other.phi0) < kAngleTol && std::abs(dphi - other.dphi) < kAngleTol &&
           nphi == other.nphi;
}

void SphericalGrid::validate() const {
    if (ntheta < 2 || nphi < 2)
        throw InvalidParameter("spherical grid needs at least 2 samples per axis");
    if (!(dtheta > 0.0) || !(dphi > 0.0))
        throw InvalidParameter("spherical grid spacing must be positive");
    if (theta0 < -kAngleTol || theta_max() > pi + kAngleTol)
        throw InvalidParameter("theta samples must lie in [0, pi]");
    if (phi0 < -kAngleTol || phi0 + (nphi - 1) * dphi >= 2.0 * pi + kAngleTol)
        throw InvalidParameter("phi samples must lie in [0, 2*pi)");
}

FarFieldGrid FarFieldGrid::make(SphericalGrid g, std::vector<cplx> e_theta,
                                std::vector<cplx> e_phi, double eta_med, double k) {
    g.validate();
    if (e_theta.size() != g.size() || e_phi.size() != g.size())
        throw InvalidParameter("far-field component arrays do not match grid size");
    if (!(eta_med > 0.0)) throw InvalidParameter("medium impedance must be positive");

    FarFieldGrid ff;
    ff.grid = g;
    ff.e_theta = std::move(e_theta);
    ff.e_phi = std::move(e_phi);
    ff.eta_med = eta_med;
    ff.k = k;
    ff.s_r.resize(ff.grid.size());
    for (std::size_t i = 0; i < ff.s_r.size(); ++i)
        ff.s_r[i] = (std::norm(ff.e_theta[i]) + std::norm(ff.e_phi[i])) / eta_med;
    return ff;
}

FarFieldGrid dipole_farfield(const DipoleArray& dipoles, const SphericalGrid& grid,
                             FarFieldMode mode, int threads) {
    dipoles.validate();
    grid.validate();

    double max_pos = 0.0;
    for (const auto& p : dipoles.positions) max_pos = std::max(max_pos, p.norm());
    if (mode.kind == FarFieldMode::Kind::finite_radius) {
        if (!(mode.radius > 0.0) || mode.radius < 100.0 * max_pos)
            throw InvalidParameter("finite evaluation radius must be >= 100x the array extent");
    }

    const double k = dipoles.k;
    // Eq. prefactor eta*l*k/(4*pi*j); shared by both evaluation modes.
    const cplx prefactor = dipoles.eta_med * dipoles.length * k / (4.0 * pi) * cplx(0.0, -1.0);

    std::vector<double> cos_phi(grid.nphi), sin_phi(grid.nphi);
    for (int j = 0; j < grid.nphi; ++j) {
        cos_phi[j] = std::cos(grid.phi(j));
        sin_phi[j] = std::sin(grid.phi(j));
    }

    std::vector<cplx> e_theta(grid.size()), e_phi(grid.size());
    const std::size_t n = dipoles.size();
    const bool fraunhofer = (mode.kind == FarFieldMode::Kind::fraunhofer);

    run_rows(grid.ntheta, threads, [&](int i0, int i1) {
        for (int i = i0; i < i1; ++i) {
            const double ct = std::cos(grid.theta(i));
            const double st = std::sin(grid.theta(i));
            for (int j = 0; j < grid.nphi; ++j) {
                const double cp = cos_phi[j];
                const double sp = sin_phi[j];
                const double rx = st * cp, ry = st * sp, rz = ct;
                cplx sum_t(0.0, 0.0), sum_p(0.0, 0.0);
                for (std::size_t d = 0; d < n; ++d) {
                    const Vec3& r = dipoles.positions[d];
                    const CVec3& I = dipoles.currents[d];
                    cplx green;
                    if (fraunhofer) {
                        green = std::polar(1.0, k * (rx * r.x + ry * r.y + rz * r.z));
                    } else {
                        const double dx = mode.radius * rx - r.x;
                        const double dy = mode.radius * ry - r.y;
                        const double dz = mode.radius * rz - r.z;
                        const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
                        green = std::polar(1.0 / dist, -k * dist);
                    }
                    const cplx proj_t = I.x * (ct * cp) + I.y * (ct * sp) - I.z * st;
                    const cplx proj_p = -I.x * sp + I.y * cp;
                    sum_t += green * proj_t;
                    sum_p += green * proj_p;
                }
                const std::size_t at = static_cast<std::size_t>(i) * grid.nphi + j;
                e_theta[at] = prefactor * sum_t;
                e_phi[at] = prefactor * sum_p;
            }
        }
    });

    return FarFieldGrid::make(grid, std::move(e_theta), std::move(e_phi), dipoles.eta_med, k);
}

namespace {

// Trapezoid integral of row integrals f(theta_i) over [a, b], with linear
// interpolation of f at partial-interval boundaries.
double integrate_theta(const std::vector<double>& f, const SphericalGrid& g, double a, double b) {
    const auto value_at = [&](double theta) {
        const double s = (theta - g.theta0) / g.dtheta;
        int i = static_cast<int>(std::floor(s));
        i = std::clamp(i, 0, g.ntheta - 2);
        const double t = std::clamp(s - i, 0.0, 1.0);
        return (1.0 - t) * f[i] + t * f[i + 1];
    };

    const int first_full = static_cast<int>(std::ceil((a - g.theta0) / g.dtheta - kAngleTol));
    const int last_full = static_cast<int>(std::floor((b - g.theta0) / g.dtheta + kAngleTol));

    if (last_full < first_full) // both boundaries inside one grid interval
        return 0.5 * (value_at(a) + value_at(b)) * (b - a);

    double sum = 0.0;
    const double ta = g.theta(first_full);
    if (ta - a > kAngleTol) sum += 0.5 * (value_at(a) + f[first_full]) * (ta - a);
    for (int i = first_full; i < last_full; ++i)
        sum += 0.5 * (f[i] + f[i + 1]) * g.dtheta;
    const double tb = g.theta(last_full);
    if (b - tb > kAngleTol) sum += 0.5 * (f[last_full] + value_at(b)) * (b - tb);
    return sum;
}

} // namespace

double total_power(const FarFieldGrid& ff, Region region) {
    const SphericalGrid& g = ff.grid;

    double a = region.theta_lo;
    double b = region.theta_hi;
    if (region.kind == Region::Kind::full_sphere) {
        a = 0.0;
        b = pi;
    }
    if (!(a >= 0.0) || !(b <= pi) || !(a < b))
        throw InvalidParameter("integration region must satisfy 0 <= theta_lo < theta_hi <= pi");
    if (!g.phi_periodic())
        throw DomainError("power integration requires full phi coverage");
    if (a < g.theta0 - kAngleTol || b > g.theta_max() + kAngleTol)
        throw DomainError("integration region extends beyond the stored grid");
    a = std::max(a, g.theta0);
    b = std::min(b, g.theta_max());

    // Row integrals over phi (periodic trapezoid = plain sum), times sin(theta).
    std::vector<double> f(g.ntheta);
    for (int i = 0; i < g.ntheta; ++i) {
        double row = 0.0;
        const std::size_t base = static_cast<std::size_t>(i) * g.nphi;
        for (int j = 0; j < g.nphi; ++j) row += ff.s_r[base + j];
        f[i] = row * g.dphi * std::sin(g.theta(i));
    }

    return integrate_theta(f, g, a, b);
}

double collection_efficiency(const FarFieldGrid& ff, double na, double n_collect) {
    if (!(n_collect > 0.0)) throw InvalidParameter("collection index must be positive");
    if (!(na > 0.0) || na > n_collect)
        throw InvalidParameter("numerical aperture must satisfy 0 < NA <= n_collect");
    if (!ff.grid.covers_full_sphere())
        throw DomainError("collection efficiency needs a full-sphere far-field grid");

    const double theta_cone = std::asin(na / n_collect);
    const double p_total = total_power(ff, Region::full_sphere());
    if (!(p_total > 0.0)) throw NumericError("total radiated power is zero; eta_col undefined");
    const double p_cone = total_power(ff, Region::cone(theta_cone));
    return std::clamp(p_cone / p_total, 0.0, 1.0);
}

std::vector<std::pair<double, double>> efficiency_curve(const FarFieldGrid& ff,
                                                        std::span<const double> na_values,
                                                        double n_collect) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(na_values.size());
    for (double na : na_values) curve.emplace_back(na, collection_efficiency(ff, na, n_collect));
    return curve;
}

void SurfaceCurrents::validate() const {
    if (points.empty()) throw InvalidParameter("surface current set is empty");
    if (j_s.size() != points.size() || m_s.size() != points.size())
        throw InvalidParameter("surface current arrays do not match the sample points");
    if (!(cell_area > 0.0)) throw InvalidParameter("cell area must be positive");
    if (!(mu > 0.0) || !(epsilon > 0.0)) throw InvalidParameter("medium mu, epsilon must be positive");
    if (!(k > 0.0)) throw InvalidParameter("wavenumber must be positive");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(j_s[i].norm()) || !std::isfinite(m_s[i].norm()))
            throw InvalidParameter("non-finite surface current sample");
    }
}

FarFieldGrid ntf_surface(const SurfaceCurrents& sc, const SphericalGrid& grid, int threads) {
    sc.validate();
    grid.validate();

    const double k = sc.k;
    const double eta = sc.impedance();
    const cplx c_theta = cplx(0.0, -k / (4.0 * pi)); // -(jk/4pi)
    const cplx c_phi = cplx(0.0, k / (4.0 * pi));    // +(jk/4pi)

    std::vector<double> cos_phi(grid.nphi), sin_phi(grid.nphi);
    for (int j = 0; j < grid.nphi; ++j) {
        cos_phi[j] = std::cos(grid.phi(j));
        sin_phi[j] = std::sin(grid.phi(j));
    }

    std::vector<cplx> e_theta(grid.size()), e_phi(grid.size());
    const std::size_t n = sc.points.size();

    run_rows(grid.ntheta, threads, [&](int i0, int i1) {
        for (int i = i0; i < i1; ++i) {
            const double ct = std::cos(grid.theta(i));
            const double st = std::sin(grid.theta(i));
            for (int j = 0; j < grid.nphi; ++j) {
                const double cp = cos_phi[j];
                const double sp = sin_phi[j];
                const double rx = st * cp, ry = st * sp, rz = ct;

                CVec3 N, L;
                for (std::size_t s = 0; s < n; ++s) {
                    const Vec3& r = sc.points[s];
                    const cplx ph = std::polar(1.0, k * (rx * r.x + ry * r.y + rz * r.z));
                    N = N + ph * sc.j_s[s];
                    L = L + ph * sc.m_s[s];
                }
                N = cplx(sc.cell_area, 0.0) * N;
                L = cplx(sc.cell_area, 0.0) * L;

                const cplx n_theta = N.x * (ct * cp) + N.y * (ct * sp) - N.z * st;
                const cplx n_phi = -N.x * sp + N.y * cp;
                const cplx l_theta = L.x * (ct * cp) + L.y * (ct * sp) - L.z * st;
                const cplx l_phi = -L.x * sp + L.y * cp;

                const std::size_t at = static_cast<std::size_t>(i) * grid.nphi + j;
                e_theta[at] = c_theta * (l_phi + eta * n_theta);
                e_phi[at] = c_phi * (l_theta - eta * n_phi);
            }
        }
    });

    return FarFieldGrid::make(grid, std::move(e_theta), std::move(e_phi), eta, k);
}

AlphaFit alpha_fit(const FarFieldGrid& model, const FarFieldGrid& reference, double theta_max) {
    if (!(theta_max > 0.0) || theta_max > pi + kAngleTol)
        throw InvalidParameter("alpha fit cutoff must lie in (0, pi]");

    const SphericalGrid& gm = model.grid;
    const SphericalGrid& gr = reference.grid;
    const bool sampling_ok = std::abs(gm.theta0 - gr.theta0) < kAngleTol &&
                             std::abs(gm.dtheta - gr.dtheta) < kAngleTol &&
                             std::abs(gm.phi0 - gr.phi0) < kAngleTol &&
                             std::abs(gm.dphi - gr.dphi) < kAngleTol && gm.nphi == gr.nphi;
    if (!sampling_ok) throw DomainError("alpha fit requires identically sampled grids");
    if (gm.theta_max() < theta_max - kAngleTol || gr.theta_max() < theta_max - kAngleTol)
        throw DomainError("alpha fit region extends beyond grid coverage");

    double mm = 0.0, mr = 0.0;
    std::size_t count = 0;
    const int rows = std::min(gm.ntheta, gr.ntheta);
    for (int i = 0; i < rows; ++i) {
        if (gm.theta(i) > theta_max + kAngleTol) break;
        const std::size_t base = static_cast<std::size_t>(i) * gm.nphi;
        for (int j = 0; j < gm.nphi; ++j) {
            mm += model.s_r[base + j] * model.s_r[base + j];
            mr += model.s_r[base + j] * reference.s_r[base + j];
            ++count;
        }
    }
    if (!(mm > 0.0)) throw NumericError("model pattern is identically zero inside the fit region");

    const double alpha = mr / mm;
    double sq = 0.0;
    for (int i = 0; i < rows; ++i) {
        if (gm.theta(i) > theta_max + kAngleTol) break;
        const std::size_t base = static_cast<std::size_t>(i) * gm.nphi;
        for (int j = 0; j < gm.nphi; ++j) {
            const double resid = alpha * model.s_r[base + j] - reference.s_r[base + j];
            sq += resid * resid;
        }
    }
    return {alpha, std::sqrt(sq / static_cast<double>(count)), theta_max};
}

void write_farfield(const std::filesystem::path& path, const FarFieldGrid& ff) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");

    char buf[640];
    out << "ntheta " << ff.grid.ntheta << "\nnphi " << ff.grid.nphi << "\n";
    std::snprintf(buf, sizeof buf, "dtheta_deg %.17g\ndphi_deg %.17g\n", rad2deg(ff.grid.dtheta),
                  rad2deg(ff.grid.dphi));
    out << buf;
    for (int i = 0; i < ff.grid.ntheta; ++i) {
        for (int j = 0; j < ff.grid.nphi; ++j) {
            const std::size_t at = ff.idx(i, j);
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
                          rad2deg(ff.grid.theta(i)), rad2deg(ff.grid.phi(j)),
                          ff.e_theta[at].real(), ff.e_theta[at].imag(), ff.e_phi[at].real(),
                          ff.e_phi[at].imag(), ff.s_r[at]);
            out << buf;
        }
    }
    if (!out) throw ParseError("write failure on '" + path.string() + "'");
}

FarFieldGrid read_farfield(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open far-field file '" + path.string() + "'");

    std::string line;
    int line_no = 0;
    double ntheta_d = 0, nphi_d = 0, dtheta_deg = 0, dphi_deg = 0;
    struct Field {
        const char* name;
        double* slot;
    } header[] = {{"ntheta", &ntheta_d}, {"nphi", &nphi_d}, {"dtheta_deg", &dtheta_deg},
                  {"dphi_deg", &dphi_deg}};
    for (const auto& h : header) {
        for (;;) {
            if (!std::getline(in, line)) throw ParseError("unexpected end of file in header");
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            break;
        }
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key >> *h.slot) || key != h.name)
            throw ParseError("line " + std::to_string(line_no) + ": expected header '" +
                             std::string(h.name) + " <value>', got '" + line + "'");
    }

    SphericalGrid g;
    g.ntheta = static_cast<int>(ntheta_d);
    g.nphi = static_cast<int>(nphi_d);
    g.dtheta = deg2rad(dtheta_deg);
    g.dphi = deg2rad(dphi_deg);

    const std::size_t count = static_cast<std::size_t>(g.ntheta) * g.nphi;
    std::vector<cplx> e_theta, e_phi;
    std::vector<double> s_file;
    e_theta.reserve(count);
    e_phi.reserve(count);
    s_file.reserve(count);
    bool first = true;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double v[7];
        int got = 0;
        while (got < 7 && (ls >> v[got])) ++got;
        double extra;
        if (got < 7 || (ls >> extra))
            throw ParseError("line " + std::to_string(line_no) + ": expected 7 values per row");
        if (e_theta.size() == count)
            throw ParseError("line " + std::to_string(line_no) + ": more rows than ntheta*nphi");

        const std::size_t at = e_theta.size();
        const int i = static_cast<int>(at) / g.nphi;
        const int j = static_cast<int>(at) % g.nphi;
        if (first) {
            g.theta0 = deg2rad(v[0]);
            g.phi0 = deg2rad(v[1]);
            first = false;
        }
        if (std::abs(deg2rad(v[0]) - g.theta(i)) > 1e-7 ||
            std::abs(deg2rad(v[1]) - g.phi(j)) > 1e-7)
            throw ParseError("line " + std::to_string(line_no) +
                             ": non-uniform grid (angle does not match header spacing)");
        e_theta.emplace_back(v[2], v[3]);
        e_phi.emplace_back(v[4], v[5]);
        if (!(v[6] >= 0.0) || !std::isfinite(v[6]))
            throw ParseError("line " + std::to_string(line_no) + ": S_r must be finite and >= 0");
        s_file.push_back(v[6]);
    }
    if (e_theta.size() != count)
        throw ParseError("far-field file ended after " + std::to_string(e_theta.size()) + " of " +
                         std::to_string(count) + " rows");

    // Recover the impedance from the S_r column; fall back to vacuum for
    // all-zero patterns where it cancels anyway.
    double eta = vacuum_impedance;
    for (std::size_t i = 0; i < count; ++i) {
        const double e2 = std::norm(e_theta[i]) + std::norm(e_phi[i]);
        if (s_file[i] > 0.0 && e2 > 0.0) {
            eta = e2 / s_file[i];
            break;
        }
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double e2 = std::norm(e_theta[i]) + std::norm(e_phi[i]);
        if (std::abs(e2 / eta - s_file[i]) > 1e-6 * std::max(1.0, s_file[i]))
            throw ParseError("S_r column inconsistent with field components (row " +
                             std::to_string(i) + ")");
    }

    return FarFieldGrid::make(g, std::move(e_theta), std::move(e_phi), eta, 0.0);
}

} // namespace diskfar
