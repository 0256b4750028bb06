// lattice.cpp - triangular lattice enumeration and alignment symmetry reduction

#include "diskfar/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diskfar/errors.hpp"

namespace diskfar {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kTan30 = std::tan(pi / 6.0);

// Hexagonal shell index of lattice point n1*a1 + n2*a2 around the origin.
int ring_index(int n1, int n2) {
    return (std::abs(n1) + std::abs(n2) + std::abs(n1 + n2)) / 2;
}

double polar_angle(double x, double y) {
    double ang = std::atan2(y, x);
    if (ang < 0.0) ang += 2.0 * pi;
    return ang;
}

template <typename T>
void sort_by_distance_then_angle(std::vector<T>& pts, std::vector<double>& dist) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (dist[i] != dist[j]) return dist[i] < dist[j];
        return polar_angle(pts[i].x, pts[i].y) < polar_angle(pts[j].x, pts[j].y);
    });
    std::vector<T> sorted;
    sorted.reserve(pts.size());
    for (std::size_t i : order) sorted.push_back(pts[i]);
    pts.swap(sorted);
}

} // namespace

void LatticeSpec::validate() const {
    if (!(a > 0.0)) throw InvalidParameter("lattice constant a must be positive");
    if (!(r_h > 0.0)) throw InvalidParameter("hole radius r_h must be positive");
    if (!(2.0 * r_h < a))
        throw InvalidParameter("holes overlap: require 2*r_h < a (r_h=" + std::to_string(r_h) +
                               ", a=" + std::to_string(a) + ")");
    if (!(d > 0.0)) throw InvalidParameter("grating depth d must be positive");
    if (!std::isfinite(u) || !std::isfinite(v))
        throw InvalidParameter("alignment offset (u, v) must be finite");
}

std::vector<HolePosition> generate_lattice(const LatticeSpec& spec, double extent) {
    spec.validate();
    if (!(extent > 0.0)) throw InvalidParameter("lattice extent must be positive");

    const double a = spec.a;
    const double row = 0.5 * kSqrt3 * a; // vertical spacing between lattice rows
    const bool centered = (spec.u == 0.0 && spec.v == 0.0);
    const double bound = extent * (1.0 + 1e-12);

    std::vector<HolePosition> holes;
    std::vector<double> dist;

    const int n2_max = static_cast<int>(std::ceil((extent + std::abs(spec.v)) / row)) + 1;
    for (int n2 = -n2_max; n2 <= n2_max; ++n2) {
        const double y = n2 * row - spec.v;
        if (std::abs(y) > bound) continue;
        // x = n1*a + n2*a/2 - u must land in [-extent, extent]
        const int n1_lo = static_cast<int>(std::floor((-extent + spec.u) / a - 0.5 * n2)) - 1;
        const int n1_hi = static_cast<int>(std::ceil((extent + spec.u) / a - 0.5 * n2)) + 1;
        for (int n1 = n1_lo; n1 <= n1_hi; ++n1) {
            const double x = (n1 + 0.5 * n2) * a - spec.u;
            const double r = std::hypot(x, y);
            if (r > bound) continue;
            holes.push_back({x, y, centered ? ring_index(n1, n2) : -1});
            dist.push_back(r);
        }
    }

    sort_by_distance_then_angle(holes, dist);
    return holes;
}

std::vector<TracePoint> hex_trace(int n, double a) {
    if (n < 1) throw InvalidParameter("hex trace index must be >= 1");
    if (!(a > 0.0)) throw InvalidParameter("lattice constant a must be positive");

    std::vector<TracePoint> pts;
    std::vector<double> dist;
    pts.reserve(6 * static_cast<std::size_t>(n));
    for (int n1 = -n; n1 <= n; ++n1) {
        for (int n2 = -n; n2 <= n; ++n2) {
            if (ring_index(n1, n2) != n) continue;
            const double x = (n1 + 0.5 * n2) * a;
            const double y = n2 * 0.5 * kSqrt3 * a;
            const double r = std::hypot(x, y);
            pts.push_back({x, y, r});
            dist.push_back(r);
        }
    }

    sort_by_distance_then_angle(pts, dist);
    return pts;
}

// The canonical domain {0 <= u <= a/4, 0 <= v <= u*tan(pi/6)} is the
// fundamental sector of the triangular lattice with constant a/2: reduce the
// offset to its shortest half-lattice translate, then fold the polar angle
// into [0, 30 degrees]. Folding is invariant under all 12 point-group
// operations, so every symmetry image of an offset lands on the same point.
Vec2 canonicalize_alignment(double u, double v, double a) {
    if (!(a > 0.0)) throw InvalidParameter("lattice constant a must be positive");
    if (!std::isfinite(u) || !std::isfinite(v))
        throw InvalidParameter("alignment offset (u, v) must be finite");

    // Exact early-out keeps canonical inputs bit-identical.
    if (u >= 0.0 && v >= 0.0 && u <= 0.25 * a && v <= u * kTan30) return {u, v};

    const double h = 0.5 * a;        // half-lattice constant
    const double row = 0.5 * kSqrt3 * h;

    // Fractional coordinates in the half-lattice basis.
    const double f2 = v / row;
    const double f1 = u / h - 0.5 * f2;

    double best_x = u, best_y = v;
    double best_r2 = std::numeric_limits<double>::infinity();
    const int c1 = static_cast<int>(std::floor(f1));
    const int c2 = static_cast<int>(std::floor(f2));
    for (int n1 = c1 - 1; n1 <= c1 + 2; ++n1) {
        for (int n2 = c2 - 1; n2 <= c2 + 2; ++n2) {
            const double wx = u - (n1 + 0.5 * n2) * h;
            const double wy = v - n2 * row;
            const double r2 = wx * wx + wy * wy;
            if (r2 < best_r2) {
                best_r2 = r2;
                best_x = wx;
                best_y = wy;
            }
        }
    }

    const double r = std::sqrt(best_r2);
    if (r < 1e-14 * a) return {0.0, 0.0};

    double ang = std::fmod(std::atan2(best_y, best_x), pi / 3.0);
    if (ang < 0.0) ang += pi / 3.0;
    if (ang > pi / 6.0) ang = pi / 3.0 - ang;
    return {r * std::cos(ang), r * std::sin(ang)};
}

SymmetryPoints symmetry_points(double a) {
    if (!(a > 0.0)) throw InvalidParameter("lattice constant a must be positive");
    return {{0.0, 0.0}, {0.25 * a, 0.25 * a * kTan30}};
}

} // namespace diskfar
