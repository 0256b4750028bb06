// lattice.hpp - triangular-lattice hole enumeration, hexagonal traces,
// and reduction of grating/disk alignment offsets into the canonical domain.
//
// Basis convention: a1 = (a, 0), a2 = (a/2, a*sqrt(3)/2). All lengths are in
// units of the free-space design wavelength.
#pragma once

#include <vector>

#include "diskfar/geometry.hpp"

namespace diskfar {

/// Hole-grating parameters. (u, v) is the in-plane offset of the nearest
/// lattice hole center from the disk center; holes are shifted by -(u, v).
struct LatticeSpec {
    double a = 0.0;   // lattice constant
    double r_h = 0.0; // hole radius
    double d = 0.0;   // grating-layer etch depth
    double u = 0.0;
    double v = 0.0;

    void validate() const; // throws InvalidParameter
};

struct HolePosition {
    double x = 0.0;
    double y = 0.0;
    // Hexagonal shell index of the generating lattice point; only defined for
    // centered alignment (u, v) = (0, 0), otherwise -1.
    int trace_index = -1;
};

/// Point on the perimeter of a hexagonal trace, annotated with its distance
/// from the trace center.
struct TracePoint {
    double x = 0.0;
    double y = 0.0;
    double distance = 0.0;
};

inline Vec2 basis_a1(double a) { return {a, 0.0}; }
inline Vec2 basis_a2(double a) { return {0.5 * a, 0.5 * std::sqrt(3.0) * a}; }

/// All lattice holes within `extent` of the disk center, sorted by distance
/// then by polar angle. The boundary is inclusive.
std::vector<HolePosition> generate_lattice(const LatticeSpec& spec, double extent);

/// The 6n lattice points forming the perimeter of the n-th hexagon around a
/// lattice point, sorted by distance then angle.
std::vector<TracePoint> hex_trace(int n, double a);

/// Reduce an alignment offset to the canonical domain
/// 0 <= u' <= a/4, 0 <= v' <= u' * tan(pi/6). Idempotent; all lattice
/// translations and point-group images of (u, v) map to the same result.
Vec2 canonicalize_alignment(double u, double v, double a);

/// The two named high-symmetry alignments: A on a lattice point, B at the far
/// corner of the canonical domain.
struct SymmetryPoints {
    Vec2 A;
    Vec2 B;
};
SymmetryPoints symmetry_points(double a);

} // namespace diskfar
