// nearfield.hpp - complex near field of the microdisk mode in the grating
// plane (analytic whispering-gallery approximation or imported grid), and
// sampling of hole-center fields into dipole excitation currents.
#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "diskfar/geometry.hpp"
#include "diskfar/lattice.hpp"

namespace diskfar {

struct DiskSpec {
    double r_d = 0.0;    // disk radius
    double t = 0.0;      // disk thickness
    double r_u = 0.0;    // undercut radius
    double n_disk = 2.4; // diamond
    double n_sub = 1.4;  // glass substrate / grating side

    void validate() const;
};

enum class Polarization { azimuthal, radial };

/// Whispering-gallery mode parameters. The radial envelope is a Gaussian bump
/// of width `radial_width` centered at `r_peak` (default r_d - 0.25), matched
/// at r_d to an exponential tail with decay length `decay_length`.
struct ModeSpec {
    int m = 18;               // azimuthal mode number
    double lambda0 = 1.0;     // free-space ZPL wavelength; the length unit
    Polarization polarization = Polarization::azimuthal;
    std::optional<double> r_peak; // default derived from the disk radius
    double radial_width = 0.25;
    double decay_length = 0.1;
    bool standing_wave = true; // cos(m*phi) rather than exp(i*m*phi)

    void validate() const;
    double resolved_r_peak(const DiskSpec& disk) const;
};

enum class FieldProvenance { analytic, imported };

struct GridInfo {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    double x1() const { return x0 + (nx - 1) * dx; }
    double y1() const { return y0 + (ny - 1) * dy; }
};

/// Immutable evaluator of the in-plane complex electric field. Analytic
/// fields cover the whole plane; imported grids cover their sampled extent
/// and reject queries outside it.
class NearField {
public:
    CVec3 evaluate(double x, double y) const; // throws DomainError outside coverage
    bool covers(double x, double y) const;
    FieldProvenance provenance() const { return provenance_; }
    const std::optional<GridInfo>& grid_info() const { return grid_; }

    NearField(std::function<CVec3(double, double)> eval, FieldProvenance provenance,
              std::optional<GridInfo> grid);

private:
    std::function<CVec3(double, double)> eval_;
    FieldProvenance provenance_;
    std::optional<GridInfo> grid_;
};

/// Closed-form stand-in for a simulated bare-disk mode:
/// E(r, phi) = e_pol(phi) * g(r) * A(phi), E_z = 0.
NearField analytic_mode(const DiskSpec& disk, const ModeSpec& mode);

/// Load a sampled complex field (bilinear interpolation). Format: header
/// lines `nx`, `ny`, `x0`, `y0`, `dx`, `dy`, then nx*ny records of
/// Re/Im E_x, Re/Im E_y, Re/Im E_z, row-major with x fastest.
NearField import_nearfield(const std::filesystem::path& path);

/// Sample a field onto the given window and write it in the import format.
void export_nearfield(const std::filesystem::path& path, const NearField& field,
                      const GridInfo& window);

/// Hole scatterers as an array of Hertzian dipoles: positions plus complex
/// excitation currents, with the shared dipole length, medium impedance and
/// wavenumber needed by the far-field superposition.
struct DipoleArray {
    std::vector<Vec3> positions;
    std::vector<CVec3> currents;
    double length = 0.01;  // dipole length l, cancels in normalized metrics
    double eta_med = 0.0;  // medium impedance, ohms
    double k = 0.0;        // wavenumber in the medium, rad per unit length

    std::size_t size() const { return positions.size(); }
    void validate() const;
};

/// Currents are the field components at each hole center (proportionality
/// constant 1). With include_z=false the out-of-plane component is zeroed:
/// in-plane polarized light sees no index discontinuity along a hole edge in
/// z, so z-excitation scatters weakly and is dropped from the model.
DipoleArray sample_currents(const NearField& field, const std::vector<HolePosition>& holes,
                            bool include_z, double k, double eta_med, double dipole_length = 0.01,
                            double z_plane = 0.0);

struct OverlapEntry {
    double x = 0.0;
    double y = 0.0;
    double magnitude = 0.0; // |E| normalized to the maximum over the set
};

/// Per-hole field magnitudes, normalized so the strongest hole reads 1
/// (all-zero sets are returned as zeros).
std::vector<OverlapEntry> overlap_report(const NearField& field,
                                         const std::vector<HolePosition>& holes);

} // namespace diskfar
