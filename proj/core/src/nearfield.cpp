// nearfield.cpp - analytic whispering-gallery field, sampled-grid import, and
// hole-center current sampling

#include "diskfar/nearfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "diskfar/errors.hpp"

namespace diskfar {

void DiskSpec::validate() const {
    if (!(r_d > 0.0)) throw InvalidParameter("disk radius r_d must be positive");
    if (!(t > 0.0)) throw InvalidParameter("disk thickness t must be positive");
    if (!(r_u > 0.0) || !(r_u <= r_d))
        throw InvalidParameter("undercut radius must satisfy 0 < r_u <= r_d");
    if (!(n_sub >= 1.0) || !(n_disk > n_sub))
        throw InvalidParameter("refractive indices must satisfy n_disk > n_sub >= 1");
}

void ModeSpec::validate() const {
    if (m < 0) throw InvalidParameter("azimuthal mode number m must be >= 0");
    if (!(lambda0 > 0.0)) throw InvalidParameter("wavelength lambda0 must be positive");
    if (!(radial_width > 0.0)) throw InvalidParameter("radial width must be positive");
    if (!(decay_length > 0.0)) throw InvalidParameter("decay length must be positive");
    if (r_peak && !(*r_peak >= 0.0)) throw InvalidParameter("r_peak must be non-negative");
}

double ModeSpec::resolved_r_peak(const DiskSpec& disk) const {
    const double rp = r_peak.value_or(disk.r_d - 0.25);
    if (!(rp >= 0.0) || !(rp <= disk.r_d))
        throw InvalidParameter("mode peak radius must lie in [0, r_d], got " + std::to_string(rp));
    return rp;
}

NearField::NearField(std::function<CVec3(double, double)> eval, FieldProvenance provenance,
                     std::optional<GridInfo> grid)
    : eval_(std::move(eval)), provenance_(provenance), grid_(std::move(grid)) {}

bool NearField::covers(double x, double y) const {
    if (!grid_) return true;
    const double ex = 1e-12 * std::max({1.0, std::abs(grid_->x0), std::abs(grid_->x1())});
    const double ey = 1e-12 * std::max({1.0, std::abs(grid_->y0), std::abs(grid_->y1())});
    return x >= grid_->x0 - ex && x <= grid_->x1() + ex && y >= grid_->y0 - ey &&
           y <= grid_->y1() + ey;
}

CVec3 NearField::evaluate(double x, double y) const {
    if (!covers(x, y)) {
        std::ostringstream os;
        os << "field query (" << x << ", " << y << ") outside sampled extent";
        throw DomainError(os.str());
    }
    return eval_(x, y);
}

NearField analytic_mode(const DiskSpec& disk, const ModeSpec& mode) {
    disk.validate();
    mode.validate();

    const double r_d = disk.r_d;
    const double r_peak = mode.resolved_r_peak(disk);
    const double w = mode.radial_width;
    const double decay = mode.decay_length;
    const double g_edge = std::exp(-(r_d - r_peak) * (r_d - r_peak) / (2.0 * w * w));
    const int m = mode.m;
    const bool standing = mode.standing_wave;
    const bool azimuthal = (mode.polarization == Polarization::azimuthal);

    auto eval = [=](double x, double y) -> CVec3 {
        const double r = std::hypot(x, y);
        const double phi = std::atan2(y, x);

        double g;
        if (r <= r_d) {
            g = std::exp(-(r - r_peak) * (r - r_peak) / (2.0 * w * w));
        } else {
            g = g_edge * std::exp(-(r - r_d) / decay);
        }

        cplx az;
        if (standing) {
            az = cplx(std::cos(m * phi), 0.0);
        } else {
            az = std::polar(1.0, m * phi);
        }

        const double ex = azimuthal ? -std::sin(phi) : std::cos(phi);
        const double ey = azimuthal ? std::cos(phi) : std::sin(phi);
        const cplx amp = g * az;
        return {amp * ex, amp * ey, cplx(0.0, 0.0)};
    };

    return NearField(std::move(eval), FieldProvenance::analytic, std::nullopt);
}

namespace {

struct HeaderField {
    const char* name;
    double* slot;
};

// Reads "name value" header lines in fixed order, skipping blanks/comments.
void parse_header(std::istream& in, std::initializer_list<HeaderField> fields, int& line_no) {
    for (const auto& f : fields) {
        std::string line;
        for (;;) {
            if (!std::getline(in, line)) throw ParseError("unexpected end of file in header");
            ++line_no;
            if (line.empty() || line[0] == '#') continue;
            break;
        }
        std::istringstream ls(line);
        std::string key;
        double value;
        if (!(ls >> key >> value) || key != f.name)
            throw ParseError("line " + std::to_string(line_no) + ": expected header '" +
                             f.name + " <value>', got '" + line + "'");
        *f.slot = value;
    }
}

} // namespace

NearField import_nearfield(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open near-field file '" + path.string() + "'");

    double nx_d, ny_d;
    GridInfo g;
    int line_no = 0;
    parse_header(in,
                 {{"nx", &nx_d}, {"ny", &ny_d}, {"x0", &g.x0}, {"y0", &g.y0}, {"dx", &g.dx},
                  {"dy", &g.dy}},
                 line_no);
    g.nx = static_cast<int>(nx_d);
    g.ny = static_cast<int>(ny_d);
    if (g.nx < 2 || g.ny < 2)
        throw ParseError("near-field grid needs at least 2 samples per axis");
    if (!(g.dx > 0.0) || !(g.dy > 0.0) || !std::isfinite(g.dx) || !std::isfinite(g.dy))
        throw ParseError("near-field grid spacing must be positive and finite");

    const std::size_t count = static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny);
    auto samples = std::make_shared<std::vector<CVec3>>();
    samples->reserve(count);

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double vals[6];
        int got = 0;
        while (got < 6 && (ls >> vals[got])) ++got;
        double extra;
        if (got < 6 || (ls >> extra))
            throw ParseError("line " + std::to_string(line_no) + ": expected 6 values per record, got " +
                             std::to_string(got < 6 ? got : 7) + "+");
        for (double v : vals)
            if (!std::isfinite(v))
                throw ParseError("line " + std::to_string(line_no) + ": non-finite field sample");
        if (samples->size() == count)
            throw ParseError("line " + std::to_string(line_no) + ": more records than nx*ny");
        samples->push_back(
            {cplx(vals[0], vals[1]), cplx(vals[2], vals[3]), cplx(vals[4], vals[5])});
    }
    if (samples->size() != count)
        throw ParseError("near-field file ended after " + std::to_string(samples->size()) +
                         " of " + std::to_string(count) + " records");

    const GridInfo grid = g;
    auto eval = [samples, grid](double x, double y) -> CVec3 {
        // Bilinear interpolation; x fastest in storage.
        double fx = (x - grid.x0) / grid.dx;
        double fy = (y - grid.y0) / grid.dy;
        int ix = static_cast<int>(std::floor(fx));
        int iy = static_cast<int>(std::floor(fy));
        ix = std::clamp(ix, 0, grid.nx - 2);
        iy = std::clamp(iy, 0, grid.ny - 2);
        const double tx = std::clamp(fx - ix, 0.0, 1.0);
        const double ty = std::clamp(fy - iy, 0.0, 1.0);

        auto at = [&](int i, int j) -> const CVec3& {
            return (*samples)[static_cast<std::size_t>(j) * grid.nx + i];
        };
        const double w00 = (1.0 - tx) * (1.0 - ty);
        const double w10 = tx * (1.0 - ty);
        const double w01 = (1.0 - tx) * ty;
        const double w11 = tx * ty;
        const CVec3& c00 = at(ix, iy);
        const CVec3& c10 = at(ix + 1, iy);
        const CVec3& c01 = at(ix, iy + 1);
        const CVec3& c11 = at(ix + 1, iy + 1);
        return {w00 * c00.x + w10 * c10.x + w01 * c01.x + w11 * c11.x,
                w00 * c00.y + w10 * c10.y + w01 * c01.y + w11 * c11.y,
                w00 * c00.z + w10 * c10.z + w01 * c01.z + w11 * c11.z};
    };

    return NearField(std::move(eval), FieldProvenance::imported, grid);
}

void export_nearfield(const std::filesystem::path& path, const NearField& field,
                      const GridInfo& window) {
    if (window.nx < 2 || window.ny < 2 || !(window.dx > 0.0) || !(window.dy > 0.0))
        throw InvalidParameter("export window needs nx, ny >= 2 and positive spacing");

    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");

    char buf[512];
    out << "nx " << window.nx << "\nny " << window.ny << "\n";
    std::snprintf(buf, sizeof buf, "x0 %.17g\ny0 %.17g\ndx %.17g\ndy %.17g\n", window.x0,
                  window.y0, window.dx, window.dy);
    out << buf;
    for (int j = 0; j < window.ny; ++j) {
        for (int i = 0; i < window.nx; ++i) {
            const CVec3 e = field.evaluate(window.x0 + i * window.dx, window.y0 + j * window.dy);
            std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g\n", e.x.real(),
                          e.x.imag(), e.y.real(), e.y.imag(), e.z.real(), e.z.imag());
            out << buf;
        }
    }
    if (!out) throw ParseError("write failure on '" + path.string() + "'");
}

void DipoleArray::validate() const {
    if (positions.empty()) throw InvalidParameter("dipole array is empty");
    if (positions.size() != currents.size())
        throw InvalidParameter("dipole positions/currents size mismatch");
    if (!(length > 0.0)) throw InvalidParameter("dipole length must be positive");
    if (!(k > 0.0)) throw InvalidParameter("wavenumber must be positive");
    if (!(eta_med > 0.0)) throw InvalidParameter("medium impedance must be positive");

    std::vector<Vec3> sorted = positions;
    std::sort(sorted.begin(), sorted.end(), [](const Vec3& a, const Vec3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const Vec3 d = sorted[i] - sorted[i - 1];
        if (d.x == 0.0 && d.y == 0.0 && d.z == 0.0)
            throw InvalidParameter("dipole positions must be distinct");
    }
}

DipoleArray sample_currents(const NearField& field, const std::vector<HolePosition>& holes,
                            bool include_z, double k, double eta_med, double dipole_length,
                            double z_plane) {
    if (holes.empty()) throw InvalidParameter("no holes to sample");

    DipoleArray arr;
    arr.length = dipole_length;
    arr.eta_med = eta_med;
    arr.k = k;
    arr.positions.reserve(holes.size());
    arr.currents.reserve(holes.size());
    for (const auto& h : holes) {
        CVec3 e = field.evaluate(h.x, h.y);
        if (!include_z) e.z = cplx(0.0, 0.0);
        arr.positions.push_back({h.x, h.y, z_plane});
        arr.currents.push_back(e);
    }
    arr.validate();
    return arr;
}

std::vector<OverlapEntry> overlap_report(const NearField& field,
                                         const std::vector<HolePosition>& holes) {
    std::vector<OverlapEntry> out;
    out.reserve(holes.size());
    double max_mag = 0.0;
    for (const auto& h : holes) {
        const double mag = field.evaluate(h.x, h.y).norm();
        max_mag = std::max(max_mag, mag);
        out.push_back({h.x, h.y, mag});
    }
    if (max_mag > 0.0)
        for (auto& e : out) e.magnitude /= max_mag;
    return out;
}

} // namespace diskfar
