#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "diskfar/errors.hpp"
#include "diskfar/nearfield.hpp"
#include "oracles.hpp"

using namespace diskfar;

namespace {

DiskSpec table_disk() { return {1.5427, 0.9411, 1.45, 2.4, 1.4}; }

ModeSpec m18_standing() {
    ModeSpec m;
    m.m = 18;
    return m;
}

// Closed-form reimplementation of the analytic mode, kept local so the
// library path is checked against an independent evaluation.
CVec3 closed_form_mode(const DiskSpec& d, const ModeSpec& mspec, double x, double y) {
    const double r = std::hypot(x, y);
    const double phi = std::atan2(y, x);
    const double rp = mspec.r_peak.value_or(d.r_d - 0.25);
    const double w = mspec.radial_width;
    double g;
    if (r <= d.r_d)
        g = std::exp(-(r - rp) * (r - rp) / (2 * w * w));
    else
        g = std::exp(-(d.r_d - rp) * (d.r_d - rp) / (2 * w * w)) *
            std::exp(-(r - d.r_d) / mspec.decay_length);
    const cplx az = mspec.standing_wave ? cplx(std::cos(mspec.m * phi), 0.0)
                                        : std::polar(1.0, mspec.m * phi);
    const bool azim = mspec.polarization == Polarization::azimuthal;
    const double ex = azim ? -std::sin(phi) : std::cos(phi);
    const double ey = azim ? std::cos(phi) : std::sin(phi);
    return {g * az * ex, g * az * ey, cplx(0.0)};
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("analytic_mode: azimuthal nodes of the standing m=18 pattern") {
    const auto field = analytic_mode(table_disk(), m18_standing());
    for (double r : {0.5, 1.2927, 1.6}) {
        const double phi = pi / 36.0; // first zero of cos(18 phi)
        const CVec3 e = field.evaluate(r * std::cos(phi), r * std::sin(phi));
        CHECK(e.norm() < 1e-15);
    }
}

TEST_CASE("analytic_mode: 36 azimuthal intensity maxima on the peak circle") {
    const auto field = analytic_mode(table_disk(), m18_standing());
    const double r = 1.5427 - 0.25;
    const int n = 3600;
    std::vector<double> intensity(n);
    for (int i = 0; i < n; ++i) {
        const double phi = 2.0 * pi * i / n;
        const CVec3 e = field.evaluate(r * std::cos(phi), r * std::sin(phi));
        intensity[i] = e.norm() * e.norm();
    }
    int maxima = 0;
    for (int i = 0; i < n; ++i) {
        const double prev = intensity[(i + n - 1) % n];
        const double next = intensity[(i + 1) % n];
        if (intensity[i] > prev && intensity[i] > next) ++maxima;
    }
    CHECK(maxima == 36);
}

TEST_CASE("analytic_mode: traveling-wave magnitude is independent of phi") {
    ModeSpec m = m18_standing();
    m.standing_wave = false;
    const auto field = analytic_mode(table_disk(), m);
    for (double r : {0.8, 1.2927, 1.7}) {
        const double ref = field.evaluate(r, 0.0).norm();
        for (int i = 1; i < 12; ++i) {
            const double phi = i * pi / 6.0;
            CHECK(field.evaluate(r * std::cos(phi), r * std::sin(phi)).norm() ==
                  doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic_mode: Gaussian bump matched to exponential tail at the rim") {
    const DiskSpec d = table_disk();
    const auto field = analytic_mode(d, m18_standing());
    const double phi = 0.03;
    auto mag = [&](double r) {
        return field.evaluate(r * std::cos(phi), r * std::sin(phi)).norm();
    };
    // continuity across r_d
    CHECK(mag(d.r_d - 1e-9) == doctest::Approx(mag(d.r_d + 1e-9)).epsilon(1e-6));
    // tail decays by e over one decay length
    CHECK(mag(d.r_d + 0.1) / mag(d.r_d + 0.2) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    // matches the closed form everywhere sampled
    for (double r : {0.3, 0.9, 1.2927, 1.5, 1.9}) {
        const CVec3 got = field.evaluate(r * std::cos(phi), r * std::sin(phi));
        const CVec3 want = closed_form_mode(d, m18_standing(), r * std::cos(phi), r * std::sin(phi));
        CHECK(std::abs(got.x - want.x) < 1e-15);
        CHECK(std::abs(got.y - want.y) < 1e-15);
        CHECK(got.z == cplx(0.0));
    }
}

TEST_CASE("analytic_mode: polarization selects the in-plane unit vector") {
    ModeSpec radial = m18_standing();
    radial.polarization = Polarization::radial;
    const auto field_r = analytic_mode(table_disk(), radial);
    const auto field_a = analytic_mode(table_disk(), m18_standing());
    const double x = 0.9, y = 0.35;
    const double phi = std::atan2(y, x);
    const CVec3 er = field_r.evaluate(x, y);
    const CVec3 ea = field_a.evaluate(x, y);
    // radial field has no azimuthal component and vice versa
    CHECK(std::abs(er.x * -std::sin(phi) + er.y * std::cos(phi)) < 1e-15);
    CHECK(std::abs(ea.x * std::cos(phi) + ea.y * std::sin(phi)) < 1e-15);
}

TEST_CASE("import_nearfield: constant field interpolates exactly") {
    const auto path = temp_file("nf_const.txt");
    {
        std::ofstream out(path);
        out << "nx 3\nny 3\nx0 -1\ny0 -1\ndx 1\ndy 1\n";
        for (int i = 0; i < 9; ++i) out << "1 0 0 0 0 0\n";
    }
    const auto field = import_nearfield(path);
    CHECK(field.provenance() == FieldProvenance::imported);
    REQUIRE(field.grid_info().has_value());
    for (double x : {-0.99, -0.3, 0.0, 0.72})
        for (double y : {-0.8, 0.1, 0.97}) {
            const CVec3 e = field.evaluate(x, y);
            CHECK(e.x == cplx(1.0, 0.0));
            CHECK(e.y == cplx(0.0));
            CHECK(e.z == cplx(0.0));
        }
    CHECK_THROWS_AS(field.evaluate(1.5, 0.0), DomainError);
    CHECK_THROWS_AS(field.evaluate(0.0, -3.0), DomainError);
}

TEST_CASE("import_nearfield: sampled analytic mode matches the generator at hole centers") {
    const DiskSpec d = table_disk();
    const auto analytic = analytic_mode(d, m18_standing());
    const auto path = temp_file("nf_sampled.txt");
    GridInfo window;
    window.x0 = window.y0 = -2.2;
    window.dx = window.dy = 1.0 / 40.0;
    window.nx = window.ny = 177; // spans [-2.2, 2.2]
    export_nearfield(path, analytic, window);
    const auto grid = import_nearfield(path);

    const LatticeSpec lat{0.5168, 0.2 * 0.5168, 0.2931, 0.0, 0.0};
    const auto holes = generate_lattice(lat, 2.0);
    REQUIRE(holes.size() > 30);

    double num = 0.0, den = 0.0;
    for (const auto& h : holes) {
        const CVec3 ga = analytic.evaluate(h.x, h.y);
        const CVec3 gg = grid.evaluate(h.x, h.y);
        num += std::norm(gg.x - ga.x) + std::norm(gg.y - ga.y) + std::norm(gg.z - ga.z);
        den += std::norm(ga.x) + std::norm(ga.y) + std::norm(ga.z);
    }
    // Bilinear error is dominated by the m=18 azimuthal oscillation near the
    // mode peak: (k_azimuthal * h)^2 / 8 ~ 1.5% peak, 1.1% RMS at lambda0/40.
    const double rel_rms = std::sqrt(num / den);
    CAPTURE(rel_rms);
    CHECK(rel_rms < 0.013);

    // halving the spacing quarters the interpolation error
    GridInfo fine = window;
    fine.dx = fine.dy = 1.0 / 80.0;
    fine.nx = fine.ny = 353;
    const auto path_fine = temp_file("nf_sampled_fine.txt");
    export_nearfield(path_fine, analytic, fine);
    const auto grid_fine = import_nearfield(path_fine);
    double num_f = 0.0;
    for (const auto& h : holes) {
        const CVec3 ga = analytic.evaluate(h.x, h.y);
        const CVec3 gg = grid_fine.evaluate(h.x, h.y);
        num_f += std::norm(gg.x - ga.x) + std::norm(gg.y - ga.y) + std::norm(gg.z - ga.z);
    }
    CHECK(std::sqrt(num_f / den) < 0.3 * rel_rms);
}

TEST_CASE("import_nearfield: structured errors name the offending input") {
    const auto bad_row = temp_file("nf_badrow.txt");
    {
        std::ofstream out(bad_row);
        out << "nx 2\nny 2\nx0 0\ny0 0\ndx 1\ndy 1\n";
        out << "1 0 0 0 0 0\n";
        out << "1 0 0 0\n"; // 4 values instead of 6
        out << "1 0 0 0 0 0\n1 0 0 0 0 0\n";
    }
    CHECK_THROWS_WITH_AS(import_nearfield(bad_row),
                         doctest::Contains("line 8"), ParseError);

    const auto nan_row = temp_file("nf_nan.txt");
    {
        std::ofstream out(nan_row);
        out << "nx 2\nny 2\nx0 0\ny0 0\ndx 1\ndy 1\n";
        out << "1 0 0 0 0 0\n0 nan 0 0 0 0\n1 0 0 0 0 0\n1 0 0 0 0 0\n";
    }
    CHECK_THROWS_AS(import_nearfield(nan_row), ParseError);

    const auto truncated = temp_file("nf_short.txt");
    {
        std::ofstream out(truncated);
        out << "nx 2\nny 2\nx0 0\ny0 0\ndx 1\ndy 1\n1 0 0 0 0 0\n";
    }
    CHECK_THROWS_AS(import_nearfield(truncated), ParseError);

    const auto bad_header = temp_file("nf_badheader.txt");
    {
        std::ofstream out(bad_header);
        out << "nx 2\nny 2\nx0 0\ndx 1\ndy 1\ny0 0\n";
    }
    CHECK_THROWS_AS(import_nearfield(bad_header), ParseError);

    CHECK_THROWS_AS(import_nearfield(temp_file("nf_does_not_exist.txt")), ParseError);
}

TEST_CASE("sample_currents: nodes, z suppression, and corner phases") {
    const auto field = analytic_mode(table_disk(), m18_standing());
    const double k = 2.0 * pi * 1.4, eta = vacuum_impedance / 1.4;

    SUBCASE("hole at an azimuthal node samples zero current") {
        const double r = 1.2927, phi = pi / 36.0;
        const std::vector<HolePosition> holes = {{r * std::cos(phi), r * std::sin(phi), -1},
                                                 {0.9, 0.0, -1}};
        const auto arr = sample_currents(field, holes, false, k, eta);
        CHECK(arr.currents[0].norm() < 1e-15);
        CHECK(arr.currents[1].norm() > 0.1);
    }

    SUBCASE("out-of-plane field component is dropped when include_z is false") {
        const NearField zfield([](double, double) { return CVec3{cplx(0.0), cplx(0.0), cplx(0.0, 5.0)}; },
                               FieldProvenance::analytic, std::nullopt);
        const std::vector<HolePosition> holes = {{0.4, 0.1, -1}};
        const auto off = sample_currents(zfield, holes, false, k, eta);
        CHECK(off.currents[0].norm() == 0.0);
        const auto on = sample_currents(zfield, holes, true, k, eta);
        CHECK(on.currents[0].z == cplx(0.0, 5.0));
    }

    SUBCASE("trace-3 corners sample in phase: cos(18 phi) = 1 at every corner") {
        // choose a so the corner ring 3a sits on the mode peak
        const double a = (1.5427 - 0.25) / 3.0;
        const auto trace = hex_trace(3, a);
        std::vector<HolePosition> corners;
        for (const auto& t : trace)
            if (std::abs(t.distance - 3.0 * a) < 1e-9) corners.push_back({t.x, t.y, 3});
        REQUIRE(corners.size() == 6);
        const auto arr = sample_currents(field, corners, false, k, eta);
        const double mag0 = arr.currents[0].norm();
        CHECK(mag0 > 0.9); // on the envelope peak, cos factor 1
        for (std::size_t i = 0; i < corners.size(); ++i) {
            CHECK(arr.currents[i].norm() == doctest::Approx(mag0).epsilon(1e-9));
            // scalar amplitude along the local azimuthal direction is +g for all corners
            const double phi = std::atan2(corners[i].y, corners[i].x);
            const cplx along = arr.currents[i].x * -std::sin(phi) + arr.currents[i].y * std::cos(phi);
            CHECK(along.real() == doctest::Approx(mag0).epsilon(1e-9));
            CHECK(std::abs(along.imag()) < 1e-15);
        }
    }
}

TEST_CASE("sample_currents: linearity in the field and closed-form agreement") {
    const DiskSpec d = table_disk();
    const ModeSpec m = m18_standing();
    const auto field = analytic_mode(d, m);
    const double k = 2.0 * pi * 1.4, eta = vacuum_impedance / 1.4;
    const auto holes = generate_lattice({0.5168, 0.1, 0.2931, 0.0, 0.0}, 1.9);

    const auto base = sample_currents(field, holes, false, k, eta);
    for (std::size_t i = 0; i < holes.size(); ++i) {
        const CVec3 want = closed_form_mode(d, m, holes[i].x, holes[i].y);
        CHECK(std::abs(base.currents[i].x - want.x) < 1e-15);
        CHECK(std::abs(base.currents[i].y - want.y) < 1e-15);
    }

    const cplx c(0.3, -1.7);
    const NearField scaled(
        [&field, c](double x, double y) { return c * field.evaluate(x, y); },
        FieldProvenance::analytic, std::nullopt);
    const auto scaled_arr = sample_currents(scaled, holes, false, k, eta);
    for (std::size_t i = 0; i < holes.size(); ++i) {
        CHECK(std::abs(scaled_arr.currents[i].x - c * base.currents[i].x) < 1e-14);
        CHECK(std::abs(scaled_arr.currents[i].y - c * base.currents[i].y) < 1e-14);
    }
}

TEST_CASE("sample_currents: traveling-wave magnitudes are invariant under 2 pi / m rotation") {
    ModeSpec m = m18_standing();
    m.standing_wave = false;
    const auto field = analytic_mode(table_disk(), m);
    const double k = 2.0 * pi * 1.4, eta = vacuum_impedance / 1.4;

    const auto holes = generate_lattice({0.5168, 0.1, 0.2931, 0.03, 0.01}, 1.9);
    const double ang = 2.0 * pi / m.m;
    std::vector<HolePosition> rotated;
    for (const auto& h : holes)
        rotated.push_back({h.x * std::cos(ang) - h.y * std::sin(ang),
                           h.x * std::sin(ang) + h.y * std::cos(ang), -1});

    auto mags = [&](const std::vector<HolePosition>& hs) {
        std::vector<double> v;
        for (const auto& c : sample_currents(field, hs, false, k, eta).currents)
            v.push_back(c.norm());
        std::sort(v.begin(), v.end());
        return v;
    };
    const auto m0 = mags(holes), m1 = mags(rotated);
    REQUIRE(m0.size() == m1.size());
    for (std::size_t i = 0; i < m0.size(); ++i)
        CHECK(m0[i] == doctest::Approx(m1[i]).epsilon(1e-12));
}

TEST_CASE("sample_currents: imported grid must cover every hole") {
    const auto path = temp_file("nf_small.txt");
    {
        std::ofstream out(path);
        out << "nx 3\nny 3\nx0 -0.5\ny0 -0.5\ndx 0.5\ndy 0.5\n";
        for (int i = 0; i < 9; ++i) out << "1 0 0 0 0 0\n";
    }
    const auto field = import_nearfield(path);
    const std::vector<HolePosition> inside = {{0.2, 0.2, -1}};
    CHECK_NOTHROW(sample_currents(field, inside, false, 2 * pi, vacuum_impedance));
    const std::vector<HolePosition> outside = {{0.2, 0.2, -1}, {2.0, 0.0, -1}};
    CHECK_THROWS_AS(sample_currents(field, outside, false, 2 * pi, vacuum_impedance), DomainError);
}

TEST_CASE("overlap_report: normalization and degenerate inputs") {
    const auto field = analytic_mode(table_disk(), m18_standing());

    SUBCASE("an all-zero sample set comes back as zeros, not NaN") {
        const NearField dark([](double, double) { return CVec3{}; }, FieldProvenance::analytic,
                             std::nullopt);
        std::vector<HolePosition> holes = {{0.3, 0.1, -1}, {1.0, -0.4, -1}, {0.0, 0.9, -1}};
        for (const auto& e : overlap_report(dark, holes)) CHECK(e.magnitude == 0.0);

        // holes on azimuthal nodes sample values at rounding level; the
        // normalized report must still be finite
        std::vector<HolePosition> nodes;
        for (int j = 0; j < 4; ++j) {
            const double phi = pi / 36.0 + j * pi / 18.0;
            nodes.push_back({1.2 * std::cos(phi), 1.2 * std::sin(phi), -1});
        }
        for (const auto& e : overlap_report(field, nodes)) {
            CHECK(std::isfinite(e.magnitude));
            CHECK(e.magnitude <= 1.0);
        }
        // the raw magnitudes at nodes are at numerical zero (the atan2 round
        // trip scales rounding by the mode number)
        const auto arr = sample_currents(field, nodes, false, 2 * pi * 1.4,
                                         vacuum_impedance / 1.4);
        for (const auto& c : arr.currents) CHECK(c.norm() < 1e-13);
    }

    SUBCASE("single hole self-normalizes to 1") {
        const auto rep = overlap_report(field, {{1.2927, 0.0, -1}});
        REQUIRE(rep.size() == 1);
        CHECK(rep[0].magnitude == 1.0);
    }

    SUBCASE("trace-3 ring splits into two magnitude groups at the optimized geometry") {
        const double a = 0.5168;
        const auto trace = hex_trace(3, a);
        std::vector<HolePosition> holes;
        for (const auto& t : trace) holes.push_back({t.x, t.y, 3});
        const auto rep = overlap_report(field, holes);

        // closed-form expectation: edge holes carry the maximum
        const DiskSpec d = table_disk();
        const ModeSpec m = m18_standing();
        const double edge_mag = closed_form_mode(d, m, std::sqrt(7.0) * a * std::cos(std::atan2(0.5 * std::sqrt(3.0), 2.5)),
                                                 std::sqrt(7.0) * a * std::sin(std::atan2(0.5 * std::sqrt(3.0), 2.5))).norm();
        const double corner_mag = closed_form_mode(d, m, 3.0 * a, 0.0).norm();
        const double expected_corner = corner_mag / edge_mag;

        int edges = 0, corners = 0;
        for (std::size_t i = 0; i < holes.size(); ++i) {
            const double r = std::hypot(holes[i].x, holes[i].y);
            if (std::abs(r - 3.0 * a) < 1e-9) {
                ++corners;
                CHECK(rep[i].magnitude == doctest::Approx(expected_corner).epsilon(1e-9));
            } else {
                ++edges;
                CHECK(rep[i].magnitude == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
        CHECK(corners == 6);
        CHECK(edges == 12);
    }
}
