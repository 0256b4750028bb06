// efficiency.hpp - spectral efficiency from Purcell enhancement and branching
// ratio, and the total spin-photon figure of merit.
#pragma once

#include <string>
#include <vector>

namespace diskfar {

/// A diamond color center identified by its natural fraction of emission into
/// the zero-phonon line.
struct ColorCenter {
    std::string name;
    double zpl_branching = 0.0; // in (0, 1]

    void validate() const;
};

/// eta_zpl = F / (F + (1/branching - 1)). Strictly increasing in F, -> 1 as
/// F -> infinity.
double eta_zpl(double purcell, const ColorCenter& center);

/// Total figure of merit: probability that an excited emitter yields a
/// collected zero-phonon-line photon.
double eta_total(double eta_zpl, double eta_col);

/// Built-in centers: NV (0.03), SiV (0.7), SnV (0.8).
const std::vector<ColorCenter>& presets();

/// Lookup by name (case-sensitive); throws InvalidParameter for unknown names.
ColorCenter preset(const std::string& name);

struct EfficiencyReport {
    double purcell = 0.0;
    double eta_zpl = 0.0;
    double eta_col = 0.0;
    double eta = 0.0; // always eta_zpl * eta_col
    double na = 0.0;
    double alpha = 1.0; // reported separately, never folded into eta_col

    static EfficiencyReport make(double purcell, double eta_zpl, double eta_col, double na,
                                 double alpha);
};

} // namespace diskfar
