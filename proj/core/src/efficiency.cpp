#include "diskfar/efficiency.hpp"

#include <cmath>

#include "diskfar/errors.hpp"

namespace diskfar {

void ColorCenter::validate() const {
    if (!(zpl_branching > 0.0) || !(zpl_branching <= 1.0))
        throw InvalidParameter("zpl branching ratio must lie in (0, 1], got " +
                               std::to_string(zpl_branching) + " for '" + name + "'");
}

double eta_zpl(double purcell, const ColorCenter& center) {
    center.validate();
    if (!(purcell >= 0.0)) throw InvalidParameter("Purcell enhancement must be non-negative");
    const double off_zpl = 1.0 / center.zpl_branching - 1.0;
    if (purcell == 0.0 && off_zpl == 0.0) return 1.0; // branching 1: all emission is ZPL
    return purcell / (purcell + off_zpl);
}

double eta_total(double eta_zpl, double eta_col) {
    if (!(eta_zpl >= 0.0) || !(eta_zpl <= 1.0))
        throw InvalidParameter("eta_zpl must lie in [0, 1]");
    if (!(eta_col >= 0.0) || !(eta_col <= 1.0))
        throw InvalidParameter("eta_col must lie in [0, 1]");
    return eta_zpl * eta_col;
}

const std::vector<ColorCenter>& presets() {
    static const std::vector<ColorCenter> table = {
        {"NV", 0.03},
        {"SiV", 0.7},
        {"SnV", 0.8},
    };
    return table;
}

ColorCenter preset(const std::string& name) {
    for (const auto& c : presets())
        if (c.name == name) return c;
    throw InvalidParameter("unknown color center '" + name + "' (have NV, SiV, SnV)");
}

EfficiencyReport EfficiencyReport::make(double purcell, double eta_zpl, double eta_col, double na,
                                        double alpha) {
    if (!(eta_zpl >= 0.0 && eta_zpl <= 1.0) || !(eta_col >= 0.0 && eta_col <= 1.0))
        throw InvalidParameter("efficiencies must lie in [0, 1]");
    EfficiencyReport r;
    r.purcell = purcell;
    r.eta_zpl = eta_zpl;
    r.eta_col = eta_col;
    r.eta = eta_zpl * eta_col;
    r.na = na;
    r.alpha = alpha;
    return r;
}

} // namespace diskfar
