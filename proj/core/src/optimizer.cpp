#include "diskfar/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diskfar/errors.hpp"

namespace diskfar {

void SweepSpec::validate() const {
    if (!(lo < hi)) throw InvalidParameter("sweep range must satisfy lo < hi");
    if (count < 3) throw InvalidParameter("sweep needs at least 3 samples");
}

SweepResult sweep(const SweepSpec& spec, const std::function<double(double)>& objective) {
    spec.validate();

    SweepResult result;
    result.spec = spec;
    result.points.reserve(spec.count);

    std::string last_error;
    for (int i = 0; i < spec.count; ++i) {
        const double x = spec.lo + i * (spec.hi - spec.lo) / (spec.count - 1);
        SweepPoint pt;
        pt.value = x;
        try {
            pt.metric = objective(x);
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.metric = std::numeric_limits<double>::quiet_NaN();
            pt.error = e.what();
            last_error = pt.error;
        }
        // First-encountered maximum wins ties.
        if (pt.ok && (result.argmax_index < 0 || pt.metric > result.argmax_metric)) {
            result.argmax_index = i;
            result.argmax_value = x;
            result.argmax_metric = pt.metric;
        }
        result.points.push_back(std::move(pt));
    }

    if (result.argmax_index < 0)
        throw NumericError("every sweep point failed; last error: " + last_error);
    return result;
}

SweepResult sweep(const SweepSpec& spec, const RunConfig& base) {
    return sweep(spec, [&](double x) {
        return evaluate_metric(with_param(base, spec.parameter, x), spec.metric);
    });
}

RefineResult refine_argmax(const SweepResult& result, const RunConfig& base,
                           double relative_tolerance) {
    const SweepParameter param = result.spec.parameter;
    const Metric metric = result.spec.metric;
    return refine_argmax(
        result,
        [&](double x) { return evaluate_metric(with_param(base, param, x), metric); },
        relative_tolerance);
}

RefineResult refine_argmax(const SweepResult& result,
                           const std::function<double(double)>& objective,
                           double relative_tolerance) {
    if (!(relative_tolerance > 0.0)) throw InvalidParameter("refinement tolerance must be positive");
    if (result.argmax_index < 0) throw NoBracketError("sweep has no successful samples");

    const int i = result.argmax_index;
    const int n = static_cast<int>(result.points.size());
    if (i == 0 || i == n - 1)
        throw NoBracketError("sweep maximum lies on the boundary; widen the sweep range to bracket it");
    if (!result.points[i - 1].ok || !result.points[i + 1].ok)
        throw NoBracketError("cannot bracket the maximum: a neighboring sweep point failed");

    RefineResult out;
    out.parameter = result.argmax_value;
    out.metric = result.argmax_metric;

    auto eval = [&](double x) -> double {
        ++out.evaluations;
        double f;
        try {
            f = objective(x);
        } catch (const std::exception&) {
            return -std::numeric_limits<double>::infinity();
        }
        if (f > out.metric) {
            out.metric = f;
            out.parameter = x;
        }
        return f;
    };

    constexpr double golden = 0.61803398874989484820;
    double a = result.points[i - 1].value;
    double b = result.points[i + 1].value;
    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = eval(c);
    double fd = eval(d);

    const double tol = relative_tolerance * std::max({std::abs(a), std::abs(b), 1e-30});
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = eval(d);
        }
    }
    eval(0.5 * (a + b));

    out.interval_lo = a;
    out.interval_hi = b;
    return out;
}

void Distribution::validate() const {
    if (kind == Kind::uniform) {
        if (!(p1 <= p2)) throw InvalidParameter("uniform distribution needs lo <= hi");
    } else {
        if (!(p2 >= 0.0)) throw InvalidParameter("normal distribution width must be >= 0");
    }
    if (!std::isfinite(p1) || !std::isfinite(p2))
        throw InvalidParameter("distribution parameters must be finite");
}

void RobustnessSpec::validate() const {
    if (count < 1) throw InvalidParameter("robustness sample count must be >= 1");
    if (!seed) throw InvalidParameter("robustness runs require an explicit random seed");
    for (const auto& [param, dist] : parameters) {
        if (param == SweepParameter::na)
            throw InvalidParameter("NA is not a fabrication parameter; sweep it instead");
        dist.validate();
        if (alignment_cell_uniform && (param == SweepParameter::u || param == SweepParameter::v))
            throw InvalidParameter(
                "alignment_cell_uniform conflicts with explicit u/v distributions");
    }
    for (double t : thresholds)
        if (!std::isfinite(t)) throw InvalidParameter("metric thresholds must be finite");
}

double Rng::normal(double mean, double sd) {
    if (have_spare_) {
        have_spare_ = false;
        return mean + sd * spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps log() finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * pi * u2);
    have_spare_ = true;
    return mean + sd * r * std::cos(2.0 * pi * u2);
}

RobustnessResult robustness(const RobustnessSpec& spec, const RunConfig& base) {
    spec.validate();
    base.validate();

    RobustnessResult result;
    result.seed = *spec.seed;
    result.samples.reserve(spec.count);
    Rng rng(*spec.seed);

    auto draw = [&](const Distribution& d) {
        return d.kind == Distribution::Kind::uniform ? rng.uniform(d.p1, d.p2)
                                                     : rng.normal(d.p1, d.p2);
    };

    // Fixed draw order per sample: a, u, v, r_h, t, then the cell offset.
    static const SweepParameter order[] = {SweepParameter::a, SweepParameter::u, SweepParameter::v,
                                           SweepParameter::r_h, SweepParameter::t};

    for (int s = 0; s < spec.count; ++s) {
        RobustnessSample sample;
        sample.a = base.lattice.a;
        sample.u = base.lattice.u;
        sample.v = base.lattice.v;
        sample.r_h = base.lattice.r_h;
        sample.t = base.disk.t;

        for (SweepParameter p : order) {
            const auto it = spec.parameters.find(p);
            if (it == spec.parameters.end()) continue;
            const double x = draw(it->second);
            switch (p) {
                case SweepParameter::a: sample.a = x; break;
                case SweepParameter::u: sample.u = x; break;
                case SweepParameter::v: sample.v = x; break;
                case SweepParameter::r_h: sample.r_h = x; break;
                case SweepParameter::t: sample.t = x; break;
                default: break;
            }
        }
        if (spec.alignment_cell_uniform) {
            const double s1 = rng.uniform01();
            const double s2 = rng.uniform01();
            const Vec2 a1 = basis_a1(sample.a);
            const Vec2 a2 = basis_a2(sample.a);
            sample.u = s1 * a1.x + s2 * a2.x;
            sample.v = s1 * a1.y + s2 * a2.y;
        }

        try {
            const Vec2 canonical = canonicalize_alignment(sample.u, sample.v, sample.a);
            sample.u_canonical = canonical.x;
            sample.v_canonical = canonical.y;

            RunConfig cfg = base;
            cfg.lattice.a = sample.a;
            cfg.lattice.u = canonical.x;
            cfg.lattice.v = canonical.y;
            cfg.lattice.r_h = sample.r_h;
            cfg.disk.t = sample.t;
            sample.metric = evaluate_metric(cfg, spec.metric);
            sample.ok = true;
        } catch (const std::exception& e) {
            sample.metric = std::numeric_limits<double>::quiet_NaN();
            sample.error = e.what();
            ++result.failure_count;
        }
        result.samples.push_back(std::move(sample));
    }

    std::vector<double> thresholds = spec.thresholds;
    if (thresholds.empty()) {
        thresholds.reserve(101);
        for (int i = 0; i <= 100; ++i) thresholds.push_back(i / 100.0);
    }
    std::sort(thresholds.begin(), thresholds.end());

    const int ok_count = spec.count - result.failure_count;
    result.cumulative.reserve(thresholds.size());
    for (double t : thresholds) {
        int above = 0;
        for (const auto& s : result.samples)
            if (s.ok && s.metric > t) ++above;
        const double fraction = ok_count > 0 ? static_cast<double>(above) / ok_count : 0.0;
        result.cumulative.emplace_back(t, fraction);
    }
    return result;
}

} // namespace diskfar
