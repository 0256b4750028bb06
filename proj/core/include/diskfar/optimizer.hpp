// optimizer.hpp - parameter sweeps with golden-section argmax refinement and
// seeded Monte Carlo robustness studies over fabrication-varied parameters.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "diskfar/pipeline.hpp"

namespace diskfar {

struct SweepSpec {
    SweepParameter parameter = SweepParameter::a;
    double lo = 0.0;
    double hi = 0.0;
    int count = 0; // >= 3
    Metric metric = Metric::eta_col;

    void validate() const;
};

struct SweepPoint {
    double value = 0.0;
    double metric = 0.0; // NaN when the pipeline failed at this point
    bool ok = false;
    std::string error;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;
    int argmax_index = -1; // first-encountered maximum among ok points
    double argmax_value = 0.0;
    double argmax_metric = 0.0;
};

/// Evaluate the metric on a uniform grid. Per-point pipeline failures are
/// recorded in the result; the sweep only throws if every point fails.
SweepResult sweep(const SweepSpec& spec, const RunConfig& base);

/// Same sweep driven by an arbitrary objective (exceptions mark the point
/// as failed).
SweepResult sweep(const SweepSpec& spec, const std::function<double(double)>& objective);

struct RefineResult {
    double parameter = 0.0;
    double metric = 0.0;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
    int evaluations = 0;
};

/// Golden-section refinement on the interval bracketing the coarse argmax.
/// Throws NoBracketError when the maximum sits on a sweep boundary. The
/// returned metric is never below the best coarse sample.
RefineResult refine_argmax(const SweepResult& result, const RunConfig& base,
                           double relative_tolerance);
RefineResult refine_argmax(const SweepResult& result,
                           const std::function<double(double)>& objective,
                           double relative_tolerance);

struct Distribution {
    enum class Kind { uniform, normal };
    Kind kind = Kind::uniform;
    double p1 = 0.0; // uniform: lo,   normal: mean
    double p2 = 0.0; // uniform: hi,   normal: standard deviation

    void validate() const;
};

/// Monte Carlo robustness study. Alignment offsets may either follow explicit
/// u/v distributions or be drawn uniformly over the primitive cell
/// (`alignment_cell_uniform`); either way the sampled offset is canonicalized
/// before evaluation.
struct RobustnessSpec {
    std::map<SweepParameter, Distribution> parameters;
    bool alignment_cell_uniform = false;
    int count = 205;
    std::optional<std::uint64_t> seed; // mandatory
    std::vector<double> thresholds;    // default 0..1 step 0.01
    Metric metric = Metric::eta_col;

    void validate() const;
};

struct RobustnessSample {
    double a = 0.0, u = 0.0, v = 0.0, r_h = 0.0, t = 0.0;
    double u_canonical = 0.0, v_canonical = 0.0;
    double metric = 0.0;
    bool ok = false;
    std::string error;
};

struct RobustnessResult {
    std::vector<RobustnessSample> samples;
    std::vector<std::pair<double, double>> cumulative; // (threshold, fraction of ok samples above)
    int failure_count = 0;
    std::uint64_t seed = 0;
};

RobustnessResult robustness(const RobustnessSpec& spec, const RunConfig& base);

/// Deterministic generator: identical draws for identical seeds on every
/// platform (mt19937_64 bits mapped to doubles directly, Box-Muller normals;
/// no implementation-defined std distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; } // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double normal(double mean, double sd);

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace diskfar
