#pragma once

#include "rotaset/coder.hpp"
#include "rotaset/piecewise.hpp"

#include <memory>
#include <optional>

namespace rotaset {

/// A circle position the analyzer can compare with certificates:
///  - rational: exact rational value (pullback orbits, synthetic data)
///  - field: exact quadratic value (rotation orbits)
///  - coded: a digit stream E(omega) shifted s places, lazily deepened
///    through a backing SampleSet entry
///  - boxed: a fixed rational enclosure (raw CSV rows, controls)
/// Reflection wraps any kind (position 1 - x), flipping enclosures.
struct APoint {
    enum class Kind { rational, field, coded, boxed };
    Kind kind = Kind::boxed;

    Rat r;                       // rational
    QuadraticNumber q;           // field
    SampleSet* src = nullptr;    // coded: deepening source (kept alive by the holder)
    std::size_t src_idx = 0;
    DigitString static_digits;   // coded without a source: fixed prefix
    std::size_t shift = 0;       // coded: digits consumed by the shift map
    bool reflected = false;
    RatInterval fixed_box;       // boxed

    int time = -1;  // temporal index for orbit inputs

    static APoint rational(Rat v, int t = -1);
    static APoint field(QuadraticNumber v, int t = -1);
    static APoint coded(SampleSet* s, std::size_t idx, int t = -1);
    static APoint coded_static(DigitString digits, int t = -1);
    static APoint boxed(RatInterval box, int t = -1);

    /// Enclosure using about `digits` digits of resolution; wider kinds ignore
    /// the hint. Coded enclosures are half-open on the right.
    RatInterval enclosure(std::size_t digits) const;

    /// True when a deeper enclosure is available on request.
    bool refinable(std::size_t digits) const;

    /// Right end of the enclosure is excluded (the value is strictly below it).
    bool open_hi() const { return kind == Kind::coded && !reflected; }
    /// Left end is excluded (reflected coded points).
    bool open_lo() const { return kind == Kind::coded && reflected; }
};

/// Certified three-way comparison of positions; nullopt when the certificate
/// cannot be produced within depth_cap digits.
std::optional<int> cmp_points(const APoint& a, const APoint& b, std::size_t depth_cap = 1 << 17);

/// The map a check runs against.
struct PointMap {
    enum class Kind { times_d, rotation, piecewise, reflection } kind = Kind::times_d;
    int d = 2;
    QuadraticNumber theta;            // rotation
    std::shared_ptr<PiecewiseMap> pw; // piecewise

    static PointMap TimesD(int d);
    static PointMap Rotation(QuadraticNumber theta);
    static PointMap Piecewise(PiecewiseMap T);
    static PointMap Reflection();

    std::string name() const;
};

/// Image of a point under the map, as another comparable point.
APoint apply_map(const PointMap& pm, const APoint& p);

/// Sorted (strictly increasing) point collection the checks consume.
struct AnalysisSample {
    std::vector<APoint> pts;              // sorted by circle position
    std::shared_ptr<SampleSet> backing;   // keeps coded sources alive
    bool has_time = false;
    std::size_t depth = 64;
    std::string source;                   // provenance label for reports

    std::size_t size() const { return pts.size(); }

    /// Sorted index of each temporal position (orbits only).
    std::vector<std::size_t> temporal_order() const;
};

/// Wraps a coder SampleSet (already omega-sorted); verifies strict position
/// order along the way.
AnalysisSample analysis_from_sample(std::shared_ptr<SampleSet> s);

/// Wraps a pullback orbit: exact rational positions, sorted, with times.
AnalysisSample analysis_from_pullback(const PullbackOrbit& orbit);

/// Exact rotation orbit omega0 + k*theta, k < L, sorted, with times.
AnalysisSample analysis_from_rotation_orbit(const QuadraticNumber& omega0, const QuadraticNumber& theta,
                                            std::size_t L);

/// Synthetic rational points (sorted internally); times optional.
AnalysisSample analysis_from_rationals(std::vector<Rat> xs, bool keep_times = false);

}  // namespace rotaset
