#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zgof/rng.hpp"
#include "zgof/special.hpp"

namespace zgof {

using Count = std::uint64_t;

/// Zeta(s) with ζ(s), ζ'(s), ζ''(s) cached.
struct ZetaModel {
    double s = 2.0;
    double zeta0 = 0.0;
    double zeta1 = 0.0;
    double zeta2 = 0.0;

    /// Throws DomainError unless s > 1.
    static ZetaModel make(double s, const PrecisionPolicy& policy = {});
};

/// Observations X_1..X_n, every value >= 1.
class Sample {
public:
    Sample() = default;
    explicit Sample(std::vector<Count> values);

    std::span<const Count> values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    Count operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<Count> values_;
};

/// Distinct sample values in increasing order with their multiplicities.
///
/// Every statistic in this library is a symmetric function of the sample, so
/// it is evaluated on the tally (O(d) or O(d^2) for d distinct values).
struct Tally {
    std::vector<Count> values;
    std::vector<std::uint64_t> counts;
    std::uint64_t n = 0;
    double mean_log = 0.0;

    static Tally of(const Sample& sample);
    static Tally of(std::span<const Count> values);

    std::size_t distinct() const { return values.size(); }
    Count max() const { return values.back(); }
};

double zeta_pmf(const ZetaModel& model, Count k);
double zeta_cdf(const ZetaModel& model, Count k);
/// P(X > k) without cancellation against 1.
double zeta_sf(const ZetaModel& model, Count k);

/// One exact Zeta(s) draw (Devroye's rejection method).
Count draw_zeta(double s, RngStream& rng);
Sample sample_zeta(const ZetaModel& model, std::size_t n, RngStream& rng);

// ---------------------------------------------------------------------------
// Alternatives

struct ZetaAlt {
    double s;
};
/// Geometric on {1, 2, ...} whose mean matches Zeta(s): p = ζ(s)/ζ(s−1), s > 2.
struct GeomMatched {
    double s;
};
/// Zeta truncated to {1..N}.
struct Zipf {
    double s;
    std::uint64_t N;
};
/// Zeta(s) on {1..N}; the remaining mass spread geometrically (p_g) beyond N.
struct ZetaGeomSplice {
    double s;
    std::uint64_t N;
    double p_g;
};
/// Mean-matched Geom(s) on {1..N}; the remaining mass as N + Zeta(s) beyond N.
struct GeomZetaSplice {
    double s;
    std::uint64_t N;
};
/// pmf ∝ k^{-s} (1 + eps (−1)^k).
struct Zigzag {
    double s;
    double eps;
};

using AlternativeSpec = std::variant<ZetaAlt, GeomMatched, Zipf, ZetaGeomSplice, GeomZetaSplice, Zigzag>;

void validate(const AlternativeSpec& spec);
/// Label as used in the power tables, e.g. "Zigzag(2,0.5)".
std::string label(const AlternativeSpec& spec);
/// Inverse of label(); throws DomainError on malformed input.
AlternativeSpec parse_alternative(const std::string& text);

/// An alternative with its normalizing constants and sampling tables precomputed.
class AlternativeLaw {
public:
    explicit AlternativeLaw(const AlternativeSpec& spec);

    const AlternativeSpec& spec() const { return spec_; }
    /// Largest support point (N for Zipf, otherwise unbounded).
    Count support_max() const;
    double pmf(Count k) const;
    /// P(X > k).
    double sf(Count k) const;
    /// E[log X].
    double mean_log() const;
    Count draw(RngStream& rng) const;
    Sample sample(std::size_t n, RngStream& rng) const;

private:
    Count draw_truncated(RngStream& rng) const;

    AlternativeSpec spec_;
    double s_ = 0.0;
    double zeta_s_ = 0.0;
    double norm_ = 1.0;     // normalizer of the family (Zipf, Zigzag)
    double p_ = 0.0;        // geometric success probability
    double head_mass_ = 1.0;
    // Walker alias table over {1..N}
    std::vector<double> alias_prob_;
    std::vector<std::uint32_t> alias_index_;
};

double alt_pmf(const AlternativeSpec& spec, Count k);
Sample sample_alt(const AlternativeSpec& spec, std::size_t n, RngStream& rng);

} // namespace zgof
