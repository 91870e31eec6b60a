#include "zgof/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <regex>
#include <sstream>
#include <string_view>

#include "zgof/errors.hpp"

namespace zgof {
namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kMaxDraw = 9223372036854775808.0;  // 2^63
constexpr std::uint64_t kMaxZipfSupport = 10'000'000;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_number(double x) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), x);
    return std::string(buffer, end);
}

double parse_number(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DomainError("cannot parse number '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_size(std::string_view text) {
    const double v = parse_number(text);
    if (!(v >= 1.0) || v != std::floor(v)) {
        throw DomainError("expected a positive integer, got '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(v);
}

double geometric_match(double s) { return zeta(s) / zeta(s - 1.0); }

Count draw_geometric(double p, RngStream& rng) {
    if (p >= 1.0) {
        return 1;
    }
    const double g = std::floor(std::log(rng.uniform_open()) / std::log1p(-p));
    return 1 + static_cast<Count>(std::min(g, kMaxDraw - 1.0));
}

// Σ_{j>k} (−1)^j j^{-s} from the even and full Hurwitz tails.
double alternating_tail(double s, Count k) {
    const double even = std::exp2(-s) * zeta_tail(s, k / 2 + 1).value;
    return 2.0 * even - zeta_tail(s, k + 1).value;
}

} // namespace

ZetaModel ZetaModel::make(double s, const PrecisionPolicy& policy) {
    if (!(s > 1.0)) {
        throw DomainError("ZetaModel: shape parameter must exceed 1");
    }
    const ZetaValues z = zeta_all(s, policy);
    return {s, z.value, z.d1, z.d2};
}

Sample::Sample(std::vector<Count> values) : values_(std::move(values)) {
    for (Count v : values_) {
        if (v < 1) {
            throw DomainError("Sample: observations must be positive integers");
        }
    }
}

Tally Tally::of(const Sample& sample) { return of(sample.values()); }

Tally Tally::of(std::span<const Count> data) {
    if (data.empty()) {
        throw DomainError("Tally: empty sample");
    }
    std::vector<Count> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1) {
        throw DomainError("Tally: observations must be positive integers");
    }
    Tally t;
    t.n = sorted.size();
    double log_sum = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        t.values.push_back(sorted[i]);
        t.counts.push_back(j - i);
        log_sum += static_cast<double>(j - i) * std::log(static_cast<double>(sorted[i]));
        i = j;
    }
    t.mean_log = log_sum / static_cast<double>(t.n);
    return t;
}

double zeta_pmf(const ZetaModel& model, Count k) {
    if (k < 1) {
        throw DomainError("zeta_pmf: support is {1, 2, ...}");
    }
    return std::exp(-model.s * std::log(static_cast<double>(k))) / model.zeta0;
}

double zeta_sf(const ZetaModel& model, Count k) {
    if (k < 1) {
        throw DomainError("zeta_sf: support is {1, 2, ...}");
    }
    return zeta_tail(model.s, k + 1).value / model.zeta0;
}

double zeta_cdf(const ZetaModel& model, Count k) { return 1.0 - zeta_sf(model, k); }

Count draw_zeta(double s, RngStream& rng) {
    const double am1 = s - 1.0;
    const double b = std::exp2(am1);
    const double bm1 = std::expm1(am1 * kLn2);
    for (;;) {
        const double u = rng.uniform_open();
        const double v = rng.uniform();
        const double x = std::floor(std::exp(-std::log(u) / am1));
        if (!(x < kMaxDraw)) {
            continue;
        }
        const double lt = am1 * std::log1p(1.0 / x);
        if (v * x * std::expm1(lt) / bm1 <= std::exp(lt) / b) {
            return static_cast<Count>(x);
        }
    }
}

Sample sample_zeta(const ZetaModel& model, std::size_t n, RngStream& rng) {
    if (n < 1) {
        throw DomainError("sample_zeta: n must be positive");
    }
    std::vector<Count> out(n);
    for (auto& x : out) {
        x = draw_zeta(model.s, rng);
    }
    return Sample(std::move(out));
}

// ---------------------------------------------------------------------------

void validate(const AlternativeSpec& spec) {
    std::visit(Overloaded{
                   [](const ZetaAlt& a) {
                       if (!(a.s > 1.0)) throw DomainError("Zeta alternative needs s > 1");
                   },
                   [](const GeomMatched& a) {
                       if (!(a.s > 2.0)) throw DomainError("Geom(s) needs s > 2 (Zeta mean must exist)");
                   },
                   [](const Zipf& a) {
                       if (!(a.s > 1.0)) throw DomainError("Zipf needs s > 1");
                       if (a.N < 1 || a.N > kMaxZipfSupport) throw DomainError("Zipf needs 1 <= N <= 1e7");
                   },
                   [](const ZetaGeomSplice& a) {
                       if (!(a.s > 1.0)) throw DomainError("ZG needs s > 1");
                       if (a.N < 1 || a.N > kMaxZipfSupport) throw DomainError("ZG needs 1 <= N <= 1e7");
                       if (!(a.p_g > 0.0 && a.p_g < 1.0)) throw DomainError("ZG needs 0 < p_g < 1");
                   },
                   [](const GeomZetaSplice& a) {
                       if (!(a.s > 2.0)) throw DomainError("GZ needs s > 2 (mean-matched geometric head)");
                       if (a.N < 1) throw DomainError("GZ needs N >= 1");
                   },
                   [](const Zigzag& a) {
                       if (!(a.s > 1.0)) throw DomainError("Zigzag needs s > 1");
                       if (!(std::abs(a.eps) < 1.0)) throw DomainError("Zigzag needs |eps| < 1");
                   },
               },
               spec);
}

std::string label(const AlternativeSpec& spec) {
    auto f = format_number;
    return std::visit(Overloaded{
                          [&](const ZetaAlt& a) { return "Zeta(" + f(a.s) + ")"; },
                          [&](const GeomMatched& a) { return "Geom(" + f(a.s) + ")"; },
                          [&](const Zipf& a) { return "Zipf(" + f(a.s) + "," + std::to_string(a.N) + ")"; },
                          [&](const ZetaGeomSplice& a) {
                              return "ZG(" + f(a.s) + "," + std::to_string(a.N) + "," + f(a.p_g) + ")";
                          },
                          [&](const GeomZetaSplice& a) { return "GZ(" + f(a.s) + "," + std::to_string(a.N) + ")"; },
                          [&](const Zigzag& a) { return "Zigzag(" + f(a.s) + "," + f(a.eps) + ")"; },
                      },
                      spec);
}

AlternativeSpec parse_alternative(const std::string& text) {
    static const std::regex pattern(R"(^\s*([A-Za-z]+)\s*\(([^()]*)\)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
        throw DomainError("cannot parse alternative '" + text + "'");
    }
    std::string name = m[1].str();
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    std::vector<std::string> args;
    std::stringstream ss(m[2].str());
    for (std::string item; std::getline(ss, item, ',');) {
        args.push_back(item);
    }
    auto want = [&](std::size_t count) {
        if (args.size() != count) {
            throw DomainError("alternative '" + text + "' expects " + std::to_string(count) + " parameters");
        }
    };
    AlternativeSpec spec;
    if (name == "zeta") {
        want(1);
        spec = ZetaAlt{parse_number(args[0])};
    } else if (name == "geom") {
        want(1);
        spec = GeomMatched{parse_number(args[0])};
    } else if (name == "zipf") {
        want(2);
        spec = Zipf{parse_number(args[0]), parse_size(args[1])};
    } else if (name == "zg") {
        want(3);
        spec = ZetaGeomSplice{parse_number(args[0]), parse_size(args[1]), parse_number(args[2])};
    } else if (name == "gz") {
        want(2);
        spec = GeomZetaSplice{parse_number(args[0]), parse_size(args[1])};
    } else if (name == "zigzag") {
        want(2);
        spec = Zigzag{parse_number(args[0]), parse_number(args[1])};
    } else {
        throw DomainError("unknown alternative family '" + m[1].str() + "'");
    }
    validate(spec);
    return spec;
}

// ---------------------------------------------------------------------------

AlternativeLaw::AlternativeLaw(const AlternativeSpec& spec) : spec_(spec) {
    validate(spec_);
    std::visit([this](const auto& a) { s_ = a.s; }, spec_);
    zeta_s_ = zeta(s_);

    auto build_alias = [this](std::uint64_t N) {
        std::vector<double> w(N);
        double total = 0.0;
        for (std::uint64_t k = 1; k <= N; ++k) {
            w[k - 1] = std::exp(-s_ * std::log(static_cast<double>(k)));
            total += w[k - 1];
        }
        // Vose's alias method
        alias_prob_.assign(N, 0.0);
        alias_index_.assign(N, 0);
        std::vector<std::uint32_t> small, large;
        std::vector<double> scaled(N);
        for (std::uint64_t i = 0; i < N; ++i) {
            scaled[i] = w[i] * static_cast<double>(N) / total;
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            const auto lo = small.back();
            small.pop_back();
            const auto hi = large.back();
            alias_prob_[lo] = scaled[lo];
            alias_index_[lo] = hi;
            scaled[hi] = (scaled[hi] + scaled[lo]) - 1.0;
            if (scaled[hi] < 1.0) {
                large.pop_back();
                small.push_back(hi);
            }
        }
        for (auto i : large) alias_prob_[i] = 1.0;
        for (auto i : small) alias_prob_[i] = 1.0;
        return total;
    };

    std::visit(Overloaded{
                   [](const ZetaAlt&) {},
                   [this](const GeomMatched& a) { p_ = geometric_match(a.s); },
                   [&](const Zipf& a) { norm_ = build_alias(a.N); },
                   [&](const ZetaGeomSplice& a) {
                       build_alias(a.N);
                       head_mass_ = 1.0 - zeta_tail(a.s, a.N + 1).value / zeta_s_;
                       p_ = a.p_g;
                   },
                   [this](const GeomZetaSplice& a) {
                       p_ = geometric_match(a.s);
                       head_mass_ = -std::expm1(static_cast<double>(a.N) * std::log1p(-p_));
                   },
                   [this](const Zigzag& a) { norm_ = zeta_s_ * (1.0 + a.eps * (std::exp2(1.0 - a.s) - 1.0)); },
               },
               spec_);
}

Count AlternativeLaw::support_max() const {
    if (const auto* zipf = std::get_if<Zipf>(&spec_)) {
        return zipf->N;
    }
    return std::numeric_limits<Count>::max();
}

double AlternativeLaw::pmf(Count k) const {
    if (k < 1) {
        throw DomainError("pmf: support is {1, 2, ...}");
    }
    const double x = static_cast<double>(k);
    const double power = std::exp(-s_ * std::log(x));
    return std::visit(Overloaded{
                          [&](const ZetaAlt&) { return power / zeta_s_; },
                          [&](const GeomMatched&) { return std::exp((x - 1.0) * std::log1p(-p_)) * p_; },
                          [&](const Zipf& a) {
                              return k > a.N ? 0.0 : power / norm_;
                          },
                          [&](const ZetaGeomSplice& a) {
                              if (k <= a.N) return power / zeta_s_;
                              const double j = static_cast<double>(k - a.N - 1);
                              return (1.0 - head_mass_) * std::exp(j * std::log1p(-p_)) * p_;
                          },
                          [&](const GeomZetaSplice& a) {
                              if (k <= a.N) return std::exp((x - 1.0) * std::log1p(-p_)) * p_;
                              const double shifted = static_cast<double>(k - a.N);
                              return (1.0 - head_mass_) * std::exp(-s_ * std::log(shifted)) / zeta_s_;
                          },
                          [&](const Zigzag& a) { return power * (1.0 + (k % 2 == 0 ? a.eps : -a.eps)) / norm_; },
                      },
                      spec_);
}

double AlternativeLaw::sf(Count k) const {
    if (k < 1) {
        throw DomainError("sf: support is {1, 2, ...}");
    }
    const double x = static_cast<double>(k);
    return std::visit(Overloaded{
                          [&](const ZetaAlt&) { return zeta_tail(s_, k + 1).value / zeta_s_; },
                          [&](const GeomMatched&) { return std::exp(x * std::log1p(-p_)); },
                          [&](const Zipf& a) {
                              double sum = 0.0;
                              for (Count j = a.N; j > k; --j) sum += pmf(j);
                              return sum;
                          },
                          [&](const ZetaGeomSplice& a) {
                              if (k < a.N) return zeta_tail(s_, k + 1).value / zeta_s_;
                              return (1.0 - head_mass_) * std::exp(static_cast<double>(k - a.N) * std::log1p(-p_));
                          },
                          [&](const GeomZetaSplice& a) {
                              if (k <= a.N) return std::exp(x * std::log1p(-p_));
                              return (1.0 - head_mass_) * zeta_tail(s_, k - a.N + 1).value / zeta_s_;
                          },
                          [&](const Zigzag& a) {
                              return (zeta_tail(s_, k + 1).value + a.eps * alternating_tail(s_, k)) / norm_;
                          },
                      },
                      spec_);
}

double AlternativeLaw::mean_log() const {
    auto geometric_log_tail = [](double offset, double p) {
        // Σ_{j>=1} log(offset + j) (1-p)^{j-1} p
        double sum = 0.0, weight = p;
        for (double j = 1.0;; j += 1.0) {
            const double term = std::log(offset + j) * weight;
            sum += term;
            weight *= (1.0 - p);
            if (weight * std::log(offset + j + 1.0) < 1e-18 * std::max(sum, 1e-300)) break;
        }
        return sum;
    };
    return std::visit(
        Overloaded{
            [&](const ZetaAlt&) { return -zeta_derivative(s_, 1) / zeta_s_; },
            [&](const GeomMatched&) { return geometric_log_tail(0.0, p_); },
            [&](const Zipf& a) {
                double sum = 0.0;
                for (Count k = 2; k <= a.N; ++k) sum += std::log(static_cast<double>(k)) * pmf(k);
                return sum;
            },
            [&](const ZetaGeomSplice& a) {
                double sum = 0.0;
                for (Count k = 2; k <= a.N; ++k) sum += std::log(static_cast<double>(k)) * pmf(k);
                return sum + (1.0 - head_mass_) * geometric_log_tail(static_cast<double>(a.N), p_);
            },
            [&](const GeomZetaSplice& a) {
                double sum = 0.0;
                for (Count k = 2; k <= a.N; ++k) sum += std::log(static_cast<double>(k)) * pmf(k);
                // Σ_j log(N+j) j^{-s} = −ζ'(s) + Σ_j log1p(N/j) j^{-s}
                const double N = static_cast<double>(a.N);
                constexpr int kTerms = 200000;
                double shift = 0.0;
                for (int j = kTerms; j >= 1; --j) {
                    const double x = j;
                    shift += std::log1p(N / x) * std::exp(-s_ * std::log(x));
                }
                shift += N * std::pow(kTerms + 0.5, -s_) / s_;
                return sum + (1.0 - head_mass_) * (-zeta_derivative(s_, 1) + shift) / zeta_s_;
            },
            [&](const Zigzag& a) {
                const ZetaValues z = zeta_all(s_);
                const double two = std::exp2(1.0 - s_);
                // Σ (−1)^k log k k^{-s} = d/ds[(1 − 2^{1−s}) ζ(s)]
                const double alternating = two * kLn2 * z.value + (1.0 - two) * z.d1;
                return (-z.d1 + a.eps * alternating) / norm_;
            },
        },
        spec_);
}

Count AlternativeLaw::draw_truncated(RngStream& rng) const {
    const double u = rng.uniform() * static_cast<double>(alias_prob_.size());
    auto column = static_cast<std::size_t>(u);
    column = std::min(column, alias_prob_.size() - 1);
    const double frac = u - static_cast<double>(column);
    return 1 + (frac < alias_prob_[column] ? column : alias_index_[column]);
}

Count AlternativeLaw::draw(RngStream& rng) const {
    return std::visit(Overloaded{
                          [&](const ZetaAlt&) { return draw_zeta(s_, rng); },
                          [&](const GeomMatched&) { return draw_geometric(p_, rng); },
                          [&](const Zipf&) { return draw_truncated(rng); },
                          [&](const ZetaGeomSplice& a) {
                              if (rng.uniform() < head_mass_) return draw_truncated(rng);
                              return a.N + draw_geometric(p_, rng);
                          },
                          [&](const GeomZetaSplice& a) {
                              const Count g = draw_geometric(p_, rng);
                              if (g <= a.N) return g;
                              return a.N + draw_zeta(s_, rng);
                          },
                          [&](const Zigzag& a) {
                              const double bound = 1.0 + std::abs(a.eps);
                              for (;;) {
                                  const Count x = draw_zeta(s_, rng);
                                  const double accept = 1.0 + (x % 2 == 0 ? a.eps : -a.eps);
                                  if (rng.uniform() * bound < accept) return x;
                              }
                          },
                      },
                      spec_);
}

Sample AlternativeLaw::sample(std::size_t n, RngStream& rng) const {
    if (n < 1) {
        throw DomainError("sample: n must be positive");
    }
    std::vector<Count> out(n);
    for (auto& x : out) {
        x = draw(rng);
    }
    return Sample(std::move(out));
}

double alt_pmf(const AlternativeSpec& spec, Count k) { return AlternativeLaw(spec).pmf(k); }

Sample sample_alt(const AlternativeSpec& spec, std::size_t n, RngStream& rng) {
    return AlternativeLaw(spec).sample(n, rng);
}

} // namespace zgof
