#include "uci/dist.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace uci {

namespace {

constexpr std::uint64_t max_dense_support = 1u << 22;

Real real_of(const BigInt& v) { return Real(v.str()); }

Real log2_real(const Real& x) { return log(x) / log(Real(2)); }

// Dense probability vector for the finite-support families.
std::vector<double> dense_probs(const Distribution& d) {
    switch (d.kind) {
        case Distribution::Kind::explicit_probs:
            return d.probs;
        case Distribution::Kind::geometric: {
            std::vector<double> p(d.support);
            double norm = 0.0;
            for (std::uint64_t a = 0; a < d.support; ++a) {
                p[a] = std::pow(d.param, static_cast<double>(a));
                norm += p[a];
            }
            for (double& v : p) v /= norm;
            return p;
        }
        case Distribution::Kind::zipf: {
            std::vector<double> p(d.support);
            double norm = 0.0;
            for (std::uint64_t a = 0; a < d.support; ++a) {
                p[a] = std::pow(static_cast<double>(a + 1), -d.param);
                norm += p[a];
            }
            for (double& v : p) v /= norm;
            return p;
        }
        case Distribution::Kind::spike_uniform:
            throw domain_error("spike_uniform support is too large to materialize");
    }
    throw domain_error("unknown distribution");
}

double entropy_dense(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

}  // namespace

Distribution Distribution::explicit_probs_of(std::vector<double> probs) {
    Distribution d;
    d.kind = Kind::explicit_probs;
    d.probs = std::move(probs);
    d.validate();
    return d;
}

Distribution Distribution::spike_uniform_of(std::string_view p1_text, unsigned m) {
    Distribution d;
    d.kind = Kind::spike_uniform;
    d.p1 = parse_decimal(p1_text);
    d.m = m;
    d.validate();
    return d;
}

Distribution Distribution::geometric_of(double r, std::uint64_t n) {
    Distribution d;
    d.kind = Kind::geometric;
    d.param = r;
    d.support = n;
    d.validate();
    return d;
}

Distribution Distribution::zipf_of(double s, std::uint64_t n) {
    Distribution d;
    d.kind = Kind::zipf;
    d.param = s;
    d.support = n;
    d.validate();
    return d;
}

void Distribution::validate() const {
    switch (kind) {
        case Kind::explicit_probs: {
            if (probs.empty()) throw domain_error("empty distribution");
            double sum = 0.0;
            for (std::size_t i = 0; i < probs.size(); ++i) {
                if (probs[i] < 0.0) throw domain_error("negative probability");
                if (i > 0 && probs[i] > probs[i - 1] + 1e-12)
                    throw domain_error("distribution must be decreasing");
                sum += probs[i];
            }
            if (std::abs(sum - 1.0) > 1e-12) throw domain_error("probabilities must sum to 1");
            return;
        }
        case Kind::spike_uniform: {
            if (m < 1) throw domain_error("spike_uniform needs m >= 1");
            BigInt num = p1.digits;
            BigInt den = p1.denominator();
            if (num.is_zero() || num > den) throw domain_error("p1 must lie in (0, 1]");
            // decreasing: p1 >= (1 - p1) / 2^m, exactly
            if (num << m < den - num) throw domain_error("spike_uniform must be decreasing");
            return;
        }
        case Kind::geometric:
            if (!(param > 0.0 && param < 1.0)) throw domain_error("geometric ratio in (0,1)");
            if (support < 1 || support > max_dense_support)
                throw domain_error("geometric support out of range");
            return;
        case Kind::zipf:
            if (!(param > 1.0)) throw domain_error("zipf exponent must exceed 1");
            if (support < 1 || support > max_dense_support)
                throw domain_error("zipf support out of range");
            return;
    }
    throw domain_error("unknown distribution");
}

double entropy(const Distribution& d) {
    if (d.kind == Distribution::Kind::spike_uniform) {
        double p1 = static_cast<double>(d.p1.to_real());
        double h = 0.0;
        if (p1 > 0.0 && p1 < 1.0)
            h = -p1 * std::log2(p1) - (1.0 - p1) * std::log2(1.0 - p1);
        return h + d.m * (1.0 - p1);
    }
    return entropy_dense(dense_probs(d));
}

Real entropy_hp(const Distribution& d) {
    if (d.kind != Distribution::Kind::spike_uniform)
        return Real(entropy(d));
    Real p1 = d.p1.to_real();
    Real one(1);
    Real h(0);
    if (p1 > 0 && p1 < 1) h = -p1 * log2_real(p1) - (one - p1) * log2_real(one - p1);
    return h + Real(d.m) * (one - p1);
}

BigInt sum_len(CodeId code, const BigInt& lo, const BigInt& hi) {
    if (lo < 1 || hi < lo) throw domain_error("need 1 <= lo <= hi");
    BigInt total = 0;
    unsigned t0 = floor_log2(lo);
    unsigned t1 = floor_log2(hi);
    for (unsigned t = t0; t <= t1; ++t) {
        BigInt blo = pow2(t);
        if (blo < lo) blo = lo;
        BigInt bhi = pow2(t + 1) - 1;
        if (bhi > hi) bhi = hi;
        BigInt n = bhi - blo + 1;
        if (code == CodeId::alpha) {
            total += (blo + bhi) * n / 2;
        } else if (t <= 2 &&
                   (code == CodeId::delta_delta || code == CodeId::nu)) {
            for (BigInt a = blo; a <= bhi; ++a) total += code_length_u64(code, a);
        } else {
            total += n * code_length_u64(code, blo);
        }
    }
    return total;
}

Real avg_len(CodeId code, const Distribution& d) {
    if (d.kind == Distribution::Kind::spike_uniform) {
        // p1 L(1) + (1-p1) 2^-m sum_len(code, 2, 2^m+1), as one exact rational
        BigInt num = d.p1.digits;
        BigInt den = d.p1.denominator();
        BigInt len1 = code_length(code, 1);
        BigInt s = sum_len(code, 2, pow2(d.m) + 1);
        BigInt numerator = (num * len1 << d.m) + (den - num) * s;
        return real_of(numerator) / real_of(den << d.m);
    }
    std::vector<double> probs = dense_probs(d);
    double avg = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] == 0.0) continue;
        avg += probs[i] * code_length(code, BigInt(i + 1)).convert_to<double>();
    }
    return Real(avg);
}

RatioReport expansion_ratio(CodeId code, const Distribution& d, unsigned digits10) {
    precision_guard guard(std::max(digits10, 10u));
    RatioReport report{Real(0), Real(0), Real(0), std::nullopt};
    report.avg_len = avg_len(code, d);
    report.entropy = entropy_hp(d);
    Real denom = report.entropy < 1 ? Real(1) : report.entropy;
    report.ratio = report.avg_len / denom;
    if (d.kind == Distribution::Kind::spike_uniform)
        report.exact_len_sum = sum_len(code, 2, pow2(d.m) + 1);
    return report;
}

double pm_lower_bound(std::uint64_t m) {
    if (m < 2) throw domain_error("pm_lower_bound needs m >= 2");
    double p = 1.0 / static_cast<double>(m);
    double h = -p * std::log2(p) - (1.0 - p) * (std::log1p(-p) / std::log(2.0));
    return 2.0 / (1.0 + h);
}

Distribution random_decreasing(std::uint64_t seed, std::size_t support) {
    if (support < 1) throw domain_error("support must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<double> probs(support);
    // Raw 53-bit draws mapped to (0, 1]; distribution-class independent so
    // the stream is reproducible across standard libraries.
    for (double& v : probs)
        v = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
    std::sort(probs.begin(), probs.end(), std::greater<>());
    double sum = 0.0;
    for (double v : probs) sum += v;
    for (double& v : probs) v /= sum;
    Distribution d;
    d.kind = Distribution::Kind::explicit_probs;
    d.probs = std::move(probs);
    d.validate();
    return d;
}

}  // namespace uci
