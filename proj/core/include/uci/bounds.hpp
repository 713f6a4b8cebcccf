#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "uci/bigmath.hpp"
#include "uci/codes.hpp"

namespace uci {

// ---------------------------------------------------------------------------
// Scalar building blocks of the expansion-factor analysis. All in double;
// bound comparisons carry a 1e-6 tolerance which the analytic margins clear
// by orders of magnitude.
// ---------------------------------------------------------------------------

// c_n = (1 + 1/n)(1 - 1/n)^(n-1); strictly decreasing, limit 1/e.
double c_n(std::uint64_t n);
double log2_c_n(std::uint64_t n);
// sum_{n=2}^{L-1} log2 c_n (empty sum for L = 2).
double log2_c_prefix(unsigned big_l);
bool c_n_strictly_decreasing(std::uint64_t n_max);

// g(a, p1) = c1/(c2 - log2(1-p1)) * (log2 a - log2(1-p1)); the per-symbol
// length cap of the lemma clauses.
double g_bound(double c1, double c2, double log2_a, double p1);

// h(t, x) = (c1/(c2+x) - 1) t + c1 x/(c2+x) - 1 with x = -log2(1-p1);
// pivot form of the block-wise inequality.
double h_pivot(double c1, double c2, double t, double x);

double d_term(double c1, double c2, double p1);
double j_term(double c1, double c2, double p1, unsigned big_l);
double r_term(double c1, double c2, double p1, unsigned big_l);
// q = j + p2 * r
double q_term(double c1, double c2, double p1, double p2, unsigned big_l);

// x * log2(x) continued by 0 at x = 0.
double xlog2(double x);

// Bisection root of f on [lo, hi]; requires a sign change, else throws
// domain_error. |hi - lo| shrinks below tol.
double find_zero(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-9);

// Interior maximum of a rise-then-fall function, located by bisecting the
// sign change of a central-difference slope.
double find_peak(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-9);

// ---------------------------------------------------------------------------
// Exact interval endpoints. Contiguity of the case tables is checked on
// these expressions, not on their double images.
// ---------------------------------------------------------------------------
struct Endpoint {
    enum class Kind {
        zero,
        one,
        literal,              // plain decimal like 0.9772
        one_minus_pow2,       // 1 - 2^(-num/den)
        one_minus_pow3_pow2,  // 1 - 3^(num/den) * 2^(-shift)
    };
    Kind kind = Kind::zero;
    double literal = 0.0;
    int num = 0;
    int den = 1;
    int shift = 0;

    double value() const;
    std::string text() const;
    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

constexpr Endpoint ep_zero() { return {Endpoint::Kind::zero, 0, 0, 1, 0}; }
constexpr Endpoint ep_one() { return {Endpoint::Kind::one, 0, 0, 1, 0}; }
constexpr Endpoint ep_lit(double v) { return {Endpoint::Kind::literal, v, 0, 1, 0}; }
// 1 - 2^(-num/den)
constexpr Endpoint ep_pow2(int num, int den) {
    return {Endpoint::Kind::one_minus_pow2, 0, num, den, 0};
}
// 1 - 3^(num/den) * 2^(-shift)
constexpr Endpoint ep_pow3(int num, int den, int shift) {
    return {Endpoint::Kind::one_minus_pow3_pow2, 0, num, den, shift};
}

// ---------------------------------------------------------------------------
// Length-cap clauses (five + a linear cap for delta_delta, ten + linear
// for nu). Interval is the P(1) range (lo, hi]; the linear clause has no
// interval and caps L(a) by intercept + slope * log2 a directly.
// ---------------------------------------------------------------------------
struct LemmaClause {
    int index = 0;
    Endpoint lo, hi;
    double c1 = 0;
    double c2 = 0;
    bool linear = false;
    double intercept = 0;
    double slope = 0;
};

std::span<const LemmaClause> lemma_clause_table(CodeId code);

struct LemmaLengthReport {
    bool ok = true;
    int clause = 0;
    std::string detail;   // empty when ok; else "a=…, p1=…, L=…, cap=…"
};

// Verifies L(a) <= g (or the linear cap) for every a in [3, 4096], one
// representative per block t in [12, 256], over 25 grid points of P(1)
// spanning the clause interval (endpoints approached within 1e-9).
LemmaLengthReport lemma_length_check(CodeId code, int clause_index);

struct LemmaProbReport {
    bool ok = true;
    std::size_t trials = 0;
    std::string detail;
};

// Checks one finite decreasing distribution: the Abel rearrangement
// identity (both routes agree to 1e-10 relative), the tail-mass
// inequality bounding sum P(n) A_n by P(2) + sum P(n+1) log2 c_n, and
// the probability inequality for L in {2, 4, 8, 16}. Requires at least
// two support points. Returns false and fills detail on a violation.
bool check_prob_inequalities(const std::vector<double>& probs,
                             std::string* detail = nullptr);

// Runs check_prob_inequalities on the near-degenerate two-point edge
// case and then on `trials` sampled decreasing distributions.
LemmaProbReport lemma_prob_check(std::size_t trials, std::size_t support_max,
                                 std::uint64_t seed);

// ---------------------------------------------------------------------------
// Case analysis: one row per case of the expansion-factor verification.
// The ratio bound on each interval is q_term + d_term with p2 chosen by
// branch; split cases switch from p2 = 1-p1 to p2 = 0 at the root of the
// case's r_term. The two closing cases use a closed-form linear tail.
// ---------------------------------------------------------------------------
struct CaseSpec {
    int index = 0;
    Endpoint lo, hi;
    double c1 = 0;
    double c2 = 0;
    unsigned big_l = 2;
    enum class Branch {
        p2_is_p1,
        p2_is_complement,
        p2_is_zero,
        complement_then_zero,  // split at the r_term root
        linear_tail,           // slope*(1+log2(3/4)) + x(1 + slope*log2 x - slope*log2(3/4))
    };
    Branch branch = Branch::p2_is_zero;
    double tail_slope = 0;  // linear_tail only (17/16 resp. 65/64)
    double claimed_bound = 0;
};

std::span<const CaseSpec> case_table(CodeId code);

// Named stationary points of the case analysis (roots x1, x2, x5, x6,
// x10, x12 of r_term; peaks x3, x4, x7, x8, x9, x11, x13, x14 of
// j_term + d_term), with their published 5-digit references.
struct StationaryPoint {
    std::string name;
    CodeId code = CodeId::delta_delta;
    double value = 0;
    double reference = 0;
    double abs_err = 0;
    bool ok = false;  // |value - reference| < 1e-3
};

std::vector<StationaryPoint> stationary_points(CodeId code);
std::vector<StationaryPoint> stationary_points();  // both codes, x1..x14

struct CaseOutcome {
    int index = 0;
    double grid_max = 0;
    double claimed_bound = 0;
    std::string branch_desc;
    bool ok = false;
};

struct NamedConstant {
    std::string name;     // e.g. "case2(0.5)"
    double value = 0;
    double reference = 0;
    bool equality = false;  // reference is an exact value, not a cap
    double tol = 1e-6;
    bool ok = false;
};

struct CaseVerification {
    CodeId code = CodeId::delta_delta;
    std::vector<CaseOutcome> cases;
    std::vector<NamedConstant> constants;
    std::vector<StationaryPoint> points;
    double global_max = 0;
    double global_bound = 0;  // 2.0821 resp. 2.0386
    bool intervals_contiguous = false;
    bool ok = false;
};

// Evaluates every case's bound recipe over a P(1) grid of the given step,
// asserting grid_max <= claimed + 1e-6 per case and the global cap, and
// cross-checks the named endpoint/peak constants.
CaseVerification verify_cases(CodeId code, double grid_step = 1e-4);

// Evaluates the bound recipe of one case at a given p1 (split cases need
// the precomputed r_term root; pass NaN when not applicable).
double case_bound_at(const CaseSpec& c, double p1, double split_point);

}  // namespace uci
