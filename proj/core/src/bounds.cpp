#include "uci/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "uci/dist.hpp"

namespace uci {

namespace {

double log2_3() { return std::log2(3.0); }

constexpr double bound_tol = 1e-6;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

double c_n(std::uint64_t n) {
    if (n < 2) throw domain_error("c_n needs n >= 2");
    double inv = 1.0 / static_cast<double>(n);
    // exp/log1p form keeps consecutive values strictly ordered up to n ~ 1e6
    return std::exp(std::log1p(inv) + (static_cast<double>(n) - 1.0) * std::log1p(-inv));
}

double log2_c_n(std::uint64_t n) {
    double inv = 1.0 / static_cast<double>(n);
    return (std::log1p(inv) + (static_cast<double>(n) - 1.0) * std::log1p(-inv)) /
           std::log(2.0);
}

double log2_c_prefix(unsigned big_l) {
    double s = 0.0;
    for (unsigned n = 2; n < big_l; ++n) s += log2_c_n(n);
    return s;
}

bool c_n_strictly_decreasing(std::uint64_t n_max) {
    double prev = c_n(2);
    for (std::uint64_t n = 3; n <= n_max; ++n) {
        double cur = c_n(n);
        if (!(cur < prev)) return false;
        prev = cur;
    }
    return true;
}

double xlog2(double x) { return x == 0.0 ? 0.0 : x * std::log2(x); }

double g_bound(double c1, double c2, double log2_a, double p1) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw domain_error("g_bound needs p1 in (0,1)");
    double l = std::log2(1.0 - p1);
    return c1 / (c2 - l) * (log2_a - l);
}

double h_pivot(double c1, double c2, double t, double x) {
    return (c1 / (c2 + x) - 1.0) * t + c1 * x / (c2 + x) - 1.0;
}

double d_term(double c1, double c2, double p1) {
    if (!(p1 >= 0.0 && p1 < 1.0)) throw domain_error("d_term needs p1 in [0,1)");
    return c1 / (c2 - std::log2(1.0 - p1));
}

double j_term(double c1, double c2, double p1, unsigned big_l) {
    double d = d_term(c1, c2, p1);
    double lc = log2_c_n(big_l);
    double spike = p1 == 0.0 ? 0.0 : p1 * (1.0 + d * (std::log2(p1) - lc));
    return d * lc + spike;
}

double r_term(double c1, double c2, double p1, unsigned big_l) {
    double d = d_term(c1, c2, p1);
    return 3.0 + d * (std::log2(1.0 - p1) + log2_c_prefix(big_l) -
                      (static_cast<double>(big_l) - 1.0) * log2_c_n(big_l));
}

double q_term(double c1, double c2, double p1, double p2, unsigned big_l) {
    return j_term(c1, c2, p1, big_l) + p2 * r_term(c1, c2, p1, big_l);
}

double find_zero(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw domain_error("find_zero: no sign change over bracket");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double find_peak(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double eps = 1e-7;
    auto slope = [&](double x) { return f(x + eps) - f(x - eps); };
    return find_zero(slope, lo + 2 * eps, hi - 2 * eps, tol);
}

double Endpoint::value() const {
    switch (kind) {
        case Kind::zero: return 0.0;
        case Kind::one: return 1.0;
        case Kind::literal: return literal;
        case Kind::one_minus_pow2:
            return 1.0 - std::exp2(-static_cast<double>(num) / den);
        case Kind::one_minus_pow3_pow2:
            return 1.0 - std::pow(3.0, static_cast<double>(num) / den) * std::exp2(-shift);
    }
    return 0.0;
}

std::string Endpoint::text() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::zero: return "0";
        case Kind::one: return "1";
        case Kind::literal:
            os << literal;
            return os.str();
        case Kind::one_minus_pow2:
            os << "1-2^(-" << num;
            if (den != 1) os << "/" << den;
            os << ")";
            return os.str();
        case Kind::one_minus_pow3_pow2:
            os << "1-3^(" << num;
            if (den != 1) os << "/" << den;
            os << ")*2^(-" << shift << ")";
            return os.str();
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

std::span<const LemmaClause> lemma_clause_table(CodeId code) {
    static const std::vector<LemmaClause> dd = [] {
        std::vector<LemmaClause> t;
        t.push_back({1, ep_zero(), ep_pow3(8, 3, 5), 5, log2_3(), false, 0, 0});
        t.push_back({2, ep_pow3(8, 3, 5), ep_pow2(7, 3), 8, 3, false, 0, 0});
        t.push_back({3, ep_pow2(7, 3), ep_pow2(21, 5), 14, 7, false, 0, 0});
        t.push_back({4, ep_pow2(21, 5), ep_pow2(19, 3), 24, 15, false, 0, 0});
        t.push_back({5, ep_pow2(19, 3), ep_pow2(145, 17), 42, 31, false, 0, 0});
        t.push_back({6, ep_zero(), ep_one(), 0, 0, true, 145.0 / 16.0, 17.0 / 16.0});
        return t;
    }();
    static const std::vector<LemmaClause> nu = [] {
        std::vector<LemmaClause> t;
        t.push_back({1, ep_zero(), ep_pow3(6, 1, 10), 5, log2_3(), false, 0, 0});
        t.push_back({2, ep_pow3(6, 1, 10), ep_lit(0.5), 6, 2, false, 0, 0});
        t.push_back({3, ep_lit(0.5), ep_pow2(19, 7), 8, 3, false, 0, 0});
        t.push_back({4, ep_pow2(19, 7), ep_pow2(41, 8), 15, 8, false, 0, 0});
        t.push_back({5, ep_pow2(41, 8), ep_pow2(65, 11), 23, 15, false, 0, 0});
        t.push_back({6, ep_pow2(65, 11), ep_pow2(83, 13), 34, 25, false, 0, 0});
        t.push_back({7, ep_pow2(83, 13), ep_pow2(103, 15), 47, 37, false, 0, 0});
        t.push_back({8, ep_pow2(103, 15), ep_pow2(68, 9), 62, 51, false, 0, 0});
        t.push_back({9, ep_pow2(68, 9), ep_pow2(94, 11), 98, 85, false, 0, 0});
        t.push_back({10, ep_pow2(94, 11), ep_pow2(833, 65), 142, 127, false, 0, 0});
        t.push_back({11, ep_zero(), ep_one(), 0, 0, true, 833.0 / 64.0, 65.0 / 64.0});
        return t;
    }();
    switch (code) {
        case CodeId::delta_delta: return dd;
        case CodeId::nu: return nu;
        default: throw domain_error("length-cap clauses exist for delta_delta and nu only");
    }
}

std::span<const CaseSpec> case_table(CodeId code) {
    using B = CaseSpec::Branch;
    static const std::vector<CaseSpec> dd = [] {
        std::vector<CaseSpec> t;
        t.push_back({1, ep_zero(), ep_pow3(8, 3, 5), 5, log2_3(), 2, B::p2_is_p1, 0, 1.8454});
        t.push_back({2, ep_pow3(8, 3, 5), ep_lit(0.5), 8, 3, 2, B::p2_is_p1, 0, 2.0});
        t.push_back({3, ep_lit(0.5), ep_pow2(7, 3), 8, 3, 2, B::p2_is_complement, 0, 2.0});
        t.push_back({4, ep_pow2(7, 3), ep_pow2(21, 5), 14, 7, 4, B::complement_then_zero, 0, 2.0375});
        t.push_back({5, ep_pow2(21, 5), ep_lit(0.9772), 24, 15, 7, B::complement_then_zero, 0, 2.0819});
        t.push_back({6, ep_lit(0.9772), ep_pow2(19, 3), 24, 15, 8, B::p2_is_zero, 0, 2.0821});
        t.push_back({7, ep_pow2(19, 3), ep_pow2(145, 17), 42, 31, 8, B::p2_is_zero, 0, 2.0767});
        t.push_back({8, ep_pow2(145, 17), ep_one(), 0, 0, 2, B::linear_tail, 17.0 / 16.0, 2.0625});
        return t;
    }();
    static const std::vector<CaseSpec> nu = [] {
        std::vector<CaseSpec> t;
        t.push_back({1, ep_zero(), ep_pow3(6, 1, 10), 5, log2_3(), 2, B::p2_is_p1, 0, 1.8454});
        t.push_back({2, ep_pow3(6, 1, 10), ep_lit(0.5), 6, 2, 2, B::p2_is_p1, 0, 2.0});
        t.push_back({3, ep_lit(0.5), ep_pow2(19, 7), 8, 3, 2, B::complement_then_zero, 0, 2.0});
        t.push_back({4, ep_pow2(19, 7), ep_lit(0.92), 15, 8, 4, B::p2_is_complement, 0, 1.9999});
        t.push_back({5, ep_lit(0.92), ep_pow2(41, 8), 15, 8, 5, B::complement_then_zero, 0, 2.0345});
        t.push_back({6, ep_pow2(41, 8), ep_pow2(65, 11), 23, 15, 6, B::p2_is_zero, 0, 2.0380});
        t.push_back({7, ep_pow2(65, 11), ep_pow2(83, 13), 34, 25, 8, B::p2_is_zero, 0, 2.0376});
        t.push_back({8, ep_pow2(83, 13), ep_pow2(103, 15), 47, 37, 12, B::complement_then_zero, 0, 2.0381});
        t.push_back({9, ep_pow2(103, 15), ep_lit(0.9927), 62, 51, 15, B::complement_then_zero, 0, 2.0386});
        t.push_back({10, ep_lit(0.9927), ep_pow2(68, 9), 62, 51, 16, B::p2_is_zero, 0, 2.0386});
        t.push_back({11, ep_pow2(68, 9), ep_pow2(94, 11), 98, 85, 18, B::p2_is_zero, 0, 2.0386});
        t.push_back({12, ep_pow2(94, 11), ep_pow2(833, 65), 142, 127, 18, B::p2_is_zero, 0, 2.0372});
        t.push_back({13, ep_pow2(833, 65), ep_one(), 0, 0, 2, B::linear_tail, 65.0 / 64.0, 2.015625});
        return t;
    }();
    switch (code) {
        case CodeId::delta_delta: return dd;
        case CodeId::nu: return nu;
        default: throw domain_error("case tables exist for delta_delta and nu only");
    }
}

namespace {

struct PointSpec {
    const char* name;
    CodeId code;
    int case_index;    // the case whose interval brackets the point
    bool is_peak;      // false: root of r_term; true: peak of j_term + d_term
    unsigned big_l;    // overrides the case's L when the sub-branch differs
    bool lo_is_prev;   // bracket lower end is the previously computed point
    double reference;
};

// x1..x4 belong to the delta_delta analysis, x5..x14 to nu.
const PointSpec point_specs[] = {
    {"x1", CodeId::delta_delta, 4, false, 4, false, 0.93507},
    {"x2", CodeId::delta_delta, 5, false, 7, false, 0.97202},
    {"x3", CodeId::delta_delta, 6, true, 8, false, 0.98085},
    {"x4", CodeId::delta_delta, 7, true, 8, false, 0.98933},
    {"x5", CodeId::nu, 3, false, 2, false, 0.81876},
    {"x6", CodeId::nu, 5, false, 5, false, 0.95602},
    {"x7", CodeId::nu, 5, true, 5, true, 0.96883},
    {"x8", CodeId::nu, 6, true, 6, false, 0.98053},
    {"x9", CodeId::nu, 7, true, 8, false, 0.98735},
    {"x10", CodeId::nu, 8, false, 12, false, 0.98876},
    {"x11", CodeId::nu, 8, true, 12, true, 0.99114},
    {"x12", CodeId::nu, 9, false, 15, false, 0.99195},
    {"x13", CodeId::nu, 10, true, 16, false, 0.99339},
    {"x14", CodeId::nu, 11, true, 18, false, 0.99586},
};

std::vector<StationaryPoint> compute_points(bool want_dd, bool want_nu) {
    std::vector<StationaryPoint> out;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (const PointSpec& spec : point_specs) {
        std::span<const CaseSpec> cases = case_table(spec.code);
        const CaseSpec& cs = cases[spec.case_index - 1];
        double lo = spec.lo_is_prev ? prev : cs.lo.value();
        double hi = cs.hi.value();
        double value;
        if (spec.is_peak) {
            auto f = [&](double x) {
                return j_term(cs.c1, cs.c2, x, spec.big_l) + d_term(cs.c1, cs.c2, x);
            };
            value = find_peak(f, lo, hi);
        } else {
            auto f = [&](double x) { return r_term(cs.c1, cs.c2, x, spec.big_l); };
            value = find_zero(f, lo + 1e-9, hi);
        }
        prev = value;
        bool wanted = (spec.code == CodeId::delta_delta && want_dd) ||
                      (spec.code == CodeId::nu && want_nu);
        if (!wanted) continue;
        StationaryPoint p;
        p.name = spec.name;
        p.code = spec.code;
        p.value = value;
        p.reference = spec.reference;
        p.abs_err = std::abs(value - spec.reference);
        p.ok = p.abs_err < 1e-3;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

std::vector<StationaryPoint> stationary_points(CodeId code) {
    return compute_points(code == CodeId::delta_delta, code == CodeId::nu);
}

std::vector<StationaryPoint> stationary_points() { return compute_points(true, true); }

double case_bound_at(const CaseSpec& c, double p1, double split_point) {
    using B = CaseSpec::Branch;
    if (c.branch == B::linear_tail) {
        double s = c.tail_slope;
        double l34 = std::log2(0.75);
        return s * (1.0 + l34) + p1 + s * xlog2(p1) - p1 * s * l34;
    }
    double p2 = 0.0;
    switch (c.branch) {
        case B::p2_is_p1: p2 = p1; break;
        case B::p2_is_complement: p2 = 1.0 - p1; break;
        case B::p2_is_zero: p2 = 0.0; break;
        case B::complement_then_zero:
            p2 = p1 <= split_point ? 1.0 - p1 : 0.0;
            break;
        case B::linear_tail: break;
    }
    return q_term(c.c1, c.c2, p1, p2, c.big_l) + d_term(c.c1, c.c2, p1);
}

namespace {

struct ConstantSpec {
    const char* name;
    int case_index;
    enum class At { lo_limit, hi, literal_point, stationary } at;
    double literal_point;        // At::literal_point
    const char* stationary;      // At::stationary
    double reference;
    bool equality;
    double tol;
};

const ConstantSpec dd_constants[] = {
    {"case1(0)", 1, ConstantSpec::At::lo_limit, 0, "", 1.8454, false, bound_tol},
    {"case2(0.5)", 2, ConstantSpec::At::hi, 0, "", 2.0, true, 1e-9},
    {"case3(0.5)", 3, ConstantSpec::At::literal_point, 0.5, "", 2.0, true, 1e-9},
    {"case4(x1)", 4, ConstantSpec::At::stationary, 0, "x1", 2.0217, false, bound_tol},
    {"case4(hi)", 4, ConstantSpec::At::hi, 0, "", 2.0375, false, bound_tol},
    {"case5(lo+)", 5, ConstantSpec::At::lo_limit, 0, "", 2.0797, false, bound_tol},
    {"case5(0.9772)", 5, ConstantSpec::At::hi, 0, "", 2.0819, false, bound_tol},
    {"case6(x3)", 6, ConstantSpec::At::stationary, 0, "x3", 2.0821, false, bound_tol},
    {"case7(x4)", 7, ConstantSpec::At::stationary, 0, "x4", 2.0767, false, bound_tol},
    {"case8(1)", 8, ConstantSpec::At::hi, 0, "", 2.0625, true, 1e-9},
};

const ConstantSpec nu_constants[] = {
    {"case1(0)", 1, ConstantSpec::At::lo_limit, 0, "", 1.8454, false, bound_tol},
    {"case2(0.5)", 2, ConstantSpec::At::hi, 0, "", 2.0, true, 1e-9},
    {"case3(0.5)", 3, ConstantSpec::At::literal_point, 0.5, "", 2.0, true, 1e-9},
    {"case3(hi)", 3, ConstantSpec::At::hi, 0, "", 1.8761, false, bound_tol},
    {"case4(0.92)", 4, ConstantSpec::At::hi, 0, "", 1.9999, false, bound_tol},
    {"case5(lo+)", 5, ConstantSpec::At::lo_limit, 0, "", 2.0313, false, bound_tol},
    {"case5(x7)", 5, ConstantSpec::At::stationary, 0, "x7", 2.0345, false, bound_tol},
    {"case6(x8)", 6, ConstantSpec::At::stationary, 0, "x8", 2.0380, false, bound_tol},
    {"case7(x9)", 7, ConstantSpec::At::stationary, 0, "x9", 2.0376, false, bound_tol},
    {"case8(lo+)", 8, ConstantSpec::At::lo_limit, 0, "", 2.0375, false, bound_tol},
    {"case8(x11)", 8, ConstantSpec::At::stationary, 0, "x11", 2.0381, false, bound_tol},
    {"case9(lo+)", 9, ConstantSpec::At::lo_limit, 0, "", 2.0386, false, bound_tol},
    {"case9(0.9927)", 9, ConstantSpec::At::hi, 0, "", 2.0386, false, bound_tol},
    {"case10(x13)", 10, ConstantSpec::At::stationary, 0, "x13", 2.0386, false, bound_tol},
    {"case11(x14)", 11, ConstantSpec::At::stationary, 0, "x14", 2.0386, false, bound_tol},
    {"case12(lo+)", 12, ConstantSpec::At::lo_limit, 0, "", 2.0372, false, bound_tol},
    {"case13(1)", 13, ConstantSpec::At::hi, 0, "", 2.015625, true, 1e-9},
};

const char* branch_desc(CaseSpec::Branch b) {
    using B = CaseSpec::Branch;
    switch (b) {
        case B::p2_is_p1: return "q+d, p2=p1";
        case B::p2_is_complement: return "q+d, p2=1-p1";
        case B::p2_is_zero: return "j+d";
        case B::complement_then_zero: return "q+d then j+d at the r-root";
        case B::linear_tail: return "linear tail";
    }
    return "?";
}

}  // namespace

LemmaLengthReport lemma_length_check(CodeId code, int clause_index) {
    std::span<const LemmaClause> clauses = lemma_clause_table(code);
    if (clause_index < 1 || clause_index > static_cast<int>(clauses.size()))
        throw domain_error("no such clause");
    const LemmaClause& cl = clauses[clause_index - 1];
    LemmaLengthReport rep;
    rep.clause = clause_index;

    // Candidates: every a in [3, 4096], then the first symbol of each
    // block t in [12, 256] (it minimizes log2 a, so it is the hardest
    // point of a constant-length block).
    struct Candidate {
        std::string label;
        double log2a;
        double len;
    };
    std::vector<Candidate> cand;
    cand.reserve(4094 + 245);
    for (unsigned a = 3; a <= 4096; ++a)
        cand.push_back({std::to_string(a), std::log2(static_cast<double>(a)),
                        static_cast<double>(code_length_u64(code, a))});
    for (unsigned t = 12; t <= 256; ++t)
        cand.push_back({"2^" + std::to_string(t), static_cast<double>(t),
                        static_cast<double>(code_length_u64(code, pow2(t)))});

    auto fail = [&](const Candidate& c, double p1, double cap) {
        rep.ok = false;
        rep.detail = "a=" + c.label + " p1=" + fmt(p1) + " L=" + fmt(c.len) +
                     " cap=" + fmt(cap);
    };

    if (cl.linear) {
        for (const Candidate& c : cand) {
            double cap = cl.intercept + cl.slope * c.log2a;
            if (c.len > cap + bound_tol) {
                fail(c, 0.0, cap);
                return rep;
            }
        }
        return rep;
    }

    double lo = cl.lo.value() + 1e-9;
    double hi = cl.hi.value() - 1e-9;
    for (int k = 0; k < 25; ++k) {
        double p1 = lo + (hi - lo) * k / 24.0;
        for (const Candidate& c : cand) {
            double cap = g_bound(cl.c1, cl.c2, c.log2a, p1);
            if (c.len > cap + bound_tol) {
                fail(c, p1, cap);
                return rep;
            }
        }
    }
    return rep;
}

bool check_prob_inequalities(const std::vector<double>& probs, std::string* detail) {
    if (probs.size() < 2) throw domain_error("need at least two support points");
    auto report = [&](const std::string& what) {
        if (detail) *detail = what;
        return false;
    };
    const std::vector<double>& p = probs;
    std::size_t n_max = p.size();
    double p1 = p[0];
    if (!(p1 < 1.0)) throw domain_error("need P(1) < 1");
    double l1mp = std::log2(1.0 - p1);

    // Abel's rearrangement on a_i = P(i), b_i = log2(i+1): both routes
    // must produce the same dot product.
    {
        double direct = 0.0;
        std::vector<double> z(n_max);
        double acc = 0.0;
        for (std::size_t i = 0; i < n_max; ++i) {
            double b = std::log2(static_cast<double>(i + 2));
            direct += p[i] * b;
            acc += b;
            z[i] = acc;
        }
        double abel = p[n_max - 1] * z[n_max - 1];
        for (std::size_t i = 0; i + 1 < n_max; ++i) abel += (p[i] - p[i + 1]) * z[i];
        double rel = std::abs(direct - abel) / std::max(1.0, std::abs(direct));
        if (rel > 1e-10) return report("abel routes disagree, rel=" + fmt(rel));
    }

    // Tail-mass inequality: sum_{n>=2} P(n) A_n <= P(2) + sum P(n+1) log2 c_n.
    double lhs4 = 0.0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        double pn = p[n - 1];
        if (pn == 0.0) continue;
        lhs4 += pn * (std::log2(pn) - l1mp + std::log2(static_cast<double>(n)));
    }
    double rhs4 = p[1];
    for (std::size_t n = 2; n + 1 <= n_max; ++n) rhs4 += p[n] * log2_c_n(n);
    if (lhs4 > rhs4 + 1e-9)
        return report("tail-mass inequality: lhs=" + fmt(lhs4) + " rhs=" + fmt(rhs4));

    // Probability inequality for L in {2,4,8,16}.
    double entropy_p = 0.0;
    for (double v : p)
        if (v > 0.0) entropy_p -= v * std::log2(v);
    double lhs6 = 0.0;
    for (std::size_t n = 3; n <= n_max; ++n) {
        if (p[n - 1] == 0.0) continue;
        lhs6 += p[n - 1] * (std::log2(static_cast<double>(n)) - l1mp);
    }
    for (unsigned big_l : {2u, 4u, 8u, 16u}) {
        double lc = log2_c_n(big_l);
        double rhs6 = entropy_p + lc + p1 * (std::log2(p1) - lc) +
                      p[1] * (l1mp + log2_c_prefix(big_l) -
                              (static_cast<double>(big_l) - 1.0) * lc);
        if (lhs6 > rhs6 + 1e-9)
            return report("probability inequality at L=" + std::to_string(big_l) +
                          ": lhs=" + fmt(lhs6) + " rhs=" + fmt(rhs6));
    }
    return true;
}

LemmaProbReport lemma_prob_check(std::size_t trials, std::size_t support_max,
                                 std::uint64_t seed) {
    if (support_max < 2) throw domain_error("need support_max >= 2");
    LemmaProbReport rep;
    rep.trials = trials;
    std::string detail;

    // Near-degenerate support-2 edge first; zero-probability tail terms
    // must drop out cleanly.
    if (!check_prob_inequalities({1.0 - 1e-6, 1e-6}, &detail)) {
        rep.ok = false;
        rep.detail = "degenerate edge: " + detail;
        return rep;
    }

    std::mt19937_64 meta(seed);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::size_t support = 2 + meta() % (support_max - 1);
        Distribution d = random_decreasing(meta(), support);
        if (!check_prob_inequalities(d.probs, &detail)) {
            rep.ok = false;
            rep.detail = "trial " + std::to_string(trial) + ": " + detail;
            return rep;
        }
    }
    return rep;
}

CaseVerification verify_cases(CodeId code, double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 1e-3)
        throw domain_error("grid_step must lie in (0, 1e-3]");
    CaseVerification v;
    v.code = code;
    v.global_bound = code == CodeId::delta_delta ? 2.0821 : 2.0386;
    std::span<const CaseSpec> cases = case_table(code);
    v.points = stationary_points(code);

    v.intervals_contiguous = cases.front().lo == ep_zero() && cases.back().hi == ep_one();
    for (std::size_t i = 1; i < cases.size(); ++i)
        if (!(cases[i].lo == cases[i - 1].hi)) v.intervals_contiguous = false;

    auto split_of = [&](const CaseSpec& c) -> double {
        if (c.branch != CaseSpec::Branch::complement_then_zero)
            return std::numeric_limits<double>::quiet_NaN();
        auto f = [&](double x) { return r_term(c.c1, c.c2, x, c.big_l); };
        return find_zero(f, c.lo.value() + 1e-9, c.hi.value());
    };

    v.global_max = -std::numeric_limits<double>::infinity();
    bool all_ok = true;
    for (const CaseSpec& c : cases) {
        double split = split_of(c);
        double lo = c.lo.value();
        double hi = c.hi.value();
        int steps = std::max(32, static_cast<int>(std::ceil((hi - lo) / grid_step)));
        double mx = -std::numeric_limits<double>::infinity();
        for (int k = 0; k <= steps; ++k) {
            double x = lo + (hi - lo) * k / steps;
            if (k == 0) x = lo == 0.0 ? 0.0 : lo + 1e-9;  // interval is open at lo
            mx = std::max(mx, case_bound_at(c, x, split));
        }
        CaseOutcome out;
        out.index = c.index;
        out.grid_max = mx;
        out.claimed_bound = c.claimed_bound;
        out.branch_desc = branch_desc(c.branch);
        out.ok = mx <= c.claimed_bound + bound_tol;
        all_ok = all_ok && out.ok;
        v.global_max = std::max(v.global_max, mx);
        v.cases.push_back(std::move(out));
    }

    std::span<const ConstantSpec> constants =
        code == CodeId::delta_delta ? std::span<const ConstantSpec>(dd_constants)
                                    : std::span<const ConstantSpec>(nu_constants);
    for (const ConstantSpec& spec : constants) {
        const CaseSpec& c = cases[spec.case_index - 1];
        double x = 0.0;
        switch (spec.at) {
            case ConstantSpec::At::lo_limit:
                x = c.lo.value() == 0.0 ? 0.0 : c.lo.value() + 1e-9;
                break;
            case ConstantSpec::At::hi: x = c.hi.value(); break;
            case ConstantSpec::At::literal_point: x = spec.literal_point; break;
            case ConstantSpec::At::stationary: {
                x = std::numeric_limits<double>::quiet_NaN();
                for (const StationaryPoint& p : v.points)
                    if (p.name == spec.stationary) x = p.value;
                break;
            }
        }
        NamedConstant nc;
        nc.name = spec.name;
        nc.value = case_bound_at(c, x, split_of(c));
        nc.reference = spec.reference;
        nc.equality = spec.equality;
        nc.tol = spec.tol;
        nc.ok = spec.equality ? std::abs(nc.value - spec.reference) <= spec.tol
                              : nc.value < spec.reference + spec.tol;
        all_ok = all_ok && nc.ok;
        v.constants.push_back(std::move(nc));
    }

    for (const StationaryPoint& p : v.points) all_ok = all_ok && p.ok;
    all_ok = all_ok && v.intervals_contiguous && v.global_max <= v.global_bound + bound_tol;
    v.ok = all_ok;
    return v;
}

}  // namespace uci
