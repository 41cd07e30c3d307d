#include "bcross/bounds.hpp"

#include <algorithm>

namespace bcross {

namespace {

long long ceil_div(long long a, long long b) {
    // b > 0; exact ceiling for either sign of a
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

}  // namespace

long long lower_bound_fixed(long long m_simplified) {
    if (m_simplified < 0) throw error("negative edge count");
    return ceil_div(m_simplified, 16);
}

std::pair<long long, long long> genus_lower_bounds(long long n, long long m) {
    if (n < 0 || m < 0) throw error("negative instance size");
    const long long general = std::max<long long>(0, ceil_div(m - (3 * n - 6), 6));
    const long long circular = std::max<long long>(0, ceil_div(m - (2 * n - 3), 6));
    return {general, circular};
}

long long genus_complete(long long n) {
    if (n < 3) throw error("undefined");
    return ceil_div((n - 3) * (n - 4), 12);
}

ApproxCertificates approximation_certificates(long long n, long long m,
                                              std::optional<long long> ub) {
    if (n == 0) throw error("empty instance");
    ApproxCertificates cert;
    if (m > 2 * n) cert.ratio_free = Rat(6 * m, m - 2 * n);
    if (m > 3 * n) cert.ratio_general = Rat(6 * m, m - 3 * n);
    const auto [lb_general, lb_circular] = genus_lower_bounds(n, m);
    if (ub) {
        if (lb_circular > 0) cert.empirical_free = Rat(*ub, lb_circular);
        if (lb_general > 0) cert.empirical_general = Rat(*ub, lb_general);
    }
    return cert;
}

BoundsReport make_bounds_report(const CircularInstance& inst, long long m_simplified,
                                std::optional<long long> ub) {
    BoundsReport report;
    report.n = inst.n;
    report.m = static_cast<long long>(inst.edges.size());
    report.m_simplified = m_simplified;
    report.lb_fixed = lower_bound_fixed(m_simplified);
    std::tie(report.lb_general, report.lb_circular) = genus_lower_bounds(report.n, report.m);
    report.ub = ub;
    if (ub && report.lb_fixed > 0) report.ratio_fixed = Rat(*ub, report.lb_fixed);
    if (report.n > 0) {
        const ApproxCertificates cert = approximation_certificates(report.n, report.m, ub);
        report.ratio_free = cert.ratio_free;
        report.ratio_general = cert.ratio_general;
    }
    if (report.n >= 3 && report.m == report.n * (report.n - 1) / 2) {
        std::set<Edge> present;
        for (const Edge& e : inst.edges)
            present.insert({std::min(e.first, e.second), std::max(e.first, e.second)});
        if (static_cast<long long>(present.size()) == report.m)
            report.genus_formula_kn = genus_complete(report.n);
    }
    return report;
}

}  // namespace bcross
