#pragma once

#include <optional>

#include "bcross/drawing.hpp"
#include "bcross/instance.hpp"

namespace bcross {

// ceil(m_simplified / 16): bundled crossings needed by any circular drawing
// of a simplified instance with a fixed vertex order.
long long lower_bound_fixed(long long m_simplified);

// Genus-derived bounds (clamped at zero):
//   general drawings:  ceil((m - (3n-6)) / 6)
//   circular drawings: ceil((m - (2n-3)) / 6)
std::pair<long long, long long> genus_lower_bounds(long long n, long long m);

// Orientable genus of the complete graph: ceil((n-3)(n-4)/12), n >= 3.
// Throws error("undefined") for n < 3.
long long genus_complete(long long n);

struct ApproxCertificates {
    std::optional<Rat> ratio_free;         // 6c/(c-2), present iff m > 2n
    std::optional<Rat> ratio_general;      // 6c/(c-3), present iff m > 3n
    std::optional<Rat> empirical_free;     // ub / circular genus bound
    std::optional<Rat> empirical_general;  // ub / general genus bound
};

// Throws error("empty instance") when n == 0.
ApproxCertificates approximation_certificates(long long n, long long m,
                                              std::optional<long long> ub);

struct BoundsReport {
    long long n = 0;
    long long m = 0;
    long long m_simplified = 0;
    long long lb_fixed = 0;
    long long lb_general = 0;
    long long lb_circular = 0;
    std::optional<long long> ub;
    std::optional<Rat> ratio_fixed;    // empirical ub / lb_fixed
    std::optional<Rat> ratio_free;     // 6c/(c-2)
    std::optional<Rat> ratio_general;  // 6c/(c-3)
    std::optional<long long> genus_formula_kn;
};

// Assembles the report for an instance; ub is the achieved bundle count
// when a layout has been computed.
BoundsReport make_bounds_report(const CircularInstance& inst, long long m_simplified,
                                std::optional<long long> ub);

}  // namespace bcross
