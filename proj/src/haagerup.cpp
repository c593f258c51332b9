#include "ofq/haagerup.hpp"

#include <cmath>

namespace ofq {

const char* bound_source_name(BoundSource s) {
    switch (s) {
        case BoundSource::l2_floor: return "L2Floor";
        case BoundSource::toeplitz_truncation: return "ToeplitzTruncation";
        case BoundSource::sharp_theorem_reference: return "SharpTheoremReference";
        case BoundSource::cq_r_bound: return "CqRBound";
        case BoundSource::cq_f_bound: return "CqFBound";
        case BoundSource::triangle_sum: return "TriangleSum";
    }
    return "?";
}

double mf(const IndexTuple& s, const IndexTuple& t, int l, int n_rep, const CanonicalF& c) {
    if (s.size() != t.size()) fail(errc::length_mismatch, "s and t must have equal length");
    if (!is_admissible(s, c.N) || !is_admissible(t, c.N))
        fail(errc::not_admissible, "tuples must be admissible");
    const int k = static_cast<int>(s.size());
    if (l < 0 || n_rep < std::abs(l - k) || n_rep > l + k || (k + n_rep - l) % 2 != 0)
        fail(errc::not_in_s, "n not in S(l,k)");
    const int r = (k + n_rep - l) / 2;
    double prod = 1.0;
    for (int i = k - r; i < k; ++i)
        prod *= std::sqrt(c.q1(s[static_cast<std::size_t>(i)])) *
                std::sqrt(c.q1(t[static_cast<std::size_t>(i)]));
    return prod;
}

double r_value(const std::vector<std::pair<IndexTuple, IndexTuple>>& span, const CanonicalF& c) {
    if (span.empty()) fail(errc::invalid_argument, "empty span");
    const std::size_t k = span.front().first.size();
    double R = 0.0;
    for (const auto& [s, t] : span) {
        if (s.size() != k || t.size() != k) fail(errc::mixed_degrees, "span mixes degrees");
        if (!is_admissible(s, c.N) || !is_admissible(t, c.N))
            fail(errc::not_admissible, "span tuples must be admissible");
        for (std::size_t i = 0; i < k; ++i)
            R = std::max(R, std::pow(c.q1(s[i]) * c.q1(t[i]), 0.25));
    }
    return R;
}

double upper_bound(int k, double R, const GroupParams& g) {
    if (!(R > 0.0)) fail(errc::invalid_argument, "R must be positive");
    if (std::abs(R - 1.0) <= 1e-12) return g.C_q * (k + 1);
    const double R2 = R * R;
    return g.C_q * (1.0 - std::pow(R2, k + 1)) / (1.0 - R2);
}

BoundReport bound_report(const AnalyticPoly& f, const GroupParams& g) {
    const int k = f.homogeneous_degree();
    std::vector<std::pair<IndexTuple, IndexTuple>> span;
    for (const auto& [key, x] : f.terms().at(k)) span.push_back(key);
    BoundReport rep;
    rep.k = k;
    rep.R = k == 0 ? 1.0 : r_value(span, f.context());
    const double l2 = l2_norm(f);
    rep.lower = l2;
    rep.lower_source = BoundSource::l2_floor;
    rep.upper = upper_bound(k, rep.R, g) * l2;
    rep.upper_source = BoundSource::cq_r_bound;
    if (rep.lower > rep.upper)
        fail(errc::invalid_argument, "bound report produced lower > upper");
    return rep;
}

}  // namespace ofq
