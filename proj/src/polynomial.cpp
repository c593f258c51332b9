#include "ofq/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "ofq/kernels.hpp"

namespace ofq {

namespace {

// One shared dimension table per context would be overkill; norms only need
// log d_k up to the polynomial's degree, recomputed on demand. Built from
// N_q directly so N = 2 Kac contexts (where q is undefined) still get norms.
DimTable dims_for(const AnalyticPoly& f) {
    GroupParams g;
    g.N = f.context().N;
    g.N_q = 0.0;
    for (double l : f.context().lambda) g.N_q += l * l;
    return make_dim_table(g, std::max(1, f.max_degree()));
}

}  // namespace

void AnalyticPoly::add_term(const IndexTuple& s, const IndexTuple& t, std::complex<double> x) {
    if (s.size() != t.size()) fail(errc::length_mismatch, "s and t must have equal length");
    if (!is_admissible(s, context_.N) || !is_admissible(t, context_.N))
        fail(errc::not_admissible, "term tuples must be admissible");
    if (x == 0.0) return;
    const int k = static_cast<int>(s.size());
    auto& deg = terms_[k];
    auto it = deg.find({s, t});
    if (it == deg.end()) {
        deg.emplace(Key{s, t}, x);
        return;
    }
    it->second += x;
    if (it->second == 0.0) {
        deg.erase(it);
        if (deg.empty()) terms_.erase(k);
    }
}

AnalyticPoly AnalyticPoly::monomial(const CanonicalF& c, const IndexTuple& s,
                                    const IndexTuple& t, std::complex<double> x) {
    AnalyticPoly f(c);
    f.add_term(s, t, x);
    return f;
}

int AnalyticPoly::homogeneous_degree() const {
    if (terms_.size() != 1) fail(errc::not_homogeneous, "polynomial is not homogeneous");
    return terms_.begin()->first;
}

std::size_t AnalyticPoly::term_count() const {
    std::size_t n = 0;
    for (const auto& [k, deg] : terms_) n += deg.size();
    return n;
}

AnalyticPoly& AnalyticPoly::operator*=(std::complex<double> a) {
    if (a == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, deg] : terms_)
        for (auto& [key, x] : deg) x *= a;
    return *this;
}

AnalyticPoly& AnalyticPoly::operator+=(const AnalyticPoly& other) {
    if (context_.N != other.context_.N || context_.sign != other.context_.sign ||
        context_.lambda != other.context_.lambda)
        fail(errc::invalid_argument, "polynomials have different canonical contexts");
    for (const auto& [k, deg] : other.terms_)
        for (const auto& [key, x] : deg) add_term(key.first, key.second, x);
    return *this;
}

double monomial_l2_norm(const IndexTuple& s, const IndexTuple& t, const CanonicalF& c,
                        const DimTable& dims) {
    if (s.size() != t.size()) fail(errc::length_mismatch, "s and t must have equal length");
    if (!is_admissible(s, c.N) || !is_admissible(t, c.N))
        fail(errc::not_admissible, "tuples must be admissible");
    const int k = static_cast<int>(s.size());
    // √(Π λ_{s_i}² / d_k) = exp(-(log q_weight(s) + log d_k)/2)
    return std::exp(-0.5 * (log_q_weight(s, c) + dims.log_d[static_cast<std::size_t>(k)]));
}

double l2_norm(const AnalyticPoly& f) {
    if (f.empty()) return 0.0;
    const DimTable dims = dims_for(f);
    std::vector<double> re, im, w;
    re.reserve(f.term_count());
    im.reserve(f.term_count());
    w.reserve(f.term_count());
    for (const auto& [k, deg] : f.terms())
        for (const auto& [key, x] : deg) {
            re.push_back(x.real());
            im.push_back(x.imag());
            double nrm = monomial_l2_norm(key.first, key.second, f.context(), dims);
            w.push_back(nrm * nrm);
        }
    return std::sqrt(kernels::weighted_sumsq(re.data(), im.data(), w.data(), re.size()));
}

AnalyticPoly adjoint(const AnalyticPoly& f) {
    const CanonicalF& c = f.context();
    AnalyticPoly out(c);
    for (const auto& [k, deg] : f.terms())
        for (const auto& [key, x] : deg) {
            const IndexTuple& s = key.first;
            const IndexTuple& t = key.second;
            IndexTuple fs(s.size()), ft(t.size());
            double scale = 1.0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                fs[s.size() - 1 - i] = c.N + 1 - s[i];
                ft[t.size() - 1 - i] = c.N + 1 - t[i];
                scale *= c.lambda[static_cast<std::size_t>(s[i] - 1)] /
                         c.lambda[static_cast<std::size_t>(t[i] - 1)];
            }
            // flip-reverse of an admissible tuple is admissible
            if (!is_admissible(fs, c.N) || !is_admissible(ft, c.N))
                fail(errc::result_not_admissible, "adjoint produced an inadmissible tuple");
            out.add_term(fs, ft, std::conj(x) * scale);
        }
    return out;
}

double lp_equiv_norm(const AnalyticPoly& f, double p) {
    if (!(p >= 1.0))  // also rejects NaN; +inf allowed
        fail(errc::bad_exponent, "p must lie in [1, inf]");
    const int k = f.homogeneous_degree();
    const CanonicalF& c = f.context();
    const double four_over_p = std::isinf(p) ? 0.0 : 4.0 / p;
    // In a Kac context the |λ|<1 family is empty and every weight is 1, so
    // all indices are accepted there.
    const bool kac = c.kac();

    std::vector<double> re, im, w;
    for (const auto& [key, x] : f.terms().at(k)) {
        double log_ws = 0.0, log_wt = 0.0;
        for (std::size_t i = 0; i < key.first.size(); ++i) {
            const int si = key.first[i];
            const int ti = key.second[i];
            if (!kac && (si > c.n_small || ti > c.n_small))
                fail(errc::index_out_of_family, "index outside the |lambda|<1 family");
            log_ws += std::log(c.abs_lambda(si));
            log_wt += std::log(c.abs_lambda(ti));
        }
        re.push_back(x.real());
        im.push_back(x.imag());
        w.push_back(std::exp(four_over_p * log_ws + (four_over_p - 2.0) * log_wt));
    }
    const DimTable dims = dims_for(f);
    const double sum = kernels::weighted_sumsq(re.data(), im.data(), w.data(), re.size());
    return std::exp(-0.5 * dims.log_d[static_cast<std::size_t>(k)]) * std::sqrt(sum);
}

std::vector<DegreeNorm> degree_norms(const AnalyticPoly& f) {
    std::vector<DegreeNorm> out;
    if (f.empty()) return out;
    const DimTable dims = dims_for(f);
    for (const auto& [k, deg] : f.terms()) {
        std::vector<double> re, im, w;
        for (const auto& [key, x] : deg) {
            re.push_back(x.real());
            im.push_back(x.imag());
            double nrm = monomial_l2_norm(key.first, key.second, f.context(), dims);
            w.push_back(nrm * nrm);
        }
        const double l2 = std::sqrt(kernels::weighted_sumsq(re.data(), im.data(), w.data(), re.size()));
        out.push_back({k, l2, l2 * std::exp(-0.5 * dims.log_d[static_cast<std::size_t>(k)])});
    }
    return out;
}

}  // namespace ofq
