#pragma once

/**
 * @file multipoly.hpp
 * @brief Sparse multivariate integer polynomials: just enough arithmetic to
 *        expand products of linear forms and evaluate them exactly.
 */

#include "sparts/integer.hpp"
#include "sparts/poly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace sparts {

/// Sparse polynomial in a fixed number of variables; terms are keyed by
/// exponent vectors, zero coefficients are never stored.
class MultiPoly {
  public:
    using Terms = std::map<std::vector<unsigned>, Int>;

    MultiPoly() = default;

    explicit MultiPoly(unsigned vars) : vars_(vars) {}

    MultiPoly(unsigned vars, Terms terms) : vars_(vars), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            SPARTS_CHECK(it->first.size() == vars_, "exponent arity mismatch");
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    /// The linear-or-constant monomial c * x_i (or the constant c for no index).
    static MultiPoly monomial(unsigned vars, const Int& c, const std::vector<unsigned>& exps) {
        Terms t;
        if (c != 0) t.emplace(exps, c);
        return MultiPoly(vars, std::move(t));
    }

    /// A binary form c0 X^n + c1 X^(n-1) Y + ... + cn Y^n as a two-variable
    /// polynomial.
    static MultiPoly from_binary(const BinaryForm& F) {
        auto n = static_cast<unsigned>(F.degree());
        Terms t;
        for (unsigned i = 0; i <= n; ++i) {
            const Int& c = F.coeff(i);
            if (c != 0) t.emplace(std::vector<unsigned>{n - i, i}, c);
        }
        return MultiPoly(2, std::move(t));
    }

    unsigned vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Largest total degree among the terms; 0 for the zero polynomial.
    unsigned total_degree() const {
        unsigned best = 0;
        for (const auto& [e, c] : terms_) {
            unsigned d = 0;
            for (unsigned ei : e) d += ei;
            best = std::max(best, d);
        }
        return best;
    }

    Int evaluate(const std::vector<Int>& x) const {
        SPARTS_CHECK(x.size() == vars_, "evaluation arity mismatch");
        Int total = 0;
        for (const auto& [e, c] : terms_) {
            Int term = c;
            for (unsigned i = 0; i < vars_; ++i)
                if (e[i] > 0) term *= pow_int(x[i], e[i]);
            total += term;
        }
        return total;
    }

    MultiPoly operator+(const MultiPoly& o) const {
        SPARTS_CHECK(vars_ == o.vars_, "variable count mismatch");
        Terms t = terms_;
        for (const auto& [e, c] : o.terms_) t[e] += c;
        return MultiPoly(vars_, std::move(t));
    }

    MultiPoly operator-(const MultiPoly& o) const {
        SPARTS_CHECK(vars_ == o.vars_, "variable count mismatch");
        Terms t = terms_;
        for (const auto& [e, c] : o.terms_) t[e] -= c;
        return MultiPoly(vars_, std::move(t));
    }

    MultiPoly operator*(const MultiPoly& o) const {
        SPARTS_CHECK(vars_ == o.vars_, "variable count mismatch");
        Terms t;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                std::vector<unsigned> e(vars_);
                for (unsigned i = 0; i < vars_; ++i) e[i] = ea[i] + eb[i];
                t[e] += ca * cb;
            }
        return MultiPoly(vars_, std::move(t));
    }

    bool operator==(const MultiPoly& o) const {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }

  private:
    unsigned vars_ = 0;
    Terms terms_;
};

} // namespace sparts
