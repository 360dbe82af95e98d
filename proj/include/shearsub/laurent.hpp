#pragma once

#include "shearsub/dyadic.hpp"
#include "shearsub/lattice.hpp"
#include "shearsub/mat2.hpp"

#include <map>
#include <utility>

namespace shearsub {

/// Finitely supported map Z^2 -> Dyadic. Serves as Laurent polynomial
/// (exponent -> coefficient), 2-D mask, and sparse data sequence alike.
class LaurentPoly {
public:
    using Terms = std::map<Index2, Dyadic>;

    LaurentPoly() = default;

    static LaurentPoly monomial(Index2 e, Dyadic c = Dyadic(1)) {
        LaurentPoly f;
        f.add(e, std::move(c));
        return f;
    }
    static LaurentPoly delta() { return monomial({0, 0}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }

    Dyadic at(const Index2& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Dyadic() : it->second;
    }

    void add(const Index2& e, const Dyadic& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void set(const Index2& e, const Dyadic& c) {
        if (c.is_zero())
            terms_.erase(e);
        else
            terms_[e] = c;
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add(e, c);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add(e, -c);
        return r;
    }
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly scaled(const Dyadic& c) const {
        LaurentPoly r;
        if (c.is_zero()) return r;
        for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
        return r;
    }
    LaurentPoly shifted(const Index2& d) const {
        LaurentPoly r;
        for (const auto& [e, v] : terms_) r.terms_.emplace(e + d, v);
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

    /// Support bounding box {min, max}; undefined when zero.
    std::pair<Index2, Index2> bounds() const;

    /// Reindexing by an integer matrix: result(alpha) = (*this)(A alpha),
    /// A unimodular so the support maps bijectively.
    LaurentPoly reindexed(const IMat2& a) const;

    /// Sum of all coefficients.
    Dyadic total() const {
        Dyadic s;
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

private:
    Terms terms_;
};

/// Exact value of f at z = (i^{-eta1}, (-1)^{eta2}).
GaussianDyadic evaluate_at_root(const LaurentPoly& f, const Index2& eta);

/// Small dense dyadic matrix, the value type of matrix-valued masks.
template <int R, int C>
struct DyMat {
    std::array<std::array<Dyadic, C>, R> e{};

    static DyMat identity() {
        static_assert(R == C);
        DyMat m;
        for (int i = 0; i < R; ++i) m.e[i][i] = Dyadic(1);
        return m;
    }

    bool is_zero() const {
        for (const auto& row : e)
            for (const auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    }
    DyMat operator+(const DyMat& o) const {
        DyMat r;
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < C; ++j) r.e[i][j] = e[i][j] + o.e[i][j];
        return r;
    }
    bool operator==(const DyMat& o) const { return e == o.e; }

    template <int C2>
    DyMat<R, C2> operator*(const DyMat<C, C2>& o) const {
        DyMat<R, C2> r;
        for (int i = 0; i < R; ++i)
            for (int j = 0; j < C2; ++j) {
                Dyadic s;
                for (int k = 0; k < C; ++k) s += e[i][k] * o.e[k][j];
                r.e[i][j] = s;
            }
        return r;
    }
};

/// Finitely supported map Z^2 -> R x C dyadic matrices.
template <int R, int C>
class MatrixMask {
public:
    using Terms = std::map<Index2, DyMat<R, C>>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    DyMat<R, C> at(const Index2& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? DyMat<R, C>{} : it->second;
    }
    void add(const Index2& e, const DyMat<R, C>& m) {
        if (m.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, m);
        if (!inserted) {
            it->second = it->second + m;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void set_entry(const Index2& e, int i, int j, const Dyadic& v) {
        terms_[e].e[i][j] = v;
        if (terms_[e].is_zero()) terms_.erase(e);
    }

    /// Entry (i,j) collected as a scalar Laurent polynomial.
    LaurentPoly entry(int i, int j) const {
        LaurentPoly f;
        for (const auto& [e, m] : terms_) f.add(e, m.e[i][j]);
        return f;
    }

    bool operator==(const MatrixMask& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

using MatrixMask22 = MatrixMask<2, 2>;
using VectorSeq = MatrixMask<2, 1>;

/// Backwards difference: (c(.-e1) - c, c(.-e2) - c), so (diff c)* = [z-1] c*.
VectorSeq difference(const LaurentPoly& c);

/// Matrix subdivision step (S_{B,W} d)(alpha) = sum_beta B(alpha - W beta) d(beta).
template <int R, int K, int C>
MatrixMask<R, C> matrix_step(const MatrixMask<R, K>& b, const IMat2& w,
                             const MatrixMask<K, C>& d) {
    MatrixMask<R, C> out;
    for (const auto& [beta, mb] : d.terms()) {
        Index2 wb = w.apply(beta);
        for (const auto& [s, ms] : b.terms()) out.add(wb + s, ms * mb);
    }
    return out;
}

}  // namespace shearsub
