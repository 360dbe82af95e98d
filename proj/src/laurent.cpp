#include "shearsub/laurent.hpp"

#include <algorithm>

namespace shearsub {

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add(e1 + e2, c1 * c2);
    return r;
}

std::pair<Index2, Index2> LaurentPoly::bounds() const {
    Index2 lo = {0, 0}, hi = {0, 0};
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            lo = hi = e;
            first = false;
        } else {
            lo = {std::min(lo[0], e[0]), std::min(lo[1], e[1])};
            hi = {std::max(hi[0], e[0]), std::max(hi[1], e[1])};
        }
    }
    return {lo, hi};
}

LaurentPoly LaurentPoly::reindexed(const IMat2& a) const {
    // result(alpha) = this(A alpha): supp(result) = A^{-1} supp(this)
    long long det = a.det();
    if (det != 1 && det != -1) throw std::domain_error("reindexed: matrix must be unimodular");
    IMat2 inv = {a.d * det, -a.b * det, -a.c * det, a.a * det};
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.add(inv.apply(e), c);
    return r;
}

GaussianDyadic evaluate_at_root(const LaurentPoly& f, const Index2& eta) {
    GaussianDyadic acc{Dyadic(0), Dyadic(0)};
    for (const auto& [e, c] : f.terms()) {
        // z1^e1 z2^e2 at (i^{-eta1}, (-1)^{eta2})
        long long pw = -eta[0] * e[0] + 2 * (eta[1] * e[1]);
        GaussianDyadic u = GaussianDyadic::unit_power(pw);
        acc = acc + GaussianDyadic{c * u.re, c * u.im};
    }
    return acc;
}

VectorSeq difference(const LaurentPoly& c) {
    VectorSeq d;
    for (const auto& [e, v] : c.terms()) {
        DyMat<2, 1> m1, m2;
        m1.e[0][0] = v;
        m2.e[1][0] = v;
        d.add({e[0] + 1, e[1]}, m1);  // c(.-e1) contributes at alpha = e + e1
        d.add({e[0], e[1] + 1}, m2);
        DyMat<2, 1> mneg;
        mneg.e[0][0] = -v;
        mneg.e[1][0] = -v;
        d.add(e, mneg);
    }
    return d;
}

}  // namespace shearsub
