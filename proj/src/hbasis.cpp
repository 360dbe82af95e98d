#include "shearsub/hbasis.hpp"

#include <set>
#include <vector>

namespace shearsub {

LaurentPoly gen_z1_pow4() {
    LaurentPoly f;
    f.set({4, 0}, Dyadic(1));
    f.set({0, 0}, Dyadic(-1));
    return f;
}

LaurentPoly smooth_factor() {
    LaurentPoly f;
    for (long long i = 0; i <= 3; ++i) f.set({i, 0}, Dyadic(1));
    return f;
}

LaurentPoly gen_cross() {
    LaurentPoly z2p1;
    z2p1.set({0, 1}, Dyadic(1));
    z2p1.set({0, 0}, Dyadic(1));
    return smooth_factor() * z2p1;
}

LaurentPoly gen_z2_pow2() {
    LaurentPoly f;
    f.set({0, 2}, Dyadic(1));
    f.set({0, 0}, Dyadic(-1));
    return f;
}

namespace {

const std::set<Index2> kQuotientSpan = {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}, {2, 1}};

struct Accum {
    LaurentPoly p, q, r;
};

/// Reduces a single monomial v * z^(i,j) into the quotient span, charging the
/// eliminated generators to the accumulators. Used for the Laurent shift tail.
void reduce_monomial(Index2 e, Dyadic v, Accum& acc, LaurentPoly& canon) {
    std::vector<std::pair<Index2, Dyadic>> work{{e, std::move(v)}};
    while (!work.empty()) {
        auto [ij, c] = work.back();
        work.pop_back();
        if (c.is_zero()) continue;
        auto [i, j] = ij;
        if (j >= 2) {
            acc.r.add({i, j - 2}, c);
            work.push_back({{i, j - 2}, c});
        } else if (j < 0) {
            acc.r.add({i, j}, -c);
            work.push_back({{i, j + 2}, c});
        } else if (i < 0) {
            acc.p.add({i, j}, -c);
            work.push_back({{i + 4, j}, c});
        } else if (i >= 4) {
            acc.p.add({i - 4, j}, c);
            work.push_back({{i - 4, j}, c});
        } else if (i == 3 && j == 1) {
            // z1^3 z2 = s(z1)(z2+1) - (z1^2+z1+1) z2 - s(z1)
            acc.q.add({0, 0}, c);
            for (long long k = 0; k <= 2; ++k) work.push_back({{k, 1}, -c});
            for (long long k = 0; k <= 3; ++k) work.push_back({{k, 0}, -c});
        } else {
            canon.add(ij, c);
        }
    }
}

}  // namespace

HReduction hbasis_reduce(const LaurentPoly& f) {
    HReduction out;
    if (f.is_zero()) return out;

    // (i) shift to a true polynomial
    auto [lo, hi] = f.bounds();
    Index2 sh = {std::max(0LL, -lo[0]), std::max(0LL, -lo[1])};
    LaurentPoly g = f.shifted(sh);

    Accum acc;

    // (ii) fold z2-degree below 2 via z2^d = z2^{d-2}(z2^2 - 1) + z2^{d-2}
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [e, c] : g.terms()) {
            if (e[1] >= 2) {
                acc.r.add({e[0], e[1] - 2}, c);
                g.add({e[0], e[1] - 2}, c);
                g.set(e, Dyadic(0));
                changed = true;
                break;
            }
        }
    }

    // (iii) u1 z2 = u1 (z2+1) - u1; divide u1 by s(z1), residue rho (deg <= 2)
    LaurentPoly u0, u1;
    for (const auto& [e, c] : g.terms()) {
        if (e[1] == 1)
            u1.add({e[0], 0}, c);
        else
            u0.add(e, c);
    }
    LaurentPoly q1, rho = u1;
    while (!rho.is_zero()) {
        long long d = rho.bounds().second[0];
        if (d < 3) break;
        Dyadic c = rho.at({d, 0});
        q1.add({d - 3, 0}, c);
        for (long long k = 0; k <= 3; ++k) rho.add({d - 3 + k, 0}, -c);
    }
    acc.q = acc.q + q1;

    // (iv) divide the z2-free part u0 - u1 + rho by z1^4 - 1
    LaurentPoly w = u0 - u1 + rho;
    while (!w.is_zero()) {
        long long d = w.bounds().second[0];
        if (d < 4) break;
        Dyadic c = w.at({d, 0});
        acc.p.add({d - 4, 0}, c);
        w.add({d - 4, 0}, c);
        w.add({d, 0}, -c);
    }
    LaurentPoly rem = w;
    for (const auto& [e, c] : rho.terms()) rem.add({e[0], 1}, c);

    // (v) undo the shift on the cofactors, then push the shifted remainder
    // back into the canonical quotient span
    Index2 unsh = {-sh[0], -sh[1]};
    Accum acc2;
    LaurentPoly canon;
    for (const auto& [e, c] : rem.terms()) reduce_monomial(e + unsh, c, acc2, canon);

    out.p = acc.p.shifted(unsh) + acc2.p;
    out.q = acc.q.shifted(unsh) + acc2.q;
    out.r = acc.r.shifted(unsh) + acc2.r;
    out.remainder = canon;
    return out;
}

bool sum_rule_check(const LaurentPoly& a, uint8_t eps) {
    const IMat2 w = w_gen(eps);
    std::map<Index2, Dyadic> sums;
    for (long long x = 0; x <= 3; ++x)
        for (long long y = 0; y <= 1; ++y) sums[{x, y}] = Dyadic(0);
    for (const auto& [e, c] : a.terms()) sums[coset_reduce(w, e)] += c;
    for (const auto& [g, s] : sums)
        if (s != Dyadic(1)) return false;
    return true;
}

bool sum_rule_by_evaluation(const LaurentPoly& a) {
    for (long long x = 0; x <= 3; ++x)
        for (long long y = 0; y <= 1; ++y) {
            GaussianDyadic v = evaluate_at_root(a, {x, y});
            if (x == 0 && y == 0) {
                if (!(v == GaussianDyadic{Dyadic(8), Dyadic(0)})) return false;
            } else if (!v.is_zero()) {
                return false;
            }
        }
    return true;
}

namespace {

MatrixMask22 mask_from_symbols(const LaurentPoly s[2][2]) {
    MatrixMask22 b;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [e, c] : s[i][j].terms()) b.set_entry(e, i, j, c);
    return b;
}

void b_symbols_from_cofactors(const HReduction& red, LaurentPoly out[2][2]) {
    LaurentPoly z1m1 = LaurentPoly::monomial({1, 0}) - LaurentPoly::delta();
    LaurentPoly z2m1 = LaurentPoly::monomial({0, 1}) - LaurentPoly::delta();
    LaurentPoly z2p1 = LaurentPoly::monomial({0, 1}) + LaurentPoly::delta();
    out[0][0] = z1m1 * red.p + z2p1 * red.q;
    out[0][1] = z1m1 * red.r;
    out[1][0] = z2m1 * red.p;
    out[1][1] = smooth_factor() * red.q + z2m1 * red.r;
}

}  // namespace

MatrixMask22 representation_mask(const LaurentPoly& a, uint8_t eps) {
    HReduction red = hbasis_reduce(a);
    if (!red.member()) throw NotInIdeal();
    LaurentPoly bs[2][2];
    b_symbols_from_cofactors(red, bs);
    if (eps == 1) {
        // convert from the W0 generator vector to the W1 one:
        // [z^{W1} - 1] = T [z^{W0} - 1], B1 = B~ T^{-1}, T^{-1} = [[1,0],[1,z1^4]]
        LaurentPoly z14 = LaurentPoly::monomial({4, 0});
        LaurentPoly c0 = bs[0][0] + bs[0][1];
        LaurentPoly c1 = bs[0][1] * z14;
        LaurentPoly c2 = bs[1][0] + bs[1][1];
        LaurentPoly c3 = bs[1][1] * z14;
        bs[0][0] = c0;
        bs[0][1] = c1;
        bs[1][0] = c2;
        bs[1][1] = c3;
    }
    return mask_from_symbols(bs);
}

bool representation_identity_holds(const LaurentPoly& a, const MatrixMask22& b, uint8_t eps) {
    const IMat2 w = w_gen(eps);
    LaurentPoly col[2];
    // [z^W - 1] from the columns of W
    col[0] = LaurentPoly::monomial({w.a, w.c}) - LaurentPoly::delta();
    col[1] = LaurentPoly::monomial({w.b, w.d}) - LaurentPoly::delta();
    LaurentPoly z1m1 = LaurentPoly::monomial({1, 0}) - LaurentPoly::delta();
    LaurentPoly z2m1 = LaurentPoly::monomial({0, 1}) - LaurentPoly::delta();
    LaurentPoly lhs[2] = {z1m1 * a, z2m1 * a};
    for (int i = 0; i < 2; ++i) {
        LaurentPoly rhs = b.entry(i, 0) * col[0] + b.entry(i, 1) * col[1];
        if (!(rhs == lhs[i])) return false;
    }
    return true;
}

}  // namespace shearsub
