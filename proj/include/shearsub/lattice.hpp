#pragma once

#include "shearsub/dyadic.hpp"
#include "shearsub/eps_word.hpp"
#include "shearsub/mat2.hpp"

#include <optional>
#include <vector>

namespace shearsub {

/// Integer 2x2 matrix, used on the hot paths where the dilation matrices act
/// on lattice indices.
struct IMat2 {
    long long a, b, c, d;  // [[a,b],[c,d]]

    Index2 apply(const Index2& v) const { return {a * v[0] + b * v[1], c * v[0] + d * v[1]}; }
    IMat2 operator*(const IMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    long long det() const { return a * d - b * c; }
    bool operator==(const IMat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

// Scaling matrices of the two subdivision branches and the shear factors.
inline IMat2 w0() { return {4, 0, 0, 2}; }
inline IMat2 w1() { return {4, -4, 0, 2}; }
inline IMat2 w_gen(uint8_t eps) { return eps ? w1() : w0(); }
inline IMat2 shear_u() { return {1, -2, 0, 1}; }   // U, W1 = U W0
inline IMat2 shear_v() { return {1, -1, 0, 1}; }   // V, W1 = W0 V
inline IMat2 shear_u_pow(long long k) { return {1, -2 * k, 0, 1}; }

/// W_eps = W_{eps_n} ... W_{eps_1} together with its shear factors,
/// W_eps = U_eps W0^n = W0^n V_eps.
struct DilationFactors {
    Mat2 w;       // W_eps
    Mat2 u;       // U_eps, unimodular
    Mat2 v;       // V_eps, entries dyadic
};

Mat2 to_mat2(const IMat2& m);

/// Direct product W_{eps_n} ... W_{eps_1} (integer matrix).
IMat2 dilation_product(const EpsWord& eps);

/// Closed forms for W_eps, U_eps, V_eps.
DilationFactors dilation_matrix(const EpsWord& eps);

/// M_eps = M_{eps_n} ... M_{eps_1} = [[4^-n, 4^-n 2 (eps)_2],[0, 2^-n]].
Mat2 refinement_matrix(const EpsWord& eps);

/// Generator M_k = [[1/4, k/2],[0,1/2]], any integer k.
Mat2 refinement_generator(long long k);

/// Slope of a line through the origin, a nonnegative rational or infinity.
struct Slope {
    bool infinite = false;
    BigRational value = 0;  // ignored when infinite

    static Slope inf() { return {true, 0}; }
    static Slope finite(BigRational v) { return {false, std::move(v)}; }
    bool operator==(const Slope& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
};

/// Slope of M_eps L for a line L of slope s through the origin.
Slope slope_after(const Slope& s, const EpsWord& eps);

/// Finds eps with |slope_after(s, eps) - t| < delta (slope > 1/delta when t
/// is infinite). Empty optional when the target slope is outside [1/2, inf].
std::optional<EpsWord> plan_direction(const Slope& s, const Slope& t, const BigRational& delta);

/// Canonical representatives of Z^2 / W_{r(eps)} Z^2:
/// {0..4^n-1} x {0..2^n-1}, 8^n points.
std::vector<Index2> coset_representatives(const EpsWord& eps);

/// Reduces p to its canonical representative modulo the lattice spanned by
/// the columns of W (an integer matrix of the W_eps family).
Index2 coset_reduce(const IMat2& w, const Index2& p);

/// True iff a - b lies in W Z^2.
bool congruent_mod(const IMat2& w, const Index2& a, const Index2& b);

}  // namespace shearsub
