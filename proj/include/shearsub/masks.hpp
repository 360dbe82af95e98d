#pragma once

#include "shearsub/laurent.hpp"

#include <map>
#include <string>

namespace shearsub {

/// Finitely supported univariate mask Z -> Dyadic.
using Mask1D = std::map<long long, Dyadic>;

/// The Deslauriers-Dubuc 4-point mask: -1/16, 9/16, 1, 9/16, -1/16 at odd
/// positions and the origin.
Mask1D dd_mask();

/// Cardinal B-spline refinement mask h(k) = 2^{1-m} binom(m, k), k = 0..m.
Mask1D bspline_mask(unsigned m);

/// b~(m) = sum_k b(k) b(m - 2k): one extra dyadic refinement step folded into
/// the mask, turning a 2-refinable mask into a 4-refinable one.
Mask1D double_step(const Mask1D& b);

/// True iff b(2m) = delta_{m,0}.
bool interpolatory2(const Mask1D& b);

/// Tensor product a(i,j) = bx(i) by(j).
LaurentPoly tensor(const Mask1D& bx, const Mask1D& by);

/// result(alpha) = a(U^k alpha), U = [[1,-2],[0,1]].
LaurentPoly shear_reindex(const LaurentPoly& a, long long k);

/// The two masks of an adaptive directional scheme, one per branch.
struct MaskPair {
    LaurentPoly a0, a1;
    bool interpolatory = false;  // recorded at construction
};

/// a0 = double_step(b1) (x) b2, a1 = a0(U .).
MaskPair make_pair(const Mask1D& b1, const Mask1D& b2);

MaskPair dd_pair();

/// a(W0 alpha) = delta_{alpha,0} (the same lattice serves W1).
bool check_interpolatory(const LaurentPoly& a);

// Mask JSON: {"name": ..., "entries": [{"i","j","num","log2den"}, ...]}.
std::string mask_to_json(const LaurentPoly& a, const std::string& name);
LaurentPoly mask_from_json(const std::string& text, std::string* name = nullptr);

}  // namespace shearsub
