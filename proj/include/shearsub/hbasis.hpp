#pragma once

#include "shearsub/laurent.hpp"

#include <stdexcept>

namespace shearsub {

/// Thrown when a symbol fails quotient-ideal membership, i.e. the sum rule.
struct NotInIdeal : std::runtime_error {
    NotInIdeal() : std::runtime_error("symbol is not in the quotient ideal (sum rule fails)") {}
};

// H-basis of the quotient ideal I = <z^W - 1> : <z - 1>, identical for W0 and W1.
LaurentPoly gen_z1_pow4();        // z1^4 - 1
LaurentPoly gen_cross();          // (z1^3 + z1^2 + z1 + 1)(z2 + 1)
LaurentPoly gen_z2_pow2();        // z2^2 - 1
LaurentPoly smooth_factor();      // s(z1) = z1^3 + z1^2 + z1 + 1

/// Cofactors of the fixed reduction f = p g1 + q g2 + r g3 + remainder,
/// remainder supported on {1, z1, z1^2, z1^3, z2, z1 z2, z1^2 z2}.
struct HReduction {
    LaurentPoly p, q, r, remainder;
    bool member() const { return remainder.is_zero(); }
};

HReduction hbasis_reduce(const LaurentPoly& f);

/// Coset-sum test: every sum over gamma + W_eps Z^2 equals 1.
bool sum_rule_check(const LaurentPoly& a, uint8_t eps);

/// Equivalent evaluation test: a* vanishes at the seven nonzero root points
/// and a*(1,1) = 8.
bool sum_rule_by_evaluation(const LaurentPoly& a);

/// Representation mask B_eps with [z-1] a*(z) = B_eps*(z) [z^{W_eps} - 1].
/// Throws NotInIdeal when the reduction leaves a remainder.
MatrixMask22 representation_mask(const LaurentPoly& a, uint8_t eps);

/// Verifies the defining identity of a representation mask symbolically.
bool representation_identity_holds(const LaurentPoly& a, const MatrixMask22& b, uint8_t eps);

}  // namespace shearsub
