#pragma once

#include "shearsub/field.hpp"
#include "shearsub/masks.hpp"

namespace shearsub {

struct WindowTooSmall : std::runtime_error {
    explicit WindowTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// One subdivision step (S_eps c)(alpha) = sum_beta a(alpha - W_eps beta) c(beta).
/// Gather formulation, OpenMP-parallel over output rows; bit-identical to the
/// serial reference for exact value types.
FieldD step(const LaurentPoly& a, uint8_t eps, const FieldD& c);
FieldF step(const LaurentPoly& a, uint8_t eps, const FieldF& c);

/// Scatter-based serial reference implementation.
FieldD step_serial(const LaurentPoly& a, uint8_t eps, const FieldD& c);
FieldF step_serial(const LaurentPoly& a, uint8_t eps, const FieldF& c);

/// S_eps = S_{eps_n} ... S_{eps_1}: applies the branch word left to right.
FieldD run(const MaskPair& pair, const EpsWord& eps, const FieldD& c);
FieldF run(const MaskPair& pair, const EpsWord& eps, const FieldF& c);

/// Iterated mask a_eps with S_eps c = sum a_eps(. - W_eps beta) c(beta).
LaurentPoly iterated_mask(const MaskPair& pair, const EpsWord& eps);

/// Cascade samples of the limit function at grid W_eps^{-1} Z^2
/// (the values a_eps as a tagged field).
FieldD limit_samples(const MaskPair& pair, const EpsWord& eps);

/// True iff both one-step schemes map every monomial sequence of total degree
/// <= k to polynomial data of total degree <= k on the window interior.
bool check_poly_reproduction(const MaskPair& pair, unsigned k, long long window_radius);

}  // namespace shearsub
