#pragma once

#include "shearsub/hbasis.hpp"
#include "shearsub/masks.hpp"

#include <string>
#include <vector>

namespace shearsub {

enum class Verdict { converges, not_contractive, inconclusive };

const char* verdict_name(Verdict v);

/// Per-depth norm data. upper_norm is the exact max over all 2^n branch words
/// of the operator norm bound; the radius estimate at depth n is its n-th root.
struct DepthRecord {
    unsigned depth = 0;
    Dyadic upper_norm;
    EpsWord worst;
    Dyadic lower_norm;
    double upper_root = 0;
    double lower_root = 0;
};

struct RadiusEstimate {
    unsigned depth = 0;  // depth attaining the best upper root
    Dyadic upper_norm, lower_norm;
    double upper = 0, lower = 0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<DepthRecord> per_depth;
};

struct ConvergenceReport {
    bool sum_rule_ok = false;
    std::string diagnostics;
    RadiusEstimate estimate;  // meaningful only when sum_rule_ok
};

/// One matrix subdivision step with the branch dilation W_eps.
VectorSeq matrix_step_vec(const MatrixMask22& b, uint8_t eps, const VectorSeq& d);

/// B_eps(alpha) = sum_beta B_{eps_n}(alpha - W_{eps_n} beta) B_{eps'}(beta),
/// the later step multiplying on the left.
MatrixMask22 iterated_matrix_mask(const MatrixMask22& b0, const MatrixMask22& b1,
                                  const EpsWord& eps);

/// Max over cosets gamma of W_eps Z^2 of the max-row-sum of
/// sum_alpha |B(gamma + W_eps alpha)|; bounds the l-infinity operator norm.
Dyadic operator_norm_bound(const MatrixMask22& b, const EpsWord& eps);

/// Two-sided restricted-radius bracketing over all branch words up to
/// max_depth. Upper bounds are exact norm maxima; lower bounds come from
/// difference-sequence probes of sup norm <= 1. With stop_when_contractive the
/// search ends at the first depth certifying contractivity.
RadiusEstimate jsr_estimate(const MatrixMask22& b0, const MatrixMask22& b1, unsigned max_depth,
                            bool stop_when_contractive = true);

/// Full certification: sum rule on both masks, difference masks via the
/// quotient-ideal representation, then the radius estimate.
ConvergenceReport convergence_verdict(const MaskPair& pair, unsigned max_depth);

std::string report_json(const ConvergenceReport& r);

}  // namespace shearsub
