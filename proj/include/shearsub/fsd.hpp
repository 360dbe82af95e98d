#pragma once

#include "shearsub/field.hpp"
#include "shearsub/masks.hpp"
#include "shearsub/subdivision.hpp"

#include <map>
#include <string>
#include <vector>

namespace shearsub {

struct NotInterpolatory : std::runtime_error {
    NotInterpolatory() : std::runtime_error("mask pair is not interpolatory") {}
};
struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};
struct MissingNode : std::runtime_error {
    explicit MissingNode(const std::string& what) : std::runtime_error(what) {}
};

/// The seven nonzero coset representatives of Z^2 / W Z^2.
std::vector<Index2> detail_offsets();

/// Scaling array plus one detail array per nonzero coset, the output of one
/// prediction-correction split.
struct AnalyzeResult {
    FieldD child;
    std::map<Index2, FieldD> details;  // keyed by gamma in detail_offsets()
};

/// Binary direction tree of scaling and detail coefficients. Scaling arrays
/// are stored at least at the leaves of every decomposed branch; details sit
/// on edges, keyed by the child word.
struct ShearletTree {
    unsigned depth = 0;
    long long px = 0, py = 0;
    bool full = true;
    EpsWord path;  // decomposed branch when not full
    std::map<EpsWord, FieldD> scaling;
    std::map<std::pair<EpsWord, Index2>, FieldD> details;
};

/// Splits c into the subsampled scaling array child(alpha) = c(W_eta alpha)
/// and the prediction residuals
/// d_gamma(alpha) = (c - S_eta child)(W_eta alpha + gamma), gamma != 0.
AnalyzeResult analyze_step(const FieldD& c, uint8_t eta, const MaskPair& pair);

/// The omitted gamma = 0 residual, identically zero for interpolatory pairs;
/// exposed for verification.
FieldD analyze_gamma0(const FieldD& c, uint8_t eta, const MaskPair& pair);

/// Exact inverse of analyze_step.
FieldD synthesize_step(const FieldD& child, const std::map<Index2, FieldD>& details, uint8_t eta,
                       const MaskPair& pair);

/// Full-tree or single-path decomposition to the given depth. Periodic input
/// with both periods divisible by 4^depth. keep_interior stores the scaling
/// array at every node instead of leaves only.
ShearletTree decompose(const FieldD& c, unsigned depth, const MaskPair& pair,
                       const EpsWord* path = nullptr, bool keep_interior = false);

/// Scaling array at a node, synthesized from below when not stored.
FieldD reconstruct_node(const ShearletTree& tree, const EpsWord& node, const MaskPair& pair);

/// Root data recovered along one root-to-leaf (or shorter) path.
FieldD reconstruct(const ShearletTree& tree, const EpsWord& path, const MaskPair& pair);

/// Per-position max absolute detail over gamma at an edge, for export.
FieldF detail_energy_map(const ShearletTree& tree, const EpsWord& node);

// Tree directory: manifest.json plus "c_<bits>.csv" / "d_<bits>_<g1>-<g2>.csv".
void write_tree(const std::string& dir, const ShearletTree& tree);
ShearletTree read_tree(const std::string& dir);

}  // namespace shearsub
