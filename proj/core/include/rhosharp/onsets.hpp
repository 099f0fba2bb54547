#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhosharp/func.hpp"

namespace rhosharp {

struct OrderClassification {
    int p = 0, q = 0;  // derivative order, z and conj(z) directions
    Classification cls;
};

struct OnSetReport {
    std::vector<OrderClassification> per_order;

    // Neither beats Moderate beats Negligible; the worst order decides.
    Classification worst() const;
    // Largest certified exponent across orders; -1 when some order is Neither.
    int max_exponent() const;
};

// Sup-nets of |derivatives of u| over quasi-uniform samples of the padded
// concrete shapes, one classification per derivative order up to k_max.
// Orders run over both directions for fixed polynomials, the z direction for
// series-backed nets, and order zero only for bare callables.
OnSetReport classify_on_set(const GenFunction& u, const InternalSetRep& A, int k_max = 0,
                            int pad = 1, const Config& cfg = {});

struct InvertibilityReport {
    bool invertible = false;
    int n = -1;  // certified inf bound: inf |u| >= eps^n over the padded set
    bool pointwise_agrees = true;
    int points_checked = 0;
    std::vector<std::pair<double, Complex>> witness;  // minimizing net when not invertible
    std::optional<GenFunction> reciprocal;
    std::string detail;
};

// Uniform lower-bound search (grid tail, multistart descent per epsilon)
// cross-checked against pointwise invertibility at sampled member points.
InvertibilityReport invertibility_on_set(const GenFunction& u, const InternalSetRep& A,
                                         const Config& cfg = {});

}  // namespace rhosharp
