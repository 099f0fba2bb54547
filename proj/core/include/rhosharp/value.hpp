#pragma once

#include <optional>

#include "rhosharp/nets.hpp"
#include "rhosharp/scalar.hpp"

namespace rhosharp {

enum class Provenance { SymbolicExact, Sampled };

// Result of evaluating a generalized function or summing a series. Symbolic
// paths fill `value` exactly; sampled paths carry the observed net and its
// oracle classification instead, with `value` left as the empty scalar.
struct GenValue {
    Provenance provenance = Provenance::SymbolicExact;
    GenComplex value;
    std::optional<SampledNet> net;
    std::optional<Classification> cls;
    // Series summation: sharp-norm bound on the omitted tail (0 when exact).
    double tail_norm_bound = 0.0;

    bool sampled() const { return provenance == Provenance::Sampled; }
};

// Negligibility of a result regardless of which path produced it.
inline bool value_negligible(const GenValue& v) {
    if (v.sampled()) return v.cls && v.cls->is_negligible();
    return v.value.empty();
}

}  // namespace rhosharp
