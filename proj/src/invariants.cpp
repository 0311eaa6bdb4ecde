#include "jorn/invariants.hpp"

namespace jorn {

// every field is unchanged under t -> c t, and integral constants keep
// the arithmetic on machine words
InvariantProfile invariant_profile(const Tensor<ExactScalar>& t) {
    Tensor<ExactScalar> u = clear_denominators(t);
    if (is_rational(u)) return compute_profile(to_rational(u));
    return compute_profile(u);
}

std::string format_dims(const std::vector<int>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + ")";
}

std::string format_profile(const InvariantProfile& p) {
    return "der=" + std::to_string(p.der_dim) + " orbit=" + std::to_string(p.orbit_dim) +
           " ann=" + std::to_string(p.ann_dim) + " powers=" + format_dims(p.power_dims) +
           " nilindex=" + std::to_string(p.nilindex) + " type=" + format_dims(p.nilpotency_type) +
           " center=" + std::to_string(p.center_dim) + " jacobi=" + std::to_string(p.jacobi_dim) +
           " z2=" + std::to_string(p.z2_dim) + " b2=" + std::to_string(p.b2_dim) +
           " h2=" + std::to_string(p.h2_dim) + (p.associative ? " associative" : " non-associative");
}

}  // namespace jorn
