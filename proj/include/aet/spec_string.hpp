#pragma once

#include "aet/euler_product.hpp"

#include <string>

namespace aet {

struct SpecParseOptions {
    uint32_t tau_n = 10000; // coverage of the built-in delta eigenvalues
    uint32_t tau_cap = kDefaultTauCap;
    bool allow_ramanujan_violations = false;
    int threads = 0;
};

// Grammar:
//   zeta
//   dirichlet:q=<Q>,index=<e1.e2...>
//   gl2:source=delta | gl2:source=file:<path>     (optional ,chi=q=<Q>,index=<tuple>)
// A gl2 spec without chi twists by the principal character mod 1.
EulerProductSpec parse_product_spec(const std::string& s, const SpecParseOptions& opt = {});

inline std::string canonical_spec_string(const EulerProductSpec& spec) {
    return spec.description();
}

} // namespace aet
