#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace aet {

struct UnitGroupComponent {
    uint64_t modulus;   // prime-power label; the 2-part of 2^k (k>=3) splits as 4 and 2^(k-2)
    uint64_t generator; // unit generating the cyclic component
    uint64_t order;
};

// Cyclic decomposition of (Z/q)^*.  Component order: the 2-part first
// (as the -1 part then the 5 part), then odd prime-power components by
// ascending modulus.  Generators for odd prime powers are the smallest
// positive primitive roots.  Product of the orders equals phi(q).
std::vector<UnitGroupComponent> unit_group_structure(uint64_t q);

// A Dirichlet character mod q, fixed by an exponent tuple against the
// generator list of unit_group_structure(q).  Values are cached for all
// residues, and chi(n) is also available exactly as a root-of-unity
// exponent so that orthogonality, conductor and power computations never
// touch floating point.
class DirichletCharacter {
public:
    DirichletCharacter(uint64_t q, std::vector<uint64_t> index);
    static DirichletCharacter principal(uint64_t q);

    uint64_t modulus() const { return q_; }
    const std::vector<UnitGroupComponent>& components() const { return comps_; }
    const std::vector<uint64_t>& index() const { return index_; }
    bool is_principal() const;

    // chi(n) = exp(2 pi i * exponent(n) / denom()), or 0 off the units.
    uint64_t denom() const { return denom_; }
    bool is_zero_at(uint64_t n) const { return exp_table_[n % q_] < 0; }
    int64_t exponent(uint64_t n) const { return exp_table_[n % q_]; } // -1 when chi(n)=0

    std::complex<double> operator()(uint64_t n) const { return val_table_[n % q_]; }
    std::complex<double> eval_signed(int64_t n) const {
        int64_t r = n % static_cast<int64_t>(q_);
        if (r < 0) r += static_cast<int64_t>(q_);
        return val_table_[static_cast<uint64_t>(r)];
    }

    DirichletCharacter power(uint64_t k) const;
    uint64_t conductor() const;
    bool is_primitive() const { return conductor() == q_; }

    std::string to_string() const; // canonical "q=<q>,index=<e1.e2...>"

private:
    uint64_t q_ = 1;
    std::vector<UnitGroupComponent> comps_;
    std::vector<uint64_t> index_;
    uint64_t denom_ = 1;               // lcm of component orders
    std::vector<int64_t> exp_table_;   // residue -> exponent in [0, denom), -1 off units
    std::vector<std::complex<double>> val_table_;

    void build_tables();
};

// Parses "q=<Q>,index=<e1.e2...>".  An empty tuple (trivial group) is
// written "0".
DirichletCharacter parse_character(const std::string& s);

} // namespace aet
