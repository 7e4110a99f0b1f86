#pragma once

#include "aet/characters.hpp"
#include "aet/eigenvalues.hpp"
#include "aet/errors.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace aet {

using cdouble = std::complex<double>;

enum class ProductKind { zeta, dirichlet_l, gl2_twisted };

// Per-prime data of a polynomial Euler product at s = 1.
struct LocalData {
    uint64_t p = 0;
    cdouble inv_local; // 1/F_p(1) = prod_j (1 - alpha_j(p)/p)
    cdouble gamma;     // p (1 - 1/F_p(1)); degree-2 case: lambda(p) chi(p) - chi^2(p)/p
};

struct ConstantResult {
    cdouble value;          // C(F)
    uint64_t cutoff = 0;    // prime bound P of the computed product
    double tail_bound = 0;  // rigorous bound on the relative truncation error
};

// A concrete polynomial Euler product: the zeta kind (degree 1), a Dirichlet
// L-function (degree 1), or the L-function of a GL(2) form twisted by a
// primitive character (degree 2, coefficients from an eigenvalue source).
//
// Immutable after construction; per-prime local data is memoized behind an
// internal lock, so all operations may run from any number of threads.
class EulerProductSpec {
public:
    static EulerProductSpec zeta();
    static EulerProductSpec dirichlet(DirichletCharacter chi);
    // chi must be primitive; source_label names the eigenvalue supply in the
    // canonical spec string ("delta" or "file:<path>").
    static EulerProductSpec gl2_twisted(std::shared_ptr<const EigenvalueSource> eigenvalues,
                                        DirichletCharacter chi,
                                        std::string source_label = "delta");

    ProductKind kind() const { return kind_; }
    int degree() const { return kind_ == ProductKind::gl2_twisted ? 2 : 1; }
    const DirichletCharacter& character() const { return chi_; }
    const EigenvalueSource* eigenvalues() const { return eigen_.get(); }
    std::string description() const; // canonical spec string

    // Largest X such that every prime <= X is evaluable (UINT64_MAX for degree 1).
    uint64_t coverage_bound() const;

    LocalData local_data(uint64_t p) const;
    cdouble local_inverse_at_one(uint64_t p) const { return local_data(p).inv_local; }
    cdouble local_gamma(uint64_t p) const { return local_data(p).gamma; }

    // Local polynomial 1 + e1 z + e2 z^2 in z = p^(-s).
    void local_poly(uint64_t p, cdouble& e1, cdouble& e2) const;

    cdouble alpha(uint64_t n) const;               // mu(n) prod_{p|n} gamma(p)
    cdouble totient(uint64_t n) const;             // phi(n, F) = n prod_{p|n} 1/F_p(1)
    cdouble totient_via_divisors(uint64_t n) const; // n sum_{m|n} alpha(m)/m (oracle path)

    cdouble coeff_prime_power(uint64_t p, uint32_t k) const; // a_F(p^k)
    cdouble coeff(uint64_t n) const;                         // a_F(n)

    // C(F) = 1/2 prod_p (1 - gamma(p)/p^2) with tail_bound <= tol.
    // Degree 1: the truncated product is completed by an analytically
    // computed prime tail, so any tol down to ~1e-13 is reachable at once.
    // Degree 2: the tail of the eigenvalue-dependent part has no closed
    // form, so the bound decays like 2/(P log P) and the cutoff doubles
    // until tol is met or coverage runs out (data_gap_error).
    ConstantResult constant(double tol) const;
    double best_constant_tol() const; // smallest reachable tail bound

private:
    EulerProductSpec(ProductKind kind, DirichletCharacter chi,
                     std::shared_ptr<const EigenvalueSource> eigen, std::string label);

    LocalData compute_local(uint64_t p) const;

    ProductKind kind_;
    DirichletCharacter chi_;
    std::shared_ptr<const EigenvalueSource> eigen_;
    std::string source_label_;

    struct Cache {
        std::mutex mu;
        std::unordered_map<uint64_t, LocalData> map;
    };
    std::shared_ptr<Cache> cache_;
};

} // namespace aet
