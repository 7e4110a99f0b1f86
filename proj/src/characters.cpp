#include "aet/characters.hpp"

#include "aet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace aet {

namespace {

constexpr uint64_t kMaxModulus = uint64_t(1) << 24;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((__uint128_t)a * b % m);
}

uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::vector<std::pair<uint64_t, uint32_t>> factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, uint32_t>> f;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        uint32_t k = 0;
        while (n % p == 0) { n /= p; ++k; }
        f.emplace_back(p, k);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

// Smallest positive primitive root mod p (p odd prime), lifted to p^k.
uint64_t primitive_root(uint64_t p, uint32_t k) {
    uint64_t phi = p - 1;
    auto fac = factorize(phi);
    uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto& [r, e] : fac) {
            (void)e;
            if (powmod(g, phi / r, p) == 1) { ok = false; break; }
        }
        if (ok) break;
    }
    if (k == 1) return g;
    // g generates mod p^k unless g^(p-1) = 1 mod p^2, in which case g+p does.
    uint64_t p2 = p * p;
    if (powmod(g, p - 1, p2) == 1) g += p;
    return g;
}

} // namespace

std::vector<UnitGroupComponent> unit_group_structure(uint64_t q) {
    if (q == 0) throw domain_error("unit_group_structure: q must be positive");
    if (q > kMaxModulus) throw domain_error("unit_group_structure: modulus above 2^24 is not supported");
    std::vector<UnitGroupComponent> comps;
    if (q == 1) return comps;

    auto fac = factorize(q);
    // 2-part first.
    for (auto& [p, k] : fac) {
        if (p != 2) continue;
        uint64_t pk = uint64_t(1) << k;
        if (k == 1) {
            // units mod 2 are trivial
        } else if (k == 2) {
            comps.push_back({4, 3, 2});
        } else {
            comps.push_back({4, pk - 1, 2});                       // the -1 part
            comps.push_back({pk >> 2, 5, pk >> 2});                // the 5 part, order 2^(k-2)
        }
    }
    // Odd prime powers ascending (factorize already yields ascending p).
    for (auto& [p, k] : fac) {
        if (p == 2) continue;
        uint64_t pk = 1;
        for (uint32_t i = 0; i < k; ++i) pk *= p;
        uint64_t order = pk / p * (p - 1);
        comps.push_back({pk, primitive_root(p, k), order});
    }
    return comps;
}

DirichletCharacter::DirichletCharacter(uint64_t q, std::vector<uint64_t> index)
    : q_(q), comps_(unit_group_structure(q)), index_(std::move(index)) {
    if (index_.size() != comps_.size())
        throw spec_parse_error("character index has " + std::to_string(index_.size()) +
                               " entries, expected " + std::to_string(comps_.size()) +
                               " for q=" + std::to_string(q_));
    for (size_t i = 0; i < index_.size(); ++i) index_[i] %= comps_[i].order;
    denom_ = 1;
    for (auto& c : comps_) denom_ = std::lcm(denom_, c.order);
    build_tables();
}

DirichletCharacter DirichletCharacter::principal(uint64_t q) {
    return DirichletCharacter(q, std::vector<uint64_t>(unit_group_structure(q).size(), 0));
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(index_.begin(), index_.end(), [](uint64_t e) { return e == 0; });
}

void DirichletCharacter::build_tables() {
    exp_table_.assign(q_, -1);
    val_table_.assign(q_, {0.0, 0.0});
    if (q_ == 1) {
        exp_table_[0] = 0;
        val_table_[0] = {1.0, 0.0};
        return;
    }

    // Per prime-power dlog tables, then one pass over all residues.
    // Each entry of parts describes one factor p^k of q and the component
    // slots it owns in comps_.
    struct Part {
        uint64_t pk;
        size_t comp0;            // first component index
        size_t ncomp;            // 1, or 2 for 2^k with k >= 3
        std::vector<int64_t> dlog; // residue mod pk -> generator exponent (5-part for ncomp=2)
        std::vector<int8_t> sign;  // ncomp=2 only: exponent of the -1 part
    };
    std::vector<Part> parts;
    size_t ci = 0;
    auto fac = factorize(q_);
    // comps_ lists the 2-part first; walk factors in the same order.
    std::stable_sort(fac.begin(), fac.end(), [](auto& a, auto& b) {
        return (a.first == 2) > (b.first == 2);
    });
    for (auto& [p, k] : fac) {
        uint64_t pk = 1;
        for (uint32_t i = 0; i < k; ++i) pk *= p;
        if (p == 2 && k == 1) continue; // no component
        Part part;
        part.pk = pk;
        part.comp0 = ci;
        if (p == 2 && k >= 3) {
            part.ncomp = 2;
            part.dlog.assign(pk, -1);
            part.sign.assign(pk, 0);
            uint64_t half = pk >> 2; // order of 5
            uint64_t v = 1;
            for (uint64_t j = 0; j < half; ++j) {
                part.dlog[v] = static_cast<int64_t>(j);
                part.sign[v] = 0;
                uint64_t w = pk - v; // -5^j
                part.dlog[w] = static_cast<int64_t>(j);
                part.sign[w] = 1;
                v = mulmod(v, 5, pk);
            }
        } else {
            part.ncomp = 1;
            part.dlog.assign(pk, -1);
            const auto& c = comps_[ci];
            uint64_t v = 1;
            for (uint64_t j = 0; j < c.order; ++j) {
                part.dlog[v] = static_cast<int64_t>(j);
                v = mulmod(v, c.generator, pk);
            }
        }
        ci += part.ncomp;
        parts.push_back(std::move(part));
    }

    const double two_pi = 2.0 * std::numbers::pi;
    for (uint64_t n = 0; n < q_; ++n) {
        if (std::gcd(n, q_) != 1) continue;
        uint64_t e = 0;
        bool unit = true;
        // exponent over the common denominator: sum_c (e_c * idx_c mod ord_c) * (denom/ord_c)
        auto add_component = [&](uint64_t dlog_e, size_t comp) {
            const auto& c = comps_[comp];
            uint64_t contrib = dlog_e % c.order * index_[comp] % c.order * (denom_ / c.order);
            e = (e + contrib) % denom_;
        };
        for (auto& part : parts) {
            uint64_t r = n % part.pk;
            int64_t d = part.dlog[r];
            if (d < 0) { unit = false; break; }
            if (part.ncomp == 2) {
                add_component(static_cast<uint64_t>(part.sign[r]), part.comp0);
                add_component(static_cast<uint64_t>(d), part.comp0 + 1);
            } else {
                add_component(static_cast<uint64_t>(d), part.comp0);
            }
        }
        if (!unit) continue;
        exp_table_[n] = static_cast<int64_t>(e);
        if (e == 0)
            val_table_[n] = {1.0, 0.0};
        else if (2 * e == denom_)
            val_table_[n] = {-1.0, 0.0};
        else
            val_table_[n] = std::polar(1.0, two_pi * double(e) / double(denom_));
    }
}

DirichletCharacter DirichletCharacter::power(uint64_t k) const {
    std::vector<uint64_t> idx(index_.size());
    for (size_t i = 0; i < index_.size(); ++i)
        idx[i] = (__uint128_t)index_[i] * (k % comps_[i].order) % comps_[i].order;
    return DirichletCharacter(q_, std::move(idx));
}

uint64_t DirichletCharacter::conductor() const {
    // Smallest f | q with chi(n)=1 whenever n = 1 (mod f) and gcd(n,q)=1.
    std::vector<uint64_t> divisors;
    for (uint64_t f = 1; f * f <= q_; ++f) {
        if (q_ % f) continue;
        divisors.push_back(f);
        if (f != q_ / f) divisors.push_back(q_ / f);
    }
    std::sort(divisors.begin(), divisors.end());
    for (uint64_t f : divisors) {
        bool induced = true;
        for (uint64_t n = 1 + f; n <= q_; n += f) {
            if (exp_table_[n % q_] < 0) continue;
            if (exp_table_[n % q_] != 0) { induced = false; break; }
        }
        if (induced) return f;
    }
    return q_;
}

std::string DirichletCharacter::to_string() const {
    std::string s = "q=" + std::to_string(q_) + ",index=";
    if (index_.empty()) {
        s += "0";
    } else {
        for (size_t i = 0; i < index_.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(index_[i]);
        }
    }
    return s;
}

DirichletCharacter parse_character(const std::string& s) {
    auto fail = [&](const std::string& why) -> DirichletCharacter {
        throw spec_parse_error("bad character spec '" + s + "': " + why);
    };
    if (s.rfind("q=", 0) != 0) return fail("expected q=<Q>,index=<tuple>");
    size_t comma = s.find(',');
    if (comma == std::string::npos) return fail("missing index=");
    std::string qs = s.substr(2, comma - 2);
    std::string rest = s.substr(comma + 1);
    if (rest.rfind("index=", 0) != 0) return fail("missing index=");
    std::string tuple = rest.substr(6);

    uint64_t q = 0;
    try {
        size_t pos = 0;
        q = std::stoull(qs, &pos);
        if (pos != qs.size()) return fail("bad modulus '" + qs + "'");
    } catch (const std::exception&) {
        return fail("bad modulus '" + qs + "'");
    }
    if (q == 0) return fail("modulus must be positive");

    std::vector<uint64_t> idx;
    if (!tuple.empty()) {
        size_t start = 0;
        while (start <= tuple.size()) {
            size_t dot = tuple.find('.', start);
            std::string tok = tuple.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (tok.empty()) return fail("empty index entry");
            try {
                size_t pos = 0;
                idx.push_back(std::stoull(tok, &pos));
                if (pos != tok.size()) return fail("bad index entry '" + tok + "'");
            } catch (const std::exception&) {
                return fail("bad index entry '" + tok + "'");
            }
            if (dot == std::string::npos) break;
            start = dot + 1;
        }
    }
    size_t ncomp = unit_group_structure(q).size();
    if (ncomp == 0 && idx.size() == 1 && idx[0] == 0) idx.clear(); // canonical "0" for the trivial group
    try {
        return DirichletCharacter(q, std::move(idx));
    } catch (const spec_parse_error&) {
        throw;
    } catch (const std::exception& e) {
        return fail(e.what());
    }
}

} // namespace aet
