#pragma once

#include <vector>

#include "gorcalc/tame.hpp"

namespace gorcalc {

// Minimal injective resolution 0 → R → E⁰ → … → Eⁿ → 0 with n = krull_dim.
// Each Eᵏ decomposes over the primes of height exactly k.
struct InjectiveResolution {
    Ring ring;
    std::vector<TameModule> terms;
    std::string str() const;
};

// Bilinear extension of the closed-form atom tables. Everything here is a
// pure function of normal forms; no resolutions are computed (the oracle
// module exists to double-check these tables on finitely generated input).
TameModule tensor(const TameModule& m, const TameModule& n);
TameModule tor(int k, const TameModule& m, const TameModule& n);

TameModule injective_hull(const TameModule& m);
TameModule cosyzygy(const TameModule& m);  // E(M)/M, atomwise

InjectiveResolution min_inj_res_of_ring(const Ring& r);

// Witness-based flat dimension: max k with tor(k, e, m) ≠ 0 over the probes.
// e must be a single injective hull E(R/P); probes must be nonempty.
int flat_dim_probe(const TameModule& e, const std::vector<TameModule>& probes);

// True iff every homomorphism a → b is zero.
bool hom_is_zero(const Atom& a, const Atom& b);

// Mutation hooks for the dispatch rows of the tensor/Tor tables. Injecting a
// row id makes exactly that row return a wrong value, so the oracle sweep
// must light up; used to prove the acceptance battery actually covers the
// table. Not synchronized: set before any parallel section.
namespace fault {
const std::vector<std::string>& table_rows();
void inject(const std::string& row);  // throws domain_error on unknown id
void clear();
const std::string& active();
}  // namespace fault

}  // namespace gorcalc
