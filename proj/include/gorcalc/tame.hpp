#pragma once

#include <string>
#include <vector>

#include "gorcalc/ring.hpp"

namespace gorcalc {

// Atom order is the canonical one used by normal forms.
enum class AtomKind { free_rank_one, fraction_field, cyclic, prufer, omni_prufer };

// One catalog summand: R, K, R/P^e, E(R/P), or the support-finite wildcard
// ⊕_P E(R/P) over all height-1 primes.
class Atom {
public:
    static Atom free_of(const Ring& r);
    static Atom fraction_field(const Ring& r);         // domains only
    static Atom cyclic(const PrimeIdeal& p, int e);    // generated P; e bounded in quotients
    static Atom prufer(const PrimeIdeal& p);           // domains only, height-1 P
    static Atom omni_prufer(const Ring& r);            // domains only

    AtomKind kind() const { return kind_; }
    const Ring& ring() const { return ring_; }
    const PrimeIdeal& prime() const;  // cyclic and prufer atoms
    int exponent() const;             // cyclic atoms

    int compare(const Atom& o) const;
    bool operator==(const Atom& o) const { return compare(o) == 0; }
    bool operator!=(const Atom& o) const { return compare(o) != 0; }
    bool operator<(const Atom& o) const { return compare(o) < 0; }

    std::string str() const;  // R | K | C(p,e) | Pr(p) | Omega1

private:
    Atom(AtomKind k, Ring r) : kind_(k), ring_(std::move(r)) {}
    AtomKind kind_;
    Ring ring_;
    std::optional<PrimeIdeal> prime_;
    int exp_ = 0;
};

// Finite direct sum of atoms in normal form: sorted, multiplicity-merged.
// Normal forms classify: two modules are isomorphic iff equal. To keep that
// exact over quotient rings, a free atom is expanded into its CRT components
// R = ⊕ R/P^(mult P) on construction.
class TameModule {
public:
    TameModule() = default;
    static TameModule zero(const Ring& r);
    TameModule(const Ring& r, const std::vector<std::pair<Atom, int>>& raw);

    const Ring& ring() const { return ring_; }
    const std::vector<std::pair<Atom, int>>& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }
    int total_multiplicity() const;

    TameModule direct_sum(const TameModule& o) const;
    bool operator==(const TameModule& o) const;
    bool operator!=(const TameModule& o) const { return !(*this == o); }

    std::string str() const;  // atoms joined by " (+) ", zero module rendered "0"

private:
    Ring ring_;
    std::vector<std::pair<Atom, int>> atoms_;
};

TameModule normalize(const Ring& r, const std::vector<Atom>& raw);

// Multiplicity of a generated prime in the factored modulus (quotients only);
// the bound E in C(p,e), e ≤ E.
int modulus_multiplicity(const Ring& r, const PrimeIdeal& p);

// Same ring required; equality of normal forms is the classification theorem
// for this class.
bool is_isomorphic(const TameModule& m, const TameModule& n);

// Γ_P: the largest submodule on which some power of P acts as zero, computed
// atomwise. ZeroIdeal fixes everything; a generated prime keeps its own
// Cyclic/Prufer atoms and carves Prufer(P) out of the wildcard.
TameModule gamma(const PrimeIdeal& p, const TameModule& m);

// Every r outside P acts as an isomorphism and every element is P-power
// torsion.
bool has_property_t(const TameModule& m, const PrimeIdeal& p);

// Generated primes occurring in atoms, plus the zero ideal under Free or
// FractionField atoms. The wildcard contributes nothing by itself.
std::vector<PrimeIdeal> support(const TameModule& m);

// Atom / module expression syntax: `R | Q | K | C(p,e) | Z/n | Pr(p) | Omega1`
// with `^k` multiplicities joined by `(+)`; `0` is the zero module.
TameModule parse_tame(const Ring& r, const std::string& text);

}  // namespace gorcalc
