#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gorcalc/error.hpp"

namespace gorcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Ring;
class RingElement;

// Dense polynomial payloads; coefficient of x^i at index i, no trailing zeros.
struct QPoly {
    std::vector<Rat> c;
    bool operator==(const QPoly& o) const { return c == o.c; }
};
struct FpPoly {
    std::int64_t p = 0;
    std::vector<std::int64_t> c;
    bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
};

enum class RingKind {
    integers,            // Z
    polynomials,         // Q[x] or F_p[x]
    integer_quotient,    // Z/m, m >= 2
    polynomial_quotient  // Q[x]/(f) or F_p[x]/(f), f monic of degree >= 1
};

enum class BaseField { rationals, prime_field };

struct RingData;

// Immutable value handle for a catalog ring. Every member of the catalog is
// Gorenstein with Krull dimension 1 (the two domain kinds) or 0 (the quotients).
class Ring {
public:
    Ring() = default;

    static Ring integers();
    static Ring rational_polynomials();
    static Ring prime_polynomials(std::int64_t p);
    static Ring integers_mod(const Int& m);
    // Quotient of a polynomial ring by a monic modulus. Over a prime field the
    // modulus is factored here; over the rationals `supplied_factors` is
    // mandatory and is validated by re-multiplication.
    static Ring polynomials_mod(const Ring& cover, const RingElement& modulus,
                                const std::vector<std::pair<RingElement, int>>* supplied_factors);

    bool valid() const { return d_ != nullptr; }
    RingKind kind() const;
    int krull_dim() const;
    bool is_domain() const;
    bool is_artinian() const { return !is_domain(); }
    BaseField base_field() const;  // polynomial kinds
    std::int64_t characteristic_p() const;

    // The covering PID: Z for Z/m, the polynomial ring for its quotients,
    // the ring itself for the domain kinds.
    Ring cover() const;
    bool is_pid() const { return is_domain(); }

    const RingElement& modulus() const;  // cover element; quotient kinds only
    const std::vector<std::pair<RingElement, int>>& factored_modulus() const;

    const std::string& descriptor() const;
    bool operator==(const Ring& o) const;
    bool operator!=(const Ring& o) const { return !(*this == o); }

    RingElement zero() const;
    RingElement one() const;
    RingElement from_int(const Int& n) const;
    // Element literal: decimal integer, or a polynomial in x (e.g. "x^3-2*x+1").
    RingElement parse_element(const std::string& text) const;

private:
    explicit Ring(std::shared_ptr<const RingData> d) : d_(std::move(d)) {}
    std::shared_ptr<const RingData> d_;
    friend struct RingData;
};

// Exact element of a catalog ring. Residues are stored reduced modulo the ring
// modulus; polynomial payloads carry no trailing zero coefficients.
class RingElement {
public:
    RingElement() = default;
    RingElement(Ring ring, std::variant<Int, QPoly, FpPoly> rep);

    const Ring& ring() const { return ring_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    bool operator==(const RingElement& o) const;
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    // Total order used for canonical forms: integers by value, polynomials by
    // degree then coefficients from the top. Elements must share a ring.
    int compare(const RingElement& o) const;
    bool operator<(const RingElement& o) const { return compare(o) < 0; }

    // Euclidean structure; PID kinds only.
    std::pair<RingElement, RingElement> divmod(const RingElement& d) const;
    RingElement divexact(const RingElement& d) const;  // fails if not divisible
    bool divides(const RingElement& other) const;      // this | other

    // Writes *this = unit * normalized with normalized positive / monic.
    std::pair<RingElement, RingElement> unit_normal() const;  // (unit, normalized)

    RingElement pow(int e) const;

    // Lift to the covering PID (identity on domains) and back.
    RingElement lift() const;
    RingElement reduce_into(const Ring& quotient) const;

    int poly_degree() const;  // -1 for zero polynomial; fails on integer kinds

    std::string str() const;

    const std::variant<Int, QPoly, FpPoly>& rep() const { return rep_; }

private:
    Ring ring_;
    std::variant<Int, QPoly, FpPoly> rep_;
};

RingElement gcd(const RingElement& a, const RingElement& b);  // PID kinds, unit-normalized

// Prime ideal of a catalog ring: the zero ideal of a domain, or a principal
// ideal with a normalized irreducible generator. Height is 0 for the zero
// ideal and for primes of Artinian quotients, 1 for principal primes of the
// dimension-1 domains.
class PrimeIdeal {
public:
    PrimeIdeal() = default;
    static PrimeIdeal zero_ideal(const Ring& r);
    // Validates irreducibility (and, over quotient rings, divisibility of the
    // modulus); the generator is stored unit-normalized.
    static PrimeIdeal principal(const RingElement& gen);

    bool is_zero_ideal() const { return !gen_.has_value(); }
    const RingElement& generator() const;
    int height() const { return height_; }
    const Ring& ring() const { return ring_; }

    bool operator==(const PrimeIdeal& o) const;
    bool operator!=(const PrimeIdeal& o) const { return !(*this == o); }
    int compare(const PrimeIdeal& o) const;  // zero ideal first, then generator order
    bool operator<(const PrimeIdeal& o) const { return compare(o) < 0; }

    bool contains(const RingElement& r) const;  // membership r in P

    std::string str() const;

private:
    Ring ring_;
    std::optional<RingElement> gen_;
    int height_ = 0;
};

struct Factorization {
    RingElement unit;
    std::vector<std::pair<PrimeIdeal, int>> primes;  // sorted by prime
};

// --- ring-level operations ---

// Descriptor grammar: Z | Z/<m> | Q[x] | F<p>[x] | F<p>[x]/(<poly>) |
// Q[x]/(<poly>; <factored form>).
Ring parse_ring(const std::string& text);

// Height-k primes. X_1 of a domain is infinite and is materialized only on the
// demanded support, so for (domain, k=1) this echoes the height-1 members of
// `support_hint`, deduplicated and sorted.
std::vector<PrimeIdeal> primes_of_height(const Ring& r, int k,
                                         const std::vector<PrimeIdeal>& support_hint = {});

// True iff multiplication by r is injective on R.
bool is_regular(const Ring& r, const RingElement& x);

// Complete factorization of a nonzero element into catalog primes times a unit.
Factorization factor(const Ring& r, const RingElement& x);

bool is_irreducible(const Ring& pid, const RingElement& x);

// Multiplicity of prime p in x (both over the same PID); x nonzero.
int valuation(const RingElement& x, const RingElement& p);

}  // namespace gorcalc
