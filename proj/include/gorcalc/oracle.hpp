#pragma once

#include <vector>

#include "gorcalc/matrix.hpp"
#include "gorcalc/tame.hpp"

namespace gorcalc {

// Finitely presented module: rows are relations, columns are generators.
// The brute-force stand-in for a projective resolution truncated at a finite
// stage; everything the oracle computes starts from one of these.
struct Presentation {
    Ring ring;
    Matrix relations;

    Presentation(const Ring& r, Matrix rel);
    static Presentation cyclic(const Ring& r, const RingElement& d);  // R/(d)
    static Presentation free_module(const Ring& r, int rank);
    // Free and Cyclic atoms only; anything else is not finitely presented.
    static Presentation of_tame(const TameModule& m);

    int generators() const { return static_cast<int>(relations.cols()); }
};

// Tor_k by explicit resolution, classified back into tame normal form via
// SNF invariant factors. Over the PIDs the resolution has length one; over a
// quotient ring it is extended degree by degree with kernels computed on the
// covering PID. Completely independent of the closed-form tables.
TameModule fg_tor_oracle(int k, const Presentation& a, const Presentation& b);

// Tor_k(E(R/p), M) as the direct limit of the truncation tower C(p,e) with
// its transition maps. Stabilization is asserted, never assumed; towers that
// fail to settle inside the safety margin raise oracle_budget. The index at
// which the tower settled lands in *stabilized_at when given.
TameModule prufer_tor_oracle(int k, const PrimeIdeal& p, const Presentation& m,
                             int* stabilized_at = nullptr);

// Tor_k(E(R/p), E(R/q)) along the diagonal of the two truncation towers.
TameModule prufer_pair_tor_oracle(int k, const PrimeIdeal& p, const PrimeIdeal& q,
                                  int* stabilized_at = nullptr);

// Enumeration bounds for an exhaustive closed-form vs oracle comparison.
struct OracleGrid {
    Ring ring;
    std::vector<PrimeIdeal> primes;  // generated primes to sweep
    int max_exp = 4;                 // cyclic exponents (clamped over quotients)
    int max_k = 2;
    bool prufer_rows = true;         // include (Pr,C) and (Pr,Pr) pairs on domains
};

struct OracleMismatch {
    int k;
    std::string left, right;        // module expressions
    std::string closed, oracle;     // the two answers
};

struct OracleReport {
    long cases = 0;
    int max_stabilization = 0;
    std::vector<OracleMismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

// Mismatches are data, not errors.
OracleReport oracle_compare(const OracleGrid& grid);

}  // namespace gorcalc
