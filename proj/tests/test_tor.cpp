#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "gen.hpp"
#include "gorcalc/tor.hpp"

using namespace gorcalc;

namespace {

TameModule mod(const Ring& r, const std::string& text) { return parse_tame(r, text); }

std::vector<Ring> catalog() {
    return {Ring::integers(),      Ring::rational_polynomials(), Ring::prime_polynomials(2),
            parse_ring("Z/12"),    parse_ring("Z/360"),          parse_ring("F2[x]/(x^3)")};
}

// E(R/P) for every prime P of the ring, paired with ht(P)
std::vector<std::pair<TameModule, int>> injective_atoms(const Ring& r) {
    std::vector<std::pair<TameModule, int>> out;
    if (r.is_domain()) {
        out.push_back({mod(r, "K"), 0});
        std::vector<PrimeIdeal> hints;
        if (r.descriptor() == "Z")
            for (int p : {2, 3, 5}) hints.push_back(PrimeIdeal::principal(r.from_int(p)));
        else
            for (const char* s : {"x", "x+1"})
                hints.push_back(PrimeIdeal::principal(r.parse_element(s)));
        for (const auto& p : primes_of_height(r, 1, hints))
            out.push_back({TameModule(r, {{std::pair<Atom, int>(Atom::prufer(p), 1)}}), 1});
    } else {
        for (const auto& p : primes_of_height(r, 0))
            out.push_back({TameModule(r, {{Atom::cyclic(p, modulus_multiplicity(r, p)), 1}}), 0});
    }
    return out;
}

}  // namespace

TEST_CASE("tensor: fixed values") {
    Ring z = Ring::integers();
    CHECK(tensor(mod(z, "Pr(2)"), mod(z, "Pr(2)")).is_zero());
    CHECK(tensor(mod(z, "Q"), mod(z, "Q")) == mod(z, "Q"));
    CHECK(tensor(mod(z, "C(2,3)"), mod(z, "C(2,1)")) == mod(z, "C(2,1)"));
    CHECK(tensor(mod(z, "R"), mod(z, "C(5,2) (+) K")) == mod(z, "C(5,2) (+) K"));
    CHECK(tensor(mod(z, "Q"), mod(z, "C(2,1) (+) Pr(3)")).is_zero());
    CHECK(tensor(mod(z, "C(2,1)"), mod(z, "C(3,1)")).is_zero());
    CHECK(tensor(mod(z, "C(2,2)"), mod(z, "Pr(2)")).is_zero());
    CHECK(tensor(mod(z, "Omega1"), mod(z, "R^2")) == mod(z, "Omega1^2"));
    CHECK(tensor(mod(z, "Omega1"), mod(z, "C(2,1) (+) Pr(3) (+) Omega1 (+) Q")).is_zero());
    // bilinearity over multiplicities
    CHECK(tensor(mod(z, "C(2,2)^3"), mod(z, "C(2,1)^2")) == mod(z, "C(2,1)^6"));

    Ring z12 = parse_ring("Z/12");
    CHECK(tensor(mod(z12, "C(2,2)"), mod(z12, "C(2,1)")) == mod(z12, "C(2,1)"));
    CHECK(tensor(mod(z12, "C(2,1)"), mod(z12, "C(3,1)")).is_zero());
    CHECK(tensor(mod(z12, "R"), mod(z12, "R")) == mod(z12, "R"));

    CHECK_THROWS_AS(tensor(mod(z, "R"), mod(z12, "R")), CalcError);
}

TEST_CASE("tor: fixed values") {
    Ring z = Ring::integers();
    CHECK(tor(1, mod(z, "Pr(2)"), mod(z, "Pr(2)")) == mod(z, "Pr(2)"));
    CHECK(tor(1, mod(z, "C(2,2)"), mod(z, "C(2,3)")) == mod(z, "C(2,2)"));
    CHECK(tor(1, mod(z, "C(2,2)"), mod(z, "Pr(2)")) == mod(z, "C(2,2)"));
    CHECK(tor(1, mod(z, "C(2,2)"), mod(z, "Pr(3)")).is_zero());
    CHECK(tor(1, mod(z, "Pr(2)"), mod(z, "Pr(3)")).is_zero());
    CHECK(tor(1, mod(z, "Q"), mod(z, "C(2,1) (+) Pr(2)")).is_zero());
    CHECK(tor(1, mod(z, "R^3"), mod(z, "C(2,1)")).is_zero());
    CHECK(tor(1, mod(z, "Omega1"), mod(z, "C(2,3) (+) Pr(5)")) == mod(z, "C(2,3) (+) Pr(5)"));
    CHECK(tor(1, mod(z, "Omega1"), mod(z, "Omega1")) == mod(z, "Omega1"));
    CHECK(tor(0, mod(z, "C(2,3)"), mod(z, "C(2,1)")) == mod(z, "C(2,1)"));
    for (const char* s : {"R", "Q", "C(2,2)", "Pr(2)", "Omega1", "C(3,1) (+) Pr(2)"})
        for (const char* t : {"C(2,1)", "Pr(2)", "Q (+) C(2,4)"})
            CHECK(tor(2, mod(z, s), mod(z, t)).is_zero());

    Ring z4 = parse_ring("Z/4");
    CHECK(tor(1, mod(z4, "C(2,1)"), mod(z4, "C(2,1)")) == mod(z4, "C(2,1)"));
    CHECK(tor(1, mod(z4, "C(2,2)"), mod(z4, "C(2,2)")).is_zero());
    CHECK(tor(3, mod(z4, "C(2,1)"), mod(z4, "C(2,1)")) == mod(z4, "C(2,1)"));

    Ring z360 = parse_ring("Z/360");
    // E = 3 for p = 2: min(2, 2, 1, 1) = 1
    CHECK(tor(2, mod(z360, "C(2,2)"), mod(z360, "C(2,2)")) == mod(z360, "C(2,1)"));
    CHECK(tor(1, mod(z360, "C(2,2)"), mod(z360, "C(5,1)")).is_zero());

    CHECK_THROWS_AS(tor(-1, mod(z, "R"), mod(z, "R")), CalcError);
}

TEST_CASE("injective hull and cosyzygy: fixed values") {
    Ring z = Ring::integers();
    CHECK(injective_hull(mod(z, "C(2,3)")) == mod(z, "Pr(2)"));
    CHECK(injective_hull(mod(z, "Pr(3)")) == mod(z, "Pr(3)"));
    CHECK(injective_hull(mod(z, "R")) == mod(z, "Q"));
    CHECK(injective_hull(mod(z, "R^2 (+) C(2,1)^3 (+) Omega1")) ==
          mod(z, "Q^2 (+) Pr(2)^3 (+) Omega1"));

    CHECK(cosyzygy(mod(z, "R")) == mod(z, "Omega1"));
    CHECK(cosyzygy(mod(z, "Pr(2)")).is_zero());
    CHECK(cosyzygy(mod(z, "Q (+) Omega1")).is_zero());
    CHECK(cosyzygy(mod(z, "C(3,2)")) == mod(z, "Pr(3)"));

    Ring z4 = parse_ring("Z/4");
    CHECK(injective_hull(mod(z4, "C(2,1)")) == mod(z4, "C(2,2)"));
    CHECK(cosyzygy(mod(z4, "C(2,1)")) == mod(z4, "C(2,1)"));
    CHECK(cosyzygy(mod(z4, "C(2,2)")).is_zero());

    Ring z12 = parse_ring("Z/12");
    CHECK(injective_hull(mod(z12, "C(3,1)")) == mod(z12, "C(3,1)"));
    CHECK(cosyzygy(mod(z12, "R")).is_zero());
}

TEST_CASE("minimal injective resolution of the ring") {
    Ring z = Ring::integers();
    InjectiveResolution rz = min_inj_res_of_ring(z);
    REQUIRE(rz.terms.size() == 2);
    CHECK(rz.terms[0] == mod(z, "Q"));
    CHECK(rz.terms[1] == mod(z, "Omega1"));
    CHECK(rz.str() == "[K, Omega1]");

    Ring qx = Ring::rational_polynomials();
    InjectiveResolution rq = min_inj_res_of_ring(qx);
    REQUIRE(rq.terms.size() == 2);
    CHECK(rq.terms[0] == mod(qx, "K"));
    CHECK(rq.terms[1] == mod(qx, "Omega1"));

    Ring z12 = parse_ring("Z/12");
    InjectiveResolution r12 = min_inj_res_of_ring(z12);
    REQUIRE(r12.terms.size() == 1);
    CHECK(r12.terms[0] == mod(z12, "C(2,2) (+) C(3,1)"));

    for (const Ring& r : catalog()) {
        InjectiveResolution res = min_inj_res_of_ring(r);
        CHECK(static_cast<int>(res.terms.size()) == r.krull_dim() + 1);
    }
}

TEST_CASE("flat dimension probes") {
    Ring z = Ring::integers();
    CHECK(flat_dim_probe(mod(z, "Pr(2)"), {mod(z, "C(2,1)")}) == 1);
    CHECK(flat_dim_probe(mod(z, "Q"), {mod(z, "R"), mod(z, "C(2,1)")}) == 0);
    Ring z12 = parse_ring("Z/12");
    CHECK(flat_dim_probe(mod(z12, "C(2,2)"), {mod(z12, "C(2,1)")}) == 0);
    // witness set without R/P sees nothing at all
    CHECK(flat_dim_probe(mod(z, "Pr(2)"), {mod(z, "C(3,1)")}) == 0);

    CHECK_THROWS_AS(flat_dim_probe(mod(z, "Pr(2)^2"), {mod(z, "C(2,1)")}), CalcError);
    CHECK_THROWS_AS(flat_dim_probe(mod(z, "C(2,1)"), {mod(z, "C(2,1)")}), CalcError);
    CHECK_THROWS_AS(flat_dim_probe(mod(z, "Omega1"), {mod(z, "C(2,1)")}), CalcError);
    CHECK_THROWS_AS(flat_dim_probe(mod(z, "Pr(2)"), {}), CalcError);
    CHECK_THROWS_AS(flat_dim_probe(mod(z12, "C(2,1)"), {mod(z12, "C(2,1)")}), CalcError);
}

TEST_CASE("hom vanishing table") {
    Ring z = Ring::integers();
    auto A = [&](const char* s) {
        TameModule m = mod(z, s);
        REQUIRE(m.atoms().size() == 1);
        return m.atoms()[0].first;
    };
    CHECK(hom_is_zero(A("Pr(2)"), A("Q")));
    CHECK_FALSE(hom_is_zero(A("Q"), A("Pr(2)")));
    CHECK(hom_is_zero(A("Pr(2)"), A("Pr(3)")));
    CHECK_FALSE(hom_is_zero(A("Pr(2)"), A("Pr(2)")));
    CHECK(hom_is_zero(A("Q"), A("C(2,3)")));
    CHECK(hom_is_zero(A("Pr(2)"), A("C(2,3)")));
    CHECK(hom_is_zero(A("C(2,1)"), A("C(3,1)")));
    CHECK_FALSE(hom_is_zero(A("C(2,1)"), A("C(2,3)")));
    CHECK_FALSE(hom_is_zero(A("C(2,1)"), A("Pr(2)")));
    CHECK(hom_is_zero(A("C(2,1)"), A("Pr(3)")));
    CHECK(hom_is_zero(A("C(2,1)"), A("R")));
    CHECK(hom_is_zero(A("C(2,1)"), A("Q")));
    CHECK(hom_is_zero(A("Pr(2)"), A("R")));
    CHECK(hom_is_zero(A("Q"), A("R")));
    CHECK_FALSE(hom_is_zero(A("Q"), A("Q")));
    for (const char* s : {"R", "Q", "C(2,1)", "Pr(2)", "Omega1"})
        CHECK_FALSE(hom_is_zero(A("R"), A(s)));
    CHECK_FALSE(hom_is_zero(A("C(2,1)"), A("Omega1")));
    CHECK_FALSE(hom_is_zero(A("Pr(2)"), A("Omega1")));
    CHECK_FALSE(hom_is_zero(A("Omega1"), A("Pr(2)")));
    CHECK_FALSE(hom_is_zero(A("Omega1"), A("Omega1")));
    CHECK(hom_is_zero(A("Omega1"), A("Q")));
    CHECK(hom_is_zero(A("Omega1"), A("C(2,3)")));
    CHECK(hom_is_zero(A("Omega1"), A("R")));

    Ring z12 = parse_ring("Z/12");
    auto B = [&](const char* s) { return mod(z12, s).atoms()[0].first; };
    CHECK(hom_is_zero(B("C(2,1)"), B("C(3,1)")));
    CHECK_FALSE(hom_is_zero(B("C(2,1)"), B("C(2,2)")));
    // R itself has 2-torsion, so Hom(C(2,1), R) ≠ 0 over Z/12
    CHECK_FALSE(hom_is_zero(B("C(2,1)"), Atom::free_of(z12)));

    // Hom(S,T) = 0 whenever S has t(P), T has t(Q), and P ⊄ Q
    for (const auto& [e_p, hp] : injective_atoms(z))
        for (const auto& [e_q, hq] : injective_atoms(z)) {
            const Atom& s = e_p.atoms()[0].first;
            const Atom& t = e_q.atoms()[0].first;
            bool p_in_q = (hp == 0) || (hp == hq && s.kind() == t.kind() &&
                                        (s.kind() != AtomKind::prufer || s.prime() == t.prime()));
            if (!p_in_q) CHECK(hom_is_zero(s, t));
        }
}

TEST_CASE("Tor of injective hulls vanishes off the diagonal") {
    for (const Ring& r : catalog()) {
        auto atoms = injective_atoms(r);
        for (const auto& [ep, hp] : atoms)
            for (const auto& [eq, hq] : atoms)
                for (int k = 0; k <= r.krull_dim() + 1; ++k) {
                    TameModule t = tor(k, ep, eq);
                    if (ep == eq && k == hp)
                        CHECK(t == ep);
                    else
                        CHECK(t.is_zero());
                }
    }
}

TEST_CASE("tor vanishes above the flat dimension of the hull") {
    std::mt19937_64 rng(0xF1A7D1);
    for (const Ring& r : catalog()) {
        auto pool = testgen::atom_pool(r);
        for (const auto& [ep, hp] : injective_atoms(r))
            for (int i = 0; i < 300; ++i) {
                TameModule m = testgen::random_tame(r, pool, rng);
                for (int k = hp + 1; k <= r.krull_dim() + 2; ++k)
                    CHECK(tor(k, ep, m).is_zero());
            }
    }
}

TEST_CASE("commutativity and additivity: 10^4 random pairs") {
    std::mt19937_64 rng(0xF1A7D2);
    auto rings = catalog();
    std::vector<std::vector<Atom>> pools;
    for (const Ring& r : rings) pools.push_back(testgen::atom_pool(r));
    for (int iter = 0; iter < 10000; ++iter) {
        const Ring& r = rings[iter % rings.size()];
        const auto& pool = pools[iter % rings.size()];
        TameModule m = testgen::random_tame(r, pool, rng);
        TameModule n = testgen::random_tame(r, pool, rng);
        TameModule m2 = testgen::random_tame(r, pool, rng, 2);
        CHECK(tensor(m, n) == tensor(n, m));
        int k = 1 + static_cast<int>(rng() % 2);
        CHECK(tor(k, m, n) == tor(k, n, m));
        CHECK(tensor(m.direct_sum(m2), n) == tensor(m, n).direct_sum(tensor(m2, n)));
        CHECK(tor(k, m.direct_sum(m2), n) == tor(k, m, n).direct_sum(tor(k, m2, n)));
    }
}

TEST_CASE("property t propagates through tor, hulls, and cosyzygies") {
    std::mt19937_64 rng(0xF1A7D3);
    auto rings = catalog();
    std::vector<std::vector<Atom>> pools;
    for (const Ring& r : rings) pools.push_back(testgen::atom_pool(r));
    int cases = 0;
    for (int iter = 0; iter < 4000; ++iter) {
        const Ring& r = rings[iter % rings.size()];
        const auto& pool = pools[iter % rings.size()];
        // a random module supported at one prime
        std::vector<PrimeIdeal> primes;
        for (const Atom& a : pool)
            if (a.kind() == AtomKind::cyclic || a.kind() == AtomKind::prufer)
                primes.push_back(a.prime());
        if (r.is_domain()) primes.push_back(PrimeIdeal::zero_ideal(r));
        const PrimeIdeal& p = primes[rng() % primes.size()];
        std::vector<std::pair<Atom, int>> picked;
        if (p.is_zero_ideal()) {
            picked.emplace_back(Atom::fraction_field(r), 1 + static_cast<int>(rng() % 3));
        } else {
            for (const Atom& a : pool)
                if ((a.kind() == AtomKind::cyclic || a.kind() == AtomKind::prufer) &&
                    a.prime() == p && rng() % 2)
                    picked.emplace_back(a, 1 + static_cast<int>(rng() % 3));
        }
        TameModule s(r, picked);
        if (!has_property_t(s, p)) continue;  // empty draw is fine: 0 has t(P)
        ++cases;
        TameModule n = testgen::random_tame(r, pool, rng);
        for (int k = 0; k <= 2; ++k) CHECK(has_property_t(tor(k, s, n), p));
        CHECK(has_property_t(injective_hull(s), p));
        CHECK(has_property_t(cosyzygy(s), p));
    }
    CHECK(cases > 3000);
}

TEST_CASE("hull idempotence and cosyzygy of injectives: 10^4 cases") {
    std::mt19937_64 rng(0xF1A7D4);
    auto rings = catalog();
    std::vector<std::vector<Atom>> pools;
    for (const Ring& r : rings) pools.push_back(testgen::atom_pool(r));
    for (int iter = 0; iter < 10000; ++iter) {
        const Ring& r = rings[iter % rings.size()];
        TameModule m = testgen::random_tame(r, pools[iter % rings.size()], rng);
        TameModule e = injective_hull(m);
        CHECK(injective_hull(e) == e);
        CHECK(cosyzygy(e).is_zero());
        // E(M ⊕ N) = E(M) ⊕ E(N) is structural; spot-check the formula instead:
        // cosyzygy leaves the same prime support unless the atom was free
        for (const auto& [a, mult] : cosyzygy(m).atoms())
            CHECK(a.kind() != AtomKind::free_rank_one);
    }
}

TEST_CASE("fault hooks flip exactly one table row") {
    Ring z = Ring::integers();
    Ring z4 = parse_ring("Z/4");
    CHECK(fault::table_rows().size() == 15);
    CHECK(fault::active().empty());
    CHECK_THROWS_AS(fault::inject("NOT_A_ROW"), CalcError);

    struct Probe {
        std::string row;
        std::function<TameModule()> eval;
    };
    std::vector<Probe> probes = {
        {"D_TENSOR_CC_SAME", [&] { return tensor(mod(z, "C(2,2)"), mod(z, "C(2,3)")); }},
        {"D_TENSOR_CC_CROSS", [&] { return tensor(mod(z, "C(2,2)"), mod(z, "C(3,1)")); }},
        {"D_TENSOR_CPR", [&] { return tensor(mod(z, "C(2,2)"), mod(z, "Pr(2)")); }},
        {"D_TENSOR_PRPR", [&] { return tensor(mod(z, "Pr(2)"), mod(z, "Pr(2)")); }},
        {"D_TOR1_CC_SAME", [&] { return tor(1, mod(z, "C(2,2)"), mod(z, "C(2,3)")); }},
        {"D_TOR1_CC_CROSS", [&] { return tor(1, mod(z, "C(2,2)"), mod(z, "C(3,1)")); }},
        {"D_TOR1_CPR_SAME", [&] { return tor(1, mod(z, "C(2,2)"), mod(z, "Pr(2)")); }},
        {"D_TOR1_CPR_CROSS", [&] { return tor(1, mod(z, "C(2,2)"), mod(z, "Pr(3)")); }},
        {"D_TOR1_PRPR_SAME", [&] { return tor(1, mod(z, "Pr(2)"), mod(z, "Pr(2)")); }},
        {"D_TOR1_PRPR_CROSS", [&] { return tor(1, mod(z, "Pr(2)"), mod(z, "Pr(3)")); }},
        {"D_TORK_ZERO", [&] { return tor(2, mod(z, "C(2,2)"), mod(z, "C(2,3)")); }},
        {"A_TENSOR_CC_SAME", [&] { return tensor(mod(z4, "C(2,1)"), mod(z4, "C(2,1)")); }},
        {"A_TENSOR_CC_CROSS",
         [&] {
             Ring z12 = parse_ring("Z/12");
             return tensor(mod(z12, "C(2,1)"), mod(z12, "C(3,1)"));
         }},
        {"A_TORK_CC_SAME", [&] { return tor(1, mod(z4, "C(2,1)"), mod(z4, "C(2,1)")); }},
        {"A_TORK_CC_CROSS",
         [&] {
             Ring z12 = parse_ring("Z/12");
             return tor(1, mod(z12, "C(2,1)"), mod(z12, "C(3,1)"));
         }},
    };
    REQUIRE(probes.size() == fault::table_rows().size());
    for (const Probe& p : probes) {
        TameModule baseline = p.eval();
        fault::inject(p.row);
        CHECK(fault::active() == p.row);
        CHECK(p.eval() != baseline);
        fault::clear();
        CHECK(p.eval() == baseline);
    }
    // a corrupted row perturbs nothing outside itself
    fault::inject("D_TOR1_CC_SAME");
    CHECK(tensor(mod(z, "C(2,2)"), mod(z, "C(2,3)")) == mod(z, "C(2,2)"));
    CHECK(tor(1, mod(z, "C(2,2)"), mod(z, "Pr(2)")) == mod(z, "C(2,2)"));
    fault::clear();
}
