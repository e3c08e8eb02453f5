#include "gorcalc/tame.hpp"

#include <algorithm>
#include <map>

namespace gorcalc {

int modulus_multiplicity(const Ring& r, const PrimeIdeal& p) {
    for (const auto& [q, mult] : r.factored_modulus())
        if (PrimeIdeal::principal(q.reduce_into(r)) == p) return mult;
    fail(Errc::internal, "prime does not divide the modulus");
}

Atom Atom::free_of(const Ring& r) { return Atom(AtomKind::free_rank_one, r); }

Atom Atom::fraction_field(const Ring& r) {
    if (!r.is_domain()) fail(Errc::domain_error, "fraction-field atom over a non-domain");
    return Atom(AtomKind::fraction_field, r);
}

Atom Atom::cyclic(const PrimeIdeal& p, int e) {
    if (p.is_zero_ideal()) fail(Errc::domain_error, "cyclic atom needs a generated prime");
    if (e < 1) fail(Errc::domain_error, "cyclic exponent must be positive");
    const Ring& r = p.ring();
    if (r.is_artinian()) {
        int mult = modulus_multiplicity(r, p);
        if (e > mult)
            fail(Errc::domain_error, "exponent " + std::to_string(e) + " exceeds multiplicity " +
                                         std::to_string(mult) + " of " + p.str() + " in the modulus");
    }
    Atom a(AtomKind::cyclic, r);
    a.prime_ = p;
    a.exp_ = e;
    return a;
}

Atom Atom::prufer(const PrimeIdeal& p) {
    if (!p.ring().is_domain()) fail(Errc::domain_error, "Prufer atom over a non-domain");
    if (p.is_zero_ideal())
        fail(Errc::domain_error, "Prufer atom needs a height-1 prime; E(R/(0)) is the atom K");
    Atom a(AtomKind::prufer, p.ring());
    a.prime_ = p;
    return a;
}

Atom Atom::omni_prufer(const Ring& r) {
    if (!r.is_domain()) fail(Errc::domain_error, "Omega1 atom over a non-domain");
    return Atom(AtomKind::omni_prufer, r);
}

const PrimeIdeal& Atom::prime() const {
    if (!prime_) fail(Errc::precondition, "atom carries no prime");
    return *prime_;
}

int Atom::exponent() const {
    if (kind_ != AtomKind::cyclic) fail(Errc::precondition, "atom carries no exponent");
    return exp_;
}

int Atom::compare(const Atom& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    switch (kind_) {
        case AtomKind::cyclic: {
            int c = prime_->compare(*o.prime_);
            if (c != 0) return c;
            return exp_ < o.exp_ ? -1 : (exp_ == o.exp_ ? 0 : 1);
        }
        case AtomKind::prufer:
            return prime_->compare(*o.prime_);
        default:
            return 0;
    }
}

std::string Atom::str() const {
    switch (kind_) {
        case AtomKind::free_rank_one:
            return "R";
        case AtomKind::fraction_field:
            return "K";
        case AtomKind::cyclic:
            return "C(" + prime_->generator().str() + "," + std::to_string(exp_) + ")";
        case AtomKind::prufer:
            return "Pr(" + prime_->generator().str() + ")";
        case AtomKind::omni_prufer:
            return "Omega1";
    }
    fail(Errc::internal, "bad atom kind");
}

TameModule TameModule::zero(const Ring& r) { return TameModule(r, {}); }

TameModule::TameModule(const Ring& r, const std::vector<std::pair<Atom, int>>& raw) : ring_(r) {
    if (!r.valid()) fail(Errc::precondition, "module needs a ring");
    std::vector<std::pair<Atom, int>> flat;
    for (const auto& [a, k] : raw) {
        if (k <= 0) fail(Errc::domain_error, "atom multiplicity must be positive");
        if (a.ring() != r) fail(Errc::domain_error, "atom from a different ring");
        if (a.kind() == AtomKind::free_rank_one && r.is_artinian()) {
            // R = ⊕ R/P^(mult P): keep normal forms classifying.
            for (const auto& [q, mult] : r.factored_modulus())
                flat.emplace_back(Atom::cyclic(PrimeIdeal::principal(q.reduce_into(r)), mult), k);
        } else {
            flat.emplace_back(a, k);
        }
    }
    std::sort(flat.begin(), flat.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [a, k] : flat) {
        if (!atoms_.empty() && atoms_.back().first == a) atoms_.back().second += k;
        else atoms_.emplace_back(a, k);
    }
}

int TameModule::total_multiplicity() const {
    int n = 0;
    for (const auto& [a, k] : atoms_) {
        (void)a;
        n += k;
    }
    return n;
}

TameModule TameModule::direct_sum(const TameModule& o) const {
    if (ring_ != o.ring_) fail(Errc::domain_error, "direct sum across rings");
    std::vector<std::pair<Atom, int>> all = atoms_;
    all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
    return TameModule(ring_, all);
}

bool TameModule::operator==(const TameModule& o) const {
    if (ring_ != o.ring_) return false;
    if (atoms_.size() != o.atoms_.size()) return false;
    for (size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].second != o.atoms_[i].second || atoms_[i].first != o.atoms_[i].first)
            return false;
    return true;
}

std::string TameModule::str() const {
    if (atoms_.empty()) return "0";
    std::string s;
    for (const auto& [a, k] : atoms_) {
        if (!s.empty()) s += " (+) ";
        s += a.str();
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s;
}

TameModule normalize(const Ring& r, const std::vector<Atom>& raw) {
    std::vector<std::pair<Atom, int>> pairs;
    pairs.reserve(raw.size());
    for (const auto& a : raw) pairs.emplace_back(a, 1);
    return TameModule(r, pairs);
}

bool is_isomorphic(const TameModule& m, const TameModule& n) {
    if (m.ring() != n.ring()) fail(Errc::domain_error, "isomorphism test across rings");
    return m == n;
}

TameModule gamma(const PrimeIdeal& p, const TameModule& m) {
    if (p.ring() != m.ring()) fail(Errc::domain_error, "prime from a different ring");
    if (p.is_zero_ideal()) return m;  // (0)^n x = 0 for every x
    std::vector<std::pair<Atom, int>> kept;
    for (const auto& [a, k] : m.atoms()) {
        switch (a.kind()) {
            case AtomKind::cyclic:
            case AtomKind::prufer:
                if (a.prime() == p) kept.emplace_back(a, k);
                break;
            case AtomKind::omni_prufer:
                kept.emplace_back(Atom::prufer(p), k);
                break;
            default:
                break;
        }
    }
    return TameModule(m.ring(), kept);
}

bool has_property_t(const TameModule& m, const PrimeIdeal& p) {
    if (p.ring() != m.ring()) fail(Errc::domain_error, "prime from a different ring");
    for (const auto& [a, k] : m.atoms()) {
        (void)k;
        if (p.is_zero_ideal()) {
            if (a.kind() != AtomKind::fraction_field) return false;
        } else {
            bool torsion_at_p = (a.kind() == AtomKind::cyclic || a.kind() == AtomKind::prufer) &&
                                a.prime() == p;
            if (!torsion_at_p) return false;
        }
    }
    return true;
}

std::vector<PrimeIdeal> support(const TameModule& m) {
    std::vector<PrimeIdeal> out;
    for (const auto& [a, k] : m.atoms()) {
        (void)k;
        switch (a.kind()) {
            case AtomKind::free_rank_one:
            case AtomKind::fraction_field:
                out.push_back(PrimeIdeal::zero_ideal(m.ring()));
                break;
            case AtomKind::cyclic:
            case AtomKind::prufer:
                out.push_back(a.prime());
                break;
            case AtomKind::omni_prufer:
                break;  // support-finite wildcard: contributes nothing by itself
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------- module expression parsing ----------

namespace {

std::string strip_ws(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    return t;
}

// Sugar: R/(n) over an integer ring, decomposed into primary cyclics.
std::vector<std::pair<Atom, int>> integer_quotient_atoms(const Ring& r, const Int& n) {
    if (r.kind() != RingKind::integers && r.kind() != RingKind::integer_quotient)
        fail(Errc::parse_error, "Z/n atom sugar needs an integer ring");
    if (r.kind() == RingKind::integers && n < 1)
        fail(Errc::parse_error, "Z/n needs n >= 1 over Z");
    RingElement x = r.from_int(n);
    std::vector<std::pair<Atom, int>> out;
    if (x.is_zero()) {
        if (r.is_domain()) fail(Errc::parse_error, "Z/0 is not a tame atom");
        out.emplace_back(Atom::free_of(r), 1);  // R/(0) = R
        return out;
    }
    for (const auto& [p, e] : factor(r, x).primes) out.emplace_back(Atom::cyclic(p, e), 1);
    return out;  // units contribute nothing: R/R = 0
}

std::vector<std::pair<Atom, int>> parse_atom_token(const Ring& r, const std::string& tok) {
    if (tok == "R") return {{Atom::free_of(r), 1}};
    if (tok == "Q" || tok == "K") return {{Atom::fraction_field(r), 1}};
    if (tok == "Omega1") return {{Atom::omni_prufer(r), 1}};
    if (tok.rfind("C(", 0) == 0 && tok.back() == ')') {
        std::string inner = tok.substr(2, tok.size() - 3);
        size_t comma = inner.rfind(',');
        if (comma == std::string::npos) fail(Errc::parse_error, "cyclic atom needs C(p,e)");
        std::string ps = inner.substr(0, comma), es = inner.substr(comma + 1);
        int e = 0;
        try {
            size_t used = 0;
            e = std::stoi(es, &used);
            if (used != es.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail(Errc::parse_error, "bad exponent '" + es + "' in " + tok);
        }
        return {{Atom::cyclic(PrimeIdeal::principal(r.parse_element(ps)), e), 1}};
    }
    if (tok.rfind("Pr(", 0) == 0 && tok.back() == ')') {
        std::string inner = tok.substr(3, tok.size() - 4);
        return {{Atom::prufer(PrimeIdeal::principal(r.parse_element(inner))), 1}};
    }
    if (tok.rfind("Z/", 0) == 0) {
        const std::string num = tok.substr(2);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            fail(Errc::parse_error, "bad atom '" + tok + "'");
        return integer_quotient_atoms(r, Int(num));
    }
    fail(Errc::parse_error, "unknown atom '" + tok + "'");
}

}  // namespace

TameModule parse_tame(const Ring& r, const std::string& text) {
    std::string s = strip_ws(text);
    if (s.empty()) fail(Errc::parse_error, "empty module expression");
    if (s == "0") return TameModule::zero(r);
    std::vector<std::pair<Atom, int>> acc;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t next = s.find("(+)", pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty()) fail(Errc::parse_error, "empty summand in '" + text + "'");
        int mult = 1;
        size_t close = tok.rfind(')');
        size_t caret = tok.find('^', close == std::string::npos ? 0 : close);
        if (caret != std::string::npos) {
            std::string ks = tok.substr(caret + 1);
            try {
                size_t used = 0;
                mult = std::stoi(ks, &used);
                if (used != ks.size() || mult < 1) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail(Errc::parse_error, "bad multiplicity '" + ks + "' in '" + tok + "'");
            }
            tok = tok.substr(0, caret);
        }
        for (auto& [a, k] : parse_atom_token(r, tok)) acc.emplace_back(a, k * mult);
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return TameModule(r, acc);
}

}  // namespace gorcalc
