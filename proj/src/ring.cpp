#include "gorcalc/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gorcalc {

namespace {

// ---------- small modular arithmetic over a prime p (int64 coefficients) ----------

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    return a;
}

std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = mod_reduce(a, p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::swap(t, newt);
        newt -= q * t;
        std::swap(r, newr);
        newr -= q * r;
    }
    if (r != 1) fail(Errc::domain_error, "element not invertible mod " + std::to_string(p));
    return mod_reduce(t, p);
}

// ---------- dense polynomial kernels ----------

template <class C>
void trim(std::vector<C>& v) {
    while (!v.empty() && v.back() == C(0)) v.pop_back();
}

template <class C>
int deg(const std::vector<C>& v) {
    return static_cast<int>(v.size()) - 1;
}

std::vector<Rat> qp_add(const std::vector<Rat>& a, const std::vector<Rat>& b, int sign) {
    std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += sign > 0 ? b[i] : -b[i];
    trim(r);
    return r;
}

std::vector<Rat> qp_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Division with remainder; divisor nonzero. Field coefficients, always exact.
std::pair<std::vector<Rat>, std::vector<Rat>> qp_divmod(std::vector<Rat> a,
                                                        const std::vector<Rat>& b) {
    if (b.empty()) fail(Errc::domain_error, "polynomial division by zero");
    std::vector<Rat> q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    const Rat lead = b.back();
    while (a.size() >= b.size()) {
        Rat c = a.back() / lead;
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
        if (a.empty()) break;
        if (a.size() > shift + b.size() - 1) fail(Errc::internal, "polynomial division stalled");
    }
    trim(q);
    return {q, a};
}

std::vector<std::int64_t> fp_add(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b, int sign, std::int64_t p) {
    std::vector<std::int64_t> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = mod_reduce(r[i] + (sign > 0 ? b[i] : -b[i]), p);
    trim(r);
    return r;
}

std::vector<std::int64_t> fp_mul(const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_reduce(r[i + j] + mod_mul(a[i], b[j], p), p);
    trim(r);
    return r;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> fp_divmod(
    std::vector<std::int64_t> a, const std::vector<std::int64_t>& b, std::int64_t p) {
    if (b.empty()) fail(Errc::domain_error, "polynomial division by zero");
    std::vector<std::int64_t> q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    const std::int64_t inv = mod_inv(b.back(), p);
    while (a.size() >= b.size()) {
        std::int64_t c = mod_mul(a.back(), inv, p);
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_reduce(a[shift + i] - mod_mul(c, b[i], p), p);
        trim(a);
        if (a.empty()) break;
        if (a.size() > shift + b.size() - 1) fail(Errc::internal, "polynomial division stalled");
    }
    trim(q);
    return {q, a};
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

template <class C>
std::string coef_str(const C& c) {
    if constexpr (std::is_same_v<C, Rat>) return rat_str(c);
    else return std::to_string(c);
}

// Canonical polynomial rendering, highest degree first: "x^3-2*x+1".
template <class C>
std::string poly_str(const std::vector<C>& v) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(v); i >= 0; --i) {
        C c = v[static_cast<size_t>(i)];
        if (c == C(0)) continue;
        std::string cs = coef_str(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (first) {
            if (neg) os << '-';
            first = false;
        } else {
            os << (neg ? '-' : '+');
        }
        if (i == 0) {
            os << cs;
        } else {
            if (cs != "1") os << cs << '*';
            os << 'x';
            if (i > 1) os << '^' << i;
        }
    }
    if (first) return "0";
    return os.str();
}

}  // namespace

// ---------- ring payload ----------

struct RingData {
    RingKind kind;
    BaseField field = BaseField::rationals;
    std::int64_t char_p = 0;
    int krull_dim = 1;
    std::shared_ptr<const RingData> cover;                      // quotient kinds
    std::unique_ptr<RingElement> modulus;                       // cover element
    std::vector<std::pair<RingElement, int>> factored_modulus;  // cover elements
    std::string descriptor;

    static Ring wrap(std::shared_ptr<const RingData> d) { return Ring(std::move(d)); }
};

RingKind Ring::kind() const { return d_->kind; }
int Ring::krull_dim() const { return d_->krull_dim; }
bool Ring::is_domain() const {
    return d_->kind == RingKind::integers || d_->kind == RingKind::polynomials;
}
BaseField Ring::base_field() const { return d_->field; }
std::int64_t Ring::characteristic_p() const { return d_->char_p; }

Ring Ring::cover() const {
    if (is_domain()) return *this;
    return RingData::wrap(d_->cover);
}

const RingElement& Ring::modulus() const {
    if (is_domain()) fail(Errc::precondition, "domains have no modulus");
    return *d_->modulus;
}

const std::vector<std::pair<RingElement, int>>& Ring::factored_modulus() const {
    if (is_domain()) fail(Errc::precondition, "domains have no factored modulus");
    return d_->factored_modulus;
}

const std::string& Ring::descriptor() const { return d_->descriptor; }
bool Ring::operator==(const Ring& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->descriptor == o.d_->descriptor;
}

RingElement Ring::zero() const { return from_int(0); }
RingElement Ring::one() const { return from_int(1); }

RingElement Ring::from_int(const Int& n) const {
    switch (kind()) {
        case RingKind::integers:
        case RingKind::integer_quotient:
            return RingElement(*this, n);
        case RingKind::polynomials:
        case RingKind::polynomial_quotient:
            if (d_->field == BaseField::rationals) {
                QPoly q;
                if (n != 0) q.c.assign(1, Rat(n));
                return RingElement(*this, std::move(q));
            } else {
                FpPoly f;
                f.p = d_->char_p;
                std::int64_t v = mod_reduce(static_cast<std::int64_t>(n % d_->char_p), d_->char_p);
                if (v != 0) f.c.assign(1, v);
                return RingElement(*this, std::move(f));
            }
    }
    fail(Errc::internal, "bad ring kind");
}

// ---------- constructors ----------

Ring Ring::integers() {
    static std::shared_ptr<const RingData> d = [] {
        auto r = std::make_shared<RingData>();
        r->kind = RingKind::integers;
        r->krull_dim = 1;
        r->descriptor = "Z";
        return r;
    }();
    return RingData::wrap(d);
}

Ring Ring::rational_polynomials() {
    static std::shared_ptr<const RingData> d = [] {
        auto r = std::make_shared<RingData>();
        r->kind = RingKind::polynomials;
        r->field = BaseField::rationals;
        r->krull_dim = 1;
        r->descriptor = "Q[x]";
        return r;
    }();
    return RingData::wrap(d);
}

Ring Ring::prime_polynomials(std::int64_t p) {
    if (p < 2 || p > (1LL << 31)) fail(Errc::parse_error, "field characteristic out of range");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(Errc::parse_error, std::to_string(p) + " is not prime");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::polynomials;
    r->field = BaseField::prime_field;
    r->char_p = p;
    r->krull_dim = 1;
    r->descriptor = "F" + std::to_string(p) + "[x]";
    return RingData::wrap(r);
}

namespace {

// Trial division; loud failure instead of a silent wrong answer on huge inputs.
std::vector<std::pair<Int, int>> factor_int(Int n) {
    if (n < 0) n = -n;
    if (n < 2) fail(Errc::precondition, "nothing to factor");
    std::vector<std::pair<Int, int>> out;
    Int d = 2;
    int steps = 0;
    while (d * d <= n) {
        if (++steps > 2000000) fail(Errc::precondition, "integer too large for trial division");
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
        }
        d += (d == 2) ? 1 : 2;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

Ring Ring::integers_mod(const Int& m) {
    if (m < 2) fail(Errc::parse_error, "quotient modulus must be at least 2");
    auto r = std::make_shared<RingData>();
    r->kind = RingKind::integer_quotient;
    r->krull_dim = 0;
    Ring z = integers();
    r->cover = z.d_;
    r->modulus = std::make_unique<RingElement>(z.from_int(m));
    for (auto& [p, e] : factor_int(m)) r->factored_modulus.emplace_back(z.from_int(p), e);
    r->descriptor = "Z/" + m.str();
    return RingData::wrap(r);
}

namespace {

// All monic divisors of g of degree d, smallest first in coefficient order.
// Exhaustive candidate sweep; the catalog keeps p and deg small.
bool find_monic_divisor(const RingElement& g, int d, RingElement& out) {
    const Ring& R = g.ring();
    std::int64_t p = R.characteristic_p();
    double count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<double>(p);
    if (count > 2e6) fail(Errc::precondition, "factor search space too large");
    std::vector<std::int64_t> cand(static_cast<size_t>(d) + 1, 0);
    cand[static_cast<size_t>(d)] = 1;
    while (true) {
        FpPoly fp;
        fp.p = p;
        fp.c = cand;
        RingElement h(R, fp);
        if (h.divides(g)) {
            out = h;
            return true;
        }
        int i = 0;
        for (; i < d; ++i) {
            if (++cand[static_cast<size_t>(i)] < p) break;
            cand[static_cast<size_t>(i)] = 0;
        }
        if (i == d) return false;
    }
}

std::vector<std::pair<RingElement, int>> factor_fp_poly(RingElement g) {
    std::vector<std::pair<RingElement, int>> out;
    g = g.unit_normal().second;
    while (g.poly_degree() >= 1) {
        bool split = false;
        for (int d = 1; 2 * d <= g.poly_degree(); ++d) {
            RingElement h = g.ring().zero();
            if (find_monic_divisor(g, d, h)) {
                int e = 0;
                while (h.divides(g)) {
                    g = g.divexact(h);
                    ++e;
                }
                out.emplace_back(h, e);
                split = true;
                break;
            }
        }
        if (!split) {
            out.emplace_back(g, 1);
            break;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// Rational roots via the p/q bound on the denominator-cleared form.
std::optional<Rat> find_rational_root(const RingElement& f) {
    const auto& qc = std::get<QPoly>(f.rep()).c;
    if (qc.empty() || qc[0] == 0) return Rat(0);
    Int den = 1;
    for (const auto& r : qc)
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(r));
    std::vector<Int> ic;
    ic.reserve(qc.size());
    for (const auto& r : qc) ic.push_back(boost::multiprecision::numerator(r * Rat(den)));
    Int c0 = boost::multiprecision::abs(ic.front());
    Int cn = boost::multiprecision::abs(ic.back());
    if (c0 > 1000000000 || cn > 1000000000)
        fail(Errc::precondition, "rational root bound too large");
    auto divisors = [](const Int& n) {
        std::vector<Int> ds;
        for (Int d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        return ds;
    };
    for (const Int& a : divisors(c0))
        for (const Int& b : divisors(cn))
            for (int sgn : {1, -1}) {
                Rat x(a * sgn, b);
                Rat v = 0;
                for (int i = deg(qc); i >= 0; --i) v = v * x + qc[static_cast<size_t>(i)];
                if (v == 0) return x;
            }
    return std::nullopt;
}

bool has_rational_root(const RingElement& f) { return find_rational_root(f).has_value(); }

}  // namespace

Ring Ring::polynomials_mod(const Ring& cover, const RingElement& modulus,
                           const std::vector<std::pair<RingElement, int>>* supplied_factors) {
    if (cover.kind() != RingKind::polynomials)
        fail(Errc::parse_error, "polynomial quotient needs a polynomial cover ring");
    if (modulus.ring() != cover) fail(Errc::domain_error, "modulus from a different ring");
    if (modulus.poly_degree() < 1) fail(Errc::parse_error, "quotient modulus degree must be at least 1");
    auto [u, monic] = modulus.unit_normal();
    if (!(u.is_one())) fail(Errc::parse_error, "quotient modulus must be monic");

    auto r = std::make_shared<RingData>();
    r->kind = RingKind::polynomial_quotient;
    r->field = cover.base_field();
    r->char_p = cover.characteristic_p();
    r->krull_dim = 0;
    r->cover = cover.d_;
    r->modulus = std::make_unique<RingElement>(monic);

    if (cover.base_field() == BaseField::prime_field) {
        r->factored_modulus = factor_fp_poly(monic);
    } else {
        if (supplied_factors == nullptr || supplied_factors->empty())
            fail(Errc::parse_error,
                 "rational polynomial quotients require a supplied factorization");
        RingElement prod = cover.one();
        std::vector<std::pair<RingElement, int>> fs;
        for (const auto& [g, e] : *supplied_factors) {
            if (g.ring() != cover) fail(Errc::domain_error, "factor from a different ring");
            if (e < 1) fail(Errc::parse_error, "factor multiplicity must be positive");
            auto [gu, gn] = g.unit_normal();
            if (!gu.is_one()) fail(Errc::parse_error, "supplied factors must be monic");
            if (gn.poly_degree() < 1) fail(Errc::parse_error, "unit factor in factorization");
            if (gn.poly_degree() >= 2 && has_rational_root(gn))
                fail(Errc::parse_error, "supplied factor " + gn.str() + " is reducible");
            for (int i = 0; i < e; ++i) prod = prod * gn;
            fs.emplace_back(gn, e);
        }
        if (prod != monic)
            fail(Errc::parse_error, "supplied factorization does not multiply to the modulus");
        std::sort(fs.begin(), fs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (size_t i = 0; i + 1 < fs.size(); ++i)
            if (fs[i].first == fs[i + 1].first)
                fail(Errc::parse_error, "repeated factor; merge multiplicities with ^");
        r->factored_modulus = std::move(fs);
    }

    std::string base = cover.base_field() == BaseField::prime_field
                           ? "F" + std::to_string(cover.characteristic_p())
                           : "Q";
    std::string desc = base + "[x]/(" + monic.str();
    if (cover.base_field() == BaseField::rationals) {
        desc += "; ";
        for (const auto& [g, e] : r->factored_modulus) {
            desc += "(" + g.str() + ")";
            if (e > 1) desc += "^" + std::to_string(e);
        }
    }
    desc += ")";
    r->descriptor = desc;
    return RingData::wrap(r);
}

// ---------- elements ----------

RingElement::RingElement(Ring ring, std::variant<Int, QPoly, FpPoly> rep)
    : ring_(std::move(ring)), rep_(std::move(rep)) {
    switch (ring_.kind()) {
        case RingKind::integers:
            if (!std::holds_alternative<Int>(rep_)) fail(Errc::internal, "payload mismatch");
            break;
        case RingKind::integer_quotient: {
            if (!std::holds_alternative<Int>(rep_)) fail(Errc::internal, "payload mismatch");
            const Int& m = std::get<Int>(ring_.modulus().rep());
            Int& v = std::get<Int>(rep_);
            v %= m;
            if (v < 0) v += m;
            break;
        }
        case RingKind::polynomials:
        case RingKind::polynomial_quotient: {
            if (ring_.base_field() == BaseField::rationals) {
                if (!std::holds_alternative<QPoly>(rep_)) fail(Errc::internal, "payload mismatch");
                trim(std::get<QPoly>(rep_).c);
                if (ring_.kind() == RingKind::polynomial_quotient) {
                    const auto& m = std::get<QPoly>(ring_.modulus().rep()).c;
                    std::get<QPoly>(rep_).c = qp_divmod(std::get<QPoly>(rep_).c, m).second;
                }
            } else {
                if (!std::holds_alternative<FpPoly>(rep_)) fail(Errc::internal, "payload mismatch");
                auto& fp = std::get<FpPoly>(rep_);
                fp.p = ring_.characteristic_p();
                for (auto& c : fp.c) c = mod_reduce(c, fp.p);
                trim(fp.c);
                if (ring_.kind() == RingKind::polynomial_quotient) {
                    const auto& m = std::get<FpPoly>(ring_.modulus().rep()).c;
                    fp.c = fp_divmod(fp.c, m, fp.p).second;
                }
            }
            break;
        }
    }
}

bool RingElement::is_zero() const {
    return std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Int>) return v == 0;
            else return v.c.empty();
        },
        rep_);
}

bool RingElement::is_one() const {
    return std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Int>) return v == 1;
            else if constexpr (std::is_same_v<T, QPoly>) return v.c.size() == 1 && v.c[0] == 1;
            else return v.c.size() == 1 && v.c[0] == 1;
        },
        rep_);
}

bool RingElement::is_unit() const {
    switch (ring_.kind()) {
        case RingKind::integers:
            return std::get<Int>(rep_) == 1 || std::get<Int>(rep_) == -1;
        case RingKind::polynomials:
            return poly_degree() == 0;
        case RingKind::integer_quotient: {
            const Int& m = std::get<Int>(ring_.modulus().rep());
            return boost::multiprecision::gcd(std::get<Int>(rep_), m) == 1;
        }
        case RingKind::polynomial_quotient: {
            if (is_zero()) return false;
            RingElement g = gorcalc::gcd(lift(), ring_.modulus());
            return g.poly_degree() == 0;
        }
    }
    return false;
}

namespace {

void require_same_ring(const RingElement& a, const RingElement& b) {
    if (a.ring() != b.ring()) fail(Errc::domain_error, "elements from different rings");
}

}  // namespace

RingElement RingElement::operator+(const RingElement& o) const {
    require_same_ring(*this, o);
    return std::visit(
        [&](const auto& a) -> RingElement {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Int>)
                return RingElement(ring_, a + std::get<Int>(o.rep_));
            else if constexpr (std::is_same_v<T, QPoly>)
                return RingElement(ring_, QPoly{qp_add(a.c, std::get<QPoly>(o.rep_).c, 1)});
            else
                return RingElement(ring_, FpPoly{a.p, fp_add(a.c, std::get<FpPoly>(o.rep_).c, 1, a.p)});
        },
        rep_);
}

RingElement RingElement::operator-(const RingElement& o) const {
    require_same_ring(*this, o);
    return std::visit(
        [&](const auto& a) -> RingElement {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Int>)
                return RingElement(ring_, a - std::get<Int>(o.rep_));
            else if constexpr (std::is_same_v<T, QPoly>)
                return RingElement(ring_, QPoly{qp_add(a.c, std::get<QPoly>(o.rep_).c, -1)});
            else
                return RingElement(ring_, FpPoly{a.p, fp_add(a.c, std::get<FpPoly>(o.rep_).c, -1, a.p)});
        },
        rep_);
}

RingElement RingElement::operator*(const RingElement& o) const {
    require_same_ring(*this, o);
    return std::visit(
        [&](const auto& a) -> RingElement {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Int>)
                return RingElement(ring_, a * std::get<Int>(o.rep_));
            else if constexpr (std::is_same_v<T, QPoly>)
                return RingElement(ring_, QPoly{qp_mul(a.c, std::get<QPoly>(o.rep_).c)});
            else
                return RingElement(ring_, FpPoly{a.p, fp_mul(a.c, std::get<FpPoly>(o.rep_).c, a.p)});
        },
        rep_);
}

RingElement RingElement::operator-() const {
    return std::visit(
        [&](const auto& a) -> RingElement {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Int>) return RingElement(ring_, -a);
            else if constexpr (std::is_same_v<T, QPoly>)
                return RingElement(ring_, QPoly{qp_add({}, a.c, -1)});
            else
                return RingElement(ring_, FpPoly{a.p, fp_add({}, a.c, -1, a.p)});
        },
        rep_);
}

bool RingElement::operator==(const RingElement& o) const {
    if (ring_ != o.ring_) return false;
    return rep_ == o.rep_;
}

int RingElement::compare(const RingElement& o) const {
    require_same_ring(*this, o);
    return std::visit(
        [&](const auto& a) -> int {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Int>) {
                const Int& b = std::get<Int>(o.rep_);
                return a < b ? -1 : (a == b ? 0 : 1);
            } else {
                const auto& b = std::get<T>(o.rep_).c;
                if (a.c.size() != b.size()) return a.c.size() < b.size() ? -1 : 1;
                for (size_t i = a.c.size(); i-- > 0;) {
                    if (a.c[i] != b[i]) return a.c[i] < b[i] ? -1 : 1;
                }
                return 0;
            }
        },
        rep_);
}

std::pair<RingElement, RingElement> RingElement::divmod(const RingElement& d) const {
    require_same_ring(*this, d);
    if (!ring_.is_pid()) fail(Errc::precondition, "divmod needs a PID kind");
    if (d.is_zero()) fail(Errc::domain_error, "division by zero");
    switch (ring_.kind()) {
        case RingKind::integers: {
            const Int& a = std::get<Int>(rep_);
            const Int& b = std::get<Int>(d.rep_);
            Int q = a / b;  // truncated
            Int r = a - q * b;
            // symmetric remainder: |r| <= |b|/2, better SNF convergence
            Int babs = b < 0 ? Int(-b) : b;
            if (2 * r > babs) {
                r -= babs;
                q += b < 0 ? -1 : 1;
            } else if (2 * r < -babs) {
                r += babs;
                q += b < 0 ? 1 : -1;
            }
            return {RingElement(ring_, q), RingElement(ring_, r)};
        }
        case RingKind::polynomials: {
            if (ring_.base_field() == BaseField::rationals) {
                auto [q, r] = qp_divmod(std::get<QPoly>(rep_).c, std::get<QPoly>(d.rep_).c);
                return {RingElement(ring_, QPoly{q}), RingElement(ring_, QPoly{r})};
            }
            const auto& fa = std::get<FpPoly>(rep_);
            auto [q, r] = fp_divmod(fa.c, std::get<FpPoly>(d.rep_).c, fa.p);
            return {RingElement(ring_, FpPoly{fa.p, q}), RingElement(ring_, FpPoly{fa.p, r})};
        }
        default:
            fail(Errc::internal, "unreachable");
    }
}

RingElement RingElement::divexact(const RingElement& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) fail(Errc::domain_error, "inexact division");
    return q;
}

bool RingElement::divides(const RingElement& other) const {
    if (is_zero()) return other.is_zero();
    return other.divmod(*this).second.is_zero();
}

std::pair<RingElement, RingElement> RingElement::unit_normal() const {
    if (!ring_.is_pid()) fail(Errc::precondition, "unit_normal needs a PID kind");
    if (is_zero()) return {ring_.one(), *this};
    switch (ring_.kind()) {
        case RingKind::integers: {
            const Int& a = std::get<Int>(rep_);
            if (a < 0) return {ring_.from_int(-1), RingElement(ring_, Int(-a))};
            return {ring_.one(), *this};
        }
        case RingKind::polynomials: {
            if (ring_.base_field() == BaseField::rationals) {
                const auto& c = std::get<QPoly>(rep_).c;
                Rat lead = c.back();
                std::vector<Rat> n(c);
                for (auto& x : n) x /= lead;
                return {RingElement(ring_, QPoly{{lead}}), RingElement(ring_, QPoly{n})};
            }
            const auto& fp = std::get<FpPoly>(rep_);
            std::int64_t lead = fp.c.back();
            std::int64_t inv = mod_inv(lead, fp.p);
            std::vector<std::int64_t> n(fp.c);
            for (auto& x : n) x = mod_mul(x, inv, fp.p);
            return {RingElement(ring_, FpPoly{fp.p, {lead}}), RingElement(ring_, FpPoly{fp.p, n})};
        }
        default:
            fail(Errc::internal, "unreachable");
    }
}

RingElement RingElement::pow(int e) const {
    if (e < 0) fail(Errc::precondition, "negative power");
    RingElement r = ring_.one();
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

RingElement RingElement::lift() const {
    if (ring_.is_domain()) return *this;
    return RingElement(ring_.cover(), rep_);
}

RingElement RingElement::reduce_into(const Ring& quotient) const {
    if (quotient.cover() != ring_) fail(Errc::domain_error, "element does not lift this quotient");
    return RingElement(quotient, rep_);
}

int RingElement::poly_degree() const {
    return std::visit(
        [](const auto& v) -> int {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Int>)
                fail(Errc::precondition, "not a polynomial ring");
            else
                return deg(v.c);
        },
        rep_);
}

std::string RingElement::str() const {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Int>) return v.str();
            else return poly_str(v.c);
        },
        rep_);
}

RingElement gcd(const RingElement& a, const RingElement& b) {
    RingElement x = a, y = b;
    while (!y.is_zero()) {
        RingElement r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.unit_normal().second;
}

namespace {

// g = a*x + b*y with g unit-normalized; PID covers only.
struct ExtGcd {
    RingElement g, x, y;
};

RingElement pid_unit_inverse(const RingElement& u) {
    const Ring& R = u.ring();
    if (R.kind() == RingKind::integers) return u;  // ±1
    if (R.base_field() == BaseField::rationals) {
        const auto& c = std::get<QPoly>(u.rep()).c;
        if (c.size() != 1) fail(Errc::internal, "not a unit");
        QPoly inv;
        inv.c = {Rat(1) / c[0]};
        return RingElement(R, inv);
    }
    const auto& c = std::get<FpPoly>(u.rep());
    if (c.c.size() != 1) fail(Errc::internal, "not a unit");
    FpPoly inv;
    inv.p = c.p;
    inv.c = {mod_inv(c.c[0], c.p)};
    return RingElement(R, inv);
}

ExtGcd ext_gcd(const RingElement& a, const RingElement& b) {
    const Ring& R = a.ring();
    RingElement r0 = a, r1 = b;
    RingElement x0 = R.one(), x1 = R.zero();
    RingElement y0 = R.zero(), y1 = R.one();
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        r0 = r1;
        r1 = r2;
        RingElement x2 = x0 - q * x1;
        x0 = x1;
        x1 = x2;
        RingElement y2 = y0 - q * y1;
        y0 = y1;
        y1 = y2;
    }
    auto [u, n] = r0.unit_normal();
    RingElement ui = pid_unit_inverse(u);
    return {n, x0 * ui, y0 * ui};
}

// Smallest-residue solution of t ≡ v1 (mod m1), t ≡ v2 (mod m2), gcd(m1,m2)=1.
RingElement crt_pair(const RingElement& v1, const RingElement& m1, const RingElement& v2,
                     const RingElement& m2) {
    ExtGcd e = ext_gcd(m1, m2);
    if (!e.g.is_one()) fail(Errc::internal, "CRT moduli not coprime");
    RingElement t = v1 * e.y * m2 + v2 * e.x * m1;
    return t.divmod(m1 * m2).second;
}

}  // namespace

int valuation(const RingElement& x, const RingElement& p) {
    if (x.is_zero()) fail(Errc::precondition, "valuation of zero");
    RingElement v = x;
    int n = 0;
    while (p.divides(v)) {
        v = v.divexact(p);
        ++n;
    }
    return n;
}

bool is_irreducible(const Ring& pid, const RingElement& x) {
    if (!pid.is_pid()) fail(Errc::precondition, "irreducibility over PIDs only");
    if (x.ring() != pid) fail(Errc::domain_error, "element from a different ring");
    if (x.is_zero() || x.is_unit()) return false;
    switch (pid.kind()) {
        case RingKind::integers: {
            Int n = std::get<Int>(x.rep());
            if (n < 0) n = -n;
            auto fs = factor_int(n);
            return fs.size() == 1 && fs[0].second == 1;
        }
        case RingKind::polynomials: {
            auto normal = x.unit_normal().second;
            if (normal.poly_degree() < 1) return false;
            if (pid.base_field() == BaseField::prime_field) {
                RingElement h = pid.zero();
                for (int d = 1; 2 * d <= normal.poly_degree(); ++d)
                    if (find_monic_divisor(normal, d, h)) return false;
                return true;
            }
            if (normal.poly_degree() == 1) return true;
            if (normal.poly_degree() <= 3) return !has_rational_root(normal);
            if (has_rational_root(normal)) return false;
            fail(Errc::precondition,
                 "cannot verify irreducibility over Q beyond degree 3; supply a factorization");
        }
        default:
            fail(Errc::internal, "unreachable");
    }
}

// ---------- primes ----------

PrimeIdeal PrimeIdeal::zero_ideal(const Ring& r) {
    if (!r.is_domain()) fail(Errc::domain_error, "zero ideal is prime only in the domain kinds");
    PrimeIdeal p;
    p.ring_ = r;
    p.height_ = 0;
    return p;
}

PrimeIdeal PrimeIdeal::principal(const RingElement& gen) {
    const Ring& R = gen.ring();
    PrimeIdeal p;
    p.ring_ = R;
    if (R.is_domain()) {
        if (!is_irreducible(R, gen))
            fail(Errc::domain_error, "generator " + gen.str() + " is not irreducible");
        p.gen_ = gen.unit_normal().second;
        p.height_ = 1;
    } else {
        if (gen.is_zero()) fail(Errc::domain_error, "zero does not generate a prime here");
        RingElement d = gorcalc::gcd(gen.lift(), R.modulus());
        bool matched = false;
        for (const auto& [q, e] : R.factored_modulus()) {
            (void)e;
            if (q == d) {
                matched = true;
                break;
            }
        }
        if (!matched)
            fail(Errc::domain_error,
                 "ideal (" + gen.str() + ") is not prime in " + R.descriptor());
        p.gen_ = d.reduce_into(R);
        p.height_ = 0;
    }
    return p;
}

const RingElement& PrimeIdeal::generator() const {
    if (!gen_) fail(Errc::precondition, "zero ideal has no generator");
    return *gen_;
}

bool PrimeIdeal::operator==(const PrimeIdeal& o) const {
    if (ring_ != o.ring_) return false;
    if (is_zero_ideal() != o.is_zero_ideal()) return false;
    return is_zero_ideal() || *gen_ == *o.gen_;
}

int PrimeIdeal::compare(const PrimeIdeal& o) const {
    if (ring_ != o.ring_) fail(Errc::domain_error, "primes from different rings");
    if (is_zero_ideal() && o.is_zero_ideal()) return 0;
    if (is_zero_ideal()) return -1;
    if (o.is_zero_ideal()) return 1;
    return gen_->compare(*o.gen_);
}

bool PrimeIdeal::contains(const RingElement& r) const {
    if (r.ring() != ring_) fail(Errc::domain_error, "element from a different ring");
    if (is_zero_ideal()) return r.is_zero();
    return gen_->lift().divides(r.lift());
}

std::string PrimeIdeal::str() const {
    if (is_zero_ideal()) return "(0)";
    return "(" + gen_->str() + ")";
}

// ---------- ring-level operations ----------

std::vector<PrimeIdeal> primes_of_height(const Ring& r, int k,
                                         const std::vector<PrimeIdeal>& support_hint) {
    if (k < 0 || k > r.krull_dim())
        fail(Errc::precondition, "no primes of height " + std::to_string(k) + " in " + r.descriptor());
    std::vector<PrimeIdeal> out;
    if (r.is_artinian()) {
        for (const auto& [p, e] : r.factored_modulus()) {
            (void)e;
            out.push_back(PrimeIdeal::principal(p.reduce_into(r)));
        }
    } else if (k == 0) {
        out.push_back(PrimeIdeal::zero_ideal(r));
    } else {
        for (const auto& p : support_hint) {
            if (p.ring() != r) fail(Errc::domain_error, "hint prime from a different ring");
            if (p.height() == 1) out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_regular(const Ring& r, const RingElement& x) {
    if (x.ring() != r) fail(Errc::domain_error, "element from a different ring");
    if (r.is_domain()) return !x.is_zero();
    return x.is_unit();
}

Factorization factor(const Ring& r, const RingElement& x) {
    if (x.ring() != r) fail(Errc::domain_error, "element from a different ring");
    if (x.is_zero()) fail(Errc::precondition, "cannot factor zero");
    Factorization out{r.one(), {}};
    if (r.is_domain()) {
        auto [u, n] = x.unit_normal();
        out.unit = u;
        if (n.is_one()) return out;
        switch (r.kind()) {
            case RingKind::integers: {
                for (auto& [p, e] : factor_int(std::get<Int>(n.rep())))
                    out.primes.emplace_back(PrimeIdeal::principal(r.from_int(p)), e);
                break;
            }
            case RingKind::polynomials: {
                if (r.base_field() == BaseField::prime_field) {
                    for (auto& [g, e] : factor_fp_poly(n))
                        out.primes.emplace_back(PrimeIdeal::principal(g), e);
                } else {
                    // Peel rational roots; a rootless tail of degree <= 3 is irreducible.
                    RingElement g = n;
                    std::vector<RingElement> fs;
                    while (g.poly_degree() >= 2) {
                        auto root = find_rational_root(g);
                        if (!root) break;
                        RingElement lin(r, QPoly{{-*root, Rat(1)}});
                        fs.push_back(lin);
                        g = g.divexact(lin);
                    }
                    if (g.poly_degree() == 1) {
                        fs.push_back(g.unit_normal().second);
                    } else if (g.poly_degree() >= 2) {
                        if (g.poly_degree() > 3)
                            fail(Errc::precondition,
                                 "rational-coefficient polynomial with no supplied factorization");
                        fs.push_back(g);
                    }
                    std::sort(fs.begin(), fs.end());
                    for (size_t i = 0; i < fs.size();) {
                        size_t j = i;
                        while (j < fs.size() && fs[j] == fs[i]) ++j;
                        out.primes.emplace_back(PrimeIdeal::principal(fs[i]),
                                                static_cast<int>(j - i));
                        i = j;
                    }
                }
                break;
            }
            default:
                fail(Errc::internal, "unreachable");
        }
    } else {
        // Componentwise along the local factors: x = u * prod p^min(v_p(lift), E_p) with u a unit,
        // assembled by CRT from per-factor solves.
        Ring cover = r.cover();
        RingElement xl = x.lift();
        RingElement d = cover.one();
        for (const auto& [p, mult] : r.factored_modulus()) {
            RingElement residue = xl.divmod(p.pow(mult)).second;
            int v = residue.is_zero() ? mult : std::min(valuation(residue, p), mult);
            if (v > 0) {
                out.primes.emplace_back(PrimeIdeal::principal(p.reduce_into(r)), v);
                d = d * p.pow(v);
            }
        }
        RingElement u = cover.one();
        RingElement umod = cover.one();
        for (const auto& [p, mult] : r.factored_modulus()) {
            RingElement pe = p.pow(mult);
            RingElement dr = d.divmod(pe).second;
            int v = dr.is_zero() ? mult : valuation(dr, p);
            RingElement ucomp = cover.one();  // x vanishes in this factor: any unit works
            if (v < mult) {
                RingElement rest = p.pow(mult - v);
                RingElement xq = xl.divmod(pe).second.divexact(p.pow(v));
                RingElement dq = dr.divexact(p.pow(v));
                ExtGcd e = ext_gcd(dq.divmod(rest).second, rest);
                if (!e.g.is_one()) fail(Errc::internal, "unit solve failed");
                ucomp = (xq * e.x).divmod(rest).second;
            }
            u = crt_pair(u, umod, ucomp, pe);
            umod = umod * pe;
        }
        out.unit = u.reduce_into(r);
        if (!out.unit.is_unit()) fail(Errc::internal, "factor unit is not a unit");
        RingElement prod = out.unit;
        for (const auto& [p, e] : out.primes) prod = prod * p.generator().pow(e);
        if (prod != x) fail(Errc::internal, "factorization does not re-multiply");
    }
    std::sort(out.primes.begin(), out.primes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ---------- parsing ----------

namespace {

struct Cursor {
    std::string s;
    size_t i = 0;
    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            fail(Errc::parse_error, "expected '" + std::string(1, c) + "' at position " +
                                        std::to_string(i) + " in '" + s + "'");
    }
};

Int parse_nat(Cursor& c) {
    if (!std::isdigit(static_cast<unsigned char>(c.peek())))
        fail(Errc::parse_error, "expected a number at position " + std::to_string(c.i) + " in '" + c.s + "'");
    Int v = 0;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + (c.s[c.i] - '0');
        ++c.i;
    }
    return v;
}

// term := coef ['*'] [xpart] | xpart ; xpart := 'x' ['^' nat]
// Returns the term as a coefficient vector.
std::vector<Rat> parse_poly_term(Cursor& c) {
    Rat coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        Int num = parse_nat(c);
        Int den = 1;
        if (c.peek() == '/' && c.i + 1 < c.s.size() &&
            std::isdigit(static_cast<unsigned char>(c.s[c.i + 1]))) {
            c.eat('/');
            den = parse_nat(c);
            if (den == 0) fail(Errc::parse_error, "zero denominator");
        }
        coef = Rat(num, den);
        have_coef = true;
        c.eat('*');
    }
    int power = 0;
    if (c.eat('x')) {
        power = 1;
        if (c.eat('^')) power = static_cast<int>(parse_nat(c));
    } else if (!have_coef) {
        fail(Errc::parse_error, "expected a term at position " + std::to_string(c.i) + " in '" + c.s + "'");
    }
    std::vector<Rat> t(static_cast<size_t>(power) + 1, Rat(0));
    t[static_cast<size_t>(power)] = coef;
    return t;
}

std::vector<Rat> parse_poly_body(Cursor& c) {
    std::vector<Rat> acc;
    int sign = 1;
    if (c.eat('-')) sign = -1;
    else c.eat('+');
    while (true) {
        auto t = parse_poly_term(c);
        if (sign < 0)
            for (auto& x : t) x = -x;
        acc = qp_add(acc, t, 1);
        if (c.eat('+')) sign = 1;
        else if (c.eat('-')) sign = -1;
        else break;
    }
    return acc;
}

RingElement poly_from_rats(const Ring& r, const std::vector<Rat>& qc) {
    if (r.base_field() == BaseField::rationals) return RingElement(r, QPoly{qc});
    std::int64_t p = r.characteristic_p();
    FpPoly fp;
    fp.p = p;
    for (const auto& q : qc) {
        Int num = boost::multiprecision::numerator(q) % p;
        Int den = boost::multiprecision::denominator(q) % p;
        std::int64_t n = mod_reduce(static_cast<std::int64_t>(num), p);
        std::int64_t d = mod_reduce(static_cast<std::int64_t>(den), p);
        if (d == 0) fail(Errc::parse_error, "coefficient denominator vanishes mod " + std::to_string(p));
        fp.c.push_back(mod_mul(n, mod_inv(d, p), p));
    }
    trim(fp.c);
    return RingElement(r, fp);
}

std::string strip_ws(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    return t;
}

}  // namespace

RingElement Ring::parse_element(const std::string& text) const {
    std::string s = strip_ws(text);
    if (s.empty()) fail(Errc::parse_error, "empty element literal");
    switch (kind()) {
        case RingKind::integers:
        case RingKind::integer_quotient: {
            Cursor c{s};
            int sign = 1;
            if (c.eat('-')) sign = -1;
            Int v = parse_nat(c);
            if (!c.done()) fail(Errc::parse_error, "trailing characters in integer literal '" + s + "'");
            return from_int(sign < 0 ? Int(-v) : v);
        }
        case RingKind::polynomials:
        case RingKind::polynomial_quotient: {
            Cursor c{s};
            auto qc = parse_poly_body(c);
            if (!c.done()) fail(Errc::parse_error, "trailing characters in polynomial '" + s + "'");
            Ring base = is_domain() ? *this : cover();
            RingElement e = poly_from_rats(base, qc);
            return is_domain() ? e : e.reduce_into(*this);
        }
    }
    fail(Errc::internal, "bad ring kind");
}

Ring parse_ring(const std::string& text) {
    std::string s = strip_ws(text);
    if (s == "Z") return Ring::integers();
    if (s == "Q[x]") return Ring::rational_polynomials();
    if (s.rfind("Z/", 0) == 0) {
        Cursor c{s.substr(2)};
        Int m = parse_nat(c);
        if (!c.done()) fail(Errc::parse_error, "malformed ring descriptor '" + text + "'");
        return Ring::integers_mod(m);
    }
    if (s[0] == 'F' || s.rfind("Q[x]/", 0) == 0) {
        Ring cover;
        size_t rest;
        if (s[0] == 'F') {
            Cursor c{s.substr(1)};
            Int p = parse_nat(c);
            std::string tail = c.s.substr(c.i);
            if (tail.rfind("[x]", 0) != 0) fail(Errc::parse_error, "malformed ring descriptor '" + text + "'");
            cover = Ring::prime_polynomials(static_cast<std::int64_t>(p));
            rest = 1 + c.i + 3;
        } else {
            cover = Ring::rational_polynomials();
            rest = 4;
        }
        if (rest == s.size()) return cover;
        std::string tail = s.substr(rest);
        if (tail.size() < 3 || tail[0] != '/' || tail[1] != '(' || tail.back() != ')')
            fail(Errc::parse_error, "malformed ring descriptor '" + text + "'");
        std::string inner = tail.substr(2, tail.size() - 3);
        std::string poly_part = inner;
        std::string factored_part;
        if (auto semi = inner.find(';'); semi != std::string::npos) {
            poly_part = inner.substr(0, semi);
            factored_part = inner.substr(semi + 1);
        }
        RingElement modulus = cover.parse_element(poly_part);
        if (cover.base_field() == BaseField::rationals) {
            if (factored_part.empty())
                fail(Errc::parse_error,
                     "rational polynomial quotients require '<poly>; <factored form>'");
            // factored form: sequence of (poly)[^k]
            std::vector<std::pair<RingElement, int>> fs;
            Cursor c{factored_part};
            while (!c.done()) {
                c.expect('(');
                size_t depth = 1, start = c.i;
                while (!c.done() && depth > 0) {
                    if (c.peek() == '(') ++depth;
                    if (c.peek() == ')') --depth;
                    ++c.i;
                }
                if (depth != 0) fail(Errc::parse_error, "unbalanced parentheses in factored form");
                std::string fp = c.s.substr(start, c.i - start - 1);
                int e = 1;
                if (c.eat('^')) e = static_cast<int>(parse_nat(c));
                fs.emplace_back(cover.parse_element(fp), e);
            }
            return Ring::polynomials_mod(cover, modulus, &fs);
        }
        if (!factored_part.empty())
            fail(Errc::parse_error, "prime-field quotients are factored automatically");
        return Ring::polynomials_mod(cover, modulus, nullptr);
    }
    fail(Errc::parse_error, "unknown ring descriptor '" + text + "'");
}

}  // namespace gorcalc
