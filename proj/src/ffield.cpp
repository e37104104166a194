#include "beauville/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <tuple>
#include <stdexcept>

namespace bvl {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
    if (p_ < 2) throw std::invalid_argument("polynomial modulus must be >= 2");
    for (auto& c : coeffs_) c %= p_;
    normalize();
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::t_power(std::uint64_t p, unsigned k) {
    std::vector<std::uint64_t> c(k + 1, 0);
    c[k] = 1;
    return Polynomial(p, std::move(c));
}

bool Polynomial::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

std::uint64_t Polynomial::leading() const {
    if (coeffs_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<std::uint64_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (coeff(i) + o.coeff(i)) % p_;
    return Polynomial(p_, std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<std::uint64_t> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (coeff(i) + p_ - o.coeff(i)) % p_;
    return Polynomial(p_, std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<std::uint64_t> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] = (c[i + j] + mulmod(coeffs_[i], o.coeffs_[j], p_)) % p_;
    return Polynomial(p_, std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Polynomial r = *this;
    if (r.degree() < d.degree()) return {zero(p_), r};
    std::vector<std::uint64_t> qc(r.degree() - d.degree() + 1, 0);
    std::uint64_t lead_inv = bvl::powmod(d.leading(), p_ - 2, p_);
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        std::uint64_t f = mulmod(r.leading(), lead_inv, p_);
        qc[shift] = f;
        std::vector<std::uint64_t> rc = r.coeffs_;
        for (int i = 0; i <= d.degree(); ++i) {
            auto& slot = rc[i + shift];
            slot = (slot + p_ - mulmod(f, d.coeff(i), p_)) % p_;
        }
        r = Polynomial(p_, std::move(rc));
    }
    return {Polynomial(p_, std::move(qc)), r};
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    std::uint64_t inv = bvl::powmod(leading(), p_ - 2, p_);
    std::vector<std::uint64_t> c = coeffs_;
    for (auto& x : c) x = mulmod(x, inv, p_);
    return Polynomial(p_, std::move(c));
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Polynomial Polynomial::powmod(std::uint64_t n, const Polynomial& m) const {
    Polynomial base = *this % m;
    Polynomial r = constant(p_, 1) % m;
    while (n) {
        if (n & 1) r = (r * base) % m;
        base = (base * base) % m;
        n >>= 1;
    }
    return r;
}

Polynomial Polynomial::parse(std::uint64_t p, const std::string& text) {
    std::map<unsigned, std::uint64_t> terms;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("empty polynomial");
    bool first = true;
    while (i < text.size()) {
        skip_ws();
        std::int64_t sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected + or - in polynomial");
        }
        first = false;
        skip_ws();
        std::uint64_t coef = 1;
        bool saw_digits = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coef = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                coef = coef * 10 + (text[i] - '0');
                if (coef > (1ull << 40)) coef %= p;
                ++i;
            }
            saw_digits = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') { ++i; skip_ws(); }
        unsigned power = 0;
        if (i < text.size() && (text[i] == 't' || text[i] == 'T')) {
            ++i;
            power = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    throw std::invalid_argument("expected exponent after ^");
                power = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    power = power * 10 + (text[i++] - '0');
            }
        } else if (!saw_digits) {
            throw std::invalid_argument("unexpected character in polynomial");
        }
        std::uint64_t c = coef % p;
        if (sign < 0) c = (p - c) % p;
        terms[power] = (terms[power] + c) % p;
        skip_ws();
    }
    unsigned maxp = 0;
    for (auto& [k, v] : terms)
        if (v != 0) maxp = std::max(maxp, k);
    std::vector<std::uint64_t> coeffs(maxp + 1, 0);
    for (auto& [k, v] : terms) coeffs[k] = v;
    return Polynomial(p, std::move(coeffs));
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
        std::uint64_t c = coeff(d);
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c);
            out += "t";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Irreducibility / primitivity

bool poly_is_irreducible(const Polynomial& f) {
    if (!f.is_monic()) throw std::invalid_argument("irreducibility test needs a monic polynomial");
    int d = f.degree();
    if (d < 1) throw std::invalid_argument("irreducibility test needs degree >= 1");
    if (d == 1) return true;
    std::uint64_t p = f.p();
    Polynomial t = Polynomial::t_power(p, 1);
    // Rabin: t^{p^d} = t mod f, and gcd(t^{p^{d/l}} - t, f) = 1 for primes l | d.
    Polynomial x = t;
    std::vector<int> checkpoints;
    for (std::uint64_t l : prime_divisors(static_cast<std::uint64_t>(d))) checkpoints.push_back(d / static_cast<int>(l));
    std::sort(checkpoints.begin(), checkpoints.end());
    int k = 0;
    for (int step = 1; step <= d; ++step) {
        x = x.powmod(p, f);
        while (k < static_cast<int>(checkpoints.size()) && checkpoints[k] == step) {
            if (!(Polynomial::gcd(x - t, f) == Polynomial::constant(p, 1))) return false;
            ++k;
        }
    }
    return x == (t % f);
}

PolyClass poly_classify(const Polynomial& f) {
    if (!poly_is_irreducible(f)) return PolyClass::reducible;
    std::uint64_t p = f.p();
    unsigned d = static_cast<unsigned>(f.degree());
    if (f.coeff(0) == 0) return PolyClass::irreducible;  // f = t: residue of t is 0
    std::uint64_t N = checked_pow(p, d) - 1;
    Polynomial t = Polynomial::t_power(p, 1);
    Polynomial one = Polynomial::constant(p, 1);
    for (std::uint64_t l : prime_divisors(N))
        if (t.powmod(N / l, f) == one) return PolyClass::irreducible;
    return PolyClass::primitive;
}

// ---------------------------------------------------------------------------
// Field

namespace {
constexpr std::uint64_t kTableLimit = 1ull << 22;
constexpr std::uint64_t kSqrtExhaustiveLimit = 1ull << 10;

std::vector<std::uint64_t> unpack_digits(std::uint64_t idx, std::uint64_t p, unsigned e) {
    std::vector<std::uint64_t> d(e, 0);
    for (unsigned i = 0; i < e && idx; ++i) {
        d[i] = idx % p;
        idx /= p;
    }
    return d;
}

std::uint64_t pack_digits(const std::vector<std::uint64_t>& d, std::uint64_t p) {
    std::uint64_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
    return idx;
}
}  // namespace

FieldElement Field::from_int(std::int64_t c) const {
    std::int64_t m = c % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return {this, static_cast<std::uint64_t>(m)};
}

FieldElement Field::element(std::uint64_t idx) const {
    if (idx >= q_) throw std::invalid_argument("element index out of range");
    return {this, idx};
}

FieldElement Field::element(const std::vector<std::uint64_t>& coeffs) const {
    if (coeffs.size() > e_) throw std::invalid_argument("too many coefficients for this field");
    std::uint64_t idx = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= p_) throw std::invalid_argument("coefficient out of range");
        idx = idx * p_ + coeffs[i];
    }
    return {this, idx};
}

FieldElement Field::from_poly(const Polynomial& g) const {
    if (g.p() != p_) throw std::invalid_argument("polynomial characteristic mismatch");
    Polynomial r = g % modulus_;
    std::uint64_t idx = 0;
    for (int i = r.degree(); i >= 0; --i) idx = idx * p_ + r.coeff(i);
    return {this, idx};
}

Polynomial Field::to_poly(const FieldElement& a) const {
    return Polynomial(p_, unpack_digits(a.index(), p_, e_));
}

std::uint64_t Field::add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    if (e_ == 1) {
        std::uint64_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint64_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

std::uint64_t Field::neg(std::uint64_t a) const {
    if (p_ == 2) return a;
    if (e_ == 1) return a == 0 ? 0 : q_ - a;
    std::uint64_t out = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint64_t d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
        a /= p_;
    }
    return out;
}

std::uint64_t Field::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Field::mul(std::uint64_t a, std::uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) {
        std::uint64_t l = log_[a] + log_[b];
        if (l >= q_ - 1) l -= q_ - 1;
        return exp_[l];
    }
    if (e_ == 1) return mulmod(a, b, q_);
    // slow path for untabled extension fields
    Polynomial pa(p_, unpack_digits(a, p_, e_)), pb(p_, unpack_digits(b, p_, e_));
    Polynomial r = (pa * pb) % modulus_;
    std::vector<std::uint64_t> d(e_, 0);
    for (int i = 0; i <= r.degree(); ++i) d[i] = r.coeff(i);
    return pack_digits(d, p_);
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t n) const {
    if (tables_ && a != 0) {
        std::uint64_t l = mulmod(log_[a] % (q_ - 1), n % (q_ - 1), q_ - 1);
        return exp_[l];
    }
    std::uint64_t r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a == 0) throw std::invalid_argument("inverse of zero");
    if (tables_) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

void Field::append_key(std::string& out, std::uint64_t idx) const {
    for (unsigned i = 0; i < key_width_; ++i) {
        out.push_back(static_cast<char>(idx & 0xff));
        idx >>= 8;
    }
}

void Field::build_tables() {
    // find a generator by descending through the prime divisors of q-1
    std::uint64_t g = 0;
    for (std::uint64_t cand = 1; cand < q_; ++cand) {
        bool ok = true;
        for (auto& [l, e] : q1_factors_) {
            if (pow(cand, (q_ - 1) / l) == 1) { ok = false; break; }
        }
        if (ok) { g = cand; break; }
    }
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = static_cast<std::uint32_t>(cur);
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = mul(cur, g);  // tables_ still false: uses the polynomial path
    }
    tables_ = true;
}

std::shared_ptr<const Field> make_field(std::uint64_t p, unsigned e,
                                        const std::optional<Polynomial>& modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = checked_pow(p, e);

    auto F = std::shared_ptr<Field>(new Field());  // interned below; see field_registry
    F->p_ = p;
    F->e_ = e;
    F->q_ = q;
    F->one_ = 1;
    F->q1_factors_ = factorize(q - 1);
    F->key_width_ = q <= 0x100 ? 1 : q <= 0x10000 ? 2 : q <= 0x100000000ull ? 4 : 8;

    if (modulus) {
        if (modulus->p() != p) throw std::invalid_argument("modulus characteristic mismatch");
        if (modulus->degree() != static_cast<int>(e)) throw std::invalid_argument("modulus degree mismatch");
        if (!modulus->is_monic()) throw std::invalid_argument("modulus must be monic");
        if (!poly_is_irreducible(*modulus)) throw std::invalid_argument("modulus is reducible");
        F->modulus_ = *modulus;
    } else if (e == 1) {
        // t - g, g the smallest primitive root mod p
        std::uint64_t g = 1;
        auto divs = prime_divisors(p - 1);
        for (std::uint64_t cand = 1; cand < p; ++cand) {
            bool ok = true;
            for (std::uint64_t l : divs)
                if (powmod(cand, (p - 1) / l, p) == 1) { ok = false; break; }
            if (ok) { g = cand; break; }
        }
        F->modulus_ = Polynomial(p, {(p - g) % p, 1});
    } else {
        // canonically smallest monic primitive polynomial of degree e
        bool found = false;
        for (std::uint64_t idx = 0; idx < q; ++idx) {
            auto digits = unpack_digits(idx, p, e);
            digits.push_back(1);
            Polynomial cand(p, std::move(digits));
            if (poly_classify(cand) == PolyClass::primitive) {
                F->modulus_ = cand;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no primitive polynomial found");
    }

    if (e >= 2) {
        if (q > kTableLimit) {
            // arithmetic falls back to per-operation polynomial reduction
        } else {
            F->build_tables();
        }
    }

    // Fields are interned for the lifetime of the process: elements carry
    // plain pointers to their field, and interning both keeps them valid and
    // makes repeated construction cheap.
    static std::mutex registry_mutex;
    static std::map<std::tuple<std::uint64_t, unsigned, std::vector<std::uint64_t>>,
                    std::shared_ptr<const Field>>
        registry;
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_tuple(p, e, F->modulus_.coeffs());
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    registry.emplace(key, F);
    return F;
}

std::shared_ptr<const Field> make_field_q(std::uint64_t q) {
    std::uint64_t p;
    unsigned e;
    if (!split_prime_power(q, p, e)) throw std::invalid_argument("q is not a prime power");
    return make_field(p, e);
}

// ---------------------------------------------------------------------------
// FieldElement

std::vector<std::uint64_t> FieldElement::coeffs() const {
    return unpack_digits(v_, f_->p(), f_->e());
}

FieldElement FieldElement::operator+(const FieldElement& o) const { return {f_, f_->add(v_, o.v_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { return {f_, f_->sub(v_, o.v_)}; }
FieldElement FieldElement::operator-() const { return {f_, f_->neg(v_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { return {f_, f_->mul(v_, o.v_)}; }
FieldElement FieldElement::operator/(const FieldElement& o) const { return {f_, f_->mul(v_, f_->inv(o.v_))}; }
FieldElement FieldElement::inverse() const { return {f_, f_->inv(v_)}; }
FieldElement FieldElement::pow(std::uint64_t n) const { return {f_, f_->pow(v_, n)}; }
FieldElement FieldElement::frobenius() const { return pow(f_->p()); }

std::string FieldElement::str() const { return f_->to_poly(*this).str(); }

// ---------------------------------------------------------------------------
// Squares, roots, orders

bool is_square(const FieldElement& a) {
    const Field& F = a.field();
    if (a.is_zero() || F.p() == 2) return true;
    return a.pow((F.q() - 1) / 2) == F.one();
}

namespace {
FieldElement smallest_nonsquare(const Field& F) {
    for (std::uint64_t i = 2; i < F.q(); ++i) {
        FieldElement c = F.element(i);
        if (!is_square(c)) return c;
    }
    throw std::logic_error("no non-square in odd field");
}

FieldElement canonical_pair_min(const FieldElement& r) {
    FieldElement m = -r;
    return r.index() <= m.index() ? r : m;
}

FieldElement tonelli_shanks(const FieldElement& a) {
    const Field& F = a.field();
    std::uint64_t m = F.q() - 1;
    unsigned s = 0;
    while ((m & 1) == 0) { m >>= 1; ++s; }
    FieldElement z = smallest_nonsquare(F);
    FieldElement c = z.pow(m);
    FieldElement r = a.pow((m + 1) / 2);
    FieldElement t = a.pow(m);
    unsigned mm = s;
    while (!(t == F.one())) {
        unsigned i = 0;
        FieldElement tt = t;
        while (!(tt == F.one())) { tt = tt * tt; ++i; }
        FieldElement b = c;
        for (unsigned j = 0; j + i + 1 < mm; ++j) b = b * b;
        r = r * b;
        c = b * b;
        t = t * c;
        mm = i;
    }
    return r;
}
}  // namespace

std::optional<FieldElement> sqrt(const FieldElement& a) {
    const Field& F = a.field();
    if (a.is_zero()) return F.zero();
    if (F.p() == 2) return a.pow(F.q() / 2);  // squaring is bijective
    if (!is_square(a)) return std::nullopt;
    if (F.q() < kSqrtExhaustiveLimit) {
        for (std::uint64_t i = 1; i < F.q(); ++i) {
            FieldElement r = F.element(i);
            if (r * r == a) return r;  // ascending scan hits the canonical root first
        }
        return std::nullopt;
    }
    return canonical_pair_min(tonelli_shanks(a));
}

std::uint64_t multiplicative_order(const FieldElement& a) {
    if (a.is_zero()) throw std::invalid_argument("order of zero");
    const Field& F = a.field();
    std::uint64_t n = F.q() - 1;
    for (auto& [l, e] : F.q1_factors()) {
        for (int i = 0; i < e; ++i) {
            if (a.pow(n / l) == F.one())
                n /= l;
            else
                break;
        }
    }
    return n;
}

std::vector<FieldElement> primitive_roots(const Field& F) {
    std::vector<FieldElement> out;
    for (std::uint64_t i = 1; i < F.q(); ++i) {
        FieldElement a = F.element(i);
        if (multiplicative_order(a) == F.q() - 1) out.push_back(a);
    }
    return out;
}

FieldElement smallest_primitive_root(const Field& F) {
    for (std::uint64_t i = 1; i < F.q(); ++i) {
        FieldElement a = F.element(i);
        if (multiplicative_order(a) == F.q() - 1) return a;
    }
    throw std::logic_error("field has no primitive root");
}

int legendre(std::int64_t a, std::uint64_t p) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre symbol needs an odd prime");
    std::int64_t m = a % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    if (m == 0) return 0;
    std::uint64_t r = powmod(static_cast<std::uint64_t>(m), (p - 1) / 2, p);
    return r == 1 ? 1 : -1;
}

int dedekind_symbol(const Polynomial& g, const Polynomial& f) {
    std::uint64_t p = f.p();
    if (p == 2) throw std::invalid_argument("dedekind symbol needs odd characteristic");
    if (!is_prime(p)) throw std::invalid_argument("dedekind symbol needs a prime base field");
    if (!f.is_monic() || f.degree() < 1)
        throw std::invalid_argument("dedekind symbol needs a monic non-constant denominator");
    if (g.p() != p) throw std::invalid_argument("characteristic mismatch");

    Polynomial r = g % f;
    if (r.is_zero()) return 0;
    std::uint64_t c = r.leading();
    Polynomial r1 = r.monic();
    int result = 1;
    if (f.degree() % 2 == 1) result = legendre(static_cast<std::int64_t>(c), p);
    if (r1.degree() == 0) return result;
    // Dedekind reciprocity, Jacobi-style degree reduction.
    std::uint64_t flip = static_cast<std::uint64_t>(f.degree()) * static_cast<std::uint64_t>(r1.degree()) * ((p - 1) / 2);
    if (flip % 2 == 1) result = -result;
    return result * dedekind_symbol(f, r1);
}

int dedekind_symbol_euler(const Polynomial& g, const Polynomial& f) {
    std::uint64_t p = f.p();
    if (p == 2) throw std::invalid_argument("euler oracle needs odd characteristic");
    if (!f.is_monic() || f.degree() < 1 || !poly_is_irreducible(f))
        throw std::invalid_argument("euler oracle needs a monic irreducible denominator");
    Polynomial r = g % f;
    if (r.is_zero()) return 0;
    std::uint64_t N = checked_pow(p, static_cast<unsigned>(f.degree())) - 1;
    Polynomial e = r.powmod(N / 2, f);
    if (e == Polynomial::constant(p, 1)) return 1;
    if (e == Polynomial::constant(p, p - 1)) return -1;
    throw std::logic_error("euler criterion did not evaluate to +-1");
}

std::optional<FieldElement> solve_artin_schreier(const FieldElement& d) {
    const Field& F = d.field();
    if (F.p() != 2) throw std::invalid_argument("artin-schreier solver needs characteristic 2");
    unsigned e = F.e();
    // z -> z^2 + z is F_2-linear; solve by Gaussian elimination on e x e bits.
    std::vector<std::uint64_t> col(e);
    for (unsigned i = 0; i < e; ++i) {
        std::uint64_t b = 1ull << i;
        col[i] = F.add(F.mul(b, b), b);
    }
    std::uint64_t rhs = d.index();
    std::vector<std::uint64_t> rows(e, 0);  // row r: bits over columns, bit e = rhs
    for (unsigned r = 0; r < e; ++r) {
        for (unsigned cidx = 0; cidx < e; ++cidx)
            if ((col[cidx] >> r) & 1) rows[r] |= 1ull << cidx;
        if ((rhs >> r) & 1) rows[r] |= 1ull << e;
    }
    std::vector<int> pivot_col(e, -1);
    unsigned rank = 0;
    for (unsigned cidx = 0; cidx < e && rank < e; ++cidx) {
        unsigned sel = rank;
        while (sel < e && !((rows[sel] >> cidx) & 1)) ++sel;
        if (sel == e) continue;
        std::swap(rows[rank], rows[sel]);
        for (unsigned r = 0; r < e; ++r)
            if (r != rank && ((rows[r] >> cidx) & 1)) rows[r] ^= rows[rank];
        pivot_col[rank] = static_cast<int>(cidx);
        ++rank;
    }
    for (unsigned r = rank; r < e; ++r)
        if ((rows[r] >> e) & 1) return std::nullopt;
    std::uint64_t z = 0;
    for (unsigned r = 0; r < rank; ++r)
        if ((rows[r] >> e) & 1) z |= 1ull << pivot_col[r];
    return F.element(z);
}

// ---------------------------------------------------------------------------
// QuadExtension

QuadExtension::QuadExtension(const Field* base) : base_(base) {
    const Field& F = *base_;
    if (F.p() != 2) {
        r_ = F.zero();
        s_ = smallest_nonsquare(F);
    } else {
        r_ = F.one();
        // smallest c with absolute trace 1, so t^2 + t + c is irreducible
        FieldElement c = F.zero();
        for (std::uint64_t i = 1; i < F.q(); ++i) {
            FieldElement cand = F.element(i);
            FieldElement tr = F.zero(), x = cand;
            for (unsigned j = 0; j < F.e(); ++j) {
                tr = tr + x;
                x = x * x;
            }
            if (tr == F.one()) { c = cand; break; }
        }
        s_ = c;
    }
    auto fa = factorize(F.q() - 1);
    auto fb = factorize(F.q() + 1);
    std::map<std::uint64_t, int> merged;
    for (auto& [l, e] : fa) merged[l] += e;
    for (auto& [l, e] : fb) merged[l] += e;
    for (auto& [l, e] : merged) q21_factors_.emplace_back(l, e);
}

QuadExtension::Elem QuadExtension::add(const Elem& a, const Elem& b) const {
    return {a.x + b.x, a.y + b.y};
}

QuadExtension::Elem QuadExtension::sub(const Elem& a, const Elem& b) const {
    return {a.x - b.x, a.y - b.y};
}

QuadExtension::Elem QuadExtension::mul(const Elem& a, const Elem& b) const {
    // (x1 + y1 u)(x2 + y2 u) with u^2 = r u + s
    FieldElement yy = a.y * b.y;
    return {a.x * b.x + yy * s_, a.x * b.y + a.y * b.x + yy * r_};
}

QuadExtension::Elem QuadExtension::inverse(const Elem& a) const {
    // conjugate is (x + y r) - y u; norm = x^2 + r x y - s y^2 lies in the base
    FieldElement n = a.x * a.x + r_ * a.x * a.y - s_ * a.y * a.y;
    FieldElement ninv = n.inverse();
    return {(a.x + a.y * r_) * ninv, (-a.y) * ninv};
}

QuadExtension::Elem QuadExtension::pow(const Elem& a, std::uint64_t n) const {
    Elem r = one(), b = a;
    while (n) {
        if (n & 1) r = mul(r, b);
        b = mul(b, b);
        n >>= 1;
    }
    return r;
}

QuadExtension::Elem QuadExtension::frobenius(const Elem& a) const {
    // u^q is the conjugate root r - u
    return {a.x + a.y * r_, -a.y};
}

std::uint64_t QuadExtension::order(const Elem& a) const {
    if (a.is_zero()) throw std::invalid_argument("order of zero");
    std::uint64_t q = base_->q();
    std::uint64_t n = q * q - 1;
    for (auto& [l, e] : q21_factors_) {
        for (int i = 0; i < e; ++i) {
            if (pow(a, n / l) == one())
                n /= l;
            else
                break;
        }
    }
    return n;
}

QuadExtension::Elem QuadExtension::sqrt_of_base(const FieldElement& a) const {
    const Field& F = *base_;
    if (F.p() == 2 || is_square(a)) return embed(*bvl::sqrt(a));
    // u^2 = s with s a non-square: sqrt(a) = u * sqrt(a / s)
    FieldElement h = *bvl::sqrt(a / s_);
    return {F.zero(), h};
}

std::vector<QuadExtension::Elem> QuadExtension::artin_schreier_roots(const FieldElement& d) const {
    const Field& F = *base_;
    if (F.p() != 2) throw std::invalid_argument("characteristic 2 only");
    std::vector<Elem> out;
    if (auto z = solve_artin_schreier(d)) {
        out.push_back(embed(*z));
        out.push_back(embed(*z + F.one()));
        return out;
    }
    // with u^2 + u = s: (x + u)^2 + (x + u) = x^2 + x + s
    auto z = solve_artin_schreier(d + s_);
    if (!z) throw std::logic_error("artin-schreier equation unsolvable in GF(q^2)");
    out.push_back(make(*z, F.one()));
    out.push_back(make(*z + F.one(), F.one()));
    return out;
}

QuadExtension quad_ext(const Field& F) { return QuadExtension(&F); }

namespace {
/// Scans traces a ascending; report(d) decides from the order d of a root of
/// lambda^2 - a lambda + 1 whether a qualifies.
template <class Accept>
std::vector<FieldElement> scan_traces(const QuadExtension& E, std::uint64_t n, unsigned count,
                                      Accept accept) {
    const Field& F = E.base();
    std::uint64_t q = F.q();
    if (n < 3) throw std::invalid_argument("trace scan needs n >= 3");
    if ((q - 1) % n != 0 && (q + 1) % n != 0)
        throw std::invalid_argument("n divides neither q-1 nor q+1");
    std::vector<FieldElement> out;
    for (std::uint64_t i = 0; i < q && out.size() < count; ++i) {
        FieldElement a = F.element(i);
        QuadExtension::Elem u;
        if (F.p() != 2) {
            FieldElement disc = a * a - F.from_int(4);
            if (disc.is_zero()) continue;  // parabolic trace
            QuadExtension::Elem sd = E.sqrt_of_base(disc);
            FieldElement half = F.from_int(2).inverse();
            u = E.mul(E.add(E.embed(a), sd), E.embed(half));
        } else {
            if (a.is_zero()) continue;
            // lambda = a z with z^2 + z = 1/a^2
            FieldElement rhs = (a * a).inverse();
            auto roots = E.artin_schreier_roots(rhs);
            u = E.mul(E.embed(a), roots[0]);
        }
        if (accept(E.order(u))) out.push_back(a);
    }
    if (out.size() < count) throw std::invalid_argument("fewer valid traces exist than requested");
    return out;
}
}  // namespace

std::vector<FieldElement> traces_of_element_order(const QuadExtension& E, std::uint64_t n,
                                                  unsigned count) {
    return scan_traces(E, n, count, [n](std::uint64_t d) { return d == n; });
}

std::vector<FieldElement> traces_of_projective_order(const QuadExtension& E, std::uint64_t n,
                                                     unsigned count) {
    return scan_traces(E, n, count,
                       [n](std::uint64_t d) { return d == 2 * n || (n % 2 == 1 && d == n); });
}

FieldElement find_norm_one_trace(const QuadExtension& E, std::uint64_t n) {
    return traces_of_projective_order(E, n, 1)[0];
}

}  // namespace bvl
