#include "polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace kipp {

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const {
    assert(a.size() == b.size());
    long da = std::accumulate(a.begin(), a.end(), 0L);
    long db = std::accumulate(b.begin(), b.end(), 0L);
    if (da != db) return da < db;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

Polynomial Polynomial::constant(const Rational& c, std::vector<std::string> vars) {
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(ExpVec(p.vars_.size(), 0), c);
    return p;
}

Polynomial Polynomial::variable(const std::string& name, const std::vector<std::string>& vars) {
    Polynomial p(vars);
    size_t idx = p.var_index(name);
    if (idx == npos) throw std::invalid_argument("variable '" + name + "' not in variable list");
    ExpVec e(vars.size(), 0);
    e[idx] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

Polynomial Polynomial::monomial(const Rational& c, ExpVec exps, std::vector<std::string> vars) {
    if (exps.size() != vars.size()) throw std::invalid_argument("exponent/variable length mismatch");
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(std::move(exps), c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational Polynomial::constant_value() const {
    auto it = terms_.find(ExpVec(vars_.size(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    const ExpVec& e = terms_.rbegin()->first;
    return static_cast<int>(std::accumulate(e.begin(), e.end(), 0L));
}

int Polynomial::degree_in(size_t var_index) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var_index]));
    return terms_.empty() ? -1 : d;
}

const Rational& Polynomial::leading_coefficient() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.rbegin()->second;
}

const ExpVec& Polynomial::leading_exponents() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.rbegin()->first;
}

void Polynomial::insert_term(const ExpVec& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::align(const Polynomial& a, const Polynomial& b, Polynomial& oa, Polynomial& ob) {
    if (a.vars_ == b.vars_) {
        oa = a;
        ob = b;
        return;
    }
    std::vector<std::string> u = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
    oa = a.with_vars(u);
    ob = b.with_vars(u);
}

Polynomial Polynomial::with_vars(const std::vector<std::string>& vars) const {
    std::vector<size_t> where(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end()) throw std::invalid_argument("with_vars drops variable '" + vars_[i] + "'");
        where[i] = static_cast<size_t>(it - vars.begin());
    }
    Polynomial r(vars);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(vars.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[where[i]] = e[i];
        r.terms_.emplace(std::move(ne), c);
    }
    return r;
}

Polynomial Polynomial::compacted() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) used[i] = true;
    std::vector<std::string> nv;
    std::vector<size_t> keep;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) {
            nv.push_back(vars_[i]);
            keep.push_back(i);
        }
    Polynomial r(nv);
    for (const auto& [e, c] : terms_) {
        ExpVec ne(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) ne[i] = e[keep[i]];
        r.terms_.emplace(std::move(ne), c);
    }
    return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial x, y;
    Polynomial::align(a, b, x, y);
    for (const auto& [e, c] : y.terms_) x.insert_term(e, c);
    return x;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial x, y;
    Polynomial::align(a, b, x, y);
    for (const auto& [e, c] : y.terms_) x.insert_term(e, -c);
    return x;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial x, y;
    Polynomial::align(a, b, x, y);
    Polynomial r(x.vars_);
    ExpVec e(x.vars_.size());
    for (const auto& [ea, ca] : x.terms_) {
        for (const auto& [eb, cb] : y.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.insert_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(vars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Polynomial Polynomial::pow(const Polynomial& a, unsigned e) {
    Polynomial r = Polynomial::constant(Rational(1), a.vars_);
    Polynomial base = a;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Polynomial Polynomial::derivative(size_t var_index) const {
    Polynomial r(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var_index] == 0) continue;
        ExpVec ne = e;
        ne[var_index] -= 1;
        r.insert_term(ne, c * Rational(static_cast<long>(e[var_index])));
    }
    return r;
}

Polynomial Polynomial::derivative(const std::string& var) const {
    size_t i = var_index(var);
    if (i == npos) return Polynomial(vars_);
    return derivative(i);
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point arity mismatch");
    // Cache powers per variable.
    std::vector<std::vector<Rational>> pows(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) pows[i].push_back(Rational(1));
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i) {
            auto& pv = pows[i];
            while (pv.size() <= e[i]) pv.push_back(pv.back() * point[i]);
            if (e[i]) t *= pv[e[i]];
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::div_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Polynomial r, d;
    align(a, b, r, d);
    Polynomial q(r.vars_);
    const ExpVec& lde = d.leading_exponents();
    const Rational& ldc = d.leading_coefficient();
    while (!r.is_zero()) {
        const ExpVec& lre = r.leading_exponents();
        ExpVec t(lre.size());
        for (size_t i = 0; i < t.size(); ++i) {
            if (lre[i] < lde[i]) throw std::domain_error("inexact polynomial division");
            t[i] = lre[i] - lde[i];
        }
        Rational tc = r.leading_coefficient() / ldc;
        Polynomial mono = Polynomial::monomial(tc, t, r.vars_);
        q += mono;
        r -= mono * d;
    }
    return q;
}

Rational Polynomial::signed_content() const {
    if (terms_.empty()) return Rational(1);
    BigInt g(0), l(1);
    for (const auto& [e, c] : terms_) {
        g = BigInt::gcd(g, c.num());
        l = BigInt::lcm(l, c.den());
    }
    Rational content(g, l);
    if (leading_coefficient().sign() < 0) content = -content;
    return content;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    Polynomial x, y;
    Polynomial::align(a, b, x, y);
    return x.terms_ == y.terms_;
}

size_t Polynomial::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? npos : static_cast<size_t>(it - vars_.begin());
}

bool Polynomial::depends_on(size_t var_index) const {
    for (const auto& [e, c] : terms_)
        if (e[var_index]) return true;
    return false;
}

size_t Polynomial::max_coeff_bits() const {
    size_t m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, c.bit_length());
    return m;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational ac = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool any_var = std::any_of(e.begin(), e.end(), [](uint32_t k) { return k != 0; });
        bool coeff_shown = !ac.is_one() || !any_var;
        if (coeff_shown) os << ac.str();
        bool need_star = coeff_shown;
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (need_star) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// GCD machinery: recursive primitive PRS with a modular univariate probe that
// detects trivial gcds cheaply.
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kProbePrime = (1ULL << 61) - 1;  // Mersenne prime 2^61-1

uint64_t mulmod(uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kProbePrime);
}

uint64_t powmod(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a) { return powmod(a, kProbePrime - 2); }

bool rational_mod(const Rational& c, uint64_t& out) {
    uint64_t d = c.den().mod_u64(kProbePrime);
    if (d == 0) return false;
    out = mulmod(c.num().mod_u64(kProbePrime), invmod(d));
    return true;
}

// Dense univariate gcd degree over F_p; -1 encodes the zero polynomial.
int gcd_degree_mod_p(std::vector<uint64_t> a, std::vector<uint64_t> b) {
    auto trim = [](std::vector<uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        uint64_t inv_lb = invmod(b.back());
        while (a.size() >= b.size()) {
            uint64_t f = mulmod(a.back(), inv_lb);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t sub = mulmod(f, b[i]);
                uint64_t& t = a[off + i];
                t = (t >= sub) ? t - sub : t + kProbePrime - sub;
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

}  // namespace

namespace detail {

// Specializes every variable except `main` at the given values and reduces
// mod p. Returns false when the leading coefficient in `main` vanished.
bool specialize_mod_p(const Polynomial& p, size_t main, const std::vector<long>& values,
                      std::vector<uint64_t>& out) {
    int dm = p.degree_in(main);
    out.assign(static_cast<size_t>(dm) + 1, 0);
    for (const auto& [e, c] : p.terms()) {
        uint64_t v = 0;
        if (!rational_mod(c, v)) return false;
        for (size_t i = 0; i < e.size(); ++i) {
            if (i == main || e[i] == 0) continue;
            long base = values[i];
            uint64_t bb = base >= 0 ? static_cast<uint64_t>(base)
                                    : kProbePrime - static_cast<uint64_t>(-base);
            v = mulmod(v, powmod(bb, e[i]));
        }
        uint64_t& slot = out[e[main]];
        slot += v;
        if (slot >= kProbePrime) slot -= kProbePrime;
    }
    return out.back() != 0;
}

}  // namespace detail

namespace {

// Leading coefficient of p viewed as a univariate polynomial in vars[main].
Polynomial coeff_wrt(const Polynomial& p, size_t main, uint32_t k) {
    Polynomial r(p.vars());
    for (const auto& [e, c] : p.terms()) {
        if (e[main] != k) continue;
        ExpVec ne = e;
        ne[main] = 0;
        r += Polynomial::monomial(c, ne, p.vars());
    }
    return r;
}

Polynomial mono_shift(const Polynomial& p, size_t main, uint32_t k) {
    ExpVec e(p.vars().size(), 0);
    e[main] = k;
    return p * Polynomial::monomial(Rational(1), e, p.vars());
}

// Pseudo-remainder of a by b in variable `main`; requires deg(a) >= deg(b) > 0.
Polynomial prem(const Polynomial& a, const Polynomial& b, size_t main) {
    int db = b.degree_in(main);
    Polynomial lcb = coeff_wrt(b, main, static_cast<uint32_t>(db));
    Polynomial r = a;
    int e = a.degree_in(main) - db + 1;
    while (!r.is_zero() && r.degree_in(main) >= db) {
        int dr = r.degree_in(main);
        Polynomial lcr = coeff_wrt(r, main, static_cast<uint32_t>(dr));
        r = lcb * r - mono_shift(lcr * b, main, static_cast<uint32_t>(dr - db));
        --e;
    }
    for (; e > 0; --e) r *= lcb;
    return r;
}

Polynomial content_wrt(const Polynomial& p, size_t main) {
    Polynomial g(p.vars());
    int d = p.degree_in(main);
    for (int k = d; k >= 0; --k) {
        Polynomial ck = coeff_wrt(p, main, static_cast<uint32_t>(k));
        if (ck.is_zero()) continue;
        g = g.is_zero() ? ck : Polynomial::gcd(g, ck);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? Polynomial::constant(Rational(1), p.vars()) : g;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return Polynomial();
    if (a.is_zero()) return b.primitive_part();
    if (b.is_zero()) return a.primitive_part();

    Polynomial x, y;
    align(a, b, x, y);
    x = x.primitive_part();
    y = y.primitive_part();
    if (x == y) return x;
    if (x.is_constant() || y.is_constant()) return Polynomial::constant(Rational(1), x.vars_);

    // Pick a main variable both depend on, minimizing the smaller degree.
    size_t main = npos;
    int best = -1;
    for (size_t i = 0; i < x.vars_.size(); ++i) {
        if (!x.depends_on(i) || !y.depends_on(i)) continue;
        int m = std::min(x.degree_in(i), y.degree_in(i));
        if (main == npos || m < best) {
            main = i;
            best = m;
        }
    }
    if (main == npos) return Polynomial::constant(Rational(1), x.vars_);  // disjoint supports

    Polynomial cx = content_wrt(x, main);
    Polynomial cy = content_wrt(y, main);
    Polynomial gc = gcd(cx, cy);
    Polynomial px = div_exact(x, cx).primitive_part();
    Polynomial py = div_exact(y, cy).primitive_part();

    // Modular probe: if the specialized univariate gcd already has degree 0,
    // the primitive parts are coprime and only the content gcd survives.
    {
        static const long candidates[] = {2, 3, 5, 7, 11, -2, -3, 13};
        for (long c0 : candidates) {
            std::vector<long> values(x.vars_.size(), c0);
            std::vector<uint64_t> ua, ub;
            if (!detail::specialize_mod_p(px, main, values, ua)) continue;
            if (!detail::specialize_mod_p(py, main, values, ub)) continue;
            int d = gcd_degree_mod_p(ua, ub);
            if (d == 0) return gc.primitive_part();
            break;  // probe says a common factor is plausible; run the PRS
        }
    }

    Polynomial r0 = px, r1 = py;
    if (r0.degree_in(main) < r1.degree_in(main)) std::swap(r0, r1);
    while (true) {
        Polynomial r = prem(r0, r1, main);
        if (r.is_zero()) break;
        if (r.degree_in(main) == 0) {
            r1 = Polynomial::constant(Rational(1), x.vars_);
            break;
        }
        r0 = std::move(r1);
        Polynomial c = content_wrt(r, main);
        r1 = div_exact(r, c).primitive_part();
    }
    if (r1.is_constant()) return gc.primitive_part();
    Polynomial cr = content_wrt(r1, main);
    Polynomial pp = div_exact(r1, cr).primitive_part();
    return (gc * pp).primitive_part();
}

}  // namespace kipp
