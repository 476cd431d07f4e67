#include "flp/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flp {

namespace {

void check_same_ring(const Polynomial& p, const Polynomial& q) {
    if (p.nvars() != q.nvars())
        fail(ErrorKind::invalid_argument, "polynomials live in rings with different variable counts");
}

bool canonical_greater(const Monomial& a, const Monomial& b) {
    return compare_degrevlex(a, b, 0, a.size()) > 0;
}

// Merge two canonical term lists, scaling the second by `sign`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const int c = compare_degrevlex(a[i].mono, b[j].mono, 0, a[i].mono.size());
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
            ++j;
        } else {
            Rational s = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
            if (s != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
    return out;
}

}  // namespace

// --- Monomial ---------------------------------------------------------------

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

void Monomial::set(std::size_t i, std::uint32_t e) {
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = e;
}

bool Monomial::divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

bool Monomial::coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += other.exps_[i];
    out.degree_ += other.degree_;
    return out;
}

Monomial Monomial::quotient_of(const Monomial& num) const {
    Monomial out = num;
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] -= exps_[i];
    out.degree_ -= degree_;
    return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
    std::vector<std::uint32_t> e(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
    return Monomial(std::move(e));
}

Monomial Monomial::extended(std::size_t extra) const {
    Monomial out = *this;
    out.exps_.resize(exps_.size() + extra, 0);
    return out;
}

Monomial Monomial::truncated(std::size_t nvars) const {
    std::vector<std::uint32_t> e(exps_.begin(), exps_.begin() + static_cast<std::ptrdiff_t>(nvars));
    return Monomial(std::move(e));
}

// --- orders -----------------------------------------------------------------

int compare_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    if (lo == 0 && hi == a.size()) {
        da = a.degree();
        db = b.degree();
    } else {
        for (std::size_t i = lo; i < hi; ++i) {
            da += a[i];
            db += b[i];
        }
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i > lo; --i) {
        if (a[i - 1] != b[i - 1]) return a[i - 1] < b[i - 1] ? 1 : -1;
    }
    return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b, std::size_t count) const {
    const std::size_t n = std::min(count, a.size());
    switch (kind_) {
        case Kind::lex:
            return compare_lex(a, b, 0, n);
        case Kind::degrevlex:
            return compare_degrevlex(a, b, 0, n);
        case Kind::elimination: {
            const std::size_t split = std::min(block_, n);
            if (int c = compare_degrevlex(a, b, 0, split); c != 0) return c;
            return compare_degrevlex(a, b, split, n);
        }
    }
    return 0;
}

std::string MonomialOrder::name() const {
    switch (kind_) {
        case Kind::lex: return "lex";
        case Kind::degrevlex: return "degrevlex";
        case Kind::elimination: return "elimination(" + std::to_string(block_) + ")";
    }
    return "?";
}

// --- Polynomial -------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    Rational k = c;
    k.canonicalize();
    if (k != 0) p.terms_.push_back({Monomial(nvars), k});
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) fail(ErrorKind::invalid_argument, "variable index out of range");
    Monomial m(nvars);
    m.set(index, 1);
    return monomial(m, 1);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.size());
    Rational k = c;
    k.canonicalize();
    if (k != 0) p.terms_.push_back({m, k});
    return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
    for (const auto& t : terms)
        if (t.mono.size() != nvars) fail(ErrorKind::invalid_argument, "term has wrong variable count");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return canonical_greater(a.mono, b.mono); });
    Polynomial p(nvars);
    for (auto& t : terms) {
        t.coeff.canonicalize();
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff == 0) p.terms_.pop_back();
        } else if (t.coeff != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

bool Polynomial::is_one() const {
    return terms_.size() == 1 && terms_.front().mono.is_one() && terms_.front().coeff == 1;
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty()) fail(ErrorKind::invalid_argument, "leading term of zero polynomial");
    return terms_.front();
}

Term Polynomial::leading_term(const MonomialOrder& order) const {
    if (terms_.empty()) fail(ErrorKind::invalid_argument, "leading term of zero polynomial");
    const Term* best = &terms_.front();
    for (const auto& t : terms_)
        if (order.compare(t.mono, best->mono) > 0) best = &t;
    return *best;
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return 0;
}

std::uint32_t Polynomial::total_degree() const {
    return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

Polynomial Polynomial::operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    check_same_ring(*this, other);
    terms_ = merge_terms(terms_, other.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    check_same_ring(*this, other);
    terms_ = merge_terms(terms_, other.terms_, -1);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
    *this = mul(*this, other);
    return *this;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Rational k = c;
    k.canonicalize();
    if (k == 0) return Polynomial(nvars_);
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff *= k;
    return p;
}

Polynomial Polynomial::shifted(const Monomial& m) const {
    // Multiplying by a monomial preserves the canonical order.
    Polynomial p = *this;
    for (auto& t : p.terms_) t.mono = t.mono * m;
    return p;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    Rational inv = 1 / terms_.front().coeff;
    return scaled(inv);
}

Polynomial Polynomial::extended(std::size_t extra) const {
    Polynomial p(nvars_ + extra);
    p.terms_.reserve(terms_.size());
    // Appending zero exponents keeps degrevlex order intact.
    for (const auto& t : terms_) p.terms_.push_back({t.mono.extended(extra), t.coeff});
    return p;
}

bool Polynomial::operator==(const Polynomial& other) const {
    if (nvars_ != other.nvars_ || terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (!(terms_[i].mono == other.terms_[i].mono) || terms_[i].coeff != other.terms_[i].coeff) return false;
    }
    return true;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(const Polynomial& a, const Polynomial& b) { return mul(a, b); }

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }

Polynomial mul(const Polynomial& p, const Polynomial& q) {
    check_same_ring(p, q);
    if (p.is_zero() || q.is_zero()) return Polynomial(p.nvars());
    if (q.size() == 1) return p.shifted(q.terms().front().mono).scaled(q.terms().front().coeff);
    if (p.size() == 1) return q.shifted(p.terms().front().mono).scaled(p.terms().front().coeff);
    std::vector<Term> raw;
    raw.reserve(p.size() * q.size());
    for (const auto& a : p.terms())
        for (const auto& b : q.terms()) raw.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return Polynomial::from_terms(p.nvars(), std::move(raw));
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
    Polynomial result = Polynomial::constant(p.nvars(), 1);
    Polynomial base = p;
    while (exponent > 0) {
        if (exponent & 1u) result = mul(result, base);
        exponent >>= 1u;
        if (exponent > 0) base = mul(base, base);
    }
    return result;
}

// --- division ---------------------------------------------------------------

namespace {

std::vector<Term> sorted_by(const Polynomial& p, const MonomialOrder& order) {
    std::vector<Term> t = p.terms();
    if (order.kind() != MonomialOrder::Kind::degrevlex) {
        std::stable_sort(t.begin(), t.end(),
                         [&](const Term& a, const Term& b) { return order.compare(a.mono, b.mono) > 0; });
    }
    return t;
}

// work[from..] - c * m * g, all under `order`.
std::vector<Term> sub_scaled(const std::vector<Term>& work, std::size_t from, const Rational& c,
                             const Monomial& m, const std::vector<Term>& g, const MonomialOrder& order) {
    std::vector<Term> out;
    out.reserve(work.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < work.size() && j < g.size()) {
        Monomial gm = g[j].mono * m;
        const int cmp = order.compare(work[i].mono, gm);
        if (cmp > 0) {
            out.push_back(work[i++]);
        } else if (cmp < 0) {
            out.push_back({std::move(gm), -c * g[j].coeff});
            ++j;
        } else {
            Rational s = work[i].coeff - c * g[j].coeff;
            if (s != 0) out.push_back({std::move(gm), std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < work.size(); ++i) out.push_back(work[i]);
    for (; j < g.size(); ++j) out.push_back({g[j].mono * m, -c * g[j].coeff});
    return out;
}

}  // namespace

DivisionResult divrem(const Polynomial& p, std::span<const Polynomial> divisors, const MonomialOrder& order) {
    if (divisors.empty()) fail(ErrorKind::invalid_argument, "divrem needs at least one divisor");
    std::vector<std::vector<Term>> ds;
    for (const auto& d : divisors) {
        check_same_ring(p, d);
        if (d.is_zero()) fail(ErrorKind::invalid_argument, "divrem divisor is zero");
        ds.push_back(sorted_by(d, order));
    }
    std::vector<std::vector<Term>> qterms(divisors.size());
    std::vector<Term> rem;
    std::vector<Term> work = sorted_by(p, order);
    std::size_t head = 0;
    while (head < work.size()) {
        const Term& lt = work[head];
        bool reduced = false;
        for (std::size_t k = 0; k < ds.size(); ++k) {
            const Term& dl = ds[k].front();
            if (!dl.mono.divides(lt.mono)) continue;
            Monomial m = dl.mono.quotient_of(lt.mono);
            Rational c = lt.coeff / dl.coeff;
            qterms[k].push_back({m, c});
            work = sub_scaled(work, head, c, m, ds[k], order);
            head = 0;
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.push_back(lt);
            ++head;
        }
    }
    DivisionResult out;
    for (auto& q : qterms) out.quotients.push_back(Polynomial::from_terms(p.nvars(), std::move(q)));
    out.remainder = Polynomial::from_terms(p.nvars(), std::move(rem));
    return out;
}

Polynomial exact_divide(const Polynomial& p, const Polynomial& d) {
    if (d.is_zero()) fail(ErrorKind::invalid_argument, "division by zero polynomial");
    if (d.is_constant()) return p.scaled(1 / d.terms().front().coeff);
    auto res = divrem(p, std::span<const Polynomial>(&d, 1));
    if (!res.remainder.is_zero()) fail(ErrorKind::not_member, "polynomial division is not exact");
    return std::move(res.quotients.front());
}

bool divides(const Polynomial& d, const Polynomial& p) {
    if (d.is_zero()) return p.is_zero();
    if (d.is_constant()) return true;
    return divrem(p, std::span<const Polynomial>(&d, 1)).remainder.is_zero();
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var_index) {
    if (var_index >= p.nvars()) fail(ErrorKind::invalid_argument, "derivative variable index out of range");
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        const std::uint32_t e = t.mono[var_index];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(var_index, e - 1);
        out.push_back({std::move(m), t.coeff * e});
    }
    return Polynomial::from_terms(p.nvars(), std::move(out));
}

bool is_squarefree(const Polynomial& p) {
    if (p.is_zero()) fail(ErrorKind::invalid_argument, "is_squarefree of zero polynomial");
    if (p.is_constant()) return true;
    std::vector<Polynomial> ps{p};
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        Polynomial d = partial_derivative(p, i);
        if (!d.is_zero()) ps.push_back(std::move(d));
    }
    return gcd(ps).is_constant();
}

bool associated(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
    return p.monic() == q.monic();
}

// --- printing ---------------------------------------------------------------

std::vector<std::string> default_variable_names(std::size_t nvars) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i + 1));
    return names;
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
    std::vector<std::string> fallback;
    if (names.size() < p.nvars()) {
        fallback = default_variable_names(p.nvars());
        names = fallback;
    }
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        Rational c = t.coeff;
        const bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool need_star = false;
        if (t.mono.is_one() || c != 1) {
            os << c.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            const std::uint32_t e = t.mono[i];
            if (e == 0) continue;
            if (need_star) os << "*";
            os << names[i];
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace flp
