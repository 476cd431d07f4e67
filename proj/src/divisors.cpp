#include "flp/divisors.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <tuple>

#include <gmpxx.h>

#include "flp/matpoly.hpp"

namespace flp {

namespace {

using ZPoly = std::vector<mpz_class>;  // dense, lowest degree first

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long deg(const ZPoly& a) { return static_cast<long>(a.size()) - 1; }

// Arithmetic in (Z/m)[x]; division needs a unit leading coefficient.
class Field {
public:
    explicit Field(mpz_class m) : p_(std::move(m)) {}

    const mpz_class& prime() const { return p_; }

    mpz_class reduce(const mpz_class& x) const {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t());
        return r;
    }

    mpz_class inverse(const mpz_class& x) const {
        mpz_class r;
        if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t()) == 0)
            fail(ErrorKind::invalid_argument, "modular inverse of zero");
        return r;
    }

    ZPoly reduce(const ZPoly& a) const {
        ZPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = reduce(a[i]);
        trim(r);
        return r;
    }

    ZPoly add(const ZPoly& a, const ZPoly& b) const {
        ZPoly r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            mpz_class x = i < a.size() ? a[i] : mpz_class(0);
            if (i < b.size()) x += b[i];
            r[i] = reduce(x);
        }
        trim(r);
        return r;
    }

    ZPoly sub(const ZPoly& a, const ZPoly& b) const {
        ZPoly r(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            mpz_class x = i < a.size() ? a[i] : mpz_class(0);
            if (i < b.size()) x -= b[i];
            r[i] = reduce(x);
        }
        trim(r);
        return r;
    }

    ZPoly mul(const ZPoly& a, const ZPoly& b) const {
        if (a.empty() || b.empty()) return {};
        ZPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        for (auto& c : r) c = reduce(c);
        trim(r);
        return r;
    }

    // Quotient and remainder of a by nonzero b.
    std::pair<ZPoly, ZPoly> divmod(ZPoly a, const ZPoly& b) const {
        const mpz_class inv = inverse(b.back());
        ZPoly q;
        if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
        while (!a.empty() && a.size() >= b.size()) {
            const std::size_t shift = a.size() - b.size();
            const mpz_class c = reduce(a.back() * inv);
            q[shift] = c;
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = reduce(a[shift + j] - c * b[j]);
            trim(a);
        }
        trim(q);
        return {q, a};
    }

    ZPoly rem(const ZPoly& a, const ZPoly& b) const { return divmod(a, b).second; }

    ZPoly monic(ZPoly a) const {
        if (a.empty()) return a;
        const mpz_class inv = inverse(a.back());
        for (auto& c : a) c = reduce(c * inv);
        return a;
    }

    ZPoly gcd(ZPoly a, ZPoly b) const {
        while (!b.empty()) {
            ZPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(std::move(a));
    }

    // Monic gcd g with s a + t b = g (prime modulus).
    std::tuple<ZPoly, ZPoly, ZPoly> xgcd(ZPoly a, ZPoly b) const {
        ZPoly s0{1}, s1, t0, t1{1};
        while (!b.empty()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
            ZPoly s2 = sub(s0, mul(q, s1));
            ZPoly t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        const ZPoly inv{inverse(a.back())};
        return {mul(a, inv), mul(s0, inv), mul(t0, inv)};
    }

    ZPoly powmod(const ZPoly& base, const mpz_class& e, const ZPoly& f) const {
        ZPoly result{1};
        ZPoly b = rem(base, f);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), f);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b), f);
        }
        return result;
    }

private:
    mpz_class p_;
};

// Arithmetic in (Z/p)[x] for a word-size prime p < 2^31.
using WPoly = std::vector<std::uint64_t>;

void trim(WPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long deg(const WPoly& a) { return static_cast<long>(a.size()) - 1; }

class SmallField {
public:
    explicit SmallField(std::uint64_t p) : p_(p) {}

    std::uint64_t prime() const { return p_; }

    WPoly reduce(const ZPoly& a) const {
        WPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p_);
        trim(r);
        return r;
    }

    ZPoly lift(const WPoly& a) const {
        ZPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
        return r;
    }

    std::uint64_t inverse(std::uint64_t x) const { return pow(x, p_ - 2); }

    std::uint64_t pow(std::uint64_t b, std::uint64_t e) const {
        std::uint64_t r = 1;
        b %= p_;
        for (; e > 0; e >>= 1) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
        }
        return r;
    }

    WPoly sub(const WPoly& a, const WPoly& b) const {
        WPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const std::uint64_t x = i < a.size() ? a[i] : 0;
            const std::uint64_t y = i < b.size() ? b[i] : 0;
            r[i] = (x + p_ - y) % p_;
        }
        trim(r);
        return r;
    }

    WPoly mul(const WPoly& a, const WPoly& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += a[i] * b[j];
        }
        WPoly r(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p_);
        trim(r);
        return r;
    }

    std::pair<WPoly, WPoly> divmod(WPoly a, const WPoly& b) const {
        const std::uint64_t inv = inverse(b.back());
        WPoly q;
        if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
        while (!a.empty() && a.size() >= b.size()) {
            const std::size_t shift = a.size() - b.size();
            const std::uint64_t c = a.back() * inv % p_;
            q[shift] = c;
            for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = (a[shift + j] + (p_ - c) * b[j]) % p_;
            trim(a);
        }
        trim(q);
        return {q, a};
    }

    WPoly rem(const WPoly& a, const WPoly& b) const { return divmod(a, b).second; }

    WPoly monic(WPoly a) const {
        if (a.empty()) return a;
        const std::uint64_t inv = inverse(a.back());
        for (auto& c : a) c = c * inv % p_;
        return a;
    }

    WPoly gcd(WPoly a, WPoly b) const {
        while (!b.empty()) {
            WPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(std::move(a));
    }

    WPoly powmod(const WPoly& base, const mpz_class& e, const WPoly& f) const {
        WPoly result{1};
        WPoly b = rem(base, f);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            result = rem(mul(result, result), f);
            if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b), f);
        }
        return result;
    }

private:
    std::uint64_t p_;
};

WPoly derivative(const SmallField& F, const WPoly& a) {
    WPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % F.prime()) % F.prime());
    trim(r);
    return r;
}

// Distinct-degree factorization of a monic square-free f.
std::vector<std::pair<WPoly, std::size_t>> distinct_degree(const SmallField& F, WPoly f) {
    std::vector<std::pair<WPoly, std::size_t>> out;
    const WPoly x{0, 1};
    const mpz_class p = static_cast<unsigned long>(F.prime());
    WPoly h = F.rem(x, f);
    for (std::size_t i = 1; deg(f) >= static_cast<long>(2 * i); ++i) {
        h = F.powmod(h, p, f);
        WPoly g = F.gcd(F.sub(h, x), f);
        if (deg(g) > 0) {
            out.emplace_back(g, i);
            f = F.divmod(f, g).first;
            h = F.rem(h, f);
        }
    }
    if (deg(f) > 0) out.emplace_back(F.monic(f), static_cast<std::size_t>(deg(f)));
    return out;
}

// Cantor-Zassenhaus equal-degree splitting, odd p.
void equal_degree(const SmallField& F, const WPoly& g, std::size_t d, std::mt19937_64& rng, std::vector<WPoly>& out) {
    if (static_cast<std::size_t>(deg(g)) == d) {
        out.push_back(g);
        return;
    }
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(F.prime()), d);
    const mpz_class e = (pd - 1) / 2;
    std::uniform_int_distribution<std::uint64_t> coeff(0, F.prime() - 1);
    for (;;) {
        WPoly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a) c = coeff(rng);
        trim(a);
        if (deg(a) < 1) continue;
        WPoly h = F.gcd(F.sub(F.powmod(a, e, g), WPoly{1}), g);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            equal_degree(F, h, d, rng, out);
            equal_degree(F, F.monic(F.divmod(g, h).first), d, rng, out);
            return;
        }
    }
}

mpz_class content(const ZPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive(ZPoly a) {
    const mpz_class g = content(a);
    if (g != 0 && g != 1)
        for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return a;
}

// Bound on the coefficients of any factor of a (Mignotte).
mpz_class factor_coefficient_bound(const ZPoly& a) {
    mpz_class sq = 0;
    for (const auto& c : a) sq += c * c;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), sq.get_mpz_t());
    root += 1;
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(deg(a)));
    return two_n * root;
}

struct Substitution {
    std::vector<std::size_t> vars;  // occurring variables, in order
    std::size_t base = 2;
};

// Kronecker image x^(e_0 + e_1 D + e_2 D^2 + ...); nullopt past the degree bound.
std::optional<ZPoly> kronecker_image(const Polynomial& p, const Substitution& s, std::size_t max_degree) {
    mpz_class denom_lcm = 1;
    for (const auto& t : p.terms()) mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    std::vector<std::pair<std::size_t, mpz_class>> coeffs;
    std::size_t top = 0;
    for (const auto& t : p.terms()) {
        std::size_t e = 0;
        std::size_t weight = 1;
        for (auto v : s.vars) {
            e += t.mono[v] * weight;
            if (e > max_degree) return std::nullopt;
            weight *= s.base;
        }
        mpq_class scaled = t.coeff * denom_lcm;
        coeffs.emplace_back(e, scaled.get_num());
        top = std::max(top, e);
    }
    ZPoly u(top + 1, 0);
    for (auto& [e, c] : coeffs) u[e] = c;
    return u;
}

Polynomial inverse_image(const ZPoly& u, const Substitution& s, std::size_t nvars) {
    std::vector<Term> terms;
    for (std::size_t e = 0; e < u.size(); ++e) {
        if (u[e] == 0) continue;
        Monomial m(nvars);
        std::size_t rest = e;
        for (std::size_t k = 0; k < s.vars.size(); ++k) {
            const bool last = k + 1 == s.vars.size();
            m.set(s.vars[k], static_cast<std::uint32_t>(last ? rest : rest % s.base));
            rest = last ? 0 : rest / s.base;
        }
        terms.push_back({m, Rational(u[e])});
    }
    return Polynomial::from_terms(nvars, std::move(terms));
}

bool within_degrees(const Polynomial& q, const Polynomial& p) {
    for (std::size_t v = 0; v < p.nvars(); ++v)
        if (q.degree_in(v) > p.degree_in(v)) return false;
    return true;
}

struct ModularSplit {
    std::size_t count = 0;       // modular factor count
    mpz_class modulus;           // p^k past the recombination bound
    std::vector<ZPoly> factors;  // monic, lifted to the modulus; empty past the factor bound
};

// f = g h mod p with h monic and g, h coprime; returns the factors lifted
// modulo the first p^(2^j) reaching target (quadratic Hensel lifting).
std::pair<ZPoly, ZPoly> hensel_lift(const ZPoly& f, ZPoly g, ZPoly h, const mpz_class& p, const mpz_class& target) {
    auto [one, s, t] = Field(p).xgcd(g, h);
    for (mpz_class m = p; m < target;) {
        m *= m;
        Field R(m);
        const ZPoly e = R.sub(R.reduce(f), R.mul(g, h));
        auto [q, r] = R.divmod(R.mul(s, e), h);
        ZPoly g2 = R.add(R.add(g, R.mul(t, e)), R.mul(q, g));
        ZPoly h2 = R.add(h, r);
        const ZPoly b = R.sub(R.add(R.mul(s, g2), R.mul(t, h2)), ZPoly{1});
        auto [c, d] = R.divmod(R.mul(s, b), h2);
        s = R.sub(s, d);
        t = R.sub(R.sub(t, R.mul(t, b)), R.mul(c, g2));
        g = std::move(g2);
        h = std::move(h2);
    }
    return {g, h};
}

std::vector<ZPoly> factor_mod_prime(const SmallField& F, const std::vector<std::pair<WPoly, std::size_t>>& ddf,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<WPoly> parts;
    for (const auto& [g, d] : ddf) equal_degree(F, g, d, rng, parts);
    std::vector<ZPoly> out;
    for (const auto& w : parts) out.push_back(F.lift(w));
    std::sort(out.begin(), out.end(), [](const ZPoly& a, const ZPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

// Factor a square-free integer polynomial modulo a small prime (the one
// with the fewest factors among a few candidates) and lift past the
// recombination bound; nullopt when no tried prime keeps it square-free.
std::optional<ModularSplit> modular_factors(const ZPoly& u, const FactorLimits& limits) {
    std::optional<std::pair<SmallField, std::vector<std::pair<WPoly, std::size_t>>>> chosen;
    std::size_t fewest = 0;
    int good = 0;
    mpz_class p = 3;
    for (int attempt = 0; attempt < 400 && good < 8; ++attempt) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        const SmallField F(p.get_ui());
        const WPoly um = F.reduce(u);
        if (um.size() != u.size()) continue;
        if (deg(F.gcd(um, derivative(F, um))) > 0) continue;
        ++good;
        auto ddf = distinct_degree(F, F.monic(um));
        std::size_t count = 0;
        for (const auto& [g, d] : ddf) count += static_cast<std::size_t>(deg(g)) / d;
        if (!chosen || count < fewest) {
            chosen.emplace(F, std::move(ddf));
            fewest = count;
        }
    }
    if (!chosen) return std::nullopt;
    if (fewest > limits.max_modular_factors) return ModularSplit{fewest, 0, {}};

    const mpz_class prime = static_cast<unsigned long>(chosen->first.prime());
    const std::vector<ZPoly> mods = factor_mod_prime(chosen->first, chosen->second, limits.seed);
    const mpz_class lc = u.back();
    const mpz_class target = 2 * abs(lc) * factor_coefficient_bound(u) + 1;
    ModularSplit split;
    split.count = fewest;
    ZPoly rest = u;
    for (std::size_t i = 0; i + 1 < mods.size(); ++i) {
        Field F(prime);
        ZPoly g{F.reduce(lc)};
        for (std::size_t j = i + 1; j < mods.size(); ++j) g = F.mul(g, mods[j]);
        auto [g_lift, h_lift] = hensel_lift(rest, g, mods[i], prime, target);
        split.factors.push_back(std::move(h_lift));
        rest = std::move(g_lift);
    }
    mpz_class m = prime;
    while (m < target) m *= m;
    Field R(m);
    split.modulus = m;
    split.factors.push_back(R.monic(R.reduce(rest)));
    return split;
}

// b | a over Z, by trial division.
bool divides_over_z(const ZPoly& b, ZPoly a) {
    while (!a.empty() && a.size() >= b.size()) {
        if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return false;
        const mpz_class c = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
        trim(a);
    }
    return a.empty();
}

ZPoly symmetric_lift(const ZPoly& a, const mpz_class& p) {
    const mpz_class half = p / 2;
    ZPoly r = a;
    for (auto& c : r)
        if (c > half) c -= p;
    trim(r);
    return r;
}

// One irreducible factor of p (no monomial factor, square-free,
// nonconstant), or nullopt when p is irreducible.
std::optional<Polynomial> find_factor(const Polynomial& p, const FactorLimits& limits) {
    Substitution s;
    for (std::size_t v = 0; v < p.nvars(); ++v)
        if (p.degree_in(v) > 0) {
            s.vars.push_back(v);
            s.base = std::max<std::size_t>(s.base, p.degree_in(v) + 1);
        }
    if (p.total_degree() <= 1) return std::nullopt;

    std::size_t fewest = 0;
    for (std::size_t retry = 0; retry <= limits.max_substitution_retries; ++retry, ++s.base) {
        auto image = kronecker_image(p, s, limits.max_image_degree);
        if (!image)
            fail(ErrorKind::factorization_incomplete, "irreducible_factors: substitution degree bound exceeded");
        ZPoly u = primitive(*image);
        std::size_t low = 0;
        while (u[low] == 0) ++low;
        ZPoly u0(u.begin() + static_cast<std::ptrdiff_t>(low), u.end());

        auto split = modular_factors(u0, limits);
        if (!split) continue;  // image not square-free for this base
        const auto& mods = split->factors;
        const std::size_t r = split->count;
        if (r <= 1) return std::nullopt;
        if (r > limits.max_modular_factors) {
            fewest = fewest == 0 ? r : std::min(fewest, r);
            continue;
        }

        Field F(split->modulus);
        const mpz_class lc = u0.back();
        const mpz_class trailing = lc * u0.front();
        const mpz_class half = split->modulus / 2;
        for (std::size_t size = 1; size < r; ++size) {
            for (const auto& subset : index_subsets(r, size)) {
                mpz_class t = lc;
                for (auto i : subset) t = (t * mods[i].front()) % split->modulus;
                if (t < 0) t += split->modulus;
                if (t > half) t -= split->modulus;
                if (t == 0 || !mpz_divisible_p(trailing.get_mpz_t(), t.get_mpz_t())) continue;
                ZPoly prod{F.reduce(lc)};
                for (auto i : subset) prod = F.mul(prod, mods[i]);
                ZPoly cand = primitive(symmetric_lift(prod, split->modulus));
                if (!divides_over_z(cand, u0)) continue;
                for (std::size_t j = 0; j <= low; ++j) {
                    ZPoly shifted(j, 0);
                    shifted.insert(shifted.end(), cand.begin(), cand.end());
                    Polynomial q = inverse_image(shifted, s, p.nvars());
                    if (q.is_constant() || !within_degrees(q, p) || associated(q, p)) continue;
                    if (divides(q, p)) return q.monic();
                }
            }
        }
        return std::nullopt;
    }
    if (fewest > 0)
        fail(ErrorKind::factorization_incomplete,
             "irreducible_factors: " + std::to_string(fewest) + " modular factors exceed the recombination bound");
    fail(ErrorKind::factorization_incomplete, "irreducible_factors: no square-free substitution image found");
}

bool descending(const Polynomial& a, const Polynomial& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        const int c = compare_degrevlex(ta[i].mono, tb[i].mono, 0, a.nvars());
        if (c != 0) return c > 0;
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff > tb[i].coeff;
    }
    return ta.size() > tb.size();
}

}  // namespace

std::vector<Polynomial> irreducible_factors(const Polynomial& d, const FactorLimits& limits) {
    if (d.is_zero()) fail(ErrorKind::invalid_argument, "irreducible_factors: zero polynomial");
    if (d.is_constant()) return {};
    if (!is_squarefree(d)) fail(ErrorKind::invalid_argument, "irreducible_factors: input is not square-free");

    std::vector<Polynomial> out;
    Polynomial rest = d.monic();
    for (std::size_t v = 0; v < d.nvars(); ++v) {
        std::uint32_t low = UINT32_MAX;
        for (const auto& t : rest.terms()) low = std::min(low, t.mono[v]);
        if (low == 0) continue;
        Polynomial z = Polynomial::variable(d.nvars(), v);
        out.push_back(z);
        rest = exact_divide(rest, z);
    }
    std::vector<Polynomial> pending{rest};
    while (!pending.empty()) {
        Polynomial p = std::move(pending.back());
        pending.pop_back();
        if (p.is_constant()) continue;
        if (auto q = find_factor(p, limits)) {
            out.push_back(*q);
            pending.push_back(exact_divide(p, *q));
        } else {
            out.push_back(p.monic());
        }
    }
    std::sort(out.begin(), out.end(), descending);
    return out;
}

std::vector<Polynomial> validate_factors(const Polynomial& d, const std::vector<Polynomial>& factors) {
    if (d.is_zero()) fail(ErrorKind::invalid_argument, "validate_factors: zero polynomial");
    std::vector<Polynomial> out;
    Polynomial prod = Polynomial::constant(d.nvars(), 1);
    for (const auto& f : factors) {
        if (f.nvars() != d.nvars()) fail(ErrorKind::invalid_argument, "validate_factors: variable count mismatch");
        if (f.is_constant()) fail(ErrorKind::invalid_argument, "validate_factors: constant factor " + to_string(f));
        Polynomial m = f.monic();
        for (const auto& g : out)
            if (g == m) fail(ErrorKind::invalid_argument, "validate_factors: repeated factor " + to_string(f));
        prod = prod * m;
        out.push_back(std::move(m));
    }
    if (!associated(prod, d))
        fail(ErrorKind::invalid_argument, "validate_factors: product of the factors is not " + to_string(d));
    std::sort(out.begin(), out.end(), descending);
    return out;
}

std::size_t DivisorLattice::index_of(const Polynomial& f) const {
    for (std::size_t i = 0; i < divisors.size(); ++i)
        if (associated(divisors[i], f)) return i;
    fail(ErrorKind::invalid_argument, "divisor lattice: " + to_string(f) + " is not a member");
}

DivisorLattice enumerate_divisors(const std::vector<Polynomial>& factors, std::size_t nvars) {
    if (factors.size() >= 63) fail(ErrorKind::invalid_argument, "enumerate_divisors: too many factors");
    DivisorLattice lat;
    lat.factors = factors;
    const std::uint64_t count = std::uint64_t{1} << factors.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Polynomial p = Polynomial::constant(nvars, 1);
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (mask >> i & 1) p = p * factors[i];
        lat.divisors.push_back(p.monic());
        lat.masks.push_back(mask);
    }
    lat.d = lat.divisors.back();
    return lat;
}

MultipleSet multiples_of(const DivisorLattice& lattice, const Polynomial& f) {
    const std::uint64_t base = lattice.masks[lattice.index_of(f)];
    MultipleSet out;
    out.base = f.monic();
    for (std::size_t i = 0; i < lattice.divisors.size(); ++i) {
        if ((lattice.masks[i] & base) != base) continue;
        out.members.push_back(lattice.divisors[i]);
        out.indices.push_back(i);
    }
    return out;
}

}  // namespace flp
