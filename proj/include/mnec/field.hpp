#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mnec {

using elem = std::uint32_t;

struct field_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// GF(p^m). An element is stored as its "decimal code": the integer whose
// base-p digits are the polynomial coefficients, constant term lowest.
class field {
public:
    field() : field(2, 1, 2) {}

    field(unsigned p, unsigned m, std::uint64_t modulus) : p_(p), m_(m), modulus_(modulus) {
        if (p < 2 || !is_prime(p)) throw field_error("characteristic must be prime");
        if (m < 1) throw field_error("extension degree must be positive");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < m; ++i) {
            q *= p;
            if (q > (std::uint64_t{1} << 31)) throw field_error("field order too large");
        }
        q_ = static_cast<std::uint32_t>(q);
        mod_digits_ = digits_of(modulus, p);
        if (mod_digits_.size() != m + 1 || mod_digits_.back() != 1)
            throw field_error("modulus must be monic of degree m");
        if (!is_irreducible(p, m, modulus)) throw field_error("modulus is reducible");
        if (q_ <= (1u << 16)) build_tables();
    }

    // gf2, gf3, gf4, gf8, gf16, gf<q> for any prime power, custom:p,m,modulus
    static field parse(std::string_view spec) {
        if (spec.rfind("custom:", 0) == 0) {
            std::vector<std::uint64_t> v;
            std::string cur;
            for (char c : spec.substr(7)) {
                if (c == ',') {
                    v.push_back(to_u64(cur));
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            v.push_back(to_u64(cur));
            if (v.size() != 3) throw field_error("custom field needs p,m,modulus");
            return field(static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1]), v[2]);
        }
        if (spec.rfind("gf", 0) != 0 && spec.rfind("GF", 0) != 0)
            throw field_error("unknown field '" + std::string(spec) + "'");
        std::uint64_t q = to_u64(std::string(spec.substr(2)));
        unsigned p = 0, m = 0;
        for (unsigned d = 2; d <= q; ++d) {
            if (q % d == 0) {
                p = d;
                break;
            }
        }
        if (p == 0) throw field_error("bad field order");
        std::uint64_t t = q;
        while (t % p == 0) {
            t /= p;
            ++m;
        }
        if (t != 1) throw field_error("field order must be a prime power");
        return field(p, m, default_modulus(p, m));
    }

    // Smallest monic irreducible polynomial code of degree m.
    static std::uint64_t default_modulus(unsigned p, unsigned m) {
        std::uint64_t lo = 1;
        for (unsigned i = 0; i < m; ++i) lo *= p;
        for (std::uint64_t c = lo; c < 2 * lo; ++c)
            if (is_irreducible(p, m, c)) return c;
        throw field_error("no irreducible polynomial found");
    }

    static bool is_irreducible(unsigned p, unsigned m, std::uint64_t modulus) {
        auto f = digits_of(modulus, p);
        if (f.size() != m + 1 || f.back() != 1) return false;
        if (m == 1) return true;
        std::uint64_t pk = 1;
        for (unsigned d = 1; d <= m / 2; ++d) {
            pk *= p;
            for (std::uint64_t g = pk; g < 2 * pk; ++g) {
                auto gd = digits_of(g, p);
                if (poly_rem(f, gd, p).empty()) return false;
            }
        }
        return true;
    }

    unsigned p() const { return p_; }
    unsigned m() const { return m_; }
    std::uint32_t order() const { return q_; }
    std::uint64_t modulus() const { return modulus_; }

    std::string name() const {
        if (modulus_ == default_modulus(p_, m_)) return "gf" + std::to_string(q_);
        return "custom:" + std::to_string(p_) + "," + std::to_string(m_) + "," +
               std::to_string(modulus_);
    }

    bool operator==(const field& o) const {
        return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
    }

    elem add(elem a, elem b) const {
        if (p_ == 2) return a ^ b;
        if (m_ == 1) return (a + b) % p_;
        elem r = 0, w = 1;
        while (a || b) {
            r += w * ((a % p_ + b % p_) % p_);
            a /= p_;
            b /= p_;
            w *= p_;
        }
        return r;
    }

    elem neg(elem a) const {
        if (p_ == 2) return a;
        if (m_ == 1) return a ? p_ - a : 0;
        elem r = 0, w = 1;
        while (a) {
            r += w * ((p_ - a % p_) % p_);
            a /= p_;
            w *= p_;
        }
        return r;
    }

    elem sub(elem a, elem b) const { return add(a, neg(b)); }

    elem mul(elem a, elem b) const {
        if (a == 0 || b == 0) return 0;
        if (tab_) return tab_->exp[tab_->log[a] + tab_->log[b]];
        if (m_ == 1) return static_cast<elem>((std::uint64_t{a} * b) % p_);
        return slow_mul(a, b);
    }

    elem inv(elem a) const {
        if (a == 0) throw field_error("inverse of zero");
        if (tab_) return tab_->exp[(q_ - 1 - tab_->log[a]) % (q_ - 1)];
        return pow(a, q_ - 2);
    }

    elem div(elem a, elem b) const { return mul(a, inv(b)); }

    elem pow(elem a, std::uint64_t e) const {
        elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    // A generator of the multiplicative group.
    elem primitive() const {
        if (tab_) return tab_->exp[1];
        for (elem g = 2; g < q_; ++g)
            if (multiplicative_order(g) == q_ - 1) return g;
        return 1;
    }

    std::uint64_t multiplicative_order(elem a) const {
        if (a == 0) return 0;
        std::uint64_t n = q_ - 1, ord = n;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d) continue;
            while (n % d == 0) n /= d;
            while (ord % d == 0 && pow(a, ord / d) == 1) ord /= d;
        }
        if (n > 1 && pow(a, ord / n) == 1) ord /= n;
        return ord;
    }

private:
    unsigned p_, m_;
    std::uint64_t modulus_;
    std::uint32_t q_ = 0;
    std::vector<unsigned> mod_digits_;
    // Shared so that copying a field (every matrix holds one) stays cheap.
    struct tables {
        std::vector<elem> exp;
        std::vector<std::uint32_t> log;
    };
    std::shared_ptr<const tables> tab_;

    static bool is_prime(unsigned n) {
        if (n < 2) return false;
        for (unsigned d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static std::uint64_t to_u64(const std::string& s) {
        if (s.empty()) throw field_error("empty number in field name");
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw field_error("bad number '" + s + "' in field name");
            v = v * 10 + static_cast<unsigned>(c - '0');
        }
        return v;
    }

    static std::vector<unsigned> digits_of(std::uint64_t v, unsigned p) {
        std::vector<unsigned> d;
        while (v) {
            d.push_back(static_cast<unsigned>(v % p));
            v /= p;
        }
        return d;
    }

    // Remainder of a by b over GF(p); trailing zeros trimmed.
    static std::vector<unsigned> poly_rem(std::vector<unsigned> a, const std::vector<unsigned>& b,
                                          unsigned p) {
        auto trim = [](std::vector<unsigned>& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
        };
        trim(a);
        unsigned lead_inv = 1;
        while ((lead_inv * b.back()) % p != 1) ++lead_inv;
        while (a.size() >= b.size()) {
            unsigned c = (a.back() * lead_inv) % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
            trim(a);
        }
        return a;
    }

    elem slow_mul(elem a, elem b) const {
        auto da = digits_of(a, p_), db = digits_of(b, p_);
        std::vector<unsigned> prod(da.size() + db.size(), 0);
        for (std::size_t i = 0; i < da.size(); ++i)
            for (std::size_t j = 0; j < db.size(); ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        auto r = poly_rem(prod, mod_digits_, p_);
        elem v = 0;
        for (std::size_t i = r.size(); i-- > 0;) v = v * p_ + r[i];
        return v;
    }

    void build_tables() {
        elem g = 0;
        for (elem c = (m_ == 1 ? 2 : p_); c < q_ || q_ == 2; ++c) {
            if (q_ == 2) {
                g = 1;
                break;
            }
            elem x = 1;
            std::uint32_t k = 0;
            do {
                x = m_ == 1 ? static_cast<elem>((std::uint64_t{x} * c) % p_) : slow_mul(x, c);
                ++k;
            } while (x != 1);
            if (k == q_ - 1) {
                g = c;
                break;
            }
        }
        auto t = std::make_shared<tables>();
        t->exp.assign(2 * (q_ - 1) + 1, 0);
        t->log.assign(q_, 0);
        elem x = 1;
        for (std::uint32_t k = 0; k < 2 * (q_ - 1) + 1; ++k) {
            t->exp[k] = x;
            if (k < q_ - 1) t->log[x] = k;
            x = m_ == 1 ? static_cast<elem>((std::uint64_t{x} * g) % p_) : slow_mul(x, g);
        }
        tab_ = std::move(t);
    }
};

}  // namespace mnec
