#pragma once

#include "matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace mnec {

struct matroid_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using index_set = std::vector<std::size_t>;

inline std::uint64_t to_mask(const index_set& s) {
    std::uint64_t m = 0;
    for (auto i : s) m |= std::uint64_t{1} << i;
    return m;
}

inline index_set from_mask(std::uint64_t m) {
    index_set s;
    for (std::size_t i = 0; m; ++i, m >>= 1)
        if (m & 1) s.push_back(i);
    return s;
}

// Vector matroid M[A] with opaque string labels, one per column.
class vector_matroid {
public:
    vector_matroid() : cache_(std::make_shared<rank_cache>()) {}
    vector_matroid(matrix rep, std::vector<std::string> labels)
        : rep_(std::move(rep)), labels_(std::move(labels)), cache_(std::make_shared<rank_cache>()) {
        if (labels_.size() != rep_.cols()) throw matroid_error("label count does not match columns");
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size()) throw matroid_error("duplicate labels");
    }
    // Labels "1".."N".
    explicit vector_matroid(matrix rep) : vector_matroid(rep, numbered(rep.cols())) {}

    static std::vector<std::string> numbered(std::size_t n, const std::string& prefix = "") {
        std::vector<std::string> v;
        for (std::size_t i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
        return v;
    }

    const matrix& rep() const { return rep_; }
    const field& fld() const { return rep_.fld(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    std::size_t index_of(const std::string& l) const {
        auto it = std::find(labels_.begin(), labels_.end(), l);
        if (it == labels_.end()) throw matroid_error("unknown label '" + l + "'");
        return static_cast<std::size_t>(it - labels_.begin());
    }
    index_set indices(const std::vector<std::string>& ls) const {
        index_set s;
        for (auto& l : ls) s.push_back(index_of(l));
        return s;
    }
    std::vector<std::string> names(const index_set& s) const {
        std::vector<std::string> v;
        for (auto i : s) v.push_back(labels_.at(i));
        return v;
    }

    std::size_t rank(const index_set& s) const {
        for (auto i : s)
            if (i >= size()) throw matroid_error("element index out of range");
        if (size() > 64) return rep_.select_cols(s).rank();
        std::uint64_t key = to_mask(s);
        {
            std::lock_guard<std::mutex> g(cache_->mu);
            auto it = cache_->memo.find(key);
            if (it != cache_->memo.end()) return it->second;
        }
        std::size_t r = rep_.select_cols(from_mask(key)).rank();
        std::lock_guard<std::mutex> g(cache_->mu);
        cache_->memo.emplace(key, static_cast<std::uint32_t>(r));
        return r;
    }
    std::size_t rank(const std::vector<std::string>& ls) const { return rank(indices(ls)); }
    std::size_t rank() const { return rep_.rank(); }

    bool independent(const index_set& s) const { return rank(s) == s.size(); }

    index_set closure(const index_set& s) const {
        std::size_t r = rank(s);
        index_set out;
        for (std::size_t e = 0; e < size(); ++e) {
            if (std::find(s.begin(), s.end(), e) != s.end()) {
                out.push_back(e);
                continue;
            }
            index_set t = s;
            t.push_back(e);
            if (rank(t) == r) out.push_back(e);
        }
        return out;
    }

    bool is_flat(const index_set& s) const {
        index_set a = s;
        std::sort(a.begin(), a.end());
        return closure(a) == a;
    }

    // Minimal dependent sets, by increasing size with superset pruning.
    std::vector<index_set> circuits(std::size_t bound = 20) const {
        if (size() > bound) throw matroid_error("ground set too large for circuit enumeration");
        std::size_t n = size();
        std::vector<std::uint64_t> found;
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<bool> pick(n, false);
            std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
            do {
                std::uint64_t m = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (pick[i]) m |= std::uint64_t{1} << i;
                bool sup = false;
                for (auto c : found)
                    if ((c & m) == c) {
                        sup = true;
                        break;
                    }
                if (sup) continue;
                if (rank(from_mask(m)) < k) found.push_back(m);
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
        std::vector<index_set> out;
        for (auto c : found) out.push_back(from_mask(c));
        return out;
    }

    // All flats (closures of every subset). Exponential; for small grounds only.
    std::vector<index_set> flats(std::size_t bound = 20) const {
        if (size() > bound) throw matroid_error("ground set too large for flat enumeration");
        std::set<std::uint64_t> seen;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << size()); ++m)
            seen.insert(to_mask(closure(from_mask(m))));
        std::vector<index_set> out;
        for (auto m : seen) out.push_back(from_mask(m));
        return out;
    }

    // (-D^T | I) built from the standard form (I | D), columns back in label order.
    vector_matroid dual() const {
        auto rr = rep_.rref();
        const field& f = fld();
        std::size_t n = size(), k = rr.rank;
        std::vector<bool> is_piv(n, false);
        for (auto c : rr.pivots) is_piv[c] = true;
        index_set nonpiv;
        for (std::size_t c = 0; c < n; ++c)
            if (!is_piv[c]) nonpiv.push_back(c);
        matrix d(f, n - k, n);
        for (std::size_t j = 0; j < nonpiv.size(); ++j) {
            d(j, nonpiv[j]) = 1;
            for (std::size_t i = 0; i < k; ++i) d(j, rr.pivots[i]) = f.neg(rr.r(i, nonpiv[j]));
        }
        return vector_matroid(d, labels_);
    }

    vector_matroid restrict_to(const index_set& keep) const {
        return vector_matroid(rep_.select_cols(keep), names(keep));
    }

    vector_matroid delete_elements(const index_set& t) const {
        index_set keep;
        for (std::size_t i = 0; i < size(); ++i)
            if (std::find(t.begin(), t.end(), i) == t.end()) keep.push_back(i);
        return restrict_to(keep);
    }

    // Pivot each non-loop element of t to a single nonzero entry, then drop its row and column.
    vector_matroid contract(const index_set& t) const {
        matrix a = rep_;
        const field& f = fld();
        std::vector<bool> drop_row(a.rows(), false);
        for (auto e : t) {
            std::size_t piv = a.rows();
            for (std::size_t r = 0; r < a.rows(); ++r)
                if (!drop_row[r] && a(r, e)) {
                    piv = r;
                    break;
                }
            if (piv == a.rows()) continue;  // loop (relative to rows still present)
            a.scale_row(piv, f.inv(a(piv, e)));
            for (std::size_t r = 0; r < a.rows(); ++r)
                if (r != piv && !drop_row[r] && a(r, e)) a.axpy_row(r, piv, f.neg(a(r, e)));
            drop_row[piv] = true;
        }
        index_set rows, cols;
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (!drop_row[r]) rows.push_back(r);
        for (std::size_t c = 0; c < size(); ++c)
            if (std::find(t.begin(), t.end(), c) == t.end()) cols.push_back(c);
        return vector_matroid(a.select_rows(rows).select_cols(cols), names(cols));
    }

    vector_matroid parallel_extend(std::size_t i, const std::string& label) const {
        if (rep_.col_is_zero(i)) throw matroid_error("cannot add in parallel with a loop");
        matrix a = rep_;
        a.append_col(rep_.col(i));
        auto ls = labels_;
        ls.push_back(label);
        return vector_matroid(a, ls);
    }

    // Bordered matrix: new bottom row with 1 at column i and at the new column.
    vector_matroid series_extend(std::size_t i, const std::string& label) const {
        if (rep_.col_is_zero(i)) throw matroid_error("cannot add in series with a loop");
        index_set others;
        for (std::size_t c = 0; c < size(); ++c)
            if (c != i) others.push_back(c);
        if (rank(others) != rank()) throw matroid_error("series extension needs a non-coloop");
        matrix a = rep_;
        a.append_col(std::vector<elem>(a.rows(), 0));
        std::vector<elem> row(a.cols(), 0);
        row[i] = 1;
        row.back() = 1;
        a.append_row(row);
        auto ls = labels_;
        ls.push_back(label);
        return vector_matroid(a, ls);
    }

    static vector_matroid direct_sum(const std::vector<vector_matroid>& ms) {
        if (ms.empty()) return {};
        const field& f = ms.front().fld();
        std::size_t rows = 0, cols = 0;
        std::vector<std::string> ls;
        for (auto& m : ms) {
            if (!(m.fld() == f)) throw matroid_error("direct sum over different fields");
            rows += m.rep().rows();
            cols += m.size();
            ls.insert(ls.end(), m.labels().begin(), m.labels().end());
        }
        matrix a(f, rows, cols);
        std::size_t r0 = 0, c0 = 0;
        for (auto& m : ms) {
            for (std::size_t r = 0; r < m.rep().rows(); ++r)
                for (std::size_t c = 0; c < m.size(); ++c) a(r0 + r, c0 + c) = m.rep()(r, c);
            r0 += m.rep().rows();
            c0 += m.size();
        }
        return vector_matroid(a, ls);  // throws on label collision
    }

    // Principal extension over GF(p^M) for a prime base field.
    vector_matroid principal_extension(const index_set& flat, const std::string& label) const {
        if (fld().m() != 1) throw matroid_error("principal extension implemented for prime fields only");
        index_set fs = flat;
        std::sort(fs.begin(), fs.end());
        if (!is_flat(fs)) throw matroid_error("generator set is not a flat");
        std::uint64_t fm = to_mask(fs);
        std::vector<index_set> excluded;
        for (auto& g : flats())
            if ((to_mask(g) & fm) != fm) excluded.push_back(g);
        unsigned p = fld().p();
        unsigned big_m = std::max<std::size_t>(1, excluded.size());
        field ext(p, big_m, field::default_modulus(p, big_m));
        elem beta = big_m == 1 ? 1 : p;  // the class of x, or 1 when M is 1
        matrix a(ext, rep_.rows(), size() + 1, std::vector<elem>(rep_.rows() * (size() + 1), 0));
        for (std::size_t r = 0; r < rep_.rows(); ++r)
            for (std::size_t c = 0; c < size(); ++c) a(r, c) = rep_(r, c);
        std::vector<elem> v(rep_.rows(), 0);
        elem bp = 1;
        for (auto& g : excluded) {
            // first element of the flat whose column leaves span(g)
            std::size_t pick = size();
            for (auto e : fs)
                if (std::find(g.begin(), g.end(), e) == g.end()) {
                    pick = e;
                    break;
                }
            for (std::size_t r = 0; r < rep_.rows(); ++r)
                v[r] = ext.add(v[r], ext.mul(rep_(r, pick), bp));
            bp = ext.mul(bp, beta);
        }
        for (std::size_t r = 0; r < rep_.rows(); ++r) a(r, size()) = v[r];
        auto ls = labels_;
        ls.push_back(label);
        return vector_matroid(a, ls);
    }

private:
    struct rank_cache {
        std::mutex mu;
        std::unordered_map<std::uint64_t, std::uint32_t> memo;
    };
    matrix rep_;
    std::vector<std::string> labels_;
    std::shared_ptr<rank_cache> cache_;
};

// k x len Vandermonde generator on points 1, g, g^2, ... then 0 and infinity.
inline matrix rs_generator(std::size_t k, std::size_t len, const field& f) {
    if (k > len) throw matroid_error("MDS dimension exceeds length");
    if (len > std::size_t{f.order()} + 1) throw matroid_error("field too small for MDS length");
    if (k == 1) return matrix(f, 1, len, std::vector<elem>(len, 1));
    matrix a(f, k, len);
    elem g = f.primitive(), pt = 1;
    for (std::size_t c = 0; c < len; ++c) {
        if (c < f.order() - 1) {
            for (std::size_t r = 0; r < k; ++r) a(r, c) = f.pow(pt, r);
            pt = f.mul(pt, g);
        } else if (c == f.order() - 1) {
            a(0, c) = 1;  // the point 0
        } else {
            a(k - 1, c) = 1;  // the point at infinity
        }
    }
    return a;
}

// Systematic (I_k | P) generator of an MDS code.
inline vector_matroid mds_matroid(std::size_t k, std::size_t len, const field& f) {
    if (k == 0) return vector_matroid(matrix(f, 0, len));
    return vector_matroid(rs_generator(k, len, f).rref().r);
}

// Matroid given only by its rank function.
struct rank_oracle {
    std::vector<std::string> ground;
    std::function<std::size_t(const index_set&)> rank;

    static rank_oracle of(const vector_matroid& m) {
        return {m.labels(), [m](const index_set& s) { return m.rank(s); }};
    }
};

// r(X) = r1(X∩E1) + r2(X∩E2) - |X∩shared|, assuming the shared elements are
// independent in both matroids.
inline rank_oracle amalgam(const rank_oracle& r1, const rank_oracle& r2) {
    rank_oracle out;
    out.ground = r1.ground;
    std::map<std::string, std::size_t> pos1, pos2;
    for (std::size_t i = 0; i < r1.ground.size(); ++i) pos1[r1.ground[i]] = i;
    for (std::size_t i = 0; i < r2.ground.size(); ++i) {
        pos2[r2.ground[i]] = i;
        if (!pos1.count(r2.ground[i])) out.ground.push_back(r2.ground[i]);
    }
    std::vector<long> map1(out.ground.size(), -1), map2(out.ground.size(), -1);
    for (std::size_t i = 0; i < out.ground.size(); ++i) {
        if (auto it = pos1.find(out.ground[i]); it != pos1.end()) map1[i] = static_cast<long>(it->second);
        if (auto it = pos2.find(out.ground[i]); it != pos2.end()) map2[i] = static_cast<long>(it->second);
    }
    out.rank = [r1, r2, map1, map2](const index_set& x) {
        index_set a, b;
        std::size_t shared = 0;
        for (auto e : x) {
            if (e >= map1.size()) throw matroid_error("element outside amalgam ground set");
            if (map1[e] >= 0) a.push_back(static_cast<std::size_t>(map1[e]));
            if (map2[e] >= 0) b.push_back(static_cast<std::size_t>(map2[e]));
            if (map1[e] >= 0 && map2[e] >= 0) ++shared;
        }
        return r1.rank(a) + r2.rank(b) - shared;
    };
    return out;
}

// Same formula, but shared elements that lie in the closure on both sides
// are allowed to join X: min over S ⊆ shared of r1(X1∪S) + r2(X2∪S) - |(X∪S)∩shared|.
// The plain formula can drop when such an element is added (x in cl1(X1) and
// cl2(X2) gives r(X∪x) = r(X) - 1); this version is monotone by construction.
inline rank_oracle amalgam_closed(const rank_oracle& r1, const rank_oracle& r2) {
    rank_oracle plain = amalgam(r1, r2);
    std::set<std::string> g2(r2.ground.begin(), r2.ground.end());
    std::vector<std::size_t> shared;
    for (std::size_t i = 0; i < r1.ground.size(); ++i)
        if (g2.count(r1.ground[i])) shared.push_back(i);
    if (shared.size() > 16) throw matroid_error("too many shared elements for the closed amalgam");
    rank_oracle out;
    out.ground = plain.ground;
    out.rank = [plain, shared](const index_set& x) {
        std::size_t best = plain.rank(x);
        std::size_t k = shared.size();
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) {
            index_set y = x;
            for (std::size_t i = 0; i < k; ++i)
                if (m >> i & 1) y.push_back(shared[i]);
            std::sort(y.begin(), y.end());
            y.erase(std::unique(y.begin(), y.end()), y.end());
            best = std::min(best, plain.rank(y));
        }
        return best;
    };
    return out;
}

struct axiom_report {
    bool ok = true;
    std::string witness;
    std::size_t checked = 0;
};

// R1: 0 <= r(X) <= |X|; R2: X ⊆ Y => r(X) <= r(Y); R3: submodularity.
inline axiom_report rank_axioms_check(const rank_oracle& m, bool exhaustive, std::size_t samples = 1000,
                                      std::uint64_t seed = 1) {
    axiom_report rep;
    std::size_t n = m.ground.size();
    auto show_set = [&](const index_set& xs) {
        std::string s = "{";
        bool first = true;
        for (auto i : xs) {
            s += (first ? "" : ",") + m.ground[i];
            first = false;
        }
        return s + "}";
    };
    auto show = [&](std::uint64_t x) { return show_set(from_mask(x)); };
    auto pc = [](std::uint64_t x) { return static_cast<std::size_t>(__builtin_popcountll(x)); };
    if (exhaustive) {
        if (n > 12) throw matroid_error("exhaustive axiom check limited to 12 elements");
        std::size_t total = std::size_t{1} << n;
        std::vector<long> r(total);
        for (std::size_t x = 0; x < total; ++x) {
            r[x] = static_cast<long>(m.rank(from_mask(x)));
            if (r[x] < 0 || static_cast<std::size_t>(r[x]) > pc(x)) {
                rep.ok = false;
                rep.witness = "R1 X=" + show(x);
                return rep;
            }
        }
        for (std::size_t x = 0; x < total; ++x)
            for (std::size_t y = 0; y < total; ++y) {
                ++rep.checked;
                if ((x & y) == x && r[x] > r[y]) {
                    rep.ok = false;
                    rep.witness = "R2 X=" + show(x) + " Y=" + show(y);
                    return rep;
                }
                if (r[x | y] + r[x & y] > r[x] + r[y]) {
                    rep.ok = false;
                    rep.witness = "R3 X=" + show(x) + " Y=" + show(y);
                    return rep;
                }
            }
        return rep;
    }
    std::mt19937_64 rng(seed);
    auto draw = [&]() {
        index_set s;
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1) s.push_back(i);
        return s;
    };
    for (std::size_t k = 0; k < samples; ++k) {
        index_set x = draw(), y = draw(), u, in;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(in));
        std::size_t rx = m.rank(x), ry = m.rank(y), ru = m.rank(u), ri = m.rank(in);
        ++rep.checked;
        if (rx > x.size() || ry > y.size()) {
            rep.ok = false;
            rep.witness = "R1 X=" + show_set(rx > x.size() ? x : y);
            return rep;
        }
        if (rx > ru || ri > rx) {
            rep.ok = false;
            rep.witness = "R2 X=" + show_set(rx > ru ? x : in) + " Y=" + show_set(rx > ru ? u : x);
            return rep;
        }
        if (ru + ri > rx + ry) {
            rep.ok = false;
            rep.witness = "R3 X=" + show_set(x) + " Y=" + show_set(y);
            return rep;
        }
    }
    return rep;
}

}  // namespace mnec
