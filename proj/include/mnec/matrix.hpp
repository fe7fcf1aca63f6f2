#pragma once

#include "field.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mnec {

struct rref_result;

// Dense row-major matrix over a field. The field is held by value; copies are cheap
// enough for our sizes since the tables are shared through the field's vectors.
class matrix {
public:
    matrix() = default;
    matrix(const field& f, std::size_t rows, std::size_t cols)
        : f_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    matrix(const field& f, std::size_t rows, std::size_t cols, std::vector<elem> entries)
        : f_(f), rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows * cols) throw field_error("matrix entry count mismatch");
        for (elem x : a_)
            if (x >= f_.order()) throw field_error("matrix entry outside field");
    }
    matrix(const field& f, std::initializer_list<std::initializer_list<elem>> rows) : f_(f) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) throw field_error("ragged matrix literal");
            for (elem x : r) {
                if (x >= f_.order()) throw field_error("matrix entry outside field");
                a_.push_back(x);
            }
        }
    }

    static matrix identity(const field& f, std::size_t n) {
        matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    const field& fld() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<elem>& data() const { return a_; }

    elem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    elem operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const matrix& o) const {
        return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<elem> col(std::size_t c) const {
        std::vector<elem> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    std::vector<elem> row(std::size_t r) const {
        return {a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
    }

    bool col_is_zero(std::size_t c) const {
        for (std::size_t r = 0; r < rows_; ++r)
            if ((*this)(r, c)) return false;
        return true;
    }

    matrix select_cols(const std::vector<std::size_t>& cs) const {
        matrix m(f_, rows_, cs.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < cs.size(); ++j) m(r, j) = (*this)(r, cs[j]);
        return m;
    }
    matrix select_rows(const std::vector<std::size_t>& rs) const {
        matrix m(f_, rs.size(), cols_);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(rs[i], c);
        return m;
    }

    matrix transpose() const {
        matrix t(f_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    // [this | o]
    matrix hcat(const matrix& o) const {
        if (rows_ != o.rows_) throw field_error("hcat row mismatch");
        matrix m(f_, rows_, cols_ + o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
            for (std::size_t c = 0; c < o.cols_; ++c) m(r, cols_ + c) = o(r, c);
        }
        return m;
    }
    // [this ; o]
    matrix vcat(const matrix& o) const {
        if (cols_ != o.cols_ && rows_ && o.rows_) throw field_error("vcat column mismatch");
        std::size_t cc = rows_ ? cols_ : o.cols_;
        matrix m(f_, rows_ + o.rows_, cc);
        std::copy(a_.begin(), a_.end(), m.a_.begin());
        std::copy(o.a_.begin(), o.a_.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
        return m;
    }

    void append_col(const std::vector<elem>& v) {
        if (v.size() != rows_) throw field_error("append_col size mismatch");
        std::vector<elem> b;
        b.reserve(rows_ * (cols_ + 1));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) b.push_back((*this)(r, c));
            b.push_back(v[r]);
        }
        a_ = std::move(b);
        ++cols_;
    }
    void append_row(const std::vector<elem>& v) {
        if (rows_ == 0 && cols_ == 0) cols_ = v.size();
        if (v.size() != cols_) throw field_error("append_row size mismatch");
        a_.insert(a_.end(), v.begin(), v.end());
        ++rows_;
    }

    matrix operator*(const matrix& o) const {
        if (cols_ != o.rows_) throw field_error("matrix product dimension mismatch");
        matrix m(f_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                elem a = (*this)(i, k);
                if (!a) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    if (o(k, j)) m(i, j) = f_.add(m(i, j), f_.mul(a, o(k, j)));
            }
        return m;
    }

    matrix operator+(const matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw field_error("matrix sum dimension mismatch");
        matrix m(f_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.add(a_[i], o.a_[i]);
        return m;
    }
    matrix operator-(const matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw field_error("matrix difference dimension mismatch");
        matrix m(f_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f_.sub(a_[i], o.a_[i]);
        return m;
    }

    std::vector<elem> mul_vec(const std::vector<elem>& v) const {
        if (v.size() != cols_) throw field_error("mul_vec dimension mismatch");
        std::vector<elem> out(rows_, 0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (v[c] && (*this)(r, c)) out[r] = f_.add(out[r], f_.mul((*this)(r, c), v[c]));
        return out;
    }

    void scale_row(std::size_t r, elem s) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = f_.mul((*this)(r, c), s);
    }
    void scale_col(std::size_t c, elem s) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = f_.mul((*this)(r, c), s);
    }
    // row dst += s * row src
    void axpy_row(std::size_t dst, std::size_t src, elem s) {
        if (!s) return;
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(src, c)) (*this)(dst, c) = f_.add((*this)(dst, c), f_.mul(s, (*this)(src, c)));
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    rref_result rref() const;
    std::size_t rank() const;
    matrix inverse() const;

    std::string to_text() const {
        std::ostringstream os;
        write(os);
        return os.str();
    }

    // "rows cols p m modulus" then one row per line
    void write(std::ostream& os) const {
        os << rows_ << ' ' << cols_ << ' ' << f_.p() << ' ' << f_.m() << ' ' << f_.modulus() << '\n';
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
            os << '\n';
        }
    }

    static matrix read(std::istream& is) {
        std::size_t r = 0, c = 0;
        unsigned p = 0, m = 0;
        std::uint64_t mod = 0;
        if (!(is >> r >> c >> p >> m >> mod)) throw field_error("bad matrix header");
        field f(p, m, mod);
        std::vector<elem> v(r * c);
        for (auto& x : v) {
            long long t;
            if (!(is >> t) || t < 0) throw field_error("bad matrix entry");
            x = static_cast<elem>(t);
        }
        return matrix(f, r, c, std::move(v));
    }

private:
    field f_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<elem> a_;
};

struct rref_result {
    matrix r;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

inline rref_result matrix::rref() const {
    rref_result out{*this, 0, {}};
    matrix& m = out.r;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
        std::size_t piv = row;
        while (piv < rows_ && m(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        m.swap_rows(row, piv);
        m.scale_row(row, f_.inv(m(row, c)));
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != row && m(r, c)) m.axpy_row(r, row, f_.neg(m(r, c)));
        out.pivots.push_back(c);
        ++row;
    }
    out.rank = row;
    return out;
}

// Forward elimination only; cheaper than full rref.
inline std::size_t matrix::rank() const {
    matrix m = *this;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
        std::size_t piv = row;
        while (piv < rows_ && m(piv, c) == 0) ++piv;
        if (piv == rows_) continue;
        m.swap_rows(row, piv);
        elem iv = f_.inv(m(row, c));
        for (std::size_t r = row + 1; r < rows_; ++r)
            if (m(r, c)) m.axpy_row(r, row, f_.neg(f_.mul(m(r, c), iv)));
        ++row;
    }
    return row;
}

inline matrix matrix::inverse() const {
    if (rows_ != cols_) throw field_error("inverse of non-square matrix");
    auto rr = hcat(identity(f_, rows_)).rref();
    if (rr.rank < rows_ || rr.pivots[rows_ - 1] >= rows_) throw field_error("singular matrix");
    std::vector<std::size_t> right;
    for (std::size_t c = rows_; c < 2 * rows_; ++c) right.push_back(c);
    return rr.r.select_cols(right);
}

// Solve M c = v. Free variables are set to zero.
inline std::optional<std::vector<elem>> span_member(const matrix& m, const std::vector<elem>& v) {
    if (v.size() != m.rows()) throw field_error("span_member dimension mismatch");
    matrix aug = m;
    aug.append_col(v);
    auto rr = aug.rref();
    if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
    std::vector<elem> c(m.cols(), 0);
    for (std::size_t i = 0; i < rr.rank; ++i) c[rr.pivots[i]] = rr.r(i, m.cols());
    return c;
}

}  // namespace mnec
