#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "gfp.hpp"

namespace cartan {

class Matrix;
class Vec;
Vec mat_vec(const Matrix& m, const Vec& x);

// Row vector over GF(p). For p = 2 coordinates are bit-packed into 64-bit
// words so vector addition is word-parallel XOR; otherwise one byte each.
class Vec {
public:
    Vec() : p_(2), n_(0) {}
    Vec(int p, int n) : p_(p), n_(n) {
        assert(fp_is_prime(p) && p < 16 && n >= 0);
        if (p_ == 2) w_.assign(words(n), 0);
        else b_.assign(n, 0);
    }

    int p() const { return p_; }
    int size() const { return n_; }

    fp_t get(int i) const {
        assert(0 <= i && i < n_);
        if (p_ == 2) return (w_[i >> 6] >> (i & 63)) & 1;
        return b_[i];
    }

    void set(int i, fp_t v) {
        assert(0 <= i && i < n_ && 0 <= v && v < p_);
        if (p_ == 2) {
            uint64_t bit = uint64_t(1) << (i & 63);
            if (v) w_[i >> 6] |= bit;
            else w_[i >> 6] &= ~bit;
        } else {
            b_[i] = static_cast<uint8_t>(v);
        }
    }

    // this += c * other
    void add_scaled(const Vec& o, fp_t c) {
        assert(o.p_ == p_ && o.n_ == n_);
        if (c == 0) return;
        if (p_ == 2) {
            for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        } else {
            for (int i = 0; i < n_; ++i)
                b_[i] = static_cast<uint8_t>((b_[i] + c * o.b_[i]) % p_);
        }
    }

    void scale(fp_t c) {
        if (p_ == 2) {
            if (c == 0) std::fill(w_.begin(), w_.end(), uint64_t(0));
            return;
        }
        for (int i = 0; i < n_; ++i)
            b_[i] = static_cast<uint8_t>((c * b_[i]) % p_);
    }

    bool is_zero() const {
        if (p_ == 2) {
            for (uint64_t w : w_) if (w) return false;
            return true;
        }
        for (uint8_t b : b_) if (b) return false;
        return true;
    }

    // Index of the first nonzero coordinate, or -1.
    int first_nonzero() const {
        if (p_ == 2) {
            for (size_t k = 0; k < w_.size(); ++k)
                if (w_[k]) return int(k) * 64 + __builtin_ctzll(w_[k]);
            return -1;
        }
        for (int i = 0; i < n_; ++i) if (b_[i]) return i;
        return -1;
    }

    bool operator==(const Vec& o) const {
        return p_ == o.p_ && n_ == o.n_ && w_ == o.w_ && b_ == o.b_;
    }
    bool operator!=(const Vec& o) const { return !(*this == o); }

    template <typename F>
    void for_each_nonzero(F&& f) const {
        if (p_ == 2) {
            for (size_t k = 0; k < w_.size(); ++k) {
                uint64_t w = w_[k];
                while (w) {
                    int b = __builtin_ctzll(w);
                    w &= w - 1;
                    f(int(k) * 64 + b, fp_t(1));
                }
            }
        } else {
            for (int i = 0; i < n_; ++i)
                if (b_[i]) f(i, fp_t(b_[i]));
        }
    }

    static int words(int n) { return (n + 63) >> 6; }

private:
    friend class Matrix;
    friend Vec mat_vec(const Matrix&, const Vec&);
    int p_, n_;
    std::vector<uint64_t> w_;  // p == 2
    std::vector<uint8_t> b_;   // p > 2
};

// Dense row-major matrix over GF(p); p = 2 rows are bit-packed.
class Matrix {
public:
    Matrix() : p_(2), rows_(0), cols_(0), wpr_(0) {}
    Matrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
        assert(fp_is_prime(p) && p < 16 && rows >= 0 && cols >= 0);
        if (p_ == 2) {
            wpr_ = Vec::words(cols);
            w_.assign(size_t(rows) * wpr_, 0);
        } else {
            wpr_ = 0;
            b_.assign(size_t(rows) * cols, 0);
        }
    }

    static Matrix identity(int p, int n) {
        Matrix m(p, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1 % p);
        return m;
    }

    int p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    fp_t get(int r, int c) const {
        assert(0 <= r && r < rows_ && 0 <= c && c < cols_);
        if (p_ == 2) return (w_[size_t(r) * wpr_ + (c >> 6)] >> (c & 63)) & 1;
        return b_[size_t(r) * cols_ + c];
    }

    void set(int r, int c, fp_t v) {
        assert(0 <= r && r < rows_ && 0 <= c && c < cols_);
        assert(0 <= v && v < p_);
        if (p_ == 2) {
            uint64_t bit = uint64_t(1) << (c & 63);
            size_t idx = size_t(r) * wpr_ + (c >> 6);
            if (v) w_[idx] |= bit;
            else w_[idx] &= ~bit;
        } else {
            b_[size_t(r) * cols_ + c] = static_cast<uint8_t>(v);
        }
    }

    Vec row(int r) const {
        assert(0 <= r && r < rows_);
        Vec v(p_, cols_);
        if (p_ == 2)
            std::copy(w_.begin() + size_t(r) * wpr_,
                      w_.begin() + size_t(r + 1) * wpr_, v.w_.begin());
        else
            std::copy(b_.begin() + size_t(r) * cols_,
                      b_.begin() + size_t(r + 1) * cols_, v.b_.begin());
        return v;
    }

    void set_row(int r, const Vec& v) {
        assert(v.p() == p_ && v.size() == cols_ && 0 <= r && r < rows_);
        if (p_ == 2)
            std::copy(v.w_.begin(), v.w_.end(), w_.begin() + size_t(r) * wpr_);
        else
            std::copy(v.b_.begin(), v.b_.end(), b_.begin() + size_t(r) * cols_);
    }

    void append_row(const Vec& v) {
        assert(v.p() == p_ && v.size() == cols_);
        ++rows_;
        if (p_ == 2) w_.insert(w_.end(), v.w_.begin(), v.w_.end());
        else b_.insert(b_.end(), v.b_.begin(), v.b_.end());
    }

    // row r1 += c * row r2
    void row_addmul(int r1, int r2, fp_t c) {
        if (c == 0) return;
        if (p_ == 2) {
            uint64_t* a = &w_[size_t(r1) * wpr_];
            const uint64_t* b = &w_[size_t(r2) * wpr_];
            for (int k = 0; k < wpr_; ++k) a[k] ^= b[k];
        } else {
            uint8_t* a = &b_[size_t(r1) * cols_];
            const uint8_t* b = &b_[size_t(r2) * cols_];
            for (int k = 0; k < cols_; ++k)
                a[k] = static_cast<uint8_t>((a[k] + c * b[k]) % p_);
        }
    }

    void row_scale(int r, fp_t c) {
        if (p_ == 2) return;  // only c = 1 possible for nonzero rows
        uint8_t* a = &b_[size_t(r) * cols_];
        for (int k = 0; k < cols_; ++k)
            a[k] = static_cast<uint8_t>((c * a[k]) % p_);
    }

    void row_swap(int r1, int r2) {
        if (r1 == r2) return;
        if (p_ == 2)
            std::swap_ranges(w_.begin() + size_t(r1) * wpr_,
                             w_.begin() + size_t(r1 + 1) * wpr_,
                             w_.begin() + size_t(r2) * wpr_);
        else
            std::swap_ranges(b_.begin() + size_t(r1) * cols_,
                             b_.begin() + size_t(r1 + 1) * cols_,
                             b_.begin() + size_t(r2) * cols_);
    }

    bool row_is_zero(int r) const {
        if (p_ == 2) {
            for (int k = 0; k < wpr_; ++k)
                if (w_[size_t(r) * wpr_ + k]) return false;
            return true;
        }
        for (int k = 0; k < cols_; ++k)
            if (b_[size_t(r) * cols_ + k]) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(p_, cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                fp_t v = get(r, c);
                if (v) t.set(c, r, v);
            }
        return t;
    }

    // Matrix product AB.
    friend Matrix mat_mul(const Matrix& a, const Matrix& b) {
        assert(a.p_ == b.p_ && a.cols_ == b.rows_);
        Matrix c(a.p_, a.rows_, b.cols_);
        if (a.p_ == 2) {
            for (int i = 0; i < a.rows_; ++i) {
                uint64_t* out = &c.w_[size_t(i) * c.wpr_];
                for (int k = 0; k < a.cols_; ++k)
                    if (a.get(i, k)) {
                        const uint64_t* src = &b.w_[size_t(k) * b.wpr_];
                        for (int t = 0; t < b.wpr_; ++t) out[t] ^= src[t];
                    }
            }
        } else {
            for (int i = 0; i < a.rows_; ++i)
                for (int k = 0; k < a.cols_; ++k) {
                    fp_t av = a.get(i, k);
                    if (!av) continue;
                    uint8_t* out = &c.b_[size_t(i) * c.cols_];
                    const uint8_t* src = &b.b_[size_t(k) * b.cols_];
                    for (int t = 0; t < b.cols_; ++t)
                        out[t] = static_cast<uint8_t>((out[t] + av * src[t]) % a.p_);
                }
        }
        return c;
    }

    // Column action m·x (x of length cols) -> length rows.
    friend Vec mat_vec(const Matrix& m, const Vec& x) {
        assert(x.p() == m.p_ && x.size() == m.cols_);
        Vec out(m.p_, m.rows_);
        for (int r = 0; r < m.rows_; ++r) {
            if (m.p_ == 2) {
                uint64_t acc = 0;
                const uint64_t* a = &m.w_[size_t(r) * m.wpr_];
                for (int k = 0; k < m.wpr_; ++k) acc ^= a[k] & x.w_[k];
                out.set(r, __builtin_popcountll(acc) & 1);
            } else {
                int acc = 0;
                const uint8_t* a = &m.b_[size_t(r) * m.cols_];
                for (int k = 0; k < m.cols_; ++k) acc += a[k] * x.b_[k];
                out.set(r, acc % m.p_);
            }
        }
        return out;
    }

    // Row action v·m (v of length rows) -> length cols; word-parallel for p=2.
    friend Vec vec_mat(const Vec& v, const Matrix& m) {
        assert(v.p() == m.p_ && v.size() == m.rows_);
        Vec out(m.p_, m.cols_);
        for (int r = 0; r < m.rows_; ++r) {
            fp_t c = v.get(r);
            if (c) out.add_scaled(m.row(r), c);
        }
        return out;
    }

    bool operator==(const Matrix& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ &&
               w_ == o.w_ && b_ == o.b_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    int p_, rows_, cols_, wpr_;
    std::vector<uint64_t> w_;
    std::vector<uint8_t> b_;
};

// a + c * b, row by row.
inline Matrix mat_add_scaled(const Matrix& a, const Matrix& b, fp_t c) {
    assert(a.p() == b.p() && a.rows() == b.rows() && a.cols() == b.cols());
    Matrix out(a.p(), a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r) {
        Vec v = a.row(r);
        v.add_scaled(b.row(r), c);
        out.set_row(r, v);
    }
    return out;
}

struct RrefResult {
    Matrix mat;
    int rank = 0;
    std::vector<int> pivots;  // pivot column per nonzero row, strictly increasing
};

// Unique reduced row echelon form; leftmost-column, topmost-row pivot choice.
inline RrefResult rref(Matrix m) {
    RrefResult res;
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int pr = -1;
        for (int r = rank; r < m.rows(); ++r)
            if (m.get(r, col) != 0) { pr = r; break; }
        if (pr < 0) continue;
        m.row_swap(rank, pr);
        fp_t pv = m.get(rank, col);
        if (pv != 1) m.row_scale(rank, fp_inv(pv, m.p()));
        for (int r = 0; r < m.rows(); ++r) {
            if (r == rank) continue;
            fp_t v = m.get(r, col);
            if (v) m.row_addmul(r, rank, fp_neg(v, m.p()));
        }
        res.pivots.push_back(col);
        ++rank;
    }
    res.rank = rank;
    res.mat = std::move(m);
    return res;
}

inline int rank_of(const Matrix& m) { return rref(m).rank; }

// Subspace of GF(p)^n held as a self-reducing RREF row basis.
class Subspace {
public:
    Subspace() : p_(2), n_(0) {}
    Subspace(int p, int n) : p_(p), n_(n) {}

    static Subspace from_rows(const Matrix& rows) {
        Subspace s(rows.p(), rows.cols());
        for (int r = 0; r < rows.rows(); ++r) s.insert(rows.row(r));
        return s;
    }

    static Subspace full(int p, int n) {
        return from_rows(Matrix::identity(p, n));
    }

    int p() const { return p_; }
    int ambient_dim() const { return n_; }
    int dim() const { return int(rows_.size()); }
    const std::vector<int>& pivots() const { return piv_; }
    const Vec& basis_row(int i) const { return rows_[i]; }

    // Reduce v against the basis; result has zeros in all pivot columns.
    Vec reduce(Vec v) const {
        assert(v.p() == p_ && v.size() == n_);
        for (size_t i = 0; i < rows_.size(); ++i) {
            fp_t c = v.get(piv_[i]);
            if (c) v.add_scaled(rows_[i], fp_neg(c, p_));
        }
        return v;
    }

    bool contains(const Vec& v) const { return reduce(v).is_zero(); }

    // Insert v; returns true when the dimension grew.
    bool insert(const Vec& v) {
        Vec r = reduce(v);
        int pc = r.first_nonzero();
        if (pc < 0) return false;
        fp_t lead = r.get(pc);
        if (lead != 1) r.scale(fp_inv(lead, p_));
        for (size_t i = 0; i < rows_.size(); ++i) {
            fp_t c = rows_[i].get(pc);
            if (c) rows_[i].add_scaled(r, fp_neg(c, p_));
        }
        size_t at = 0;
        while (at < piv_.size() && piv_[at] < pc) ++at;
        rows_.insert(rows_.begin() + at, std::move(r));
        piv_.insert(piv_.begin() + at, pc);
        return true;
    }

    Matrix basis_matrix() const {
        Matrix m(p_, dim(), n_);
        for (int i = 0; i < dim(); ++i) m.set_row(i, rows_[i]);
        return m;
    }

    // Coordinates of v in the basis rows (valid only when contains(v)).
    Vec coordinates(const Vec& v) const {
        assert(contains(v));
        Vec c(p_, dim());
        for (int i = 0; i < dim(); ++i) c.set(i, v.get(piv_[i]));
        return c;
    }

    bool operator==(const Subspace& o) const {
        if (p_ != o.p_ || n_ != o.n_ || piv_ != o.piv_) return false;
        return rows_ == o.rows_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    bool contains_subspace(const Subspace& o) const {
        for (int i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_row(i))) return false;
        return true;
    }

private:
    int p_, n_;
    std::vector<Vec> rows_;
    std::vector<int> piv_;
};

// Null space {x : m·x = 0}; returned basis is in RREF.
inline Subspace kernel(const Matrix& m) {
    RrefResult r = rref(m);
    int n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (int c : r.pivots) is_pivot[c] = true;
    Subspace ker(m.p(), n);
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec x(m.p(), n);
        x.set(j, 1);
        for (int i = 0; i < r.rank; ++i) {
            fp_t v = r.mat.get(i, j);
            if (v) x.set(r.pivots[i], fp_neg(v, m.p()));
        }
        ker.insert(x);
    }
    return ker;
}

// Some x with m·x = b (free variables zero), or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    assert(b.size() == m.rows() && b.p() == m.p());
    Matrix aug(m.p(), m.rows(), m.cols() + 1);
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            fp_t v = m.get(r, c);
            if (v) aug.set(r, c, v);
        }
        fp_t v = b.get(r);
        if (v) aug.set(r, m.cols(), v);
    }
    RrefResult r = rref(std::move(aug));
    Vec x(m.p(), m.cols());
    for (int i = 0; i < r.rank; ++i) {
        if (r.pivots[i] == m.cols()) return std::nullopt;
        x.set(r.pivots[i], r.mat.get(i, m.cols()));
    }
    return x;
}

struct SumIntersection {
    Subspace sum;
    Subspace intersection;
};

// Zassenhaus: simultaneous u+v and u∩v from one echelonization of [U U; V 0].
inline SumIntersection intersect(const Subspace& u, const Subspace& v) {
    assert(u.p() == v.p() && u.ambient_dim() == v.ambient_dim());
    int n = u.ambient_dim(), p = u.p();
    Matrix block(p, u.dim() + v.dim(), 2 * n);
    for (int i = 0; i < u.dim(); ++i) {
        const Vec& row = u.basis_row(i);
        for (int c = 0; c < n; ++c) {
            fp_t val = row.get(c);
            if (val) { block.set(i, c, val); block.set(i, n + c, val); }
        }
    }
    for (int i = 0; i < v.dim(); ++i) {
        const Vec& row = v.basis_row(i);
        for (int c = 0; c < n; ++c) {
            fp_t val = row.get(c);
            if (val) block.set(u.dim() + i, c, val);
        }
    }
    RrefResult r = rref(std::move(block));
    SumIntersection out{Subspace(p, n), Subspace(p, n)};
    for (int i = 0; i < r.rank; ++i) {
        Vec left(p, n), right(p, n);
        for (int c = 0; c < n; ++c) {
            fp_t a = r.mat.get(i, c);
            if (a) left.set(c, a);
            fp_t b = r.mat.get(i, n + c);
            if (b) right.set(c, b);
        }
        if (!left.is_zero()) out.sum.insert(left);
        else out.intersection.insert(right);
    }
    return out;
}

}  // namespace cartan
