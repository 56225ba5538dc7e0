#include "permres/ring.hpp"

#include <algorithm>
#include <sstream>

namespace permres {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

RingSpec RingSpec::gf(int64_t p) {
    if (!is_prime(p)) throw Error("RingSpec::gf: " + std::to_string(p) + " is not prime");
    return RingSpec{Kind::PrimeField, p};
}

std::string RingSpec::str() const {
    return is_field() ? "gf" + std::to_string(p) : "int";
}

static int64_t mod_reduce(int64_t v, int64_t p) {
    int64_t r = v % p;
    return r < 0 ? r + p : r;
}

static int64_t inv_mod(int64_t a, int64_t p) {
    // extended gcd; a nonzero mod p
    int64_t t = 0, newt = 1, r = p, newr = mod_reduce(a, p);
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw Error("inv_mod: not invertible");
    return mod_reduce(t, p);
}

Matrix::Matrix(RingSpec ring, int rows, int cols) : ring_(ring), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw Error("Matrix: negative shape");
    if (ring_.is_field())
        f_.assign(size_t(rows) * cols, 0);
    else
        z_.assign(size_t(rows) * cols, Int(0));
}

Matrix Matrix::identity(RingSpec ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, int64_t(1));
    return m;
}

void Matrix::set(int i, int j, const Int& v) {
    if (ring_.is_field())
        f_[size_t(i) * cols_ + j] = mod_reduce(v.convert_to<int64_t>() % ring_.p, ring_.p);
    else
        z_[size_t(i) * cols_ + j] = v;
}

void Matrix::set(int i, int j, int64_t v) {
    if (ring_.is_field())
        f_[size_t(i) * cols_ + j] = mod_reduce(v, ring_.p);
    else
        z_[size_t(i) * cols_ + j] = Int(v);
}

Int Matrix::get(int i, int j) const {
    return ring_.is_field() ? Int(f_[size_t(i) * cols_ + j]) : z_[size_t(i) * cols_ + j];
}

bool Matrix::is_zero() const {
    if (ring_.is_field()) {
        for (auto v : f_)
            if (v != 0) return false;
    } else {
        for (const auto& v : z_)
            if (v != 0) return false;
    }
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    return ring_.is_field() ? f_ == o.f_ : z_ == o.z_;
}

Matrix Matrix::transpose() const {
    Matrix r(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (ring_.is_field())
                r.fent(j, i) = fent(i, j);
            else
                r.zent(j, i) = zent(i, j);
        }
    return r;
}

static void check_same_ring(const Matrix& a, const Matrix& b, const char* op) {
    if (a.ring() != b.ring()) throw Error(std::string(op) + ": ring mismatch");
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_same_ring(*this, o, "Matrix::mul");
    if (cols_ != o.rows_) throw Error("Matrix::mul: shape mismatch");
    Matrix r(ring_, rows_, o.cols_);
    if (ring_.is_field()) {
        const int64_t p = ring_.p;
        // accumulate then reduce; p < 2^15 so n*p^2 fits easily
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                int64_t a = fent(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    int64_t& dst = r.fent(i, j);
                    dst = (dst + a * o.fent(k, j)) % p;
                }
            }
    } else {
        // int64 fast path when entries are small enough not to overflow
        Int maxa = 0, maxb = 0;
        for (const auto& v : z_) {
            Int a = abs(v);
            if (a > maxa) maxa = a;
        }
        for (const auto& v : o.z_) {
            Int a = abs(v);
            if (a > maxb) maxb = a;
        }
        Int bound = maxa * maxb * cols_;
        if (bound < Int(int64_t(1) << 62) && maxa < Int(int64_t(1) << 31) &&
            maxb < Int(int64_t(1) << 31)) {
            std::vector<int64_t> a64(z_.size()), b64(o.z_.size());
            for (size_t t = 0; t < z_.size(); ++t) a64[t] = z_[t].convert_to<int64_t>();
            for (size_t t = 0; t < o.z_.size(); ++t) b64[t] = o.z_[t].convert_to<int64_t>();
            for (int i = 0; i < rows_; ++i)
                for (int k = 0; k < cols_; ++k) {
                    int64_t a = a64[size_t(i) * cols_ + k];
                    if (a == 0) continue;
                    for (int j = 0; j < o.cols_; ++j) {
                        int64_t b = b64[size_t(k) * o.cols_ + j];
                        if (b == 0) continue;
                        Int& dst = r.zent(i, j);
                        dst = dst.convert_to<int64_t>() + a * b;
                    }
                }
        } else {
            for (int i = 0; i < rows_; ++i)
                for (int k = 0; k < cols_; ++k) {
                    const Int& a = zent(i, k);
                    if (a == 0) continue;
                    for (int j = 0; j < o.cols_; ++j) {
                        const Int& b = o.zent(k, j);
                        if (b != 0) r.zent(i, j) += a * b;
                    }
                }
        }
    }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_same_ring(*this, o, "Matrix::add");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("Matrix::add: shape mismatch");
    Matrix r(ring_, rows_, cols_);
    if (ring_.is_field()) {
        for (size_t t = 0; t < f_.size(); ++t) r.f_[t] = (f_[t] + o.f_[t]) % ring_.p;
    } else {
        for (size_t t = 0; t < z_.size(); ++t) r.z_[t] = z_[t] + o.z_[t];
    }
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.negate(); }

Matrix Matrix::negate() const {
    Matrix r(ring_, rows_, cols_);
    if (ring_.is_field()) {
        for (size_t t = 0; t < f_.size(); ++t) r.f_[t] = f_[t] == 0 ? 0 : ring_.p - f_[t];
    } else {
        for (size_t t = 0; t < z_.size(); ++t) r.z_[t] = -z_[t];
    }
    return r;
}

Matrix Matrix::scale(const Int& c) const {
    Matrix r(ring_, rows_, cols_);
    if (ring_.is_field()) {
        int64_t cc = mod_reduce(c.convert_to<int64_t>() % ring_.p, ring_.p);
        for (size_t t = 0; t < f_.size(); ++t) r.f_[t] = (f_[t] * cc) % ring_.p;
    } else {
        for (size_t t = 0; t < z_.size(); ++t) r.z_[t] = z_[t] * c;
    }
    return r;
}

Matrix Matrix::kron(const Matrix& o) const {
    check_same_ring(*this, o, "Matrix::kron");
    Matrix r(ring_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            Int a = get(i, j);
            if (a == 0) continue;
            for (int k = 0; k < o.rows_; ++k)
                for (int l = 0; l < o.cols_; ++l) {
                    Int b = o.get(k, l);
                    if (b != 0) r.set(i * o.rows_ + k, j * o.cols_ + l, a * b);
                }
        }
    return r;
}

Matrix Matrix::hstack(const Matrix& o) const {
    check_same_ring(*this, o, "Matrix::hstack");
    if (rows_ != o.rows_) throw Error("hstack: row mismatch");
    Matrix r(ring_, rows_, cols_ + o.cols_);
    r.set_block(0, 0, *this);
    r.set_block(0, cols_, o);
    return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
    check_same_ring(*this, o, "Matrix::vstack");
    if (cols_ != o.cols_) throw Error("vstack: col mismatch");
    Matrix r(ring_, rows_ + o.rows_, cols_);
    r.set_block(0, 0, *this);
    r.set_block(rows_, 0, o);
    return r;
}

Matrix Matrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Matrix r(ring_, int(rows.size()), int(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) {
            if (ring_.is_field())
                r.fent(int(i), int(j)) = fent(rows[i], cols[j]);
            else
                r.zent(int(i), int(j)) = zent(rows[i], cols[j]);
        }
    return r;
}

Matrix Matrix::select_rows(const std::vector<int>& rows) const {
    std::vector<int> all(cols_);
    for (int j = 0; j < cols_; ++j) all[j] = j;
    return submatrix(rows, all);
}

Matrix Matrix::select_cols(const std::vector<int>& cols) const {
    std::vector<int> all(rows_);
    for (int i = 0; i < rows_; ++i) all[i] = i;
    return submatrix(all, cols);
}

void Matrix::set_block(int i0, int j0, const Matrix& b) {
    if (ring_ != b.ring_) throw Error("set_block: ring mismatch");
    if (i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_) throw Error("set_block: out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            if (ring_.is_field())
                fent(i0 + i, j0 + j) = b.fent(i, j);
            else
                zent(i0 + i, j0 + j) = b.zent(i, j);
        }
}

std::string Matrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) os << get(i, j).str() << (j + 1 == cols_ ? "" : " ");
        os << "\n";
    }
    return os.str();
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

// --- prime field -------------------------------------------------------------

RrefResult rref_field(const Matrix& a) {
    if (!a.ring().is_field()) throw Error("rref_field: ring mismatch (integer matrix)");
    const int64_t p = a.ring().p;
    RrefResult res;
    res.rref = a;
    Matrix& m = res.rref;
    int r = 0;
    for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < a.rows(); ++i)
            if (m.fent(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < a.cols(); ++j) std::swap(m.fent(piv, j), m.fent(r, j));
        int64_t inv = inv_mod(m.fent(r, c), p);
        for (int j = 0; j < a.cols(); ++j) m.fent(r, j) = (m.fent(r, j) * inv) % p;
        for (int i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            int64_t f = m.fent(i, c);
            if (f == 0) continue;
            for (int j = 0; j < a.cols(); ++j)
                m.fent(i, j) = mod_reduce(m.fent(i, j) - f * m.fent(r, j), p);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    // kernel basis from the free columns
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : res.pivot_cols) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    res.kernel_basis = Matrix(a.ring(), a.cols(), int(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        res.kernel_basis.fent(fc, int(k)) = 1;
        for (int i = 0; i < res.rank; ++i) {
            int64_t v = m.fent(i, fc);
            if (v != 0) res.kernel_basis.fent(res.pivot_cols[i], int(k)) = p - v;
        }
    }
    return res;
}

int rank_field(const Matrix& a) { return rref_field(a).rank; }

Matrix kernel_field(const Matrix& a) { return rref_field(a).kernel_basis; }

std::optional<Matrix> solve_field(const Matrix& a, const Matrix& b) {
    if (!a.ring().is_field()) throw Error("solve_field: ring mismatch");
    if (a.ring() != b.ring() || a.rows() != b.rows()) throw Error("solve_field: shape mismatch");
    RrefResult r = rref_field(a.hstack(b));
    // consistent iff no pivot lands in the b-columns
    for (int c : r.pivot_cols)
        if (c >= a.cols()) return std::nullopt;
    Matrix x(a.ring(), a.cols(), b.cols());
    for (size_t i = 0; i < r.pivot_cols.size(); ++i)
        for (int j = 0; j < b.cols(); ++j) x.fent(r.pivot_cols[i], j) = r.rref.fent(int(i), a.cols() + j);
    return x;
}

Matrix inverse_field(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error("inverse_field: not square");
    auto x = solve_field(a, Matrix::identity(a.ring(), a.rows()));
    if (!x || rank_field(a) != a.rows()) throw Error("inverse_field: singular");
    return *x;
}

// --- integers ----------------------------------------------------------------

SnfResult smith_normal_form(const Matrix& a) {
    if (a.ring().is_field()) throw Error("smith_normal_form: ring mismatch (field matrix)");
    const int m = a.rows(), n = a.cols();
    SnfResult res{a, Matrix::identity(a.ring(), m), Matrix::identity(a.ring(), n)};
    Matrix& d = res.d;
    Matrix& u = res.u;
    Matrix& v = res.v;

    auto row_op = [&](int i, int k, const Int& f) {  // row i -= f * row k
        for (int j = 0; j < n; ++j) d.zent(i, j) -= f * d.zent(k, j);
        for (int j = 0; j < m; ++j) u.zent(i, j) -= f * u.zent(k, j);
    };
    auto col_op = [&](int j, int k, const Int& f) {  // col j -= f * col k
        for (int i = 0; i < m; ++i) d.zent(i, j) -= f * d.zent(i, k);
        for (int i = 0; i < n; ++i) v.zent(i, j) -= f * v.zent(i, k);
    };
    auto swap_rows = [&](int i, int k) {
        if (i == k) return;
        for (int j = 0; j < n; ++j) std::swap(d.zent(i, j), d.zent(k, j));
        for (int j = 0; j < m; ++j) std::swap(u.zent(i, j), u.zent(k, j));
    };
    auto swap_cols = [&](int j, int k) {
        if (j == k) return;
        for (int i = 0; i < m; ++i) std::swap(d.zent(i, j), d.zent(i, k));
        for (int i = 0; i < n; ++i) std::swap(v.zent(i, j), v.zent(i, k));
    };

    int t = 0;
    const int nmin = std::min(m, n);
    while (t < nmin) {
        // pivot: smallest nonzero absolute value, ties by lowest (row, col)
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                const Int& x = d.zent(i, j);
                if (x == 0) continue;
                Int ax = abs(x);
                if (pi < 0 || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // all zero
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool dirty = false;
        for (int i = t + 1; i < m; ++i) {
            const Int& x = d.zent(i, t);
            if (x == 0) continue;
            Int q = x / d.zent(t, t);
            if (q != 0) row_op(i, t, q);
            if (d.zent(i, t) != 0) dirty = true;
        }
        for (int j = t + 1; j < n; ++j) {
            const Int& x = d.zent(t, j);
            if (x == 0) continue;
            Int q = x / d.zent(t, t);
            if (q != 0) col_op(j, t, q);
            if (d.zent(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // remainders left; re-pivot in the same corner
        // cross cleared; pull in any entry not divisible by the pivot
        bool pulled = false;
        for (int i = t + 1; i < m && !pulled; ++i)
            for (int j = t + 1; j < n && !pulled; ++j)
                if (d.zent(i, j) % d.zent(t, t) != 0) {
                    // add row i to row t, creating a smaller remainder next pass
                    for (int jj = 0; jj < n; ++jj) d.zent(t, jj) += d.zent(i, jj);
                    for (int jj = 0; jj < m; ++jj) u.zent(t, jj) += u.zent(i, jj);
                    pulled = true;
                }
        if (pulled) continue;
        if (d.zent(t, t) < 0) {
            for (int j = 0; j < n; ++j) d.zent(t, j) = -d.zent(t, j);
            for (int j = 0; j < m; ++j) u.zent(t, j) = -u.zent(t, j);
        }
        ++t;
    }
    return res;
}

std::vector<Int> invariant_factors(const Matrix& a) {
    SnfResult s = smith_normal_form(a);
    std::vector<Int> out;
    int nmin = std::min(a.rows(), a.cols());
    for (int i = 0; i < nmin; ++i) {
        Int d = s.d.get(i, i);
        if (d != 0) out.push_back(d);
    }
    return out;
}

int rank_integer(const Matrix& a) { return int(invariant_factors(a).size()); }

Int det_integer(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error("det_integer: not square");
    const int n = a.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    Matrix m = a;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.zent(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.zent(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(m.zent(k, j), m.zent(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int num = m.zent(i, j) * m.zent(k, k) - m.zent(i, k) * m.zent(k, j);
                m.zent(i, j) = num / prev;
            }
        prev = m.zent(k, k);
    }
    return sign * m.zent(n - 1, n - 1);
}

Matrix kernel_integer(const Matrix& a) {
    SnfResult s = smith_normal_form(a);
    int nmin = std::min(a.rows(), a.cols());
    int r = 0;
    for (int i = 0; i < nmin; ++i)
        if (s.d.get(i, i) != 0) ++r;
    std::vector<int> free_idx;
    for (int j = r; j < a.cols(); ++j) free_idx.push_back(j);
    return s.v.select_cols(free_idx);
}

std::optional<Matrix> solve_integer(const Matrix& a, const Matrix& b) {
    if (a.ring().is_field() || b.ring().is_field()) throw Error("solve_integer: ring mismatch");
    if (a.rows() != b.rows()) throw Error("solve_integer: shape mismatch");
    SnfResult s = smith_normal_form(a);
    Matrix ub = s.u * b;
    Matrix y(a.ring(), a.cols(), b.cols());
    int nmin = std::min(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        Int di = i < nmin ? s.d.get(i, i) : Int(0);
        for (int j = 0; j < b.cols(); ++j) {
            Int rhs = ub.get(i, j);
            if (di == 0) {
                if (rhs != 0) return std::nullopt;
            } else {
                if (rhs % di != 0) return std::nullopt;
                if (i < a.cols()) y.set(i, j, rhs / di);
            }
        }
    }
    return s.v * y;
}

// --- dispatch ----------------------------------------------------------------

int rank_any(const Matrix& a) { return a.ring().is_field() ? rank_field(a) : rank_integer(a); }

Matrix kernel_any(const Matrix& a) {
    return a.ring().is_field() ? kernel_field(a) : kernel_integer(a);
}

std::optional<Matrix> solve_any(const Matrix& a, const Matrix& b) {
    return a.ring().is_field() ? solve_field(a, b) : solve_integer(a, b);
}

bool is_invertible(const Matrix& a) {
    if (a.rows() != a.cols()) return false;
    if (a.ring().is_field()) return rank_field(a) == a.rows();
    return abs(det_integer(a)) == 1;
}

Matrix inverse_any(const Matrix& a) {
    if (a.ring().is_field()) return inverse_field(a);
    if (!is_invertible(a)) throw Error("inverse_any: not unimodular");
    auto x = solve_integer(a, Matrix::identity(a.ring(), a.rows()));
    if (!x) throw Error("inverse_any: solve failed");
    return *x;
}

}  // namespace permres
