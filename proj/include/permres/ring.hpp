#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace permres {

using Int = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient ring: GF(p) for a prime p, or the integers.
struct RingSpec {
    enum class Kind { PrimeField, Integers };
    Kind kind = Kind::Integers;
    int64_t p = 0;

    static RingSpec gf(int64_t p);
    static RingSpec integers() { return RingSpec{Kind::Integers, 0}; }

    bool is_field() const { return kind == Kind::PrimeField; }
    bool operator==(const RingSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
    std::string str() const;
};

bool is_prime(int64_t n);

// Dense matrix over GF(p) (int64 residues in [0,p)) or over Z (cpp_int).
// Entries are row-major.
class Matrix {
public:
    Matrix() : ring_(RingSpec::integers()), rows_(0), cols_(0) {}
    Matrix(RingSpec ring, int rows, int cols);

    static Matrix identity(RingSpec ring, int n);
    static Matrix zero(RingSpec ring, int rows, int cols) { return Matrix(ring, rows, cols); }

    const RingSpec& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    // Generic accessors; integers are reduced mod p on a field.
    void set(int i, int j, const Int& v);
    void set(int i, int j, int64_t v);
    Int get(int i, int j) const;

    // Field fast path (valid only when ring is a prime field).
    int64_t& fent(int i, int j) { return f_[size_t(i) * cols_ + j]; }
    int64_t fent(int i, int j) const { return f_[size_t(i) * cols_ + j]; }
    Int& zent(int i, int j) { return z_[size_t(i) * cols_ + j]; }
    const Int& zent(int i, int j) const { return z_[size_t(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix negate() const;
    Matrix scale(const Int& c) const;

    Matrix kron(const Matrix& o) const;
    Matrix hstack(const Matrix& o) const;
    Matrix vstack(const Matrix& o) const;
    Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    Matrix select_rows(const std::vector<int>& rows) const;
    Matrix select_cols(const std::vector<int>& cols) const;
    Matrix column(int j) const { return select_cols({j}); }
    void set_block(int i0, int j0, const Matrix& b);

    std::string str() const;

private:
    RingSpec ring_;
    int rows_, cols_;
    std::vector<int64_t> f_;  // prime-field storage
    std::vector<Int> z_;      // integer storage
};

Matrix direct_sum(const Matrix& a, const Matrix& b);

// --- prime-field linear algebra -------------------------------------------

struct RrefResult {
    int rank = 0;
    std::vector<int> pivot_cols;
    Matrix rref;          // reduced row echelon form
    Matrix kernel_basis;  // columns span { x : Ax = 0 }
};

RrefResult rref_field(const Matrix& a);

// Particular solution of AX = B, or nullopt if inconsistent.
std::optional<Matrix> solve_field(const Matrix& a, const Matrix& b);

Matrix inverse_field(const Matrix& a);
int rank_field(const Matrix& a);
Matrix kernel_field(const Matrix& a);

// --- integer linear algebra ------------------------------------------------

struct SnfResult {
    Matrix d;  // diagonal, d1 | d2 | ..., nonnegative
    Matrix u;  // unimodular, u*a*v = d
    Matrix v;  // unimodular
};

SnfResult smith_normal_form(const Matrix& a);

// Invariant factors of a (the nonzero diagonal of its SNF).
std::vector<Int> invariant_factors(const Matrix& a);

int rank_integer(const Matrix& a);
Int det_integer(const Matrix& a);

// Basis of the (saturated) kernel lattice of an integer matrix.
Matrix kernel_integer(const Matrix& a);

// Particular integer solution of Ax = b, or nullopt.
std::optional<Matrix> solve_integer(const Matrix& a, const Matrix& b);

// Ring-dispatching helpers used by the module layer.
int rank_any(const Matrix& a);
Matrix kernel_any(const Matrix& a);
std::optional<Matrix> solve_any(const Matrix& a, const Matrix& b);
bool is_invertible(const Matrix& a);
Matrix inverse_any(const Matrix& a);

}  // namespace permres
