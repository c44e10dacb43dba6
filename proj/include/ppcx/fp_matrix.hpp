#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ppcx/error.hpp"

namespace ppcx {

using Scalar = std::uint8_t;

/// Checks that p is a prime below 256 (entries are stored in a byte).
void check_prime(unsigned p);
unsigned inv_mod(unsigned a, unsigned p);

/// Deterministic random source. Reductions use plain modulo so results do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    unsigned below(unsigned n) { return n == 0 ? 0u : static_cast<unsigned>(eng_() % n); }

private:
    std::mt19937_64 eng_;
};

/// Dense row-major matrix over GF(p).
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(unsigned p, int rows, int cols);

    static FpMatrix identity(unsigned p, int n);
    static FpMatrix from_rows(unsigned p, const std::vector<std::vector<long long>>& rows, int cols = -1);
    static FpMatrix column(unsigned p, const std::vector<Scalar>& v);
    static FpMatrix random(unsigned p, int rows, int cols, Rng& rng);

    unsigned p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Scalar at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, long long v);
    Scalar* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
    const Scalar* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }
    const std::vector<Scalar>& data() const { return data_; }

    bool is_zero() const;
    bool is_identity() const;
    bool is_permutation() const;

    FpMatrix transpose() const;
    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix& operator+=(const FpMatrix& o);
    FpMatrix& operator-=(const FpMatrix& o);
    FpMatrix scaled(unsigned a) const;
    /// this += a * o
    void add_scaled(const FpMatrix& o, unsigned a);

    FpMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const FpMatrix& b);
    FpMatrix select_columns(const std::vector<int>& cs) const;
    FpMatrix select_rows(const std::vector<int>& rs) const;
    std::vector<Scalar> col(int c) const;
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
    /// Flattened entries (row-major) as a column vector of length rows*cols.
    std::vector<Scalar> flat() const { return data_; }
    static FpMatrix unflatten(unsigned p, int rows, int cols, const std::vector<Scalar>& v);

    bool operator==(const FpMatrix& o) const;
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    std::vector<std::vector<int>> to_rows() const;
    std::string str() const;

private:
    unsigned p_ = 2;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Scalar> data_;
};

void check_same_field(const FpMatrix& a, const FpMatrix& b);

/// y += a * x over GF(p), n entries.
void axpy(Scalar* y, const Scalar* x, unsigned a, int n, unsigned p);

FpMatrix hstack(const std::vector<FpMatrix>& ms, unsigned p, int rows);
FpMatrix vstack(const std::vector<FpMatrix>& ms, unsigned p, int cols);
FpMatrix kron(const FpMatrix& a, const FpMatrix& b);
FpMatrix dsum(const FpMatrix& a, const FpMatrix& b);
FpMatrix dsum(const std::vector<FpMatrix>& ms, unsigned p);

struct RrefPack {
    int rank = 0;
    FpMatrix rref;           ///< reduced row echelon form (same shape as input)
    FpMatrix kernel;         ///< columns form a basis of the right null space
    FpMatrix image;          ///< pivot columns of the input, a basis of the column space
    std::vector<int> pivots; ///< pivot column of each nonzero rref row
};

RrefPack rref_pack(const FpMatrix& m);
int rank(const FpMatrix& m);
FpMatrix kernel(const FpMatrix& m);
FpMatrix image(const FpMatrix& m);
/// Solves A X = B; empty optional when inconsistent.
std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b);
std::optional<FpMatrix> inverse(const FpMatrix& m);
bool invertible(const FpMatrix& m);
FpMatrix power(const FpMatrix& m, unsigned long long e);
unsigned trace(const FpMatrix& m);

/// Incrementally maintained subspace of GF(p)^n in row-echelon form.
class Subspace {
public:
    Subspace(unsigned p, int n) : p_(p), n_(n) {}
    int dim() const { return static_cast<int>(rows_.size()); }
    int ambient() const { return n_; }
    /// Reduces v against the basis in place; returns true if the residue is nonzero.
    bool reduce(std::vector<Scalar>& v) const;
    bool contains(std::vector<Scalar> v) const { return !reduce(v); }
    bool add(std::vector<Scalar> v);
    void add_columns(const FpMatrix& m);
    /// Basis as columns of an n x dim matrix.
    FpMatrix basis() const;

private:
    unsigned p_;
    int n_;
    std::vector<std::vector<Scalar>> rows_;
    std::vector<int> pivots_;
};

/// Coordinates with respect to a fixed basis (columns of an n x m matrix with
/// independent columns). Only meaningful for vectors in the span.
class CoordinateMap {
public:
    CoordinateMap() = default;
    explicit CoordinateMap(const FpMatrix& basis);
    int dim() const { return m_; }
    FpMatrix coords(const FpMatrix& vectors) const;  ///< n x k -> m x k
    std::vector<Scalar> coords(const std::vector<Scalar>& v) const;
    /// Left inverse L (m x n) with L * basis = I.
    const FpMatrix& left_inverse() const { return left_; }

private:
    int m_ = 0;
    FpMatrix left_;
};

/// Column bases for a subspace U and a complement inside it of a subspace W
/// (W contained in U). Used for quotients and homology.
struct Subquotient {
    FpMatrix sub;         ///< basis of W (n x w)
    FpMatrix complement;  ///< columns extending sub to a basis of U (n x q)
    FpMatrix quotient_coords;  ///< q x n: coordinates of U-vectors modulo W
};

Subquotient subquotient(const FpMatrix& u_basis, const FpMatrix& w_basis);

/// Basis of the intersection of two column spaces.
FpMatrix intersect_spaces(const FpMatrix& a, const FpMatrix& b);
/// Basis of the sum of two column spaces.
FpMatrix sum_spaces(const FpMatrix& a, const FpMatrix& b);
bool space_contains(const FpMatrix& big, const FpMatrix& small);

}  // namespace ppcx
