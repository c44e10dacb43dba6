#include "ppcx/fp_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace ppcx {

void check_prime(unsigned p) {
    bool prime = p >= 2 && p < 256;
    for (unsigned d = 2; prime && d * d <= p; ++d)
        if (p % d == 0) prime = false;
    require(prime, ErrorKind::InvalidInput, "characteristic must be a prime below 256, got " + std::to_string(p));
}

unsigned inv_mod(unsigned a, unsigned p) {
    a %= p;
    require(a != 0, ErrorKind::Internal, "inverse of zero");
    // Fermat: a^(p-2)
    unsigned r = 1, b = a, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

void axpy(Scalar* y, const Scalar* x, unsigned a, int n, unsigned p) {
    a %= p;
    if (a == 0) return;
    if (p == 2) {
        for (int k = 0; k < n; ++k) y[k] ^= x[k];
        return;
    }
    for (int k = 0; k < n; ++k) {
        unsigned v = y[k] + a * x[k];
        y[k] = static_cast<Scalar>(v % p);
    }
}

static void scale_row(Scalar* y, unsigned a, int n, unsigned p) {
    if (a == 1) return;
    for (int k = 0; k < n; ++k) y[k] = static_cast<Scalar>(y[k] * a % p);
}

FpMatrix::FpMatrix(unsigned p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
    require(rows >= 0 && cols >= 0, ErrorKind::Internal, "negative matrix shape");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(unsigned p, int n) {
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMatrix FpMatrix::from_rows(unsigned p, const std::vector<std::vector<long long>>& rows, int cols) {
    int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    FpMatrix m(p, static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.rows(); ++i) {
        require(static_cast<int>(rows[i].size()) == c, ErrorKind::InvalidInput, "ragged matrix rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

FpMatrix FpMatrix::column(unsigned p, const std::vector<Scalar>& v) {
    FpMatrix m(p, static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m.data_[i] = static_cast<Scalar>(v[i] % p);
    return m;
}

FpMatrix FpMatrix::random(unsigned p, int rows, int cols, Rng& rng) {
    FpMatrix m(p, rows, cols);
    for (auto& x : m.data_) x = static_cast<Scalar>(rng.below(p));
    return m;
}

FpMatrix FpMatrix::unflatten(unsigned p, int rows, int cols, const std::vector<Scalar>& v) {
    require(static_cast<long long>(v.size()) == static_cast<long long>(rows) * cols, ErrorKind::Internal,
            "unflatten size mismatch");
    FpMatrix m(p, rows, cols);
    m.data_ = v;
    return m;
}

void FpMatrix::set(int r, int c, long long v) {
    long long q = v % static_cast<long long>(p_);
    if (q < 0) q += p_;
    data_[static_cast<std::size_t>(r) * cols_ + c] = static_cast<Scalar>(q);
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar x) { return x == 0; });
}

bool FpMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool FpMatrix::is_permutation() const {
    if (rows_ != cols_) return false;
    std::vector<int> colcount(cols_, 0);
    for (int i = 0; i < rows_; ++i) {
        int ones = 0;
        for (int j = 0; j < cols_; ++j) {
            Scalar x = at(i, j);
            if (x == 0) continue;
            if (x != 1) return false;
            ++ones;
            ++colcount[j];
        }
        if (ones != 1) return false;
    }
    return std::all_of(colcount.begin(), colcount.end(), [](int c) { return c == 1; });
}

void check_same_field(const FpMatrix& a, const FpMatrix& b) {
    if (a.p() != b.p())
        raise(ErrorKind::FieldMismatch,
              "GF(" + std::to_string(a.p()) + ") vs GF(" + std::to_string(b.p()) + ")");
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.data_[static_cast<std::size_t>(j) * rows_ + i] = at(i, j);
    return t;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    check_same_field(*this, o);
    require(cols_ == o.rows_, ErrorKind::Internal,
            "matrix product shape mismatch " + std::to_string(rows_) + "x" + std::to_string(cols_) + " * " +
                std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    FpMatrix r(p_, rows_, o.cols_);
    const int n = o.cols_;
    if (n == 0 || rows_ == 0) return r;
    if (p_ == 2) {
        for (int i = 0; i < rows_; ++i) {
            Scalar* out = r.row(i);
            const Scalar* a = row(i);
            for (int j = 0; j < cols_; ++j) {
                if (!a[j]) continue;
                const Scalar* b = o.row(j);
                for (int k = 0; k < n; ++k) out[k] ^= b[k];
            }
        }
        return r;
    }
    std::vector<std::uint32_t> acc(n);
    // Each step adds at most (p-1)^2 < 2^16; reduce well before overflow.
    const int flush_every = 60000;
    for (int i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const Scalar* a = row(i);
        int pending = 0;
        for (int j = 0; j < cols_; ++j) {
            const std::uint32_t aij = a[j];
            if (!aij) continue;
            const Scalar* b = o.row(j);
            for (int k = 0; k < n; ++k) acc[k] += aij * b[k];
            if (++pending == flush_every) {
                for (auto& x : acc) x %= p_;
                pending = 0;
            }
        }
        Scalar* out = r.row(i);
        for (int k = 0; k < n; ++k) out[k] = static_cast<Scalar>(acc[k] % p_);
    }
    return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    FpMatrix r = *this;
    r += o;
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    FpMatrix r = *this;
    r -= o;
    return r;
}

FpMatrix& FpMatrix::operator+=(const FpMatrix& o) {
    add_scaled(o, 1);
    return *this;
}

FpMatrix& FpMatrix::operator-=(const FpMatrix& o) {
    add_scaled(o, p_ - 1);
    return *this;
}

void FpMatrix::add_scaled(const FpMatrix& o, unsigned a) {
    check_same_field(*this, o);
    require(rows_ == o.rows_ && cols_ == o.cols_, ErrorKind::Internal, "matrix sum shape mismatch");
    axpy(data_.data(), o.data_.data(), a, static_cast<int>(data_.size()), p_);
}

FpMatrix FpMatrix::scaled(unsigned a) const {
    FpMatrix r(p_, rows_, cols_);
    r.add_scaled(*this, a);
    return r;
}

FpMatrix FpMatrix::block(int r0, int c0, int nr, int nc) const {
    require(r0 >= 0 && c0 >= 0 && r0 + nr <= rows_ && c0 + nc <= cols_, ErrorKind::Internal, "block out of range");
    FpMatrix b(p_, nr, nc);
    for (int i = 0; i < nr; ++i)
        std::copy(row(r0 + i) + c0, row(r0 + i) + c0 + nc, b.row(i));
    return b;
}

void FpMatrix::set_block(int r0, int c0, const FpMatrix& b) {
    check_same_field(*this, b);
    require(r0 >= 0 && c0 >= 0 && r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, ErrorKind::Internal,
            "set_block out of range");
    for (int i = 0; i < b.rows_; ++i) std::copy(b.row(i), b.row(i) + b.cols_, row(r0 + i) + c0);
}

FpMatrix FpMatrix::select_columns(const std::vector<int>& cs) const {
    FpMatrix r(p_, rows_, static_cast<int>(cs.size()));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < r.cols_; ++j) r.data_[static_cast<std::size_t>(i) * r.cols_ + j] = at(i, cs[j]);
    return r;
}

FpMatrix FpMatrix::select_rows(const std::vector<int>& rs) const {
    FpMatrix r(p_, static_cast<int>(rs.size()), cols_);
    for (int i = 0; i < r.rows_; ++i) std::copy(row(rs[i]), row(rs[i]) + cols_, r.row(i));
    return r;
}

std::vector<Scalar> FpMatrix::col(int c) const {
    std::vector<Scalar> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
}

std::vector<Scalar> FpMatrix::apply(const std::vector<Scalar>& v) const {
    require(static_cast<int>(v.size()) == cols_, ErrorKind::Internal, "apply shape mismatch");
    std::vector<Scalar> r(rows_);
    for (int i = 0; i < rows_; ++i) {
        std::uint32_t s = 0;
        const Scalar* a = row(i);
        for (int j = 0; j < cols_; ++j) s += static_cast<std::uint32_t>(a[j]) * v[j];
        r[i] = static_cast<Scalar>(s % p_);
    }
    return r;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<std::vector<int>> FpMatrix::to_rows() const {
    std::vector<std::vector<int>> r(rows_, std::vector<int>(cols_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i][j] = at(i, j);
    return r;
}

std::string FpMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << '[';
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << int(at(i, j));
        os << "]\n";
    }
    return os.str();
}

FpMatrix hstack(const std::vector<FpMatrix>& ms, unsigned p, int rows) {
    int c = 0;
    for (const auto& m : ms) {
        require(m.rows() == rows, ErrorKind::Internal, "hstack row mismatch");
        if (m.rows() * m.cols() > 0) require(m.p() == p, ErrorKind::FieldMismatch, "hstack field mismatch");
        c += m.cols();
    }
    FpMatrix r(p, rows, c);
    int off = 0;
    for (const auto& m : ms) {
        for (int i = 0; i < rows; ++i) std::copy(m.row(i), m.row(i) + m.cols(), r.row(i) + off);
        off += m.cols();
    }
    return r;
}

FpMatrix vstack(const std::vector<FpMatrix>& ms, unsigned p, int cols) {
    int rr = 0;
    for (const auto& m : ms) {
        require(m.cols() == cols, ErrorKind::Internal, "vstack column mismatch");
        if (m.rows() * m.cols() > 0) require(m.p() == p, ErrorKind::FieldMismatch, "vstack field mismatch");
        rr += m.rows();
    }
    FpMatrix r(p, rr, cols);
    int off = 0;
    for (const auto& m : ms) {
        for (int i = 0; i < m.rows(); ++i) std::copy(m.row(i), m.row(i) + cols, r.row(off + i));
        off += m.rows();
    }
    return r;
}

FpMatrix kron(const FpMatrix& a, const FpMatrix& b) {
    check_same_field(a, b);
    const unsigned p = a.p();
    FpMatrix r(p, a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            unsigned x = a.at(i, j);
            if (!x) continue;
            for (int k = 0; k < b.rows(); ++k) {
                Scalar* out = r.row(i * b.rows() + k) + j * b.cols();
                axpy(out, b.row(k), x, b.cols(), p);
            }
        }
    return r;
}

FpMatrix dsum(const FpMatrix& a, const FpMatrix& b) {
    check_same_field(a, b);
    FpMatrix r(a.p(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

FpMatrix dsum(const std::vector<FpMatrix>& ms, unsigned p) {
    int nr = 0, nc = 0;
    for (const auto& m : ms) nr += m.rows(), nc += m.cols();
    FpMatrix r(p, nr, nc);
    int ro = 0, co = 0;
    for (const auto& m : ms) {
        if (m.rows() * m.cols() > 0) r.set_block(ro, co, m);
        ro += m.rows();
        co += m.cols();
    }
    return r;
}

// In-place reduction to reduced row echelon form; returns pivot columns.
static std::vector<int> rref_in_place(FpMatrix& m, int col_limit = -1) {
    const unsigned p = m.p();
    const int rows = m.rows(), cols = m.cols();
    const int limit = col_limit < 0 ? cols : col_limit;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < limit && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) std::swap_ranges(m.row(piv), m.row(piv) + cols, m.row(r));
        scale_row(m.row(r), inv_mod(m.at(r, c), p), cols, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            unsigned f = m.at(i, c);
            if (f) axpy(m.row(i), m.row(r), p - f, cols, p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

RrefPack rref_pack(const FpMatrix& m) {
    RrefPack pk;
    pk.rref = m;
    pk.pivots = rref_in_place(pk.rref);
    pk.rank = static_cast<int>(pk.pivots.size());
    const unsigned p = m.p();
    const int cols = m.cols();
    std::vector<char> is_pivot(cols, 0);
    for (int c : pk.pivots) is_pivot[c] = 1;
    pk.kernel = FpMatrix(p, cols, cols - pk.rank);
    int k = 0;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        pk.kernel.set(f, k, 1);
        for (int r = 0; r < pk.rank; ++r) {
            unsigned v = pk.rref.at(r, f);
            if (v) pk.kernel.set(pk.pivots[r], k, p - v);
        }
        ++k;
    }
    pk.image = m.select_columns(pk.pivots);
    return pk;
}

int rank(const FpMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Eliminate on the shorter side.
    FpMatrix t = m.rows() <= m.cols() ? m : m.transpose();
    return static_cast<int>(rref_in_place(t).size());
}

FpMatrix kernel(const FpMatrix& m) { return rref_pack(m).kernel; }

FpMatrix image(const FpMatrix& m) {
    if (m.cols() == 0) return FpMatrix(m.p(), m.rows(), 0);
    return rref_pack(m).image;
}

std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
    check_same_field(a, b);
    require(a.rows() == b.rows(), ErrorKind::Internal, "solve shape mismatch");
    const unsigned p = a.p();
    FpMatrix aug = hstack({a, b}, p, a.rows());
    auto piv = rref_in_place(aug, a.cols());
    const int r = static_cast<int>(piv.size());
    // Inconsistent if a zero row of A has a nonzero right side.
    for (int i = r; i < aug.rows(); ++i)
        for (int j = a.cols(); j < aug.cols(); ++j)
            if (aug.at(i, j)) return std::nullopt;
    FpMatrix x(p, a.cols(), b.cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < b.cols(); ++j) x.set(piv[i], j, aug.at(i, a.cols() + j));
    return x;
}

std::optional<FpMatrix> inverse(const FpMatrix& m) {
    if (!m.square()) return std::nullopt;
    auto x = solve(m, FpMatrix::identity(m.p(), m.rows()));
    if (!x) return std::nullopt;
    if (rank(m) != m.rows()) return std::nullopt;
    return x;
}

bool invertible(const FpMatrix& m) { return m.square() && rank(m) == m.rows(); }

FpMatrix power(const FpMatrix& m, unsigned long long e) {
    require(m.square(), ErrorKind::Internal, "power of non-square matrix");
    FpMatrix r = FpMatrix::identity(m.p(), m.rows()), b = m;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

unsigned trace(const FpMatrix& m) {
    unsigned s = 0;
    for (int i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m.at(i, i);
    return s % m.p();
}

bool Subspace::reduce(std::vector<Scalar>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        unsigned x = v[pivots_[k]];
        if (x) axpy(v.data(), rows_[k].data(), p_ - x, n_, p_);
    }
    return std::any_of(v.begin(), v.end(), [](Scalar x) { return x != 0; });
}

bool Subspace::add(std::vector<Scalar> v) {
    if (!reduce(v)) return false;
    int piv = 0;
    while (v[piv] == 0) ++piv;
    scale_row(v.data(), inv_mod(v[piv], p_), n_, p_);
    // Keep earlier rows reduced at the new pivot so reduce() stays a single pass.
    for (auto& r : rows_) {
        unsigned x = r[piv];
        if (x) axpy(r.data(), v.data(), p_ - x, n_, p_);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

void Subspace::add_columns(const FpMatrix& m) {
    for (int c = 0; c < m.cols(); ++c) add(m.col(c));
}

FpMatrix Subspace::basis() const {
    FpMatrix b(p_, n_, dim());
    for (int k = 0; k < dim(); ++k)
        for (int i = 0; i < n_; ++i) b.set(i, k, rows_[k][i]);
    return b;
}

CoordinateMap::CoordinateMap(const FpMatrix& basis) {
    m_ = basis.cols();
    const unsigned p = basis.p();
    const int n = basis.rows();
    if (m_ == 0) {
        left_ = FpMatrix(p, 0, n);
        return;
    }
    // Rows of the basis that carry an invertible m x m minor.
    RrefPack pk = rref_pack(basis.transpose());
    require(pk.rank == m_, ErrorKind::Internal, "coordinate basis is not independent");
    FpMatrix minor = basis.select_rows(pk.pivots);
    auto inv = inverse(minor);
    require(inv.has_value(), ErrorKind::Internal, "coordinate minor not invertible");
    left_ = FpMatrix(p, m_, n);
    for (int j = 0; j < m_; ++j)
        for (int i = 0; i < m_; ++i) left_.set(i, pk.pivots[j], inv->at(i, j));
}

FpMatrix CoordinateMap::coords(const FpMatrix& vectors) const { return left_ * vectors; }

std::vector<Scalar> CoordinateMap::coords(const std::vector<Scalar>& v) const { return left_.apply(v); }

Subquotient subquotient(const FpMatrix& u_basis, const FpMatrix& w_basis) {
    const unsigned p = u_basis.p();
    const int n = u_basis.rows();
    Subquotient sq;
    sq.sub = image(w_basis);
    Subspace s(p, n);
    s.add_columns(sq.sub);
    std::vector<int> comp;
    for (int c = 0; c < u_basis.cols(); ++c)
        if (s.add(u_basis.col(c))) comp.push_back(c);
    sq.complement = u_basis.select_columns(comp);
    FpMatrix full = hstack({sq.sub, sq.complement}, p, n);
    CoordinateMap cm(full);
    sq.quotient_coords = cm.left_inverse().block(sq.sub.cols(), 0, sq.complement.cols(), n);
    return sq;
}

FpMatrix intersect_spaces(const FpMatrix& a, const FpMatrix& b) {
    const unsigned p = a.p();
    FpMatrix ai = image(a), bi = image(b);
    FpMatrix m = hstack({ai, bi.scaled(p - 1)}, p, a.rows());
    FpMatrix k = kernel(m);
    FpMatrix inter = ai * k.block(0, 0, ai.cols(), k.cols());
    return image(inter);
}

FpMatrix sum_spaces(const FpMatrix& a, const FpMatrix& b) { return image(hstack({a, b}, a.p(), a.rows())); }

bool space_contains(const FpMatrix& big, const FpMatrix& small) {
    Subspace s(big.p(), big.rows());
    s.add_columns(big);
    for (int c = 0; c < small.cols(); ++c)
        if (!s.contains(small.col(c))) return false;
    return true;
}

}  // namespace ppcx
