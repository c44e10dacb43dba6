#pragma once

#include <vector>

#include "ppcx/fp_matrix.hpp"

namespace ppcx {

/// Basis of {phi : phi * a[s] = b[s] * phi for all s} (dim_b x dim_a matrices),
/// computed by spinning the source under the operators a[s].
std::vector<FpMatrix> intertwiners(const std::vector<FpMatrix>& a, const std::vector<FpMatrix>& b, unsigned p,
                                   int dim_a, int dim_b);

/// A direct summand of the ambient space cut out by an idempotent of an algebra:
/// proj * embed = I_u and embed * proj is the idempotent.
struct Piece {
    FpMatrix embed;  ///< n x u
    FpMatrix proj;   ///< u x n
    int dim() const { return embed.cols(); }
};

/// Basis of the algebra {proj * a * embed : a in alg} acting on a piece.
std::vector<FpMatrix> restrict_algebra(const std::vector<FpMatrix>& alg, const Piece& piece);

/// Linearly independent spanning subset (as a basis) of a list of equal-shape matrices.
std::vector<FpMatrix> matrix_span_basis(const std::vector<FpMatrix>& ms, unsigned p, int rows, int cols);

/// Jacobson radical of a unital matrix algebra (given by a basis of u x u matrices),
/// by iterated kernels of p-power trace forms. The result is checked to be nilpotent.
std::vector<FpMatrix> radical_basis(const std::vector<FpMatrix>& alg, unsigned p, int u);

/// True iff the algebra is local (its quotient by the radical is a field).
bool algebra_is_local(const std::vector<FpMatrix>& alg, unsigned p, int u);

/// Splits the ambient space (dim n) into pieces with local endomorphism algebras,
/// using Fitting decompositions of random algebra elements; leaf locality is
/// certified by the radical test. Throws Indeterminate if a non-local leaf
/// cannot be split within the sampling budget.
std::vector<Piece> primitive_pieces(const std::vector<FpMatrix>& alg, unsigned p, int n, Rng& rng);

}  // namespace ppcx
