/**
 * Intersection lattice of the elliptic surface E(n), n >= 3.
 *
 * Basis order (fixed, part of every serialized vector):
 *
 *     F, W, R, T, u_1, v_1, ..., u_a, v_a, E8 block 1 (8 vectors), ..., E8 block b
 *
 * with a = 2n - 3 and b = n, so that the rank is 12n - 2 and the signature
 * is -8n. F.W = 1, F^2 = 0, W^2 = 0 (n even) or 1 (n odd), R.T = 1,
 * R^2 = T^2 = 0, each (u_j, v_j) is a hyperbolic plane and each E8 block
 * carries the negated E8 Cartan matrix.
 */
#ifndef ECONE_LATTICE_HPP
#define ECONE_LATTICE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "econe/numeric.hpp"

namespace econe {

/// One nonzero Gram entry; the model keeps both (i, j) and (j, i).
struct GramEntry
{
    int row;
    int col;
    int value;
};

class SurfaceModel
{
    public:
        static constexpr int F = 0;
        static constexpr int W = 1;
        static constexpr int R = 2;
        static constexpr int T = 3;

        int n = 0;
        int m = 0;
        int parity_eps = 0;   // W.W
        int rank = 0;
        int a = 0;
        int b = 0;
        int c1_coeff = 0;     // c_1 = c1_coeff * PD(F)
        IntMatrix gram;
        IntMatrix gram_inverse;
        std::vector<GramEntry> gram_entries;

        /**
         * Integral vectors x_1, ..., x_rank (columns) that are pairwise
         * orthogonal with nonzero squares. Each is supported in a single
         * block of the splitting.
         */
        IntMatrix orthogonal_basis;

        bool spin() const { return parity_eps == 0; }

        /// Index of u_j, j = 1..a.
        int u(int j) const { return 4 + 2 * (j - 1); }
        /// Index of v_j, j = 1..a.
        int v(int j) const { return 5 + 2 * (j - 1); }
        /// First index of the k-th E8 block, k = 0..b-1.
        int e8_offset(int k) const { return 4 + 2 * a + 8 * k; }
        /// First coordinate of the (F, W)-orthogonal complement.
        int perp_offset() const { return 2; }

        LatticeVector basis_vector(int index) const;
        RationalClass rational_basis_vector(int index) const;

        bool operator==(const SurfaceModel& other) const
        {
            return n == other.n && rank == other.rank && gram == other.gram;
        }
};

/// Fixed convention: diagonal 2, -1 on the chain e1-...-e7 and on e5-e8.
IntMatrix e8_cartan();

/// Throws std::invalid_argument for n < 3.
SurfaceModel build_surface_model(int n);

/// gram * x, using the sparse entry list.
template <typename Scalar>
Vector<Scalar> gram_times(const SurfaceModel& model, const Vector<Scalar>& x)
{
    if (x.size() != model.rank)
        throw std::invalid_argument("gram_times: dimension mismatch");
    Vector<Scalar> out = Vector<Scalar>::Zero(model.rank);
    for (const auto& e : model.gram_entries)
    {
        if (x(e.col) != 0)
            out(e.row) += Scalar(e.value) * x(e.col);
    }
    return out;
}

template <typename Scalar>
Scalar pairing(const SurfaceModel& model, const Vector<Scalar>& x, const Vector<Scalar>& y)
{
    if (x.size() != model.rank || y.size() != model.rank)
        throw std::invalid_argument("pairing: dimension mismatch (expected " +
                                    std::to_string(model.rank) + ")");
    Scalar total = 0;
    for (const auto& e : model.gram_entries)
    {
        if (x(e.row) != 0 && y(e.col) != 0)
            total += Scalar(e.value) * x(e.row) * y(e.col);
    }
    return total;
}

template <typename Scalar>
Scalar square(const SurfaceModel& model, const Vector<Scalar>& x)
{
    return pairing(model, x, x);
}

/// gcd of the pairings of x with all basis vectors; 0 for the zero vector.
Integer divisibility(const SurfaceModel& model, const LatticeVector& x);

bool is_primitive(const SurfaceModel& model, const LatticeVector& x);

/// True if the F and W coordinates vanish.
template <typename Scalar>
bool in_fw_complement(const SurfaceModel& model, const Vector<Scalar>& x)
{
    return x.size() == model.rank && x(SurfaceModel::F) == 0 && x(SurfaceModel::W) == 0;
}

/**
 * omega = alpha F + beta W + perp with perp orthogonal to F and W.
 * beta = omega.F and alpha = omega.W - eps(n) beta.
 */
struct Decomposition
{
    Rational alpha;
    Rational beta;
    RationalClass perp;
};

Decomposition decompose(const SurfaceModel& model, const RationalClass& omega);

RationalClass recompose(const SurfaceModel& model, const Decomposition& parts);

/**
 * For primitive x supported on the (F, W)-complement, return e2 in the same
 * block with x.e2 = 1. Throws std::invalid_argument if x is imprimitive or
 * has F/W components.
 */
LatticeVector basis_complete(const SurfaceModel& model, const LatticeVector& x);

/**
 * Integral y supported on coordinates [first, rank) with x.y = target.
 * The block [first, rank) must be a unimodular orthogonal summand and target
 * a multiple of the gcd of the pairings of x with that block.
 */
LatticeVector solve_pairing(const SurfaceModel& model, const LatticeVector& x,
                            const Integer& target, int first);

}   // namespace econe

#endif
