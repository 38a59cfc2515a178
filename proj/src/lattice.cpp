#include "econe/lattice.hpp"

#include <string>

namespace econe {

IntMatrix e8_cartan()
{
    IntMatrix e8 = IntMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i)
        e8(i, i) = 2;
    // chain e1 - e2 - ... - e7
    for (int i = 0; i < 6; ++i)
    {
        e8(i, i + 1) = -1;
        e8(i + 1, i) = -1;
    }
    // edge e5 - e8
    e8(4, 7) = -1;
    e8(7, 4) = -1;
    return e8;
}

namespace {

// Gram-Schmidt inside a definite block (no isotropic vectors), scaled to integers.
IntMatrix orthogonalize_definite_block(const IntMatrix& block)
{
    const int size = static_cast<int>(block.rows());
    IntMatrix basis = IntMatrix::Zero(size, size);
    RationalMatrix g = to_rational(block);
    std::vector<RationalClass> done;
    for (int k = 0; k < size; ++k)
    {
        RationalClass x = RationalClass::Zero(size);
        x(k) = 1;
        for (const auto& y : done)
        {
            Rational yy = y.dot(g * y);
            x -= (x.dot(g * y) / yy) * y;
        }
        done.push_back(x);

        Integer lcm_den = 1;
        for (int i = 0; i < size; ++i)
            lcm_den = lcm(lcm_den, denominator(x(i)));
        for (int i = 0; i < size; ++i)
            basis(i, k) = numerator(x(i) * Rational(lcm_den));
    }
    return basis;
}

}   // namespace

SurfaceModel build_surface_model(int n)
{
    if (n < 3)
        throw std::invalid_argument("build_surface_model: n must be at least 3 (got " +
                                    std::to_string(n) + ")");
    SurfaceModel model;
    model.n = n;
    model.m = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
    model.parity_eps = n % 2;
    model.a = 2 * n - 3;
    model.b = n;
    model.rank = 4 + 2 * model.a + 8 * model.b;
    model.c1_coeff = -(n - 2);

    IntMatrix& g = model.gram;
    g = IntMatrix::Zero(model.rank, model.rank);
    auto hyperbolic = [&](int i, int j) {
        g(i, j) = 1;
        g(j, i) = 1;
    };
    hyperbolic(SurfaceModel::F, SurfaceModel::W);
    g(SurfaceModel::W, SurfaceModel::W) = model.parity_eps;
    hyperbolic(SurfaceModel::R, SurfaceModel::T);
    for (int j = 1; j <= model.a; ++j)
        hyperbolic(model.u(j), model.v(j));
    const IntMatrix e8 = e8_cartan();
    for (int k = 0; k < model.b; ++k)
        g.block(model.e8_offset(k), model.e8_offset(k), 8, 8) = -e8;

    // Blockwise inverse: H is self-inverse, H'^{-1} = [[-1, 1], [1, 0]].
    IntMatrix& gi = model.gram_inverse;
    gi = g;
    if (!model.spin())
    {
        gi(SurfaceModel::F, SurfaceModel::F) = -1;
        gi(SurfaceModel::W, SurfaceModel::W) = 0;
    }
    const IntMatrix e8_inverse = to_integral(inverse(to_rational(e8)));
    for (int k = 0; k < model.b; ++k)
        gi.block(model.e8_offset(k), model.e8_offset(k), 8, 8) = -e8_inverse;

    for (int i = 0; i < model.rank; ++i)
    {
        for (int j = 0; j < model.rank; ++j)
        {
            if (g(i, j) != 0)
                model.gram_entries.push_back({i, j, g(i, j).convert_to<int>()});
        }
    }

    // Orthogonal basis, block by block.
    IntMatrix& basis = model.orthogonal_basis;
    basis = IntMatrix::Zero(model.rank, model.rank);
    if (model.spin())
    {
        // F + W, F - W: squares 2, -2
        basis(SurfaceModel::F, 0) = 1;
        basis(SurfaceModel::W, 0) = 1;
        basis(SurfaceModel::F, 1) = 1;
        basis(SurfaceModel::W, 1) = -1;
    }
    else
    {
        // W, F - W: squares 1, -1
        basis(SurfaceModel::W, 0) = 1;
        basis(SurfaceModel::F, 1) = 1;
        basis(SurfaceModel::W, 1) = -1;
    }
    auto split_hyperbolic = [&](int i, int j) {
        basis(i, i) = 1;
        basis(j, i) = 1;
        basis(i, j) = 1;
        basis(j, j) = -1;
    };
    split_hyperbolic(SurfaceModel::R, SurfaceModel::T);
    for (int j = 1; j <= model.a; ++j)
        split_hyperbolic(model.u(j), model.v(j));
    const IntMatrix e8_basis = orthogonalize_definite_block(-e8);
    for (int k = 0; k < model.b; ++k)
        basis.block(model.e8_offset(k), model.e8_offset(k), 8, 8) = e8_basis;

    return model;
}

LatticeVector SurfaceModel::basis_vector(int index) const
{
    LatticeVector e = LatticeVector::Zero(rank);
    e(index) = 1;
    return e;
}

RationalClass SurfaceModel::rational_basis_vector(int index) const
{
    RationalClass e = RationalClass::Zero(rank);
    e(index) = 1;
    return e;
}

Integer divisibility(const SurfaceModel& model, const LatticeVector& x)
{
    return content(gram_times(model, x));
}

bool is_primitive(const SurfaceModel& model, const LatticeVector& x)
{
    return divisibility(model, x) == 1;
}

Decomposition decompose(const SurfaceModel& model, const RationalClass& omega)
{
    const RationalClass f = model.rational_basis_vector(SurfaceModel::F);
    const RationalClass w = model.rational_basis_vector(SurfaceModel::W);
    Decomposition parts;
    parts.beta = pairing(model, omega, f);
    parts.alpha = pairing(model, omega, w) - Rational(model.parity_eps) * parts.beta;
    parts.perp = omega - parts.alpha * f - parts.beta * w;
    return parts;
}

RationalClass recompose(const SurfaceModel& model, const Decomposition& parts)
{
    RationalClass omega = parts.perp;
    omega(SurfaceModel::F) += parts.alpha;
    omega(SurfaceModel::W) += parts.beta;
    if (omega.size() != model.rank)
        throw std::invalid_argument("recompose: dimension mismatch");
    return omega;
}

LatticeVector solve_pairing(const SurfaceModel& model, const LatticeVector& x,
                            const Integer& target, int first)
{
    LatticeVector w = gram_times(model, x);
    w.head(first).setZero();
    Integer g = content(w);
    if (g == 0)
    {
        if (target == 0)
            return LatticeVector::Zero(model.rank);
        throw std::invalid_argument("solve_pairing: vector has no pairing with the block");
    }
    if (target % g != 0)
        throw std::invalid_argument("solve_pairing: target is not a multiple of the divisibility");
    LatticeVector y = bezout_vector(w);
    y *= Integer(target / g);
    return y;
}

LatticeVector basis_complete(const SurfaceModel& model, const LatticeVector& x)
{
    if (x.size() != model.rank)
        throw std::invalid_argument("basis_complete: dimension mismatch");
    if (!in_fw_complement(model, x))
        throw std::invalid_argument("basis_complete: vector has F or W components");
    if (!is_primitive(model, x))
        throw std::invalid_argument("basis_complete: vector is not primitive");
    return solve_pairing(model, x, Integer(1), model.perp_offset());
}

}   // namespace econe
