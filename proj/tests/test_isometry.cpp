#include "catch_amalgamated.hpp"

#include <random>

#include "econe/isometry.hpp"
#include "oracles.hpp"

using namespace econe;

namespace {

constexpr int F = SurfaceModel::F;
constexpr int W = SurfaceModel::W;
constexpr int R = SurfaceModel::R;
constexpr int T = SurfaceModel::T;

LatticeVector e(const SurfaceModel& m, int i)
{
    return m.basis_vector(i);
}

IntMatrix eichler_oracle(const IntMatrix& g, const LatticeVector& u, const LatticeVector& x)
{
    // y -> y + (y.u) x - (y.x) u - 1/2 x^2 (y.u) u, column by column
    const Eigen::Index N = g.rows();
    const Integer half_sq = x.dot(g * x) / 2;
    const LatticeVector gu = g * u;
    const LatticeVector gx = g * x;
    IntMatrix out = IntMatrix::Identity(N, N);
    for (Eigen::Index c = 0; c < N; ++c)
        out.col(c) += gu(c) * x - gx(c) * u - half_sq * gu(c) * u;
    return out;
}

IntMatrix shear_oracle(int n, const Integer& i)
{
    IntMatrix out = IntMatrix::Identity(oracle::rank_of(n), oracle::rank_of(n));
    out(T, W) = i;    // W -> W + iT
    out(F, R) = -i;   // R -> R - iF
    return out;
}

/// Random vector of square `target` of the form R + kT + y, y on the pair and E8 blocks.
template <typename Rng>
LatticeVector vector_of_square(const SurfaceModel& m, Rng& rng, int target)
{
    std::uniform_int_distribution<int> entry(-2, 2);
    std::bernoulli_distribution keep(0.25);
    LatticeVector x = LatticeVector::Zero(m.rank);
    for (int i = 4; i < m.rank; ++i)
    {
        if (keep(rng))
            x(i) = entry(rng);
    }
    const Integer y_sq = square(m, x);
    x(R) = 1;
    x(T) = (target - y_sq) / 2;
    return x;
}

struct WordDraw
{
    std::vector<Generator> word;
    std::vector<IntMatrix> oracle_factors;

    IntMatrix oracle_matrix(Eigen::Index rank) const
    {
        IntMatrix out = IntMatrix::Identity(rank, rank);
        for (const auto& f : oracle_factors)
            out = out * f;
        return out;
    }

    LatticeVector oracle_apply(LatticeVector x) const
    {
        for (auto it = oracle_factors.rbegin(); it != oracle_factors.rend(); ++it)
            x = *it * x;
        return x;
    }
};

template <typename Rng>
WordDraw random_word(const SurfaceModel& m, Rng& rng, int length, bool with_reflections)
{
    const IntMatrix g = oracle::gram(m.n);
    WordDraw out;
    std::uniform_int_distribution<int> kind(0, with_reflections ? 2 : 1);
    std::uniform_int_distribution<int> small(-3, 3);
    std::bernoulli_distribution keep(0.3);
    std::bernoulli_distribution sign(0.5);
    const int isotropic[4] = {R, T, m.u(1), m.v(1)};
    std::uniform_int_distribution<int> pick(0, 3);

    for (int k = 0; k < length; ++k)
    {
        switch (kind(rng))
        {
            case 0:
            {
                const int which = pick(rng);
                const int ui = isotropic[which];
                const int partner = which == 0 ? T : which == 1 ? R : which == 2 ? m.v(1) : m.u(1);
                LatticeVector x = LatticeVector::Zero(m.rank);
                for (int i = 2; i < m.rank; ++i)
                {
                    if (i != partner && i != ui && keep(rng))
                        x(i) = small(rng);
                }
                const LatticeVector u = e(m, ui);
                out.word.push_back(Eichler{u, x});
                out.oracle_factors.push_back(eichler_oracle(g, u, x));
                break;
            }
            case 1:
            {
                const Integer i = small(rng);
                out.word.push_back(FibreShear{i});
                out.oracle_factors.push_back(shear_oracle(m.n, i));
                break;
            }
            default:
            {
                const LatticeVector v = vector_of_square(m, rng, sign(rng) ? 2 : -2);
                out.word.push_back(Reflection{v});
                out.oracle_factors.push_back(oracle::reflection_matrix(g, v));
                break;
            }
        }
    }
    return out;
}

}   // namespace

TEST_CASE("reflection examples")
{
    const SurfaceModel m3 = build_surface_model(3);
    const LatticeVector W3 = e(m3, W);
    CHECK(apply(reflection(m3, W3), W3) == LatticeVector(-W3));

    const SurfaceModel m4 = build_surface_model(4);
    const LatticeVector fw = e(m4, F) + e(m4, W);
    CHECK(apply(reflection(m4, fw), e(m4, F)) == LatticeVector(-e(m4, W)));

    const Isometry s = reflection(m4, fw);
    CHECK(compose(s, s).matrix() == IntMatrix::Identity(m4.rank, m4.rank));

    CHECK_THROWS_AS(reflection(m4, e(m4, R)), std::invalid_argument);
    // square 4 with odd pairings: not integral
    const LatticeVector r2 = 2 * e(m4, R) + e(m4, T);
    CHECK_THROWS_AS(reflection(m4, r2), std::invalid_argument);
}

TEST_CASE("Eichler examples and validation")
{
    const SurfaceModel m = build_surface_model(4);
    const LatticeVector zero = LatticeVector::Zero(m.rank);
    CHECK(eichler(m, e(m, R), zero).matrix() == IntMatrix::Identity(m.rank, m.rank));
    CHECK(apply(eichler(m, e(m, R), e(m, m.u(1))), e(m, R)) == e(m, R));
    CHECK(apply(eichler(m, e(m, T), e(m, m.u(1))), e(m, R)) == LatticeVector(e(m, R) + e(m, m.u(1))));

    CHECK_THROWS_AS(eichler(m, LatticeVector(e(m, R) + e(m, T)), e(m, m.u(1))), std::invalid_argument);
    CHECK_THROWS_AS(eichler(m, e(m, R), e(m, T)), std::invalid_argument);
}

TEST_CASE("Eichler maps match the formula, compose additively and invert by negation")
{
    std::mt19937_64 rng(41);
    for (int n : {3, 4})
    {
        const SurfaceModel m = build_surface_model(n);
        const IntMatrix g = oracle::gram(n);
        for (int k = 0; k < 40; ++k)
        {
            const LatticeVector u = e(m, k % 2 == 0 ? R : m.u(1));
            const int partner = k % 2 == 0 ? T : m.v(1);
            LatticeVector x = oracle::random_primitive_complement(n, rng, 3, 0.2);
            LatticeVector y = oracle::random_primitive_complement(n, rng, 3, 0.2);
            x(partner) = 0;
            y(partner) = 0;
            const Isometry ex = eichler(m, u, x);
            const Isometry ey = eichler(m, u, y);
            CHECK(ex.matrix() == eichler_oracle(g, u, x));
            CHECK(compose(ex, ey).matrix() == eichler(m, u, LatticeVector(x + y)).matrix());
            CHECK(compose(ex, eichler(m, u, LatticeVector(-x))).matrix() ==
                  IntMatrix::Identity(m.rank, m.rank));
            CHECK(preserves_gram(m, ex.matrix()));
            CHECK(satisfies_star(m, ex.matrix()));
        }
    }
}

TEST_CASE("fibre shear formula")
{
    const SurfaceModel m = build_surface_model(4);
    CHECK(make_f(m, 0).matrix() == IntMatrix::Identity(m.rank, m.rank));
    CHECK(apply(make_f(m, 1), e(m, W)) == LatticeVector(e(m, W) + e(m, T)));

    std::mt19937_64 rng(43);
    for (int k = 0; k < 100; ++k)
    {
        const Rational a = oracle::random_rational(rng, 9), b = oracle::random_rational(rng, 9),
                       c = oracle::random_rational(rng, 9), d = oracle::random_rational(rng, 9);
        for (int i = -5; i <= 5; ++i)
        {
            RationalClass x = RationalClass::Zero(m.rank);
            x(F) = a;
            x(W) = b;
            x(R) = c;
            x(T) = d;
            const RationalClass y = apply(make_f(m, i), x);
            CHECK(y(F) == a - i * c);
            CHECK(y(W) == b);
            CHECK(y(R) == c);
            CHECK(y(T) == d + i * b);
        }
    }
}

TEST_CASE("fibre shears are realizable isometries forming a group")
{
    for (int n : {3, 4})
    {
        const SurfaceModel m = build_surface_model(n);
        const IntMatrix neg = oracle::negative_subspace(m.gram);
        for (int i = -5; i <= 5; ++i)
        {
            const Isometry f = make_f(m, i);
            CHECK(f.matrix() == shear_oracle(n, i));
            CHECK(preserves_gram(m, f.matrix()));
            CHECK(fixes_fibre(m, f.matrix()));
            CHECK(spinor_norm(m, f) == 1);
            CHECK(oracle::negative_orientation(m.gram, neg, f.matrix()) == 1);
            CHECK(is_realizable(m, f));
            CHECK(compose(f, make_f(m, 2)).matrix() == make_f(m, i + 2).matrix());
            CHECK(invert(m, f).matrix() == make_f(m, -i).matrix());
            if (i != 0)
                CHECK_FALSE(satisfies_star(m, f.matrix()));
        }
    }
}

TEST_CASE("random words: replay, Gram preservation, inverse")
{
    std::mt19937_64 rng(47);
    for (int n : {3, 4})
    {
        const SurfaceModel m = build_surface_model(n);
        std::uniform_int_distribution<int> len(0, 20);
        for (int k = 0; k < 30; ++k)
        {
            const WordDraw w = random_word(m, rng, len(rng), true);
            const Isometry g(m, w.word);
            if (k < 6)
                CHECK(g.matrix() == w.oracle_matrix(m.rank));
            for (int t = 0; t < 3; ++t)
            {
                LatticeVector y = oracle::random_primitive_complement(n, rng, 4, 0.5);
                y(F) = t + 1;
                y(W) = -2 * t - 1;
                CHECK(LatticeVector(g.matrix() * y) == w.oracle_apply(y));
            }
            CHECK(IntMatrix(g.matrix().transpose() * oracle::gram(n) * g.matrix()) == oracle::gram(n));
            CHECK(preserves_gram(m, g.matrix()));
            const Isometry gi = invert(m, g);
            CHECK(compose(g, gi).matrix() == IntMatrix::Identity(m.rank, m.rank));
            CHECK(Isometry(m, gi.word()).matrix() == gi.matrix());

            const LatticeVector x = oracle::random_primitive_complement(n, rng, 4, 0.5);
            CHECK(apply(g, x) == LatticeVector(g.matrix() * x));
            CHECK(square(m, apply(g, x)) == square(m, x));
        }
    }
}

TEST_CASE("spinor norm agrees with the negative-subspace orientation oracle")
{
    std::mt19937_64 rng(53);
    for (int n : {3, 4})
    {
        const SurfaceModel m = build_surface_model(n);
        const IntMatrix neg = oracle::negative_subspace(m.gram);
        CHECK(spinor_norm(m, Isometry::identity(m)) == 1);

        // single reflections fix the convention
        const LatticeVector root = e(m, m.e8_offset(0));
        CHECK(spinor_norm(m, reflection(m, root)) == -1);
        CHECK(oracle::negative_orientation(m.gram, neg, reflection(m, root).matrix()) == -1);
        const LatticeVector plus = e(m, R) + e(m, T);
        CHECK(spinor_norm(m, reflection(m, plus)) == 1);

        for (int k = 0; k < 25; ++k)
        {
            const WordDraw w1 = random_word(m, rng, 6, true);
            const WordDraw w2 = random_word(m, rng, 6, true);
            const Isometry g1(m, w1.word), g2(m, w2.word);
            const int s1 = spinor_norm(m, g1);
            const int s2 = spinor_norm(m, g2);
            CHECK(s1 == oracle::negative_orientation(m.gram, neg, g1.matrix()));
            CHECK(spinor_norm(m, compose(g1, g2)) == s1 * s2);

            int expected = 1;
            for (const auto& gen : w1.word)
            {
                if (const auto* r = std::get_if<Reflection>(&gen))
                    expected *= square(m, r->v) < 0 ? -1 : 1;
            }
            CHECK(s1 == expected);

            // g1 = s_1 s_2 ... s_k, checked column by column
            const auto vs = reflection_decomposition(m, g1.matrix());
            const RationalMatrix gq = to_rational(oracle::gram(n));
            std::vector<RationalClass> gvs;
            for (const auto& v : vs)
                gvs.push_back(gq * v);
            bool same = true;
            for (int c = 0; c < m.rank && same; ++c)
            {
                RationalClass y = m.rational_basis_vector(c);
                for (std::size_t r = vs.size(); r-- > 0;)
                    y -= (2 * y.dot(gvs[r]) / vs[r].dot(gvs[r])) * vs[r];
                same = y == to_rational(LatticeVector(g1.matrix().col(c)));
            }
            CHECK(same);
        }
    }
}

TEST_CASE("realizability criterion")
{
    const SurfaceModel m = build_surface_model(4);
    const Isometry root = reflection(m, e(m, m.e8_offset(1) + 3));
    CHECK(fixes_fibre(m, root.matrix()));
    CHECK(spinor_norm(m, root) == -1);
    CHECK_FALSE(is_realizable(m, root));

    const Isometry moves_f = reflection(m, LatticeVector(e(m, F) + e(m, W)));
    CHECK_FALSE(fixes_fibre(m, moves_f.matrix()));
    CHECK_FALSE(is_realizable(m, moves_f));
    CHECK(is_realizable(m, compose(make_f(m, 3), eichler(m, e(m, R), e(m, m.v(2))))));
}

TEST_CASE("map to R + delta T: worked examples")
{
    const SurfaceModel m = build_surface_model(4);
    const LatticeVector Rv = e(m, R), Tv = e(m, T);

    const Isometry g0 = map_to_RT(m, Rv);
    CHECK(apply(g0, Rv) == Rv);

    const LatticeVector r5 = Rv + 5 * Tv;
    const Isometry g5 = map_to_RT(m, r5);
    CHECK(apply(g5, r5) == r5);
    CHECK(g5.word().empty());

    const LatticeVector uv = e(m, m.u(1)) + e(m, m.v(1));
    const Isometry g1 = map_to_RT(m, uv);
    CHECK(apply(g1, uv) == LatticeVector(Rv + Tv));
    CHECK(preserves_gram(m, g1.matrix()));

    CHECK_THROWS_AS(map_to_RT(m, LatticeVector(2 * uv)), std::invalid_argument);
    CHECK_THROWS_AS(map_to_RT(m, LatticeVector(Rv + e(m, F))), std::invalid_argument);
    CHECK_THROWS_AS(map_to_RT(m, LatticeVector::Zero(m.rank)), std::invalid_argument);
}

TEST_CASE("map to R + delta T on random primitive vectors")
{
    std::mt19937_64 rng(59);
    for (int n : {3, 4, 5})
    {
        const SurfaceModel m = build_surface_model(n);
        const IntMatrix neg = oracle::negative_subspace(m.gram);
        for (int k = 0; k < 60; ++k)
        {
            const double density = k < 30 ? 1.0 : 0.15;
            const LatticeVector x = oracle::random_primitive_complement(n, rng, 5, density);
            const Isometry g = map_to_RT(m, x);
            LatticeVector target = LatticeVector::Zero(m.rank);
            target(R) = 1;
            target(T) = x.dot(oracle::gram(n) * x) / 2;
            CHECK(apply(g, x) == target);
            CHECK(IntMatrix(g.matrix().transpose() * oracle::gram(n) * g.matrix()) == oracle::gram(n));
            CHECK(satisfies_star(m, g.matrix()));
            CHECK(Isometry(m, g.word()).matrix() == g.matrix());
            if (k % 10 == 0)
            {
                CHECK(oracle::negative_orientation(m.gram, neg, g.matrix()) == 1);
                CHECK(is_realizable(m, g));
            }
        }
    }
}
