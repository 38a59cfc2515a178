#include "econe/isometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace econe {

namespace {

template <typename Scalar>
Vector<Scalar> cast_to(const LatticeVector& v)
{
    return v.cast<Scalar>();
}

void require_rank(const SurfaceModel& model, Eigen::Index size, const char* what)
{
    if (size != model.rank)
        throw std::invalid_argument(std::string(what) + ": expected rank " +
                                    std::to_string(model.rank) + ", got " + std::to_string(size));
}

void validate_reflection(const SurfaceModel& model, const Reflection& r)
{
    require_rank(model, r.v.size(), "reflection");
    Integer vv = square(model, r.v);
    if (vv == 0)
        throw std::invalid_argument("reflection: vector is isotropic");
    // Integral iff 2 (e_i . v) is divisible by v.v for every basis vector.
    LatticeVector gv = gram_times(model, r.v);
    for (Eigen::Index i = 0; i < gv.size(); ++i)
    {
        if ((2 * gv(i)) % vv != 0)
            throw std::invalid_argument("reflection: not integral on the lattice");
    }
}

void validate_eichler(const SurfaceModel& model, const Eichler& e)
{
    require_rank(model, e.u.size(), "eichler");
    require_rank(model, e.x.size(), "eichler");
    if (square(model, e.u) != 0)
        throw std::invalid_argument("eichler: u is not isotropic");
    if (pairing(model, e.u, e.x) != 0)
        throw std::invalid_argument("eichler: x is not orthogonal to u");
    Integer xx = square(model, e.x);
    if (xx % 2 != 0 && divisibility(model, e.u) % 2 != 0)
        throw std::invalid_argument("eichler: map is not integral");
}

void validate_generator(const SurfaceModel& model, const Generator& gen)
{
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, Reflection>)
                validate_reflection(model, g);
            else if constexpr (std::is_same_v<G, Eichler>)
                validate_eichler(model, g);
            else if constexpr (std::is_same_v<G, Explicit>)
            {
                if (g.matrix.rows() != model.rank || g.matrix.cols() != model.rank)
                    throw std::invalid_argument("explicit generator: wrong matrix size");
            }
        },
        gen);
}

// M <- gen * M, column by column.
void left_multiply(const SurfaceModel& model, const Generator& gen, IntMatrix& m)
{
    if (const auto* e = std::get_if<Explicit>(&gen))
    {
        m = sparse_product(e->matrix, m);
        return;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j)
    {
        LatticeVector col = m.col(j);
        m.col(j) = apply_generator(model, gen, col);
    }
}

}   // namespace

std::string generator_name(const Generator& g)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using G = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<G, Reflection>)
                return "reflection";
            else if constexpr (std::is_same_v<G, Eichler>)
                return "eichler";
            else if constexpr (std::is_same_v<G, FibreShear>)
                return "f";
            else
                return "explicit";
        },
        g);
}

template <typename Scalar>
Vector<Scalar> apply_generator(const SurfaceModel& model, const Generator& gen, const Vector<Scalar>& y)
{
    require_rank(model, y.size(), "apply_generator");
    return std::visit(
        [&](const auto& g) -> Vector<Scalar> {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, Reflection>)
            {
                const Vector<Scalar> v = cast_to<Scalar>(g.v);
                const Scalar vv = square(model, v);
                const Scalar yv = pairing(model, y, v);
                if constexpr (std::is_same_v<Scalar, Integer>)
                {
                    if ((2 * yv) % vv != 0)
                        throw std::domain_error("reflection: image is not integral");
                    return y - ((2 * yv) / vv) * v;
                }
                else
                {
                    return y - (Scalar(2) * yv / vv) * v;
                }
            }
            else if constexpr (std::is_same_v<G, Eichler>)
            {
                const Vector<Scalar> u = cast_to<Scalar>(g.u);
                const Vector<Scalar> x = cast_to<Scalar>(g.x);
                const Scalar yu = pairing(model, y, u);
                const Scalar yx = pairing(model, y, x);
                if (yu == 0 && yx == 0)
                    return y;
                const Scalar xx = square(model, x);
                Scalar coeff_u = -yx;
                if constexpr (std::is_same_v<Scalar, Integer>)
                {
                    if ((xx * yu) % 2 != 0)
                        throw std::domain_error("eichler: image is not integral");
                    coeff_u -= (xx * yu) / 2;
                }
                else
                {
                    coeff_u -= xx * yu / Scalar(2);
                }
                return y + yu * x + coeff_u * u;
            }
            else if constexpr (std::is_same_v<G, FibreShear>)
            {
                Vector<Scalar> out = y;
                const Scalar i = Scalar(g.i);
                out(SurfaceModel::F) -= i * y(SurfaceModel::R);
                out(SurfaceModel::T) += i * y(SurfaceModel::W);
                return out;
            }
            else
            {
                return g.matrix.template cast<Scalar>() * y;
            }
        },
        gen);
}

template LatticeVector apply_generator<Integer>(const SurfaceModel&, const Generator&, const LatticeVector&);
template RationalClass apply_generator<Rational>(const SurfaceModel&, const Generator&, const RationalClass&);

IntMatrix replay_word(const SurfaceModel& model, const std::vector<Generator>& word)
{
    IntMatrix m = IntMatrix::Identity(model.rank, model.rank);
    for (auto it = word.rbegin(); it != word.rend(); ++it)
    {
        validate_generator(model, *it);
        left_multiply(model, *it, m);
    }
    return m;
}

Isometry::Isometry(const SurfaceModel& model, std::vector<Generator> word)
    : matrix_(replay_word(model, word)), word_(std::move(word))
{
}

Isometry Isometry::identity(const SurfaceModel& model)
{
    return from_parts(IntMatrix::Identity(model.rank, model.rank), {});
}

namespace {

IntMatrix isometry_inverse_matrix(const SurfaceModel& model, const IntMatrix& m)
{
    // M^{-1} = G^{-1} M^T G for M^T G M = G
    IntMatrix gm(model.rank, model.rank);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
    {
        LatticeVector col = m.col(j);
        gm.col(j) = gram_times(model, col);
    }
    // M^T G = (G M)^T
    const IntMatrix mt_g = gm.transpose();
    return sparse_product(model.gram_inverse, mt_g);
}

}   // namespace

Generator invert_generator(const SurfaceModel& model, const Generator& gen)
{
    return std::visit(
        [&](const auto& g) -> Generator {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, Reflection>)
                return g;
            else if constexpr (std::is_same_v<G, Eichler>)
                return Eichler{g.u, LatticeVector(-g.x)};
            else if constexpr (std::is_same_v<G, FibreShear>)
                return FibreShear{-g.i};
            else
                return Explicit{isometry_inverse_matrix(model, g.matrix)};
        },
        gen);
}

RationalMatrix reflection_matrix(const SurfaceModel& model, const RationalClass& v)
{
    require_rank(model, v.size(), "reflection_matrix");
    const Rational vv = square(model, v);
    if (vv == 0)
        throw std::invalid_argument("reflection_matrix: vector is isotropic");
    const RationalClass gv = gram_times(model, v);
    RationalMatrix m = RationalMatrix::Identity(model.rank, model.rank);
    m -= (Rational(2) / vv) * v * gv.transpose();
    return m;
}

Isometry reflection(const SurfaceModel& model, const LatticeVector& v)
{
    return Isometry(model, {Reflection{v}});
}

Isometry eichler(const SurfaceModel& model, const LatticeVector& u, const LatticeVector& x)
{
    return Isometry(model, {Eichler{u, x}});
}

Isometry make_f(const SurfaceModel& model, const Integer& i)
{
    return Isometry(model, {FibreShear{i}});
}

Isometry compose(const Isometry& g, const Isometry& h)
{
    if (g.rank() != h.rank())
        throw std::invalid_argument("compose: rank mismatch");
    std::vector<Generator> word = g.word();
    word.insert(word.end(), h.word().begin(), h.word().end());
    return Isometry::from_parts(sparse_product(g.matrix(), h.matrix()), std::move(word));
}

Isometry invert(const SurfaceModel& model, const Isometry& g)
{
    require_rank(model, g.rank(), "invert");
    std::vector<Generator> word;
    word.reserve(g.word().size());
    for (auto it = g.word().rbegin(); it != g.word().rend(); ++it)
        word.push_back(invert_generator(model, *it));
    return Isometry::from_parts(isometry_inverse_matrix(model, g.matrix()), std::move(word));
}

RationalClass apply(const Isometry& g, const RationalClass& x)
{
    if (x.size() != g.rank())
        throw std::invalid_argument("apply: dimension mismatch");
    const IntMatrix& m = g.matrix();
    RationalClass out = RationalClass::Zero(m.rows());
    for (Eigen::Index k = 0; k < x.size(); ++k)
    {
        if (x(k) == 0)
            continue;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
        {
            if (m(i, k) != 0)
                out(i) += Rational(m(i, k)) * x(k);
        }
    }
    return out;
}

LatticeVector apply(const Isometry& g, const LatticeVector& x)
{
    if (x.size() != g.rank())
        throw std::invalid_argument("apply: dimension mismatch");
    return sparse_product(g.matrix(), x);
}

bool preserves_gram(const SurfaceModel& model, const IntMatrix& m)
{
    if (m.rows() != model.rank || m.cols() != model.rank)
        return false;
    IntMatrix gm(model.rank, model.rank);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
    {
        LatticeVector col = m.col(j);
        gm.col(j) = gram_times(model, col);
    }
    const IntMatrix mt = m.transpose();
    return sparse_product(mt, gm) == model.gram;
}

bool satisfies_star(const SurfaceModel& model, const IntMatrix& m)
{
    if (m.rows() != model.rank || m.cols() != model.rank)
        return false;
    for (int idx : {SurfaceModel::F, SurfaceModel::W})
    {
        for (int k = 0; k < model.rank; ++k)
        {
            const Integer expected = (k == idx) ? 1 : 0;
            if (m(k, idx) != expected || m(idx, k) != expected)
                return false;
        }
    }
    return true;
}

bool fixes_fibre(const SurfaceModel& model, const IntMatrix& m)
{
    if (m.rows() != model.rank || m.cols() != model.rank)
        return false;
    for (int k = 0; k < model.rank; ++k)
    {
        if (m(k, SurfaceModel::F) != (k == SurfaceModel::F ? 1 : 0))
            return false;
    }
    return true;
}

std::vector<RationalClass> reflection_decomposition(const SurfaceModel& model, const IntMatrix& m)
{
    if (!preserves_gram(model, m))
        throw std::invalid_argument("reflection_decomposition: matrix does not preserve the form");

    RationalMatrix h = to_rational(m);
    std::vector<RationalClass> vectors;

    // h <- s_v h
    auto reflect_left = [&](const RationalClass& v) {
        const Rational vv = square(model, v);
        const Eigen::Matrix<Rational, 1, Eigen::Dynamic> row =
            gram_times(model, v).transpose() * h;
        h -= (Rational(2) / vv) * v * row;
        vectors.push_back(v);
    };

    for (int k = 0; k < model.rank; ++k)
    {
        const RationalClass x = to_rational(LatticeVector(model.orthogonal_basis.col(k)));
        RationalClass y = RationalClass::Zero(model.rank);
        for (int i = 0; i < model.rank; ++i)
        {
            if (x(i) != 0)
                y += x(i) * h.col(i);
        }
        if (y == x)
            continue;

        // h fixes x_1..x_{k-1}; y and x are both orthogonal to them, so every
        // reflection below does too.
        const RationalClass diff = y - x;
        if (square(model, diff) != 0)
        {
            reflect_left(diff);
        }
        else
        {
            // s_{x+y} sends y to -x, then s_x sends -x to x.
            reflect_left(RationalClass(x + y));
            reflect_left(x);
        }
    }

    if (h != RationalMatrix::Identity(model.rank, model.rank))
        throw std::logic_error("reflection_decomposition: residual is not the identity");
    return vectors;
}

int spinor_norm(const SurfaceModel& model, const IntMatrix& m)
{
    int sign = 1;
    for (const auto& v : reflection_decomposition(model, m))
    {
        if (square(model, v) < 0)
            sign = -sign;
    }
    return sign;
}

bool is_realizable(const SurfaceModel& model, const Isometry& g)
{
    const IntMatrix& m = g.matrix();
    if (!fixes_fibre(model, m) || !preserves_gram(model, m))
        return false;
    return spinor_norm(model, m) == 1;
}

namespace {

/**
 * Drives x to R + delta T with Eichler moves. The (R, T) and (u_1, v_1)
 * coordinates are tracked as the 2x2 matrix
 *
 *     [ r   p ]        r = x_R, t = x_T, p = x_{u_1}, q = x_{v_1}
 *     [ -q  t ]
 *
 * whose determinant is half the square of that part. Elementary row and
 * column operations on it are single Eichler transvections:
 *
 *     col0 += k col1   E(R, -k v_1)
 *     col1 += k col0   E(T,  k u_1)
 *     row0 += k row1   E(R,  k u_1)
 *     row1 += k row0   E(T, -k v_1)
 */
class OrbitReducer
{
    public:
        OrbitReducer(const SurfaceModel& model, LatticeVector x)
            : model_(model), x_(std::move(x))
        {
        }

        std::vector<Generator> run()
        {
            smith_reduce();
            if (abs(entry(0, 0)) != 1)
            {
                // gcd of the 2x2 block exceeds one: pull a coprime value into q
                // from the rest of the lattice via E(v_1, y), y in that rest.
                const int rest = model_.u(1) + 2;
                LatticeVector gx = gram_times(model_, x_);
                gx.head(rest).setZero();
                const Integer d = content(gx);
                if (d == 0)
                    throw std::invalid_argument("map_to_RT: vector is not primitive");
                // x.v_1 = p = 0 here, so the move only shifts q by -(x.y).
                LatticeVector y = solve_pairing(model_, x_, Integer(-d), rest);
                push(unit(model_.v(1)), y);
                smith_reduce();
                if (abs(entry(0, 0)) != 1)
                    throw std::invalid_argument("map_to_RT: vector is not primitive");
            }
            if (entry(0, 0) == -1)
            {
                // two quarter turns negate both rows
                for (int turn = 0; turn < 2; ++turn)
                {
                    row_add(0, 1, 1);
                    row_add(1, 0, -1);
                    row_add(0, 1, 1);
                }
            }

            // x = R + t T + w with w orthogonal to R and T; E(T, -w) removes w.
            LatticeVector w = x_;
            w(SurfaceModel::R) = 0;
            w(SurfaceModel::T) = 0;
            push(unit(SurfaceModel::T), LatticeVector(-w));

            // applied in order a_1, ..., a_k; the word lists a_k first.
            std::reverse(applied_.begin(), applied_.end());
            return std::move(applied_);
        }

        const LatticeVector& image() const { return x_; }

    private:
        const SurfaceModel& model_;
        LatticeVector x_;
        std::vector<Generator> applied_;

        LatticeVector unit(int index, const Integer& scale = 1) const
        {
            LatticeVector e = LatticeVector::Zero(model_.rank);
            e(index) = scale;
            return e;
        }

        void push(LatticeVector u, LatticeVector y)
        {
            if (y.isZero())
                return;
            Generator gen = Eichler{std::move(u), std::move(y)};
            x_ = apply_generator(model_, gen, x_);
            // E(u, a) E(u, b) = E(u, a + b)
            if (!applied_.empty())
            {
                auto* last = std::get_if<Eichler>(&applied_.back());
                const auto& next = std::get<Eichler>(gen);
                if (last != nullptr && last->u == next.u)
                {
                    last->x += next.x;
                    if (last->x.isZero())
                        applied_.pop_back();
                    return;
                }
            }
            applied_.push_back(std::move(gen));
        }

        Integer entry(int i, int j) const
        {
            const int p_idx = model_.u(1);
            const int q_idx = model_.v(1);
            if (i == 0 && j == 0)
                return x_(SurfaceModel::R);
            if (i == 0 && j == 1)
                return x_(p_idx);
            if (i == 1 && j == 0)
                return -x_(q_idx);
            return x_(SurfaceModel::T);
        }

        void row_add(int target, int source, const Integer& k)
        {
            if (k == 0)
                return;
            if (target == 0 && source == 1)
                push(unit(SurfaceModel::R), unit(model_.u(1), k));
            else if (target == 1 && source == 0)
                push(unit(SurfaceModel::T), unit(model_.v(1), Integer(-k)));
            else
                throw std::logic_error("row_add: bad indices");
        }

        void col_add(int target, int source, const Integer& k)
        {
            if (k == 0)
                return;
            if (target == 0 && source == 1)
                push(unit(SurfaceModel::R), unit(model_.v(1), Integer(-k)));
            else if (target == 1 && source == 0)
                push(unit(SurfaceModel::T), unit(model_.u(1), k));
            else
                throw std::logic_error("col_add: bad indices");
        }

        // Zero entry (1, 0) by row Euclid.
        void clear_below()
        {
            while (entry(1, 0) != 0)
            {
                if (entry(0, 0) == 0)
                {
                    row_add(0, 1, 1);
                    continue;
                }
                row_add(1, 0, Integer(-(entry(1, 0) / entry(0, 0))));
                if (entry(1, 0) == 0)
                    break;
                row_add(0, 1, Integer(-(entry(0, 0) / entry(1, 0))));
            }
        }

        // Zero entry (0, 1) by column Euclid.
        void clear_right()
        {
            while (entry(0, 1) != 0)
            {
                if (entry(0, 0) == 0)
                {
                    col_add(0, 1, 1);
                    continue;
                }
                col_add(1, 0, Integer(-(entry(0, 1) / entry(0, 0))));
                if (entry(0, 1) == 0)
                    break;
                col_add(0, 1, Integer(-(entry(0, 0) / entry(0, 1))));
            }
        }

        void smith_reduce()
        {
            while (true)
            {
                clear_below();
                clear_right();
                if (entry(1, 0) != 0 || entry(0, 1) != 0)
                    continue;
                const Integer corner = entry(0, 0);
                const Integer other = entry(1, 1);
                if (other == 0)
                    break;
                if (corner == 0 || other % corner != 0)
                {
                    row_add(0, 1, 1);
                    continue;
                }
                break;
            }
        }
};

}   // namespace

Isometry map_to_RT(const SurfaceModel& model, const LatticeVector& x)
{
    require_rank(model, x.size(), "map_to_RT");
    if (!in_fw_complement(model, x))
        throw std::invalid_argument("map_to_RT: vector has F or W components");
    if (!is_primitive(model, x))
        throw std::invalid_argument("map_to_RT: vector is not primitive");
    if (model.a < 1)
        throw std::logic_error("map_to_RT: needs an auxiliary hyperbolic plane");

    OrbitReducer reducer(model, x);
    std::vector<Generator> word = reducer.run();

    const Integer delta = square(model, x) / 2;
    LatticeVector target = LatticeVector::Zero(model.rank);
    target(SurfaceModel::R) = 1;
    target(SurfaceModel::T) = delta;
    if (reducer.image() != target)
        throw std::logic_error("map_to_RT: reduction did not reach R + delta T");

    Isometry g(model, std::move(word));
    if (apply(g, x) != target)
        throw std::logic_error("map_to_RT: replayed word disagrees with the reduction");
    return g;
}

}   // namespace econe
