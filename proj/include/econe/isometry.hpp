/**
 * Integral isometries of the E(n) lattice stored both as a matrix and as the
 * generator word that produced it.
 *
 * Convention: an Isometry acts on column coordinate vectors, x -> M x, and
 * the word [w_0, w_1, ..., w_{k-1}] multiplies out as M = w_0 w_1 ... w_{k-1}
 * (w_{k-1} is applied first).
 */
#ifndef ECONE_ISOMETRY_HPP
#define ECONE_ISOMETRY_HPP

#include <string>
#include <variant>
#include <vector>

#include "econe/lattice.hpp"

namespace econe {

/// x -> x - 2 (x.v / v.v) v for an integral v whose reflection is integral.
struct Reflection
{
    LatticeVector v;
    bool operator==(const Reflection&) const = default;
};

/// Eichler transvection y -> y + (y.u) x - (y.x) u - 1/2 x^2 (y.u) u, u isotropic, u.x = 0.
struct Eichler
{
    LatticeVector u;
    LatticeVector x;
    bool operator==(const Eichler&) const = default;
};

/// F -> F, W -> W + iT, R -> R - iF, T -> T, identity elsewhere.
struct FibreShear
{
    Integer i;
    bool operator==(const FibreShear&) const = default;
};

struct Explicit
{
    IntMatrix matrix;
    bool operator==(const Explicit& other) const
    {
        return matrix.rows() == other.matrix.rows() && matrix.cols() == other.matrix.cols() &&
               matrix == other.matrix;
    }
};

using Generator = std::variant<Reflection, Eichler, FibreShear, Explicit>;

std::string generator_name(const Generator& g);

class Isometry
{
    public:
        Isometry() = default;

        /// Replays `word`; throws std::invalid_argument if a generator is invalid.
        Isometry(const SurfaceModel& model, std::vector<Generator> word);

        /// Unchecked: trusts that `matrix` is the product of `word`.
        static Isometry from_parts(IntMatrix matrix, std::vector<Generator> word)
        {
            Isometry g;
            g.matrix_ = std::move(matrix);
            g.word_ = std::move(word);
            return g;
        }

        static Isometry identity(const SurfaceModel& model);

        const IntMatrix& matrix() const { return matrix_; }
        const std::vector<Generator>& word() const { return word_; }
        Eigen::Index rank() const { return matrix_.rows(); }

        bool operator==(const Isometry& other) const
        {
            return matrix_.rows() == other.matrix_.rows() && matrix_ == other.matrix_ &&
                   word_ == other.word_;
        }

    private:
        IntMatrix matrix_;
        std::vector<Generator> word_;
};

/// Product of the word, validating each generator against the model.
IntMatrix replay_word(const SurfaceModel& model, const std::vector<Generator>& word);

/// Image of x under one generator.
template <typename Scalar>
Vector<Scalar> apply_generator(const SurfaceModel& model, const Generator& gen,
                               const Vector<Scalar>& x);

/// Inverse generator (for the inverse word).
Generator invert_generator(const SurfaceModel& model, const Generator& gen);

/// Rational reflection matrix; throws std::invalid_argument for isotropic v.
RationalMatrix reflection_matrix(const SurfaceModel& model, const RationalClass& v);

/// Integral reflection isometry; throws if v is isotropic or the reflection is not integral.
Isometry reflection(const SurfaceModel& model, const LatticeVector& v);

/// Throws std::invalid_argument unless u^2 = 0 and u.x = 0 and the map is integral.
Isometry eichler(const SurfaceModel& model, const LatticeVector& u, const LatticeVector& x);

Isometry make_f(const SurfaceModel& model, const Integer& i);

/// g o h
Isometry compose(const Isometry& g, const Isometry& h);
Isometry invert(const SurfaceModel& model, const Isometry& g);

RationalClass apply(const Isometry& g, const RationalClass& x);
LatticeVector apply(const Isometry& g, const LatticeVector& x);

/// M^T G M == G, exactly.
bool preserves_gram(const SurfaceModel& model, const IntMatrix& m);

/// Condition (*): identity on the (F, W) summand (columns and rows).
bool satisfies_star(const SurfaceModel& model, const IntMatrix& m);

bool fixes_fibre(const SurfaceModel& model, const IntMatrix& m);

/**
 * Real spinor norm: sign of the product of v.v over the reflection vectors
 * of a Cartan-Dieudonne decomposition over Q. Throws std::invalid_argument
 * if m is not Gram-preserving.
 */
int spinor_norm(const SurfaceModel& model, const IntMatrix& m);
inline int spinor_norm(const SurfaceModel& model, const Isometry& g)
{
    return spinor_norm(model, g.matrix());
}

/**
 * Reflection vectors found by the decomposition, in the order they were
 * peeled off. Exposed for tests: m = s_{v_1} s_{v_2} ... s_{v_k}.
 */
std::vector<RationalClass> reflection_decomposition(const SurfaceModel& model, const IntMatrix& m);

/// Fixes F (hence c_1) and has spinor norm +1.
bool is_realizable(const SurfaceModel& model, const Isometry& g);

/**
 * For primitive x in the (F, W)-complement, an Eichler word g satisfying (*)
 * with g(x) = R + (x^2/2) T. Throws std::invalid_argument for imprimitive
 * input or input with F/W components.
 */
Isometry map_to_RT(const SurfaceModel& model, const LatticeVector& x);

}   // namespace econe

#endif
