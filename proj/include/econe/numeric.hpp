/**
 * Exact scalar types and small dense helpers shared by every module.
 *
 * Integers and rationals are GMP-backed boost multiprecision numbers with
 * expression templates disabled so they behave as plain value types inside
 * Eigen matrices.
 */
#ifndef ECONE_NUMERIC_HPP
#define ECONE_NUMERIC_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace econe {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Integral homology class in the fixed basis.
using LatticeVector = Vector<Integer>;
/// Rational cohomology class, identified with homology via Poincare duality.
using RationalClass = Vector<Rational>;
using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline RationalClass to_rational(const LatticeVector& x)
{
    return x.cast<Rational>();
}

inline RationalMatrix to_rational(const IntMatrix& m)
{
    return m.cast<Rational>();
}

/// True if every entry has denominator one.
bool is_integral(const RationalClass& x);
bool is_integral(const RationalMatrix& m);

/// Entrywise conversion; throws std::domain_error on a non-integral entry.
LatticeVector to_integral(const RationalClass& x);
IntMatrix to_integral(const RationalMatrix& m);

/// gcd of all entries (0 for the zero vector).
Integer content(const LatticeVector& x);

/**
 * Write a nonzero rational vector as x = mu / scale with mu integral and
 * primitive and scale a positive rational. Throws std::invalid_argument on
 * the zero vector.
 */
struct PrimitiveDecomposition
{
    LatticeVector primitive;
    Rational scale;
};
PrimitiveDecomposition primitive_part(const RationalClass& x);

/// max_i |x_i|
Rational sup_norm(const RationalClass& x);

Rational floor(const Rational& q);
Integer floor_to_integer(const Rational& q);

/// Bezout coefficients: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t);

/**
 * Integer coefficients c with c . w = gcd(w). Unit entries are preferred so
 * that the solution stays short; otherwise a running extended gcd is used.
 */
LatticeVector bezout_vector(const LatticeVector& w);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
/// a * b, skipping zero entries; isometry matrices are mostly identity.
template <typename Scalar>
Matrix<Scalar> sparse_product(const Matrix<Scalar>& a, const Matrix<Scalar>& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("sparse_product: dimension mismatch");
    Matrix<Scalar> out = Matrix<Scalar>::Zero(a.rows(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j)
    {
        for (Eigen::Index k = 0; k < b.rows(); ++k)
        {
            const Scalar& bkj = b(k, j);
            if (bkj == 0)
                continue;
            for (Eigen::Index i = 0; i < a.rows(); ++i)
            {
                if (a(i, k) != 0)
                    out(i, j) += a(i, k) * bkj;
            }
        }
    }
    return out;
}

template <typename Scalar>
Vector<Scalar> sparse_product(const Matrix<Scalar>& a, const Vector<Scalar>& x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("sparse_product: dimension mismatch");
    Vector<Scalar> out = Vector<Scalar>::Zero(a.rows());
    for (Eigen::Index k = 0; k < x.size(); ++k)
    {
        if (x(k) == 0)
            continue;
        for (Eigen::Index i = 0; i < a.rows(); ++i)
        {
            if (a(i, k) != 0)
                out(i) += a(i, k) * x(k);
        }
    }
    return out;
}

Integer determinant(const IntMatrix& m);

/// Gauss-Jordan inverse over Q; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Canonical text: "p" or "p/q" with q > 0 and gcd(p, q) = 1.
std::string format_rational(const Rational& q);

/**
 * Strict parser for the canonical form (also accepts non-reduced input only
 * when `canonical_only` is false). Throws std::invalid_argument.
 */
Rational parse_rational(std::string_view text, bool canonical_only = false);

std::string format_vector(const RationalClass& x, char delimiter = ',');
std::string format_vector(const LatticeVector& x, char delimiter = ',');

/// Splits on commas and any whitespace; empty tokens are skipped.
std::vector<std::string> split_tokens(std::string_view text);

RationalClass parse_rational_vector(std::string_view text, bool canonical_only = false);
LatticeVector parse_integer_vector(std::string_view text, bool canonical_only = false);

}   // namespace econe

#endif
