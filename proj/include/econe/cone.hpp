/**
 * Classification of classes against the positive-cone regions of E(n) and
 * synthesis of approximation certificates for the certifiable ones.
 *
 * A certificate for a target omega (after normalizing omega.F > 0) consists
 * of an integral isometry g fixing F with spinor norm one and a class
 *
 *     eta = sigma + Z0 / N,   sigma = a F + b W + c R + d T,  a, b, c, d > 0,
 *
 * such that N eta is the base class plus nonnegative multiples of F, W, R, T
 * and g^{-1}(eta) lies within epsilon of omega in the sup norm.
 */
#ifndef ECONE_CONE_HPP
#define ECONE_CONE_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "econe/isometry.hpp"

namespace econe {

enum class Verdict
{
    NotPositiveSquare,
    PerpToC1,
    CertifiableSpin,
    CertifiablePositive,
    CertifiableNonSpinGt,
    ConjecturalNonSpin
};

std::string to_string(Verdict v);
/// Throws std::invalid_argument on an unknown name.
Verdict verdict_from_string(const std::string& name);

bool is_certifiable(Verdict v);

struct ConeRegion
{
    /// Strongest applicable region; CertifiablePositive wins over the parity regions.
    Verdict verdict = Verdict::NotPositiveSquare;
    /// -1 if the class was negated so that omega.F >= 0.
    int sign = 1;
    /// alpha, beta and perp^2 all positive (after normalization).
    bool positive = false;
    /// CertifiableSpin / CertifiableNonSpinGt / ConjecturalNonSpin for classes
    /// of positive square with nonzero F pairing; otherwise equal to verdict.
    Verdict parity_region = Verdict::NotPositiveSquare;
};

struct Normalized
{
    RationalClass omega;
    int sign;
};

Normalized normalize(const SurfaceModel& model, const RationalClass& omega);

ConeRegion classify(const SurfaceModel& model, const RationalClass& omega);

/// alpha > -perp_sq / (2 beta); throws std::invalid_argument for beta <= 0.
bool check_alpha_inequality(const Rational& alpha, const Rational& beta, const Rational& perp_sq);

struct BaseClassConfig
{
    Rational alpha0 = 1;
    Rational beta0 = 1;
    Rational gamma0 = 1;
    Rational delta0 = 1;
    RationalClass z0;   // zero on F, W, R, T

    /// alpha0 F + beta0 W + gamma0 R + delta0 T + Z0
    RationalClass omega0(const SurfaceModel& model) const;

    /// Throws std::invalid_argument if a coefficient is not positive or Z0 is malformed.
    void validate(const SurfaceModel& model) const;

    bool operator==(const BaseClassConfig& other) const
    {
        return alpha0 == other.alpha0 && beta0 == other.beta0 && gamma0 == other.gamma0 &&
               delta0 == other.delta0 && z0.size() == other.z0.size() && z0 == other.z0;
    }
};

BaseClassConfig default_base(const SurfaceModel& model);

/**
 * Integral approximation tau / A of the (F, W)-orthogonal part, with the
 * shift i used by the fibre shear f_i.
 */
struct ApproxResult
{
    Rational A;
    LatticeVector tau;
    Integer delta;   // tau^2 / 2
    Integer i;
    Integer C;
    Rational B;
    LatticeVector mu;
    LatticeVector e2;
};

/// Thrown when the escalation parameter exceeds its cap.
class EscalationBound : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// Cap on the doubling of C; 2^64 by default.
inline constexpr int kMaxEscalationSteps = 64;

ApproxResult approximate_remainder(const SurfaceModel& model, const RationalClass& perp,
                                   const Rational& alpha, const Rational& beta,
                                   const Rational& eps_half);

/// Coefficients (F, W, R, T) of sigma.
using Coefficients = std::array<Rational, 4>;

/// (alpha - i/A) F + beta W + (1/A) R + (delta/A + i beta) T; throws std::logic_error unless all positive.
RationalClass build_sigma(const SurfaceModel& model, const Rational& alpha, const Rational& beta,
                          const ApproxResult& approx);

struct Certificate
{
    SurfaceModel model;
    RationalClass target;
    Rational epsilon;
    int sign = 1;
    BaseClassConfig base;
    Isometry g;
    RationalClass sigma;
    Rational N;
    Coefficients inflation;   // r_F, r_W, r_R, r_T
    RationalClass eta;

    bool operator==(const Certificate& other) const;
};

class NotCertifiable : public std::runtime_error
{
    public:
        NotCertifiable(const ConeRegion& region, const std::string& message)
            : std::runtime_error(message), region_(region)
        {
        }

        const ConeRegion& region() const { return region_; }

    private:
        ConeRegion region_;
};

/// Pipeline failure after classification, labelled with the stage that failed.
class CertificationError : public std::runtime_error
{
    public:
        CertificationError(const std::string& stage, const std::string& message)
            : std::runtime_error(stage + ": " + message), stage_(stage)
        {
        }

        const std::string& stage() const { return stage_; }

    private:
        std::string stage_;
};

struct CertifyTrace
{
    Certificate certificate;
    ApproxResult approximation;
    Decomposition parts;
    ConeRegion region;
};

CertifyTrace certify_with_trace(const SurfaceModel& model, const RationalClass& omega,
                                const Rational& epsilon, const BaseClassConfig& base);

Certificate certify(const SurfaceModel& model, const RationalClass& omega,
                    const Rational& epsilon, const BaseClassConfig& base);

}   // namespace econe

#endif
