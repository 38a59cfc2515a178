#include "econe/cone.hpp"

#include <algorithm>

namespace econe {

std::string to_string(Verdict v)
{
    switch (v)
    {
        case Verdict::NotPositiveSquare: return "NotPositiveSquare";
        case Verdict::PerpToC1: return "PerpToC1";
        case Verdict::CertifiableSpin: return "CertifiableSpin";
        case Verdict::CertifiablePositive: return "CertifiablePositive";
        case Verdict::CertifiableNonSpinGt: return "CertifiableNonSpinGt";
        case Verdict::ConjecturalNonSpin: return "ConjecturalNonSpin";
    }
    return "Unknown";
}

Verdict verdict_from_string(const std::string& name)
{
    for (Verdict v : {Verdict::NotPositiveSquare, Verdict::PerpToC1, Verdict::CertifiableSpin,
                      Verdict::CertifiablePositive, Verdict::CertifiableNonSpinGt,
                      Verdict::ConjecturalNonSpin})
    {
        if (to_string(v) == name)
            return v;
    }
    throw std::invalid_argument("unknown verdict '" + name + "'");
}

bool is_certifiable(Verdict v)
{
    return v == Verdict::CertifiableSpin || v == Verdict::CertifiablePositive ||
           v == Verdict::CertifiableNonSpinGt;
}

Normalized normalize(const SurfaceModel& model, const RationalClass& omega)
{
    const Rational beta = pairing(model, omega, model.rational_basis_vector(SurfaceModel::F));
    if (beta < 0)
        return {RationalClass(-omega), -1};
    return {omega, 1};
}

ConeRegion classify(const SurfaceModel& model, const RationalClass& omega)
{
    ConeRegion region;
    const Normalized norm = normalize(model, omega);
    region.sign = norm.sign;

    const Rational sq = square(model, norm.omega);
    if (sq <= 0)
    {
        region.verdict = region.parity_region = Verdict::NotPositiveSquare;
        return region;
    }
    const Decomposition parts = decompose(model, norm.omega);
    if (parts.beta == 0)
    {
        region.verdict = region.parity_region = Verdict::PerpToC1;
        return region;
    }

    if (model.spin())
        region.parity_region = Verdict::CertifiableSpin;
    else if (sq > parts.beta * parts.beta)
        region.parity_region = Verdict::CertifiableNonSpinGt;
    else
        region.parity_region = Verdict::ConjecturalNonSpin;

    region.positive = parts.alpha > 0 && parts.beta > 0 && square(model, parts.perp) > 0;
    region.verdict = region.positive ? Verdict::CertifiablePositive : region.parity_region;
    return region;
}

bool check_alpha_inequality(const Rational& alpha, const Rational& beta, const Rational& perp_sq)
{
    if (beta <= 0)
        throw std::invalid_argument("check_alpha_inequality: beta must be positive");
    return alpha > -perp_sq / (2 * beta);
}

RationalClass BaseClassConfig::omega0(const SurfaceModel& model) const
{
    RationalClass out = z0.size() == model.rank ? z0 : RationalClass(RationalClass::Zero(model.rank));
    out(SurfaceModel::F) += alpha0;
    out(SurfaceModel::W) += beta0;
    out(SurfaceModel::R) += gamma0;
    out(SurfaceModel::T) += delta0;
    return out;
}

void BaseClassConfig::validate(const SurfaceModel& model) const
{
    if (alpha0 <= 0 || beta0 <= 0 || gamma0 <= 0 || delta0 <= 0)
        throw std::invalid_argument("base class: coefficients on F, W, R, T must be positive");
    if (z0.size() != model.rank)
        throw std::invalid_argument("base class: Z0 has the wrong rank");
    for (int idx : {SurfaceModel::F, SurfaceModel::W, SurfaceModel::R, SurfaceModel::T})
    {
        if (z0(idx) != 0)
            throw std::invalid_argument("base class: Z0 must vanish on F, W, R, T");
    }
}

BaseClassConfig default_base(const SurfaceModel& model)
{
    BaseClassConfig base;
    base.z0 = RationalClass::Zero(model.rank);
    return base;
}

ApproxResult approximate_remainder(const SurfaceModel& model, const RationalClass& perp,
                                   const Rational& alpha, const Rational& beta,
                                   const Rational& eps_half)
{
    if (perp.size() != model.rank || !in_fw_complement(model, perp))
        throw std::invalid_argument("approximate_remainder: remainder must lie in the (F, W)-complement");
    if (beta <= 0)
        throw std::invalid_argument("approximate_remainder: beta must be positive");
    if (eps_half <= 0)
        throw std::invalid_argument("approximate_remainder: tolerance must be positive");
    const Rational perp_sq = square(model, perp);
    if (!check_alpha_inequality(alpha, beta, perp_sq))
        throw std::invalid_argument("approximate_remainder: alpha > -perp^2/(2 beta) fails");

    const Rational lower = -perp_sq / (2 * beta);   // i / A must exceed this
    const bool degenerate = perp.isZero();

    ApproxResult result;
    if (degenerate)
    {
        result.mu = model.basis_vector(SurfaceModel::R);
        result.e2 = model.basis_vector(SurfaceModel::T);
    }
    else
    {
        PrimitiveDecomposition pp = primitive_part(perp);
        result.mu = pp.primitive;
        result.B = pp.scale;
        result.e2 = basis_complete(model, result.mu);
    }

    Integer c = 1;
    for (int step = 1; step <= kMaxEscalationSteps; ++step)
    {
        c *= 2;
        LatticeVector tau = LatticeVector(c * result.mu) + result.e2;
        Rational a;
        Rational b;
        if (degenerate)
        {
            // tau = C R + T over A = C^2 tends to zero
            b = Rational(c);
            a = Rational(c * c);
        }
        else
        {
            b = result.B;
            a = Rational(c) * b;
        }

        if (!is_primitive(model, tau))
            continue;
        const RationalClass approx = to_rational(tau) / a;
        if (sup_norm(RationalClass(approx - perp)) > eps_half)
            continue;
        if (square(model, approx) <= perp_sq)
            continue;
        const Integer i = floor_to_integer(lower * a) + 1;
        if (!(Rational(i) < alpha * a))
            continue;

        result.C = c;
        result.B = b;
        result.A = a;
        result.tau = std::move(tau);
        result.delta = square(model, result.tau) / 2;
        result.i = i;
        return result;
    }
    throw EscalationBound("approximate_remainder: no admissible C up to 2^" +
                          std::to_string(kMaxEscalationSteps));
}

RationalClass build_sigma(const SurfaceModel& model, const Rational& alpha, const Rational& beta,
                          const ApproxResult& approx)
{
    const Rational i(approx.i);
    const Coefficients coeffs = {alpha - i / approx.A, beta, 1 / approx.A,
                                 Rational(approx.delta) / approx.A + i * beta};
    for (const auto& c : coeffs)
    {
        if (c <= 0)
            throw std::logic_error("build_sigma: coefficient " + format_rational(c) +
                                   " is not positive");
    }
    RationalClass sigma = RationalClass::Zero(model.rank);
    sigma(SurfaceModel::F) = coeffs[0];
    sigma(SurfaceModel::W) = coeffs[1];
    sigma(SurfaceModel::R) = coeffs[2];
    sigma(SurfaceModel::T) = coeffs[3];
    return sigma;
}

bool Certificate::operator==(const Certificate& other) const
{
    auto same = [](const RationalClass& x, const RationalClass& y) {
        return x.size() == y.size() && x == y;
    };
    return model == other.model && same(target, other.target) && epsilon == other.epsilon &&
           sign == other.sign && base == other.base && g == other.g && same(sigma, other.sigma) &&
           N == other.N && inflation == other.inflation && same(eta, other.eta);
}

CertifyTrace certify_with_trace(const SurfaceModel& model, const RationalClass& omega,
                                const Rational& epsilon, const BaseClassConfig& base)
{
    if (omega.size() != model.rank)
        throw std::invalid_argument("certify: class has the wrong rank");
    if (epsilon <= 0)
        throw std::invalid_argument("certify: epsilon must be positive");

    const ConeRegion region = classify(model, omega);
    if (!is_certifiable(region.verdict))
        throw NotCertifiable(region, "class is in region " + to_string(region.verdict) +
                                         ", which is not certifiable");
    base.validate(model);

    const Normalized norm = normalize(model, omega);
    const Decomposition parts = decompose(model, norm.omega);
    const Rational perp_sq = square(model, parts.perp);
    if (!check_alpha_inequality(parts.alpha, parts.beta, perp_sq))
        throw CertificationError("inequality", "alpha > -perp^2/(2 beta) fails on a certifiable class");

    const Rational eps_half = epsilon / 2;
    ApproxResult approx = [&] {
        try
        {
            return approximate_remainder(model, parts.perp, parts.alpha, parts.beta, eps_half);
        }
        catch (const std::exception& e)
        {
            throw CertificationError("approximate_remainder", e.what());
        }
    }();

    Isometry g = [&] {
        try
        {
            return compose(make_f(model, approx.i), map_to_RT(model, approx.tau));
        }
        catch (const std::exception& e)
        {
            throw CertificationError("map_to_RT", e.what());
        }
    }();

    RationalClass sigma = [&] {
        try
        {
            return build_sigma(model, parts.alpha, parts.beta, approx);
        }
        catch (const std::exception& e)
        {
            throw CertificationError("build_sigma", e.what());
        }
    }();

    // Smallest N with N sigma >= base coefficients and |g^{-1} Z0| / N <= eps/2.
    const Coefficients base_coeffs = {base.alpha0, base.beta0, base.gamma0, base.delta0};
    const int fwrt[4] = {SurfaceModel::F, SurfaceModel::W, SurfaceModel::R, SurfaceModel::T};
    Rational n_scale = 0;
    for (int k = 0; k < 4; ++k)
        n_scale = std::max(n_scale, base_coeffs[k] / sigma(fwrt[k]));
    const Isometry g_inv = invert(model, g);
    const Rational z_pull = sup_norm(apply(g_inv, base.z0));
    if (z_pull > 0)
        n_scale = std::max(n_scale, z_pull / eps_half);
    // eta^2 = sigma^2 + Z0^2 / N^2 since Z0 is orthogonal to F, W, R, T
    const Rational sigma_sq = square(model, sigma);
    const Rational z_sq = square(model, base.z0);
    while (sigma_sq * n_scale * n_scale + z_sq <= 0)
        n_scale *= 2;

    Certificate cert;
    cert.model = model;
    cert.target = omega;
    cert.epsilon = epsilon;
    cert.sign = norm.sign;
    cert.base = base;
    cert.sigma = sigma;
    cert.N = n_scale;
    for (int k = 0; k < 4; ++k)
        cert.inflation[k] = n_scale * sigma(fwrt[k]) - base_coeffs[k];
    cert.eta = sigma + base.z0 / n_scale;

    // Pipeline self-checks; the verifier in certificate_io is the real gate.
    const RationalClass pulled = apply(g_inv, cert.eta);
    if (sup_norm(RationalClass(pulled - norm.omega)) > epsilon)
        throw CertificationError("assemble", "pullback distance exceeds epsilon");
    if (!fixes_fibre(model, g.matrix()))
        throw CertificationError("assemble", "isometry moves F");

    cert.g = std::move(g);
    return {std::move(cert), std::move(approx), parts, region};
}

Certificate certify(const SurfaceModel& model, const RationalClass& omega,
                    const Rational& epsilon, const BaseClassConfig& base)
{
    return certify_with_trace(model, omega, epsilon, base).certificate;
}

}   // namespace econe
