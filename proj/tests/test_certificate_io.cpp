#include "catch_amalgamated.hpp"

#include <random>

#include "econe/certificate_io.hpp"
#include "mutations.hpp"
#include "oracles.hpp"

using namespace econe;

namespace {

constexpr int F = SurfaceModel::F;
constexpr int W = SurfaceModel::W;
constexpr int R = SurfaceModel::R;
constexpr int T = SurfaceModel::T;

RationalClass sample_target(const SurfaceModel& m)
{
    RationalClass x = RationalClass::Zero(m.rank);
    x(F) = 1;
    x(W) = 1;
    x(R) = 2;
    x(T) = Rational(1, 3);
    x(m.u(1)) = Rational(1, 2);
    x(m.e8_offset(1)) = -1;
    return x;
}

Certificate sample_certificate(int n, const Rational& eps)
{
    const SurfaceModel m = build_surface_model(n);
    BaseClassConfig base = default_base(m);
    base.z0(m.e8_offset(0) + 2) = Rational(1, 4);
    return certify(m, sample_target(m), eps, base);
}

std::string replace_line(const std::string& text, const std::string& prefix, const std::string& line)
{
    const auto pos = text.find("\n" + prefix);
    REQUIRE(pos != std::string::npos);
    const auto end = text.find('\n', pos + 1);
    return text.substr(0, pos + 1) + line + text.substr(end);
}

}   // namespace

TEST_CASE("certificate round trip is exact and canonical")
{
    for (int n : {3, 4})
    {
        const Certificate c = sample_certificate(n, Rational(1, 256));
        const std::string text = serialize(c);
        CHECK(text.rfind(kCertificateHeader, 0) == 0);
        const Certificate back = parse_certificate(text);
        CHECK(back == c);
        CHECK(serialize(back) == text);
        CHECK(verify(back).overall);
    }
}

TEST_CASE("isometry, model, base and class round trips")
{
    const SurfaceModel m = build_surface_model(4);
    LatticeVector root = LatticeVector::Zero(m.rank);
    root(m.e8_offset(2)) = 1;
    LatticeVector x = LatticeVector::Zero(m.rank);
    x(m.u(3)) = 2;
    x(m.e8_offset(0)) = -1;
    Isometry g = compose(make_f(m, -7), compose(reflection(m, root), eichler(m, m.basis_vector(R), x)));
    g = compose(g, Isometry(m, {Explicit{make_f(m, 2).matrix()}}));

    const std::string text = serialize(m, g);
    CHECK(text.rfind(kIsometryHeader, 0) == 0);
    const Isometry back = parse_isometry(m, text);
    CHECK(back == g);
    CHECK(serialize(m, back) == text);

    const SurfaceModel mb = parse_model(serialize(m));
    CHECK(mb == m);

    BaseClassConfig base = default_base(m);
    base.alpha0 = Rational(2, 3);
    base.z0(m.v(2)) = Rational(-5, 2);
    const BaseClassConfig bb = parse_base(m, serialize(base));
    CHECK(bb == base);

    const RationalClass w = sample_target(m);
    CHECK(parse_class(m, serialize_class(w)) == w);
    CHECK(parse_class(m, format_vector(w)) == w);
    CHECK_THROWS_AS(parse_class(m, "1\n2\n3\n"), ParseError);
    CHECK_THROWS_AS(parse_lattice_vector(m, serialize_class(w)), ParseError);
}

TEST_CASE("malformed certificates are parse errors")
{
    const Certificate c = sample_certificate(4, Rational(1, 64));
    const std::string text = serialize(c);

    CHECK_THROWS_AS(parse_certificate(""), ParseError);
    CHECK_THROWS_AS(parse_certificate("econe-certificate 2\n" + text.substr(text.find('\n') + 1)), ParseError);
    CHECK_THROWS_AS(parse_certificate(replace_line(text, "epsilon:", "epsilon: 1/0")), ParseError);
    CHECK_THROWS_AS(parse_certificate(replace_line(text, "epsilon:", "epsilon: 2/128")), ParseError);
    CHECK_THROWS_AS(parse_certificate(replace_line(text, "N:", "N: abc")), ParseError);
    CHECK_THROWS_AS(parse_certificate(replace_line(text, "word:", "word: 99")), ParseError);
    CHECK_THROWS_AS(parse_certificate(text.substr(0, text.size() - 4)), ParseError);
    CHECK_THROWS_AS(parse_certificate(text + "extra\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate(replace_line(text, "rank:", "rank: 45")), ParseError);
}

TEST_CASE("verify: pipeline certificates pass every check in order")
{
    const Certificate c = sample_certificate(4, Rational(1, 1024));
    const VerificationReport r = verify(c);
    REQUIRE(r.checks.size() == 9);
    for (std::size_t k = 0; k < 9; ++k)
    {
        CHECK(r.checks[k].name == verification_check_names()[k]);
        CHECK(r.checks[k].passed);
    }
    CHECK(r.overall);
    CHECK(r.failed().empty());
    const std::string report = format_report(r);
    CHECK(report.find("[PASS] (1) model-rebuild") != std::string::npos);
    CHECK(report.find("overall: PASS") != std::string::npos);
}

TEST_CASE("verify: a negated inflation coefficient fails the nonnegativity check")
{
    Certificate c = sample_certificate(4, Rational(1, 16));
    int k = 0;
    while (c.inflation[k] == 0)
        ++k;
    c.inflation[k] = -c.inflation[k];
    const VerificationReport r = verify(c);
    CHECK_FALSE(r.overall);
    CHECK_FALSE(r.find("inflation-nonnegative")->passed);
    for (const char* name : {"model-rebuild", "word-replay", "gram-preserved", "fixes-fibre", "spinor-norm"})
        CHECK(r.find(name)->passed);
}

TEST_CASE("verify: composing in a root reflection breaks only realizability checks of g")
{
    Certificate c = sample_certificate(4, Rational(1, 16));
    const SurfaceModel& m = c.model;
    LatticeVector root = LatticeVector::Zero(m.rank);
    root(m.e8_offset(3) + 5) = 1;
    c.g = compose(c.g, reflection(m, root));
    const VerificationReport r = verify(c);
    CHECK_FALSE(r.overall);
    CHECK_FALSE(r.find("spinor-norm")->passed);
    for (const char* name : {"model-rebuild", "word-replay", "gram-preserved", "fixes-fibre"})
        CHECK(r.find(name)->passed);
}

TEST_CASE("verify: a Gram-breaking matrix parses but fails")
{
    const Certificate c = sample_certificate(3, Rational(1, 16));
    Certificate t = c;
    IntMatrix mat = t.g.matrix();
    mat(5, 7) += 3;
    t.g = Isometry::from_parts(mat, t.g.word());
    const Certificate parsed = parse_certificate(serialize(t));
    const VerificationReport r = verify(parsed);
    CHECK_FALSE(r.overall);
    CHECK_FALSE(r.find("word-replay")->passed);
    CHECK_FALSE(r.find("gram-preserved")->passed);
}

TEST_CASE("verify: every single-field mutation is rejected")
{
    std::mt19937_64 rng(83);
    const Certificate c3 = sample_certificate(3, Rational(1, 32));
    const Certificate c4 = sample_certificate(4, Rational(1, 32));
    for (int k = 0; k < 3 * mutation::kKinds; ++k)
    {
        Certificate t = (k % 2 == 0) ? c3 : c4;
        const int used = mutation::mutate(t, k % mutation::kKinds, rng);
        CAPTURE(mutation::kind_name(used));
        CHECK_FALSE(verify(t).overall);
        CHECK_FALSE(mutation::accepted_after_round_trip(t));
    }
}

TEST_CASE("verify: widening epsilon is still a valid claim")
{
    Certificate c = sample_certificate(4, Rational(1, 64));
    c.epsilon = 1;
    CHECK(verify(c).overall);
}
