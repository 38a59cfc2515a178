#include "econe/certificate_io.hpp"

#include <sstream>

namespace econe {

namespace {

class LineReader
{
    public:
        explicit LineReader(std::string_view text)
        {
            std::size_t start = 0;
            while (start < text.size())
            {
                std::size_t end = text.find('\n', start);
                if (end == std::string_view::npos)
                    end = text.size();
                lines_.push_back(text.substr(start, end - start));
                start = end + 1;
            }
        }

        std::string_view next(const char* what)
        {
            if (pos_ >= lines_.size())
                throw ParseError(std::string("unexpected end of input, expected ") + what);
            return lines_[pos_++];
        }

        void expect(std::string_view exact)
        {
            std::string_view line = next(std::string(exact).c_str());
            if (line != exact)
                throw ParseError("expected '" + std::string(exact) + "', got '" +
                                 std::string(line.substr(0, 80)) + "'");
        }

        std::string_view value(std::string_view key)
        {
            std::string_view line = next(std::string(key).c_str());
            const std::string prefix = std::string(key) + ": ";
            if (line.substr(0, prefix.size()) != prefix)
                throw ParseError("expected field '" + std::string(key) + "', got '" +
                                 std::string(line.substr(0, 80)) + "'");
            return line.substr(prefix.size());
        }

        bool done() const { return pos_ >= lines_.size(); }

    private:
        std::vector<std::string_view> lines_;
        std::size_t pos_ = 0;
};

Rational parse_field_rational(std::string_view text, const char* field)
{
    try
    {
        return parse_rational(text, true);
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(std::string(field) + ": " + e.what());
    }
}

Integer parse_field_integer(std::string_view text, const char* field)
{
    Rational q = parse_field_rational(text, field);
    if (denominator(q) != 1)
        throw ParseError(std::string(field) + ": expected an integer");
    return numerator(q);
}

int parse_small_int(std::string_view text, const char* field)
{
    Integer z = parse_field_integer(text, field);
    if (z > 1000000 || z < -1000000)
        throw ParseError(std::string(field) + ": out of range");
    return z.convert_to<int>();
}

RationalClass parse_field_vector(std::string_view text, Eigen::Index rank, const char* field)
{
    // canonical vectors are strictly comma separated
    if (text.find(' ') != std::string_view::npos)
        throw ParseError(std::string(field) + ": unexpected whitespace");
    RationalClass x;
    try
    {
        x = parse_rational_vector(text, true);
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(std::string(field) + ": " + e.what());
    }
    if (x.size() != rank)
        throw ParseError(std::string(field) + ": expected " + std::to_string(rank) +
                         " entries, got " + std::to_string(x.size()));
    return x;
}

LatticeVector parse_field_lattice(std::string_view text, Eigen::Index rank, const char* field)
{
    RationalClass x = parse_field_vector(text, rank, field);
    if (!is_integral(x))
        throw ParseError(std::string(field) + ": expected integer entries");
    return to_integral(x);
}

IntMatrix parse_matrix_rows(LineReader& in, Eigen::Index rank, const char* field)
{
    IntMatrix m(rank, rank);
    for (Eigen::Index i = 0; i < rank; ++i)
        m.row(i) = parse_field_lattice(in.next(field), rank, field).transpose();
    return m;
}

void write_matrix_rows(std::ostream& out, const IntMatrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        out << format_vector(LatticeVector(m.row(i).transpose())) << '\n';
}

void write_isometry_body(std::ostream& out, const Isometry& g)
{
    out << "word: " << g.word().size() << '\n';
    for (const auto& gen : g.word())
    {
        out << "generator: ";
        std::visit(
            [&](const auto& x) {
                using G = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<G, Reflection>)
                    out << "reflection " << format_vector(x.v) << '\n';
                else if constexpr (std::is_same_v<G, Eichler>)
                    out << "eichler " << format_vector(x.u) << " ; " << format_vector(x.x) << '\n';
                else if constexpr (std::is_same_v<G, FibreShear>)
                    out << "f " << x.i.str() << '\n';
                else
                {
                    out << "explicit\n";
                    write_matrix_rows(out, x.matrix);
                }
            },
            gen);
    }
    out << "matrix:\n";
    write_matrix_rows(out, g.matrix());
}

Isometry read_isometry_body(LineReader& in, Eigen::Index rank)
{
    const Integer length = parse_field_integer(in.value("word"), "word");
    if (length < 0 || length > 1000000)
        throw ParseError("word: bad length");
    std::vector<Generator> word;
    for (Integer k = 0; k < length; ++k)
    {
        std::string_view spec = in.value("generator");
        if (spec.substr(0, 2) == "f ")
        {
            word.push_back(FibreShear{parse_field_integer(spec.substr(2), "generator f")});
        }
        else if (spec.substr(0, 11) == "reflection ")
        {
            word.push_back(Reflection{parse_field_lattice(spec.substr(11), rank, "generator reflection")});
        }
        else if (spec.substr(0, 8) == "eichler ")
        {
            std::string_view body = spec.substr(8);
            auto sep = body.find(" ; ");
            if (sep == std::string_view::npos)
                throw ParseError("generator eichler: missing ' ; ' separator");
            word.push_back(Eichler{parse_field_lattice(body.substr(0, sep), rank, "generator eichler u"),
                                   parse_field_lattice(body.substr(sep + 3), rank, "generator eichler x")});
        }
        else if (spec == "explicit")
        {
            word.push_back(Explicit{parse_matrix_rows(in, rank, "generator explicit")});
        }
        else
        {
            throw ParseError("unknown generator '" + std::string(spec.substr(0, 40)) + "'");
        }
    }
    in.expect("matrix:");
    IntMatrix m = parse_matrix_rows(in, rank, "matrix");
    return Isometry::from_parts(std::move(m), std::move(word));
}

SurfaceModel model_for(int n)
{
    try
    {
        return build_surface_model(n);
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(e.what());
    }
}

void require_canonical(std::string_view text, const std::string& canonical, const char* what)
{
    if (text != canonical)
        throw ParseError(std::string(what) + ": input is not in canonical form");
}

}   // namespace

std::string serialize(const Certificate& cert)
{
    std::ostringstream out;
    out << kCertificateHeader << '\n';
    out << "n: " << cert.model.n << '\n';
    out << "rank: " << cert.model.rank << '\n';
    out << "epsilon: " << format_rational(cert.epsilon) << '\n';
    out << "sign: " << cert.sign << '\n';
    out << "base.alpha0: " << format_rational(cert.base.alpha0) << '\n';
    out << "base.beta0: " << format_rational(cert.base.beta0) << '\n';
    out << "base.gamma0: " << format_rational(cert.base.gamma0) << '\n';
    out << "base.delta0: " << format_rational(cert.base.delta0) << '\n';
    out << "base.z0: " << format_vector(cert.base.z0) << '\n';
    out << "target: " << format_vector(cert.target) << '\n';
    write_isometry_body(out, cert.g);
    out << "sigma: " << format_vector(cert.sigma) << '\n';
    out << "N: " << format_rational(cert.N) << '\n';
    out << "inflation: ";
    for (std::size_t k = 0; k < cert.inflation.size(); ++k)
        out << (k ? "," : "") << format_rational(cert.inflation[k]);
    out << '\n';
    out << "eta: " << format_vector(cert.eta) << '\n';
    out << "end\n";
    return out.str();
}

Certificate parse_certificate(std::string_view text)
{
    LineReader in(text);
    in.expect(kCertificateHeader);
    Certificate cert;
    cert.model = model_for(parse_small_int(in.value("n"), "n"));
    const int rank = parse_small_int(in.value("rank"), "rank");
    if (rank != cert.model.rank)
        throw ParseError("rank: " + std::to_string(rank) + " does not match n (expected " +
                         std::to_string(cert.model.rank) + ")");
    cert.epsilon = parse_field_rational(in.value("epsilon"), "epsilon");
    cert.sign = parse_small_int(in.value("sign"), "sign");
    cert.base.alpha0 = parse_field_rational(in.value("base.alpha0"), "base.alpha0");
    cert.base.beta0 = parse_field_rational(in.value("base.beta0"), "base.beta0");
    cert.base.gamma0 = parse_field_rational(in.value("base.gamma0"), "base.gamma0");
    cert.base.delta0 = parse_field_rational(in.value("base.delta0"), "base.delta0");
    cert.base.z0 = parse_field_vector(in.value("base.z0"), rank, "base.z0");
    cert.target = parse_field_vector(in.value("target"), rank, "target");
    cert.g = read_isometry_body(in, rank);
    cert.sigma = parse_field_vector(in.value("sigma"), rank, "sigma");
    cert.N = parse_field_rational(in.value("N"), "N");
    RationalClass infl = parse_field_vector(in.value("inflation"), 4, "inflation");
    for (int k = 0; k < 4; ++k)
        cert.inflation[k] = infl(k);
    cert.eta = parse_field_vector(in.value("eta"), rank, "eta");
    in.expect("end");
    if (!in.done())
        throw ParseError("trailing content after 'end'");
    require_canonical(text, serialize(cert), "certificate");
    return cert;
}

std::string serialize(const SurfaceModel& model, const Isometry& g)
{
    std::ostringstream out;
    out << kIsometryHeader << '\n';
    out << "rank: " << model.rank << '\n';
    write_isometry_body(out, g);
    out << "end\n";
    return out.str();
}

Isometry parse_isometry(const SurfaceModel& model, std::string_view text)
{
    LineReader in(text);
    in.expect(kIsometryHeader);
    const int rank = parse_small_int(in.value("rank"), "rank");
    if (rank != model.rank)
        throw ParseError("rank: does not match the model");
    Isometry g = read_isometry_body(in, rank);
    in.expect("end");
    if (!in.done())
        throw ParseError("trailing content after 'end'");
    require_canonical(text, serialize(model, g), "isometry");
    return g;
}

std::string serialize(const SurfaceModel& model)
{
    std::ostringstream out;
    out << kModelHeader << '\n';
    out << "n: " << model.n << '\n';
    out << "rank: " << model.rank << '\n';
    out << "a: " << model.a << '\n';
    out << "b: " << model.b << '\n';
    out << "gram:\n";
    write_matrix_rows(out, model.gram);
    out << "end\n";
    return out.str();
}

SurfaceModel parse_model(std::string_view text)
{
    LineReader in(text);
    in.expect(kModelHeader);
    SurfaceModel model = model_for(parse_small_int(in.value("n"), "n"));
    if (parse_small_int(in.value("rank"), "rank") != model.rank)
        throw ParseError("rank: does not match n");
    if (parse_small_int(in.value("a"), "a") != model.a)
        throw ParseError("a: does not match n");
    if (parse_small_int(in.value("b"), "b") != model.b)
        throw ParseError("b: does not match n");
    in.expect("gram:");
    IntMatrix gram = parse_matrix_rows(in, model.rank, "gram");
    if (gram != model.gram)
        throw ParseError("gram: does not match the form rebuilt from n");
    in.expect("end");
    if (!in.done())
        throw ParseError("trailing content after 'end'");
    return model;
}

std::string serialize(const BaseClassConfig& base)
{
    std::ostringstream out;
    out << kBaseHeader << '\n';
    out << "alpha0: " << format_rational(base.alpha0) << '\n';
    out << "beta0: " << format_rational(base.beta0) << '\n';
    out << "gamma0: " << format_rational(base.gamma0) << '\n';
    out << "delta0: " << format_rational(base.delta0) << '\n';
    out << "z0: " << format_vector(base.z0) << '\n';
    out << "end\n";
    return out.str();
}

BaseClassConfig parse_base(const SurfaceModel& model, std::string_view text)
{
    LineReader in(text);
    in.expect(kBaseHeader);
    BaseClassConfig base;
    base.alpha0 = parse_field_rational(in.value("alpha0"), "alpha0");
    base.beta0 = parse_field_rational(in.value("beta0"), "beta0");
    base.gamma0 = parse_field_rational(in.value("gamma0"), "gamma0");
    base.delta0 = parse_field_rational(in.value("delta0"), "delta0");
    base.z0 = parse_field_vector(in.value("z0"), model.rank, "z0");
    in.expect("end");
    if (!in.done())
        throw ParseError("trailing content after 'end'");
    return base;
}

std::string serialize_class(const RationalClass& x)
{
    return format_vector(x, '\n') + "\n";
}

RationalClass parse_class(const SurfaceModel& model, std::string_view text)
{
    RationalClass x;
    try
    {
        x = parse_rational_vector(text, false);
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(e.what());
    }
    if (x.size() != model.rank)
        throw ParseError("expected " + std::to_string(model.rank) + " coordinates, got " +
                         std::to_string(x.size()));
    return x;
}

LatticeVector parse_lattice_vector(const SurfaceModel& model, std::string_view text)
{
    RationalClass x = parse_class(model, text);
    if (!is_integral(x))
        throw ParseError("expected integer coordinates");
    return to_integral(x);
}

// ---------------------------------------------------------------------------

const CheckResult* VerificationReport::find(const std::string& name) const
{
    for (const auto& c : checks)
    {
        if (c.name == name)
            return &c;
    }
    return nullptr;
}

std::vector<std::string> VerificationReport::failed() const
{
    std::vector<std::string> names;
    for (const auto& c : checks)
    {
        if (!c.passed)
            names.push_back(c.name);
    }
    return names;
}

const std::vector<std::string>& verification_check_names()
{
    static const std::vector<std::string> names = {
        "model-rebuild",        "word-replay",      "gram-preserved",
        "fixes-fibre",          "spinor-norm",      "inflation-nonnegative",
        "inflation-identity",   "pullback-distance", "eta-positive"};
    return names;
}

VerificationReport verify(const Certificate& cert)
{
    VerificationReport report;
    const auto& names = verification_check_names();
    auto record = [&](std::size_t idx, bool passed, std::string detail) {
        report.checks.push_back({names[idx], passed, std::move(detail)});
    };

    // (1) the form is rebuilt from n alone
    std::optional<SurfaceModel> model;
    try
    {
        model = build_surface_model(cert.model.n);
    }
    catch (const std::exception& e)
    {
        record(0, false, e.what());
    }
    bool shapes_ok = false;
    if (model)
    {
        const Eigen::Index r = model->rank;
        shapes_ok = cert.target.size() == r && cert.sigma.size() == r && cert.eta.size() == r &&
                    cert.base.z0.size() == r && cert.g.matrix().rows() == r &&
                    cert.g.matrix().cols() == r;
        const bool same_model = cert.model == *model;
        std::string detail = "n=" + std::to_string(model->n) + " rank=" + std::to_string(r);
        if (!same_model)
            detail += "; stored form differs from the rebuilt form";
        if (!shapes_ok)
            detail += "; a vector or matrix has the wrong dimension";
        record(0, same_model && shapes_ok, detail);
    }
    if (!model || !shapes_ok)
    {
        for (std::size_t k = 1; k < names.size(); ++k)
            record(k, false, "skipped: model or dimensions invalid");
        report.overall = false;
        return report;
    }
    const SurfaceModel& m = *model;
    const IntMatrix& g = cert.g.matrix();

    // (2) word replays to the matrix
    try
    {
        IntMatrix replayed = replay_word(m, cert.g.word());
        const bool same = replayed == g;
        record(1, same, std::to_string(cert.g.word().size()) + " generators" +
                            (same ? "" : "; replayed product differs from the stored matrix"));
    }
    catch (const std::exception& e)
    {
        record(1, false, std::string("invalid generator: ") + e.what());
    }

    // (3) g^T G g = G
    const bool isometry = preserves_gram(m, g);
    record(2, isometry, isometry ? "g^T G g = G" : "g^T G g != G");

    // (4) g fixes F, hence c_1
    const bool fixes = fixes_fibre(m, g);
    record(3, fixes, fixes ? "g(F) = F" : "g(F) != F");

    // (5) spinor norm
    if (!isometry)
    {
        record(4, false, "skipped: not an isometry");
    }
    else
    {
        try
        {
            const int sn = spinor_norm(m, g);
            record(4, sn == 1, "spinor norm " + std::to_string(sn));
        }
        catch (const std::exception& e)
        {
            record(4, false, e.what());
        }
    }

    // (6) inflation coefficients
    {
        bool ok = true;
        std::string detail;
        const char* labels[4] = {"r_F", "r_W", "r_R", "r_T"};
        for (int k = 0; k < 4; ++k)
        {
            if (cert.inflation[k] < 0)
            {
                ok = false;
                detail += std::string(labels[k]) + "=" + format_rational(cert.inflation[k]) + " < 0; ";
            }
        }
        record(5, ok, ok ? "all four >= 0" : detail);
    }

    // (7) N eta = omega_0 + r_F F + r_W W + r_R R + r_T T, and eta = sigma + Z0 / N
    {
        std::string detail;
        bool ok = true;
        try
        {
            cert.base.validate(m);
        }
        catch (const std::exception& e)
        {
            ok = false;
            detail += e.what();
            detail += "; ";
        }
        if (cert.N <= 0)
        {
            ok = false;
            detail += "N is not positive; ";
        }
        else
        {
            RationalClass rhs = cert.base.omega0(m);
            rhs(SurfaceModel::F) += cert.inflation[0];
            rhs(SurfaceModel::W) += cert.inflation[1];
            rhs(SurfaceModel::R) += cert.inflation[2];
            rhs(SurfaceModel::T) += cert.inflation[3];
            if (RationalClass(cert.N * cert.eta) != rhs)
            {
                ok = false;
                detail += "N eta differs from the inflated base class; ";
            }
            if (RationalClass(cert.sigma + cert.base.z0 / cert.N) != cert.eta)
            {
                ok = false;
                detail += "eta differs from sigma + Z0/N; ";
            }
        }
        record(6, ok, ok ? "N eta = omega_0 + sum r_X X" : detail);
    }

    // (8) |g^{-1}(eta) - sign omega| <= epsilon
    {
        std::string detail;
        bool ok = true;
        if (cert.sign != 1 && cert.sign != -1)
        {
            ok = false;
            detail += "sign is not +-1; ";
        }
        if (cert.epsilon <= 0)
        {
            ok = false;
            detail += "epsilon is not positive; ";
        }
        const RationalClass pulled =
            to_rational(IntMatrix(m.gram_inverse * (g.transpose() * m.gram))) * cert.eta;
        if (RationalClass(to_rational(g) * pulled) != cert.eta)
        {
            ok = false;
            detail += "g is not invertible as an isometry; ";
        }
        const Rational dist = sup_norm(RationalClass(pulled - Rational(cert.sign) * cert.target));
        if (dist > cert.epsilon)
            ok = false;
        detail += "distance " + format_rational(dist) + " vs epsilon " + format_rational(cert.epsilon);
        record(7, ok, detail);
    }

    // (9) eta^2 > 0 and eta.F > 0
    {
        const Rational sq = square(m, cert.eta);
        const Rational f = pairing(m, cert.eta, m.rational_basis_vector(SurfaceModel::F));
        record(8, sq > 0 && f > 0,
               "eta^2=" + format_rational(sq) + " eta.F=" + format_rational(f));
    }

    report.overall = true;
    for (const auto& c : report.checks)
        report.overall = report.overall && c.passed;
    return report;
}

std::string format_report(const VerificationReport& report)
{
    std::ostringstream out;
    for (std::size_t k = 0; k < report.checks.size(); ++k)
    {
        const auto& c = report.checks[k];
        out << "[" << (c.passed ? "PASS" : "FAIL") << "] (" << (k + 1) << ") " << c.name;
        if (!c.detail.empty())
            out << ": " << c.detail;
        out << '\n';
    }
    out << "overall: " << (report.overall ? "PASS" : "FAIL") << '\n';
    return out.str();
}

}   // namespace econe
