#include "econe/cli.hpp"

#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "econe/certificate_io.hpp"
#include "econe/sampling.hpp"

namespace econe::cli {

namespace {

/// Input problems that map to exit code 2.
struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << contents;
}

SurfaceModel model_or_input_error(int n)
{
    try
    {
        return build_surface_model(n);
    }
    catch (const std::invalid_argument& e)
    {
        throw InputError(e.what());
    }
}

Rational epsilon_or_input_error(const std::string& text)
{
    Rational eps;
    try
    {
        eps = parse_rational(text);
    }
    catch (const std::invalid_argument& e)
    {
        throw InputError(std::string("--eps: ") + e.what());
    }
    if (eps <= 0)
        throw InputError("--eps must be positive");
    return eps;
}

template <typename F>
auto parse_or_input_error(F&& f)
{
    try
    {
        return f();
    }
    catch (const ParseError& e)
    {
        throw InputError(e.what());
    }
}

struct Options
{
    int n = 0;
    std::string file;
    std::string eps = "1/1024";
    std::string base;
    std::string output;
    bool json = false;
    bool timing = false;
    std::size_t count = 100;
    std::uint64_t seed = 1;
    int bound = 5;
};

int cmd_model(const Options& opt, std::ostream& out)
{
    const SurfaceModel model = model_or_input_error(opt.n);
    int positive = 0;
    int negative = 0;
    for (int k = 0; k < model.rank; ++k)
    {
        const LatticeVector x = model.orthogonal_basis.col(k);
        (square(model, x) > 0 ? positive : negative) += 1;
    }
    const Integer det = determinant(model.gram);
    if (opt.json)
    {
        nlohmann::ordered_json j;
        j["n"] = model.n;
        j["rank"] = model.rank;
        j["a"] = model.a;
        j["b"] = model.b;
        j["m"] = model.m;
        j["W.W"] = model.parity_eps;
        j["spin"] = model.spin();
        j["c1_coeff"] = model.c1_coeff;
        j["determinant"] = det.convert_to<long long>();
        j["b_plus"] = positive;
        j["b_minus"] = negative;
        j["signature"] = positive - negative;
        out << j.dump(2) << '\n';
    }
    else
    {
        out << "n: " << model.n << '\n'
            << "rank: " << model.rank << '\n'
            << "a: " << model.a << " (hyperbolic planes besides H(n) and H_RT)\n"
            << "b: " << model.b << " (-E8 blocks)\n"
            << "m: " << model.m << '\n'
            << "W.W: " << model.parity_eps << '\n'
            << "parity: " << (model.spin() ? "spin" : "non-spin") << '\n'
            << "c1: " << model.c1_coeff << " PD(F)\n"
            << "gram: determinant " << det << ", b+ " << positive << ", b- " << negative
            << ", signature " << (positive - negative) << '\n';
    }
    if (!opt.output.empty())
        write_file(opt.output, serialize(model));
    return kSuccess;
}

int cmd_classify(const Options& opt, std::ostream& out)
{
    const SurfaceModel model = model_or_input_error(opt.n);
    const RationalClass omega = parse_or_input_error([&] { return parse_class(model, read_file(opt.file)); });
    const ConeRegion region = classify(model, omega);
    const Normalized norm = normalize(model, omega);
    const Decomposition parts = decompose(model, norm.omega);
    const Rational sq = square(model, omega);
    if (opt.json)
    {
        nlohmann::ordered_json j;
        j["verdict"] = to_string(region.verdict);
        j["parity_region"] = to_string(region.parity_region);
        j["positive"] = region.positive;
        j["sign"] = region.sign;
        j["square"] = format_rational(sq);
        j["alpha"] = format_rational(parts.alpha);
        j["beta"] = format_rational(parts.beta);
        j["perp_square"] = format_rational(square(model, parts.perp));
        j["certifiable"] = is_certifiable(region.verdict);
        out << j.dump(2) << '\n';
    }
    else
    {
        out << "verdict: " << to_string(region.verdict) << '\n'
            << "parity region: " << to_string(region.parity_region) << '\n'
            << "positive: " << (region.positive ? "yes" : "no") << '\n'
            << "sign: " << region.sign << '\n'
            << "square: " << format_rational(sq) << '\n'
            << "alpha: " << format_rational(parts.alpha) << '\n'
            << "beta: " << format_rational(parts.beta) << '\n'
            << "perp square: " << format_rational(square(model, parts.perp)) << '\n'
            << "certifiable: " << (is_certifiable(region.verdict) ? "yes" : "no") << '\n';
    }
    return kSuccess;
}

int cmd_certify(const Options& opt, std::ostream& out, std::ostream& err)
{
    const SurfaceModel model = model_or_input_error(opt.n);
    const RationalClass omega = parse_or_input_error([&] { return parse_class(model, read_file(opt.file)); });
    const Rational eps = epsilon_or_input_error(opt.eps);
    BaseClassConfig base = default_base(model);
    if (!opt.base.empty())
    {
        base = parse_or_input_error([&] { return parse_base(model, read_file(opt.base)); });
        try
        {
            base.validate(model);
        }
        catch (const std::invalid_argument& e)
        {
            throw InputError(e.what());
        }
    }

    Certificate cert;
    try
    {
        cert = certify(model, omega, eps, base);
    }
    catch (const NotCertifiable& e)
    {
        err << "not certifiable: region " << to_string(e.region().verdict) << '\n';
        return kNotCertifiable;
    }
    catch (const CertificationError& e)
    {
        err << "certification failed at stage " << e.stage() << ": " << e.what() << '\n';
        return kVerificationFailure;
    }

    const std::string path = opt.output.empty() ? opt.file + ".cert" : opt.output;
    write_file(path, serialize(cert));
    const VerificationReport report = verify(cert);
    out << "certificate: " << path << '\n'
        << "isometry word length: " << cert.g.word().size() << '\n'
        << "N: " << format_rational(cert.N) << '\n';
    out << format_report(report);
    return report.overall ? kSuccess : kVerificationFailure;
}

int cmd_verify(const Options& opt, std::ostream& out)
{
    const Certificate cert = parse_or_input_error([&] { return parse_certificate(read_file(opt.file)); });
    const VerificationReport report = verify(cert);
    if (opt.json)
    {
        nlohmann::ordered_json j;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : report.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        j["checks"] = checks;
        j["overall"] = report.overall;
        out << j.dump(2) << '\n';
    }
    else
    {
        out << format_report(report);
    }
    return report.overall ? kSuccess : kVerificationFailure;
}

int cmd_orbit(const Options& opt, std::ostream& out, std::ostream& err)
{
    const SurfaceModel model = model_or_input_error(opt.n);
    const LatticeVector x =
        parse_or_input_error([&] { return parse_lattice_vector(model, read_file(opt.file)); });
    if (!in_fw_complement(model, x))
    {
        err << "vector has F or W components; only the (F, W)-complement is mapped\n";
        return kNotCertifiable;
    }
    if (!is_primitive(model, x))
    {
        err << "vector is not primitive (divisibility " << divisibility(model, x) << ")\n";
        return kNotCertifiable;
    }
    const Isometry g = map_to_RT(model, x);
    const Integer delta = square(model, x) / 2;
    const std::string path = opt.output.empty() ? opt.file + ".isometry" : opt.output;
    write_file(path, serialize(model, g));
    out << "delta: " << delta << '\n'
        << "word length: " << g.word().size() << '\n'
        << "satisfies (*): " << (satisfies_star(model, g.matrix()) ? "yes" : "no") << '\n'
        << "realizable: " << (is_realizable(model, g) ? "yes" : "no") << '\n'
        << "isometry: " << path << '\n';
    return kSuccess;
}

int cmd_sample(const Options& opt, std::ostream& out, std::ostream& err)
{
    SampleOptions so;
    so.n = opt.n;
    model_or_input_error(opt.n);
    so.count = opt.count;
    so.seed = opt.seed;
    so.bound = opt.bound;
    if (so.bound < 1)
        throw InputError("--bound must be at least 1");
    so.epsilon = epsilon_or_input_error(opt.eps);
    const SampleReport report = sample_report(so);
    for (const auto& rec : report.records)
        err << "sample " << rec.index << ": " << to_string(rec.region.verdict) << " " << rec.seconds
            << " s\n";
    out << format_sample_report(report, opt.json, opt.timing);
    return report.verified == report.certifiable ? kSuccess : kVerificationFailure;
}

}   // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact certificates for the symplectic cone of elliptic surfaces E(n)", "econe"};
    app.require_subcommand(1);
    Options opt;

    auto add_n = [&](CLI::App* sub) {
        sub->add_option("-n,--n", opt.n, "Elliptic surface E(n), n >= 3")->required();
    };

    auto* model = app.add_subcommand("model", "Print the lattice model of E(n)");
    add_n(model);
    model->add_flag("--json", opt.json, "Machine-readable output");
    model->add_option("-o,--output", opt.output, "Also write the serialized model with its Gram matrix");

    auto* classify = app.add_subcommand("classify", "Classify a rational class");
    add_n(classify);
    classify->add_option("class-file", opt.file, "Class coordinates, one per line")->required();
    classify->add_flag("--json", opt.json, "Machine-readable output");

    auto* certify = app.add_subcommand("certify", "Build and self-verify a certificate");
    add_n(certify);
    certify->add_option("class-file", opt.file, "Class coordinates, one per line")->required();
    certify->add_option("--eps", opt.eps, "Tolerance as an exact rational")->capture_default_str();
    certify->add_option("--base", opt.base, "Base class file (default: all ones, Z0 = 0)");
    certify->add_option("-o,--output", opt.output, "Certificate path (default: <class-file>.cert)");

    auto* verify_cmd = app.add_subcommand("verify", "Replay every check of a certificate");
    verify_cmd->add_option("cert-file", opt.file, "Certificate")->required();
    verify_cmd->add_flag("--json", opt.json, "Machine-readable output");

    auto* orbit = app.add_subcommand("orbit", "Map a primitive vector to R + delta T");
    add_n(orbit);
    orbit->add_option("vector-file", opt.file, "Integer coordinates, one per line")->required();
    orbit->add_option("-o,--output", opt.output, "Isometry path (default: <vector-file>.isometry)");

    auto* sample = app.add_subcommand("sample", "Seeded sampling report");
    add_n(sample);
    sample->add_option("--count", opt.count, "Number of samples")->capture_default_str();
    sample->add_option("--seed", opt.seed, "Stream seed")->capture_default_str();
    sample->add_option("--bound", opt.bound, "Numerator/denominator bound")->capture_default_str();
    sample->add_option("--eps", opt.eps, "Tolerance as an exact rational")->capture_default_str();
    sample->add_flag("--json", opt.json, "Machine-readable output");
    sample->add_flag("--timing", opt.timing, "Include timings in the report");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        return kInputError;
    }

    try
    {
        if (model->parsed())
            return cmd_model(opt, out);
        if (classify->parsed())
            return cmd_classify(opt, out);
        if (certify->parsed())
            return cmd_certify(opt, out, err);
        if (verify_cmd->parsed())
            return cmd_verify(opt, out);
        if (orbit->parsed())
            return cmd_orbit(opt, out, err);
        if (sample->parsed())
            return cmd_sample(opt, out, err);
    }
    catch (const InputError& e)
    {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    catch (const std::exception& e)
    {
        err << "internal error: " << e.what() << '\n';
        return kVerificationFailure;
    }
    return kInputError;
}

}   // namespace econe::cli
