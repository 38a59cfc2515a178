#include "econe/sampling.hpp"

#include <chrono>
#include <sstream>

#include <boost/random/uniform_int_distribution.hpp>

#include "econe/certificate_io.hpp"
#include "json.hpp"

namespace econe {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rational draw_rational(boost::random::mt19937_64& rng, int bound)
{
    boost::random::uniform_int_distribution<int> num(-bound, bound);
    boost::random::uniform_int_distribution<int> den(1, bound);
    const int p = num(rng);
    const int q = den(rng);
    return Rational(p, q);
}

}   // namespace

boost::random::mt19937_64 sample_stream(std::uint64_t seed, std::size_t index)
{
    return boost::random::mt19937_64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index)));
}

RationalClass sample_class(const SurfaceModel& model, boost::random::mt19937_64& rng, int bound)
{
    if (bound < 1)
        throw std::invalid_argument("sample_class: bound must be at least 1");
    boost::random::uniform_int_distribution<int> sparse(0, 7);
    RationalClass x = RationalClass::Zero(model.rank);
    for (int i = 0; i < model.rank; ++i)
    {
        const bool core = i <= SurfaceModel::T;
        if (core || sparse(rng) == 0)
            x(i) = draw_rational(rng, bound);
    }
    return x;
}

SampleReport sample_report(const SampleOptions& options)
{
    const SurfaceModel model = build_surface_model(options.n);
    const BaseClassConfig base = default_base(model);
    SampleReport report;
    report.options = options;
    const auto start_all = std::chrono::steady_clock::now();

    for (std::size_t idx = 0; idx < options.count; ++idx)
    {
        const auto start = std::chrono::steady_clock::now();
        auto rng = sample_stream(options.seed, idx);
        SampleRecord rec;
        rec.index = idx;
        rec.omega = sample_class(model, rng, options.bound);
        rec.region = classify(model, rec.omega);
        report.region_counts[rec.region.verdict] += 1;

        if (rec.region.verdict == Verdict::ConjecturalNonSpin)
            report.conjectural.push_back(idx);

        if (is_certifiable(rec.region.verdict))
        {
            report.certifiable += 1;
            rec.attempted = true;
            try
            {
                Certificate cert = certify(model, rec.omega, options.epsilon, base);
                rec.certified = true;
                report.certified += 1;
                const VerificationReport vr = verify(cert);
                rec.verified = vr.overall;
                if (vr.overall)
                    report.verified += 1;
                else
                    rec.error = "verification failed";
                const Isometry g_inv = invert(model, cert.g);
                rec.distance = sup_norm(
                    RationalClass(apply(g_inv, cert.eta) - Rational(cert.sign) * rec.omega));
                if (rec.distance > report.max_distance)
                    report.max_distance = rec.distance;
            }
            catch (const std::exception& e)
            {
                rec.error = e.what();
            }
        }
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.records.push_back(std::move(rec));
    }
    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_all).count();
    return report;
}

std::string format_sample_report(const SampleReport& report, bool json, bool include_timing)
{
    const auto& opt = report.options;
    const std::vector<Verdict> order = {Verdict::NotPositiveSquare,    Verdict::PerpToC1,
                                        Verdict::CertifiableSpin,      Verdict::CertifiablePositive,
                                        Verdict::CertifiableNonSpinGt, Verdict::ConjecturalNonSpin};
    auto count_of = [&](Verdict v) -> std::size_t {
        auto it = report.region_counts.find(v);
        return it == report.region_counts.end() ? 0 : it->second;
    };

    if (json)
    {
        nlohmann::ordered_json j;
        j["n"] = opt.n;
        j["count"] = opt.count;
        j["seed"] = opt.seed;
        j["bound"] = opt.bound;
        j["epsilon"] = format_rational(opt.epsilon);
        nlohmann::ordered_json regions;
        for (Verdict v : order)
            regions[to_string(v)] = count_of(v);
        j["regions"] = regions;
        j["certifiable"] = report.certifiable;
        j["certified"] = report.certified;
        j["verified"] = report.verified;
        j["conjectural_not_certified"] = report.conjectural;
        j["max_distance"] = format_rational(report.max_distance);
        nlohmann::ordered_json failures = nlohmann::ordered_json::array();
        for (const auto& rec : report.records)
        {
            if (rec.attempted && !rec.verified)
                failures.push_back({{"index", rec.index}, {"error", rec.error}});
        }
        j["failures"] = failures;
        if (include_timing)
        {
            j["total_seconds"] = report.total_seconds;
            nlohmann::ordered_json times = nlohmann::ordered_json::array();
            for (const auto& rec : report.records)
                times.push_back(rec.seconds);
            j["sample_seconds"] = times;
        }
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "sample report: n=" << opt.n << " count=" << opt.count << " seed=" << opt.seed
        << " bound=" << opt.bound << " epsilon=" << format_rational(opt.epsilon) << '\n';
    out << "regions:\n";
    for (Verdict v : order)
        out << "  " << to_string(v) << ": " << count_of(v) << '\n';
    out << "certifiable: " << report.certifiable << '\n';
    out << "certified: " << report.certified << '\n';
    out << "verified: " << report.verified << '\n';
    out << "success rate: ";
    if (report.certifiable == 0)
        out << "n/a\n";
    else
        out << report.verified << "/" << report.certifiable << '\n';
    out << "conjectural, not certified:";
    if (report.conjectural.empty())
        out << " none";
    for (auto idx : report.conjectural)
        out << ' ' << idx;
    out << '\n';
    out << "max verified distance: " << format_rational(report.max_distance) << '\n';
    for (const auto& rec : report.records)
    {
        if (rec.attempted && !rec.verified)
            out << "failure: sample " << rec.index << ": " << rec.error << '\n';
    }
    if (include_timing)
    {
        out << "total seconds: " << report.total_seconds << '\n';
        for (const auto& rec : report.records)
            out << "  sample " << rec.index << ": " << rec.seconds << " s\n";
    }
    return out.str();
}

}   // namespace econe
