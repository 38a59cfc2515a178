/**
 * Seeded sampling of rational classes with a per-region tally and an
 * end-to-end certify + verify run on every certifiable sample.
 */
#ifndef ECONE_SAMPLING_HPP
#define ECONE_SAMPLING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/random/mersenne_twister.hpp>

#include "econe/cone.hpp"

namespace econe {

struct SampleOptions
{
    int n = 4;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    int bound = 5;
    Rational epsilon = Rational(1, 1024);
};

struct SampleRecord
{
    std::size_t index = 0;
    RationalClass omega;
    ConeRegion region;
    bool attempted = false;
    bool certified = false;
    bool verified = false;
    Rational distance = 0;
    std::string error;
    double seconds = 0.0;
};

struct SampleReport
{
    SampleOptions options;
    std::map<Verdict, std::size_t> region_counts;
    std::size_t certifiable = 0;
    std::size_t certified = 0;
    std::size_t verified = 0;
    std::vector<std::size_t> conjectural;   // sample indices, not certified
    Rational max_distance = 0;
    std::vector<SampleRecord> records;
    double total_seconds = 0.0;
};

/// Independent generator for sample `index` of the stream `seed`.
boost::random::mt19937_64 sample_stream(std::uint64_t seed, std::size_t index);

/**
 * Coordinates on F, W, R, T always drawn, every other coordinate nonzero with
 * probability 1/8; numerators in [-bound, bound], denominators in [1, bound].
 */
RationalClass sample_class(const SurfaceModel& model, boost::random::mt19937_64& rng, int bound);

SampleReport sample_report(const SampleOptions& options);

/// Deterministic text (or JSON) rendering; timings only when requested.
std::string format_sample_report(const SampleReport& report, bool json, bool include_timing = false);

}   // namespace econe

#endif
