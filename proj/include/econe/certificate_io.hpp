/**
 * Canonical text formats and the replaying verifier.
 *
 * Every format is line oriented, "key: value", fields in a fixed order,
 * vectors comma separated in basis order, matrices one row per line. Exact
 * rationals print as "p" or "p/q" (q > 0, reduced). Parsers reject anything
 * that does not re-serialize to the identical bytes.
 *
 * Certificate grammar:
 *
 *     econe-certificate 1
 *     n: <int>
 *     rank: <int>
 *     epsilon: <rational>
 *     sign: 1 | -1
 *     base.alpha0: <rational>
 *     base.beta0: <rational>
 *     base.gamma0: <rational>
 *     base.delta0: <rational>
 *     base.z0: <vector>
 *     target: <vector>
 *     <isometry body>
 *     sigma: <vector>
 *     N: <rational>
 *     inflation: <r_F>,<r_W>,<r_R>,<r_T>
 *     eta: <vector>
 *     end
 *
 * Isometry body (also the payload of a standalone "econe-isometry 1" file,
 * which carries "rank: <int>" first and "end" last):
 *
 *     word: <k>
 *     generator: f <i>
 *     generator: eichler <u vector> ; <x vector>
 *     generator: reflection <v vector>
 *     generator: explicit
 *     <rank matrix rows>
 *     matrix:
 *     <rank matrix rows>
 */
#ifndef ECONE_CERTIFICATE_IO_HPP
#define ECONE_CERTIFICATE_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "econe/cone.hpp"

namespace econe {

class ParseError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

inline constexpr const char* kCertificateHeader = "econe-certificate 1";
inline constexpr const char* kIsometryHeader = "econe-isometry 1";
inline constexpr const char* kModelHeader = "econe-model 1";
inline constexpr const char* kBaseHeader = "econe-base 1";

std::string serialize(const Certificate& cert);
/// Throws ParseError on malformed, non-canonical or wrong-version input.
Certificate parse_certificate(std::string_view text);

std::string serialize(const SurfaceModel& model, const Isometry& g);
/// Returns the stored word and matrix without checking they agree.
Isometry parse_isometry(const SurfaceModel& model, std::string_view text);

/// {n, rank, a, b} and the full Gram matrix, row-major.
std::string serialize(const SurfaceModel& model);
/// Rebuilds from n and rejects a file whose header fields or Gram rows disagree.
SurfaceModel parse_model(std::string_view text);

std::string serialize(const BaseClassConfig& base);
/// Base class file; coefficients are checked against the model on use.
BaseClassConfig parse_base(const SurfaceModel& model, std::string_view text);

/// One coordinate per line, canonical rationals.
std::string serialize_class(const RationalClass& x);
/// Accepts newline- or comma-delimited rationals; throws ParseError on bad tokens or rank.
RationalClass parse_class(const SurfaceModel& model, std::string_view text);
LatticeVector parse_lattice_vector(const SurfaceModel& model, std::string_view text);

struct CheckResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerificationReport
{
    std::vector<CheckResult> checks;
    bool overall = false;

    const CheckResult* find(const std::string& name) const;
    std::vector<std::string> failed() const;
};

/// Names of the checks in the order verify() runs them.
const std::vector<std::string>& verification_check_names();

/**
 * Replays every claim of the certificate from n alone: the model, the word,
 * Gram preservation, F fixed, spinor norm one, inflation coefficients
 * nonnegative, the inflation identity, the pullback distance and the
 * positivity of eta. Never throws; failures are report entries.
 */
VerificationReport verify(const Certificate& cert);

std::string format_report(const VerificationReport& report);

}   // namespace econe

#endif
