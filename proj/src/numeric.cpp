#include "econe/numeric.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

namespace econe {

bool is_integral(const RationalClass& x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (denominator(x(i)) != 1)
            return false;
    }
    return true;
}

bool is_integral(const RationalMatrix& m)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
        {
            if (denominator(m(i, j)) != 1)
                return false;
        }
    }
    return true;
}

LatticeVector to_integral(const RationalClass& x)
{
    LatticeVector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (denominator(x(i)) != 1)
            throw std::domain_error("non-integral entry " + format_rational(x(i)));
        out(i) = numerator(x(i));
    }
    return out;
}

IntMatrix to_integral(const RationalMatrix& m)
{
    IntMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
        {
            if (denominator(m(i, j)) != 1)
                throw std::domain_error("non-integral matrix entry " + format_rational(m(i, j)));
            out(i, j) = numerator(m(i, j));
        }
    }
    return out;
}

Integer content(const LatticeVector& x)
{
    Integer g = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (x(i) != 0)
            g = gcd(g, x(i));
        if (g == 1)
            break;
    }
    return abs(g);
}

PrimitiveDecomposition primitive_part(const RationalClass& x)
{
    Integer lcm_den = 1;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        lcm_den = lcm(lcm_den, denominator(x(i)));

    LatticeVector scaled(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        scaled(i) = numerator(x(i)) * (lcm_den / denominator(x(i)));

    Integer g = content(scaled);
    if (g == 0)
        throw std::invalid_argument("primitive_part: zero vector has no primitive part");
    for (Eigen::Index i = 0; i < scaled.size(); ++i)
        scaled(i) /= g;

    // x = scaled * g / lcm_den = scaled / scale
    return {scaled, Rational(lcm_den, g)};
}

Rational sup_norm(const RationalClass& x)
{
    Rational best = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        Rational a = abs(x(i));
        if (a > best)
            best = a;
    }
    return best;
}

Integer floor_to_integer(const Rational& q)
{
    Integer num = numerator(q);
    Integer den = denominator(q);
    Integer quot = num / den;   // truncates toward zero
    if (num % den != 0 && num < 0)
        quot -= 1;
    return quot;
}

Rational floor(const Rational& q)
{
    return Rational(floor_to_integer(q));
}

Integer extended_gcd(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, cur_s = 0;
    Integer old_t = 0, cur_t = 1;
    while (r != 0)
    {
        Integer q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(cur_s, old_s - q * cur_s);
        old_t = std::exchange(cur_t, old_t - q * cur_t);
    }
    if (old_r < 0)
    {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    s = old_s;
    t = old_t;
    return old_r;
}

LatticeVector bezout_vector(const LatticeVector& w)
{
    LatticeVector c = LatticeVector::Zero(w.size());
    Integer g = content(w);
    if (g == 0)
        return c;

    for (Eigen::Index i = 0; i < w.size(); ++i)
    {
        if (abs(w(i)) == g)
        {
            c(i) = w(i) > 0 ? 1 : -1;
            return c;
        }
    }

    Integer running = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
    {
        if (w(i) == 0)
            continue;
        Integer s, t;
        Integer next = extended_gcd(running, w(i), s, t);
        if (next == running)
            continue;
        for (Eigen::Index j = 0; j < i; ++j)
            c(j) *= s;
        c(i) = t;
        running = next;
        if (running == g)
            break;
    }
    return c;
}

Integer determinant(const IntMatrix& input)
{
    if (input.rows() != input.cols())
        throw std::invalid_argument("determinant: matrix is not square");
    const Eigen::Index n = input.rows();
    if (n == 0)
        return 1;

    IntMatrix m = input;
    Integer sign = 1;
    Integer prev = 1;
    for (Eigen::Index k = 0; k < n - 1; ++k)
    {
        if (m(k, k) == 0)
        {
            Eigen::Index swap = k + 1;
            while (swap < n && m(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            m.row(k).swap(m.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
        {
            for (Eigen::Index j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

RationalMatrix inverse(const RationalMatrix& input)
{
    if (input.rows() != input.cols())
        throw std::invalid_argument("inverse: matrix is not square");
    const Eigen::Index n = input.rows();
    RationalMatrix m = input;
    RationalMatrix inv = RationalMatrix::Identity(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        Eigen::Index pivot = k;
        while (pivot < n && m(pivot, k) == 0)
            ++pivot;
        if (pivot == n)
            throw std::domain_error("inverse: matrix is singular");
        if (pivot != k)
        {
            m.row(k).swap(m.row(pivot));
            inv.row(k).swap(inv.row(pivot));
        }
        Rational scale = 1 / m(k, k);
        m.row(k) *= scale;
        inv.row(k) *= scale;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            if (i == k || m(i, k) == 0)
                continue;
            Rational factor = m(i, k);
            m.row(i) -= factor * m.row(k);
            inv.row(i) -= factor * inv.row(k);
        }
    }
    return inv;
}

std::string format_rational(const Rational& q)
{
    const Integer& den = denominator(q);
    if (den == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + den.str();
}

namespace {

bool is_canonical_integer(std::string_view s, bool allow_sign)
{
    if (s.empty())
        return false;
    std::size_t pos = 0;
    if (s[0] == '-')
    {
        if (!allow_sign)
            return false;
        pos = 1;
    }
    if (pos == s.size())
        return false;
    for (std::size_t i = pos; i < s.size(); ++i)
    {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    }
    // no leading zeros, no "-0"
    if (s[pos] == '0' && (s.size() - pos > 1 || pos == 1))
        return false;
    return true;
}

bool is_lenient_integer(std::string_view s)
{
    std::size_t pos = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (pos == s.size())
        return false;
    for (std::size_t i = pos; i < s.size(); ++i)
    {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    }
    return true;
}

Integer to_integer(std::string_view s)
{
    if (!s.empty() && s[0] == '+')
        s.remove_prefix(1);
    return Integer(std::string(s));
}

}   // namespace

Rational parse_rational(std::string_view text, bool canonical_only)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

    auto fail = [&](const char* why) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "': " + why);
    };

    if (canonical_only)
    {
        if (!is_canonical_integer(num, true))
            fail("bad numerator");
        if (slash != std::string_view::npos && !is_canonical_integer(den, false))
            fail("bad denominator");
    }
    else
    {
        if (!is_lenient_integer(num))
            fail("bad numerator");
        if (slash != std::string_view::npos && !is_lenient_integer(den))
            fail("bad denominator");
    }

    Integer p = to_integer(num);
    Integer q = slash == std::string_view::npos ? Integer(1) : to_integer(den);
    if (q == 0)
        fail("zero denominator");
    if (canonical_only)
    {
        if (slash != std::string_view::npos && (q == 1 || gcd(p, q) != 1))
            fail("not in lowest terms");
    }
    return Rational(p, q);
}

std::string format_vector(const RationalClass& x, char delimiter)
{
    std::string out;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (i > 0)
            out += delimiter;
        out += format_rational(x(i));
    }
    return out;
}

std::string format_vector(const LatticeVector& x, char delimiter)
{
    std::string out;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        if (i > 0)
            out += delimiter;
        out += x(i).str();
    }
    return out;
}

std::vector<std::string> split_tokens(std::string_view text)
{
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : text)
    {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
        {
            if (!current.empty())
                tokens.push_back(std::move(current));
            current.clear();
        }
        else
        {
            current += ch;
        }
    }
    if (!current.empty())
        tokens.push_back(std::move(current));
    return tokens;
}

RationalClass parse_rational_vector(std::string_view text, bool canonical_only)
{
    auto tokens = split_tokens(text);
    RationalClass x(static_cast<Eigen::Index>(tokens.size()));
    for (std::size_t i = 0; i < tokens.size(); ++i)
        x(static_cast<Eigen::Index>(i)) = parse_rational(tokens[i], canonical_only);
    return x;
}

LatticeVector parse_integer_vector(std::string_view text, bool canonical_only)
{
    RationalClass q = parse_rational_vector(text, canonical_only);
    if (!is_integral(q))
        throw std::invalid_argument("expected integer entries");
    return to_integral(q);
}

}   // namespace econe
