#include "msp/rational.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <sstream>

namespace msp {

namespace {

bool digits_only(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    const std::size_t slash = text.find('/');
    std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
    const std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);

    bool negative = false;
    if (!num.empty() && num[0] == '-') {
        negative = true;
        num = num.substr(1);
    }
    if (!digits_only(num) || !digits_only(den))
        throw InputError("malformed rational '" + text + "'");

    Integer n(num);
    Integer d(den);
    if (d == 0)
        throw InputError("zero denominator in rational '" + text + "'");
    if (negative)
        n = -n;
    return Rational(n, d); // canonicalizes
}

std::string to_string(const Rational& q)
{
    return q.str();
}

std::string to_string(const VectorXr& v)
{
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0)
            os << ", ";
        os << v[i].str();
    }
    os << ")";
    return os.str();
}

bool lex_less(const VectorXr& a, const VectorXr& b)
{
    for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i])
            return a[i] < b[i];
    }
    return a.size() < b.size();
}

bool vec_eq(const VectorXr& a, const VectorXr& b)
{
    if (a.size() != b.size())
        return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return false;
    return true;
}

VectorXr scale_to_coprime(const VectorXr& v)
{
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;

    Integer den_lcm = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        den_lcm = lcm(den_lcm, denominator(v[i]));

    Integer num_gcd = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        num_gcd = gcd(num_gcd, Integer(numerator(v[i]) * (den_lcm / denominator(v[i]))));

    if (num_gcd == 0)
        return v; // zero vector

    VectorXr out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = Rational(Integer(numerator(v[i]) * (den_lcm / denominator(v[i])) / num_gcd), Integer(1));
    return out;
}

} // namespace msp
