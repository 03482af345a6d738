#ifndef VLENC_NUMERIC_HPP
#define VLENC_NUMERIC_HPP

#include <cmath>
#include <compare>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

namespace vlenc {

inline const double log2_e = std::log2(std::exp(1.0));

/// Real number extended with +infinity. Infinity is a flag, not a float
/// value, so reports can print it explicitly as "inf".
class ExtReal {
public:
    constexpr ExtReal() = default;
    constexpr ExtReal(double v) : value_(v) {} // NOLINT(google-explicit-constructor)

    static constexpr ExtReal infinity()
    {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; meaningless when is_infinite().
    constexpr double value() const { return value_; }

    /// IEEE view for arithmetic (+inf when infinite).
    double as_double() const
    {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b)
    {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b)
    {
        return a.as_double() <=> b.as_double();
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    CompensatedSum& operator+=(double x)
    {
        add(x);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// x*log2(x) with the 0*log 0 = 0 convention.
inline double xlog2x(double x)
{
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

/// Binary entropy h(p) in bits.
inline double binary_entropy(double p)
{
    return -xlog2x(p) - xlog2x(1.0 - p);
}

/// 12 significant digits, "inf" for infinity. Used for every report value.
inline std::string format_real(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_real(const ExtReal& v)
{
    return v.is_infinite() ? std::string("inf") : format_real(v.value());
}

/// Value rounded to 12 significant digits (for JSON emission).
inline double round12(double v)
{
    if (!std::isfinite(v))
        return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

} // namespace vlenc

#endif // VLENC_NUMERIC_HPP
