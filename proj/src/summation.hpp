#ifndef CASIMIR_SRC_SUMMATION_HPP
#define CASIMIR_SRC_SUMMATION_HPP

#include <cmath>

namespace casimir::detail
{

// Neumaier compensated sum; also tracks sum of |terms| for roundoff estimates.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_ += std::abs(x);
    }
    double value() const { return sum_ + comp_; }
    double abs_total() const { return abs_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

} // namespace casimir::detail

#endif
