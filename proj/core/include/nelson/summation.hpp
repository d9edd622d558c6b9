#ifndef NELSON_SUMMATION_HPP
#define NELSON_SUMMATION_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace nelson {

// Neumaier variant of compensated summation. Reductions over mode grids and
// ensembles go through this in a fixed index order so that results do not
// depend on the thread count.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    KahanSum s;
    for (double v : xs) s.add(v);
    return s.value();
}

} // namespace nelson

#endif
