#pragma once

#include <array>
#include <cmath>

namespace sonoqed {

// Neumaier's variant of Kahan summation. Order of add() calls fixes the result.
class NeumaierSum {
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

// 7-point Gauss / 15-point Kronrod pair on [-1, 1]. Nodes listed for the full
// interval; gauss_weight is zero on the pure Kronrod points.
struct KronrodRule {
    std::array<double, 15> node;
    std::array<double, 15> kronrod_weight;
    std::array<double, 15> gauss_weight;
};

const KronrodRule& gauss_kronrod15();

} // namespace sonoqed
