#pragma once

#include <cmath>
#include <complex>

namespace aet {

// Neumaier-compensated accumulator.  result() = sum + carry.
// combine() folds another accumulator in; as long as the combine order is
// fixed, a segmented parallel reduction reproduces the sequential bit
// pattern exactly.
struct Kbn {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }

    void combine(const Kbn& o) {
        add(o.sum);
        add(o.carry);
    }

    double result() const { return sum + carry; }
};

struct KbnComplex {
    Kbn re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }

    void combine(const KbnComplex& o) {
        re.combine(o.re);
        im.combine(o.im);
    }

    std::complex<double> result() const { return {re.result(), im.result()}; }
};

} // namespace aet
