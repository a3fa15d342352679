#include "phev/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace phev::quadrature {

namespace {

// Kronrod 21-point abscissae (positive half, descending) and weights, with
// the embedded 10-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525981696, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod21(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[10];
    double gauss = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * sum;
        }
    }
    const double value = kronrod * half;
    const double error = std::fabs((kronrod - gauss) * half);
    return {a, b, value, error};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts)
{
    if (a == b) {
        return {};
    }
    std::priority_queue<Segment> queue;
    Segment first = kronrod21(f, a, b);
    double total = first.value;
    double error = first.error;
    queue.push(first);
    int intervals = 1;

    const auto done = [&] {
        const double tol = std::max(opts.abs_tol, opts.rel_tol * std::fabs(total));
        return error <= tol;
    };

    while (!done() && intervals < opts.max_intervals) {
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval cannot be split further in double precision.
            queue.push(worst);
            break;
        }
        const Segment left = kronrod21(f, worst.a, mid);
        const Segment right = kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }

    // Re-sum from the segments to drop drift from the running updates.
    double value = 0.0;
    double err = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        err += queue.top().error;
        queue.pop();
    }
    return {value, err, intervals};
}

}  // namespace phev::quadrature
