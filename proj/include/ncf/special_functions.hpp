#pragma once

namespace ncf {

// Tail sums S_k(y) = sum_{j>=0} 1/(y+j)^k for k = 2, 3, 4, and the digamma
// function, for y > 0. Evaluated by shifting the argument above 64 with the
// exact recurrence and then using the Bernoulli asymptotic series truncated
// where the first omitted term is below ~1e-18; the relative error of every
// function here is bounded by kSpecialFunctionRelError.
inline constexpr double kSpecialFunctionRelError = 1e-14;

double digamma(double y);
double tail_sum_square(double y);   // S_2(y), equals psi'(y)
double tail_sum_cube(double y);     // S_3(y), equals -psi''(y)/2
double tail_sum_quartic(double y);  // S_4(y), equals psi'''(y)/6

}  // namespace ncf
