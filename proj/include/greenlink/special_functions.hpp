#pragma once

namespace greenlink {

// Modified Bessel function of the first kind, order zero.
//
// Power series sum_k (x^2/4)^k / (k!)^2 for |x| <= 30, Hankel asymptotic
// expansion e^x / sqrt(2 pi x) * sum_k ((2k-1)!!)^2 / (k! (8x)^k) above.
// The series has only positive terms and the asymptotic tail error at the
// switch point is ~e^{-60}, so relative error stays below 1e-14 on [0, 700].
// Throws std::overflow_error when I0(x) exceeds the double range (|x| > ~713).
double bessel_i0(double x);

// Exponentially scaled e^{-|x|} I0(x); finite for every finite x.
double bessel_i0e(double x);

// Gaussian tail probability Q(x) = P(Z > x), Z ~ N(0, 1).
double gaussian_q(double x);

// First-order Marcum Q-function
//   Q1(a, b) = integral_b^inf x I0(a x) exp(-(x^2 + a^2) / 2) dx,   a, b >= 0.
//
// Evaluated with the Neumann series
//   a <  b:  Q1 = e^{-(a^2+b^2)/2} sum_{k>=0} (a/b)^k I_k(ab)
//   a >= b:  Q1 = 1 - e^{-(a^2+b^2)/2} sum_{k>=1} (b/a)^k I_k(ab)
// where the scaled I_k(ab) e^{-ab} come from Miller's backward recurrence.
// Summation stops once the next term is below 1e-17 of the running sum and
// k is past the peak of I_k; throws NumericalFailure past 200000 terms.
double marcum_q1(double a, double b);

// 1 - Q1(a, b) computed without cancellation (small when a >> b).
double marcum_q1_complement(double a, double b);

}  // namespace greenlink
