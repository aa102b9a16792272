#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace weldinv {

// Element of Z[X1^{±1}, ..., Xn^{±1}]: exponent vector -> coefficient,
// zero coefficients never stored.
struct LaurentPoly {
    int n_vars = 0;
    std::map<std::vector<int>, mpz_class> terms;

    static LaurentPoly zero(int n_vars) { return {n_vars, {}}; }
    static LaurentPoly constant(int n_vars, mpz_class c);
    // c * X_var^power (var is 0-based).
    static LaurentPoly monomial(int n_vars, int var, int power, mpz_class c = 1);

    bool is_zero() const { return terms.empty(); }
    LaurentPoly operator-() const;
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly&) const = default;

    // Monomials as c*X1^a*X2^b, joined with " + " (negative coefficients
    // render as "- c*..."); zero prints "0".  Stable term order.
    std::string str() const;
};

// Exact quotient a / b; throws std::domain_error when b is zero or the
// division leaves a remainder.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

// Square-matrix determinants: cofactor expansion and fraction-free
// (Bareiss) elimination.  Rows of m must have equal length.
LaurentPoly det_expansion(const std::vector<std::vector<LaurentPoly>>& m);
LaurentPoly det_bareiss(const std::vector<std::vector<LaurentPoly>>& m);

}  // namespace weldinv
