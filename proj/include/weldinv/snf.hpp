#pragma once

#include <gmpxx.h>
#include <vector>

namespace weldinv {

// Dense integer matrix with arbitrary-precision entries.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<mpz_class> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c), mpz_class(0)) {}

    mpz_class& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const mpz_class& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static IntMatrix identity(int n);
    IntMatrix mul(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;
};

// U*A*V = diag(d1..dr) with d1 | d2 | ... | dr, di >= 0; U, V unimodular.
struct SnfResult {
    std::vector<mpz_class> diagonal;  // length min(rows, cols), trailing zeros kept
    IntMatrix u;                      // rows x rows
    IntMatrix v;                      // cols x cols
};

SnfResult smith_normal_form(const IntMatrix& a);

// #{x in (Z_m)^vars : A x = b mod m}. A may have fewer columns than `vars`;
// the extra variables are unconstrained. b empty means the zero vector.
mpz_class count_solutions_mod(const IntMatrix& a, const std::vector<mpz_class>& b,
                              long m, int vars);

}  // namespace weldinv
