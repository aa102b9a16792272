#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "weldinv/algebra.hpp"
#include "weldinv/diagram.hpp"

namespace weldinv {

// Compiled counting problem over a canonical diagram: one (G,E) pair per
// segment, G-unknowns at births/open ends/source vertices, E-unknowns at
// births and vertex outputs, relations at crossings, extrema, ends, vertices.
struct ColouringProblem {
    MorseDiagram diagram;  // canonical
    SweepInfo sweep;
    CrossedModule cm;
    std::vector<int> g_unknown_event;       // creator event per g-unknown
    std::vector<int> event_g_unknown;       // per event: unknown index or -1
    int n_g_unknowns = 0;
    int n_e_unknowns = 0;
};

ColouringProblem build_problem(const MorseDiagram& d, const CrossedModule& cm);

struct OracleCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CountOptions {
    bool conjugacy_reduction = true;
    int workers = 1;
    bool naive = false;
};

// Literal backtracking enumeration of (g,e) labels per segment.  Refuses to
// run when the estimated node count exceeds the oracle cap (default 1e9,
// override with WELDINV_ORACLE_CAP).
mpz_class count_naive(const ColouringProblem& p);

// DFS over g-unknowns with eager pruning; E-part counted per leaf by linear
// algebra mod m.  Result independent of conjugacy_reduction and workers.
mpz_class count_fast(const ColouringProblem& p, const CountOptions& opts = {},
                     unsigned long long* g_branches = nullptr);

// Exact rational with denominator a power of |E|.
struct InvariantValue {
    mpq_class v;
    bool is_integer() const { return v.get_den() == 1; }
    mpz_class as_integer() const;
    std::string str() const;
};

struct CountReport {
    mpz_class raw_count;
    int cups = 0;
    int caps = 0;
    int up_ends = 0;
    int down_ends = 0;
    std::vector<int> vertex_above;  // per vertex event, #edges leaving above
    long exponent = 0;              // net power of |E| applied to raw_count
    InvariantValue value;
    std::string backend;
    double elapsed_seconds = 0.0;
    unsigned long long g_branches = 0;
};

CountReport invariant(const MorseDiagram& d, const CrossedModule& cm,
                      const CountOptions& opts = {});

// Homomorphism-counting invariant: |E| = 1 specialization.
mpz_class counting_invariant(const MorseDiagram& d, GroupPtr g);

}  // namespace weldinv
