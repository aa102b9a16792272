#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "weldinv/snf.hpp"

namespace weldinv {

// Finite group as a dense multiplication table over element indices.
class FiniteGroup {
public:
    FiniteGroup(int order, std::vector<int> mul_table, std::vector<std::string> labels = {});

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int i, int j) const { return mul_[size_t(i) * order_ + j]; }
    int inv(int i) const { return inv_[i]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    const std::string& label(int i) const { return labels_[i]; }
    bool is_abelian() const { return abelian_; }

    // (representative, class size) pairs partitioning the group; cached.
    const std::vector<std::pair<int, int>>& conjugacy_classes() const;
    // For each element, the index of its class in conjugacy_classes().
    const std::vector<int>& class_of() const;

    // Violations of the group axioms (empty means valid). Associativity is
    // checked exhaustively for small orders, on random triples otherwise.
    std::vector<std::string> check_axioms(int random_samples = 10000) const;

private:
    int order_;
    int identity_ = -1;
    bool abelian_ = false;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
    mutable std::vector<std::pair<int, int>> classes_;
    mutable std::vector<int> class_of_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// E = (Z_m)^k with componentwise arithmetic.
struct AbelianGroup {
    long m = 1;
    int k = 0;

    mpz_class size() const {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), (unsigned long)m, (unsigned long)k);
        return s;
    }
    bool trivial() const { return m == 1 || k == 0; }
};

// Automorphic crossed module: finite G acting on E=(Z_m)^k by invertible
// matrices mod m (the boundary map is trivial).
class CrossedModule {
public:
    CrossedModule(GroupPtr g, AbelianGroup e, std::vector<std::vector<long>> action,
                  std::string name = "");

    const FiniteGroup& group() const { return *g_; }
    GroupPtr group_ptr() const { return g_; }
    const AbelianGroup& coeffs() const { return e_; }
    const std::string& name() const { return name_; }

    // k x k action matrix of element g, row-major, entries in [0, m).
    const std::vector<long>& action(int g) const { return action_[g]; }
    // v |-> action(g) * v mod m.
    void act(int g, const long* in, long* out) const;

    // Violations of the crossed-module axioms (identity action, morphism
    // property, invertibility); empty means valid.
    std::vector<std::string> check_axioms(int random_samples = 10000) const;

private:
    GroupPtr g_;
    AbelianGroup e_;
    std::vector<std::vector<long>> action_;
    std::string name_;
};

// GL_n(Z_p): all n x n matrices mod p whose determinant is a unit mod p
// (p may be composite). Throws if the group would exceed `max_order`.
GroupPtr make_gl_group(int n, long p, int max_order = 1 << 16);
CrossedModule make_gl_module(int n, long p, int max_order = 1 << 16);

// G = Z_2 = {1,-1} acting on Z_m by negation.
CrossedModule make_sign_module(long m);

// E trivial: the invariant degenerates to the counting invariant over G.
CrossedModule make_trivial_E(GroupPtr g);

// Helper groups for tests and the CLI.
GroupPtr make_cyclic_group(int n);
GroupPtr make_symmetric_group(int n);

// Plain-text multiplication table (plus optional action data) parsers.
// Grammar, one directive per line, '#' comments:
//   group <order>
//   mul <order ints>          (one line per row i; entry j = index of i*j)
//   label <i> <text>          (optional)
//   abelian <m> <k>           (crossed module files only)
//   action <g> <k*k ints>     (row-major, one line per group element)
GroupPtr parse_group_table(const std::string& text);
CrossedModule parse_crossed_module_table(const std::string& text);

// CLI spec strings: gl(n,p) | sign(m) | trivial(file) | table(file).
CrossedModule parse_cm_spec(const std::string& spec);

}  // namespace weldinv
