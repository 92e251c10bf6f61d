#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "proglab/common.hpp"

namespace proglab {

int64_t primorial(int w);
bool is_prime(int64_t n);

// Parameter bundle: W is the primorial of w, M the largest m with m^2 W <= N.
struct ArithCtx {
    int64_t N = 1;
    int w = 2;
    int64_t W = 2;
    int64_t M = 0;
    double delta = 0.5;

    static ArithCtx make(int64_t N, int w, double delta = 0.5);
    int64_t P(int64_t y) const { return W * y * y + y; }
};

mpz_class poly_P(const ArithCtx& ctx, const mpz_class& y);
// (P(Wy+r) - P(r)) / W, asserted equal to W^2 y^2 + (2Wr+1) y.
mpz_class poly_Pr(const mpz_class& W, const mpz_class& r, const mpz_class& y);
inline int64_t poly_Pr_i64(int64_t W, int64_t r, int64_t y) { return W * W * y * y + (2 * W * r + 1) * y; }

struct HenselParams {
    int64_t a = 0, b = 0, p = 2;
    int k = 1;
};
bool hensel_hypothesis(const HenselParams& hp);
bool hensel_bijection_check(const HenselParams& hp);

// Generalised binomial coefficient x(x-1)...(x-j+1)/j!, any integer or rational x.
mpz_class binom_z(const mpz_class& x, unsigned j);
mpq_class binom_q(const mpq_class& x, unsigned j);

bool binom_identity_check(int64_t A, int64_t B, int64_t n_lo, int64_t n_hi);
// x^2 = 2(x+P)^2 - (x+2P)^2 + 2P^2 and x = 2(x+P) - (x+2P).
bool shift_identity_check(const mpz_class& x, const mpz_class& P);

// n -> sum_j alpha_j binom(n, j). coeffs are ascending (alpha_0 first) and
// reduced to [0,1); exact, when present, holds the unreduced rationals.
struct BinomPoly {
    std::vector<double> coeffs;
    std::optional<std::vector<mpq_class>> exact;

    static BinomPoly from_exact(std::vector<mpq_class> alpha);
    static BinomPoly from_reals(std::vector<double> alpha);
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    mpq_class eval_exact(const mpz_class& n) const;
    double eval_torus(int64_t n) const;
};

mpq_class torus_dist(const mpq_class& x);

// q(n) = S' p(S n + I). S' is the least positive integer clearing the
// denominators the substitution introduces beyond those already in p.
std::pair<mpz_class, BinomPoly> rebase_affine(const BinomPoly& p, const mpz_class& S, const mpz_class& I);

// Matrix T with beta = T alpha for the substitution n -> S n + I, in the
// binomial basis, and the least S'' with S'' T^{-1} integral.
std::vector<std::vector<mpq_class>> rebase_matrix(int degree, const mpz_class& S, const mpz_class& I);
mpz_class shift_multiplier(int degree, const mpz_class& S, const mpz_class& I);

double cinf_norm(const BinomPoly& p, int64_t N);

struct RationalApprox {
    int64_t q = 1;
    double err = 0;
};
RationalApprox rational_approx(double theta, int64_t q_max);
RationalApprox rational_approx(const mpq_class& theta, int64_t q_max);
// Exhaustive reference scan, O(q_max).
RationalApprox rational_approx_scan(double theta, int64_t q_max);

}  // namespace proglab
