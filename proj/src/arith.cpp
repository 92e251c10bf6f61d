#include "proglab/arith.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace proglab {

int64_t primorial(int w) {
    int64_t W = 1;
    for (int p = 2; p <= w; ++p) {
        if (!is_prime(p)) continue;
        if (W > std::numeric_limits<int64_t>::max() / p)
            throw Error("primorial: overflow for w = " + std::to_string(w));
        W *= p;
    }
    return W;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (int64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

ArithCtx ArithCtx::make(int64_t N, int w, double delta) {
    if (w < 2) throw Error("ArithCtx: w must be >= 2 (got " + std::to_string(w) + ")");
    if (N < 1) throw Error("ArithCtx: N must be >= 1");
    if (!(delta > 0 && delta <= 0.5)) throw Error("ArithCtx: delta must lie in (0, 1/2]");
    ArithCtx c;
    c.N = N;
    c.w = w;
    c.W = primorial(w);
    c.delta = delta;
    int64_t q = N / c.W;
    auto m = static_cast<int64_t>(std::sqrt(static_cast<double>(q)));
    while (m * m > q) --m;
    while ((m + 1) * (m + 1) <= q) ++m;
    c.M = m;
    return c;
}

mpz_class poly_P(const ArithCtx& ctx, const mpz_class& y) { return mpz_class(ctx.W) * y * y + y; }

mpz_class poly_Pr(const mpz_class& W, const mpz_class& r, const mpz_class& y) {
    if (W < 1 || r < 1 || r > W) throw Error("poly_Pr: need W >= 1 and 1 <= r <= W");
    auto P = [&](const mpz_class& t) -> mpz_class { return W * t * t + t; };
    mpz_class num = P(W * y + r) - P(r);
    if (!mpz_divisible_p(num.get_mpz_t(), W.get_mpz_t())) throw Error("poly_Pr: non-integral quotient");
    mpz_class viaP = num / W;
    mpz_class closed = W * W * y * y + (2 * W * r + 1) * y;
    if (viaP != closed) throw Error("poly_Pr: closed form disagrees with definition");
    return viaP;
}

bool hensel_hypothesis(const HenselParams& hp) {
    return hp.p > 0 && hp.a % hp.p == 0 && hp.b % hp.p != 0;
}

bool hensel_bijection_check(const HenselParams& hp) {
    if (!is_prime(hp.p)) throw Error("hensel_bijection_check: p = " + std::to_string(hp.p) + " is not prime");
    if (hp.k < 1) throw Error("hensel_bijection_check: k must be >= 1");
    int64_t q = 1;
    for (int i = 0; i < hp.k; ++i) {
        if (q > (int64_t{1} << 31) / hp.p) throw Error("hensel_bijection_check: p^k too large to enumerate");
        q *= hp.p;
    }
    auto mod = [q](int64_t v) { v %= q; return v < 0 ? v + q : v; };
    const int64_t a = mod(hp.a), b = mod(hp.b);
    std::vector<bool> seen(static_cast<size_t>(q), false);
    for (int64_t y = 0; y < q; ++y) {
        __int128 v = static_cast<__int128>(a) * y % q * y + static_cast<__int128>(b) * y;
        auto r = static_cast<int64_t>(v % q);
        if (seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

mpz_class binom_z(const mpz_class& x, unsigned j) {
    mpz_class num = 1, den = 1;
    for (unsigned i = 0; i < j; ++i) {
        num *= x - i;
        den *= i + 1;
    }
    return num / den;
}

mpq_class binom_q(const mpq_class& x, unsigned j) {
    mpq_class r = 1;
    for (unsigned i = 0; i < j; ++i) {
        r *= x - i;
        r /= i + 1;
    }
    return r;
}

bool binom_identity_check(int64_t A_, int64_t B_, int64_t n_lo, int64_t n_hi) {
    const mpz_class A = A_, B = B_;
    const mpz_class c4 = 12 * A * A;
    const mpz_class c3 = 18 * A * A + 6 * A * B;
    const mpz_class c2 = 7 * A * A + 6 * A * B - A + B * B;
    const mpz_class c1 = A * B + binom_z(A, 2) + binom_z(B, 2);
    for (int64_t n_ = n_lo; n_ <= n_hi; ++n_) {
        const mpz_class n = n_;
        const mpz_class L = A * n * n + B * n;
        if (binom_z(L, 1) != 2 * A * binom_z(n, 2) + (A + B) * binom_z(n, 1)) return false;
        mpz_class rhs = c4 * binom_z(n, 4) + c3 * binom_z(n, 3) + c2 * binom_z(n, 2) + c1 * binom_z(n, 1);
        if (binom_z(L, 2) != rhs) return false;
    }
    return true;
}

bool shift_identity_check(const mpz_class& x, const mpz_class& P) {
    mpz_class sq = 2 * (x + P) * (x + P) - (x + 2 * P) * (x + 2 * P) + 2 * P * P;
    mpz_class lin = 2 * (x + P) - (x + 2 * P);
    return sq == x * x && lin == x;
}

namespace {

double frac_of(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class f = x - mpq_class(fl);
    double d = f.get_d();
    return d >= 1.0 ? 0.0 : d;
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace

BinomPoly BinomPoly::from_exact(std::vector<mpq_class> alpha) {
    if (alpha.empty()) alpha.emplace_back(0);
    BinomPoly p;
    p.coeffs.reserve(alpha.size());
    for (auto& a : alpha) {
        a.canonicalize();
        p.coeffs.push_back(frac_of(a));
    }
    p.exact = std::move(alpha);
    return p;
}

BinomPoly BinomPoly::from_reals(std::vector<double> alpha) {
    if (alpha.empty()) alpha.push_back(0);
    BinomPoly p;
    for (double a : alpha) {
        double f = a - std::floor(a);
        p.coeffs.push_back(f >= 1.0 ? 0.0 : f);
    }
    return p;
}

mpq_class BinomPoly::eval_exact(const mpz_class& n) const {
    if (!exact) throw Error("BinomPoly::eval_exact: no exact coefficients");
    mpq_class s = 0;
    for (size_t j = 0; j < exact->size(); ++j) s += (*exact)[j] * mpq_class(binom_z(n, static_cast<unsigned>(j)));
    return s;
}

double BinomPoly::eval_torus(int64_t n) const {
    if (exact) return frac_of(eval_exact(n));
    double s = 0;
    for (size_t j = 0; j < coeffs.size(); ++j) {
        double b = binom_z(n, static_cast<unsigned>(j)).get_d();
        s += coeffs[j] * b;
        s -= std::floor(s);
    }
    return s;
}

mpq_class torus_dist(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class f = x - mpq_class(fl);
    mpq_class g = 1 - f;
    return f < g ? f : g;
}

std::pair<mpz_class, BinomPoly> rebase_affine(const BinomPoly& p, const mpz_class& S, const mpz_class& I) {
    if (S == 0) throw Error("rebase_affine: S must be nonzero");
    if (!p.exact) throw Error("rebase_affine: exact coefficients required");
    const int d = p.degree();
    std::vector<mpq_class> vals(d + 1);
    for (int i = 0; i <= d; ++i) vals[i] = p.eval_exact(S * i + I);
    // Newton forward differences give the binomial-basis coefficients.
    std::vector<mpq_class> beta(d + 1);
    for (int t = 0; t <= d; ++t) {
        mpq_class s = 0;
        for (int i = 0; i <= t; ++i) {
            mpq_class term = vals[i] * mpq_class(binom_z(t, i));
            if ((t - i) % 2) s -= term; else s += term;
        }
        beta[t] = s;
    }
    mpz_class D = 1;
    for (const auto& a : *p.exact) D = lcm_z(D, a.get_den());
    mpz_class Sp = 1;
    for (const auto& b : beta) {
        mpq_class scaled = b * mpq_class(D);
        scaled.canonicalize();
        Sp = lcm_z(Sp, scaled.get_den());
    }
    for (auto& b : beta) b *= mpq_class(Sp);
    return {Sp, BinomPoly::from_exact(std::move(beta))};
}

std::vector<std::vector<mpq_class>> rebase_matrix(int degree, const mpz_class& S, const mpz_class& I) {
    std::vector<std::vector<mpq_class>> T(degree + 1, std::vector<mpq_class>(degree + 1, 0));
    for (int j = 0; j <= degree; ++j) {
        std::vector<mpq_class> e(degree + 1, 0);
        e[j] = 1;
        auto [sp, q] = rebase_affine(BinomPoly::from_exact(e), S, I);
        for (int t = 0; t <= degree; ++t) T[t][j] = (*q.exact)[t] / mpq_class(sp);
    }
    return T;
}

mpz_class shift_multiplier(int degree, const mpz_class& S, const mpz_class& I) {
    auto T = rebase_matrix(degree, S, I);
    const int n = degree + 1;
    std::vector<std::vector<mpq_class>> U(n, std::vector<mpq_class>(n, 0));
    for (int i = 0; i < n; ++i) U[i][i] = 1;
    // T is upper triangular with diagonal S^j; back-substitute.
    for (int col = n - 1; col >= 0; --col) {
        mpq_class piv = T[col][col];
        if (piv == 0) throw Error("shift_multiplier: singular substitution");
        for (int c = 0; c < n; ++c) U[col][c] /= piv;
        for (int c = 0; c < n; ++c) T[col][c] /= piv;
        for (int r = 0; r < col; ++r) {
            mpq_class f = T[r][col];
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                T[r][c] -= f * T[col][c];
                U[r][c] -= f * U[col][c];
            }
        }
    }
    mpz_class L = 1;
    for (auto& row : U)
        for (auto& u : row) {
            u.canonicalize();
            L = lcm_z(L, u.get_den());
        }
    return L;
}

double cinf_norm(const BinomPoly& p, int64_t N) {
    if (N < 1) throw Error("cinf_norm: N must be >= 1");
    double best = 0;
    for (int j = 1; j <= p.degree(); ++j) {
        double dist = p.exact ? torus_dist((*p.exact)[j]).get_d() : torus_norm(p.coeffs[j]);
        best = std::max(best, std::pow(static_cast<double>(N), j) * dist);
    }
    return best;
}

RationalApprox rational_approx(const mpq_class& theta_in, int64_t q_max) {
    if (q_max < 1) throw Error("rational_approx: Q_max must be >= 1");
    mpq_class theta = theta_in;
    theta.canonicalize();
    // Convergent denominators of theta mod 1. The minimiser of ||q theta||
    // over q <= Q with ties to the smallest q is a best approximation of the
    // second kind, hence one of these.
    mpz_class num = theta.get_num(), den = theta.get_den();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num -= fl * den;
    std::vector<int64_t> qs{1};
    mpz_class q_prev = 0, q_cur = 1;
    mpz_class a_num = den, a_den = num;  // continued fraction of den/num
    while (a_den != 0) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), a_num.get_mpz_t(), a_den.get_mpz_t());
        mpz_class q_next = a * q_cur + q_prev;
        if (q_next > q_max) break;
        qs.push_back(q_next.get_si());
        q_prev = q_cur;
        q_cur = q_next;
        mpz_class r = a_num - a * a_den;
        a_num = a_den;
        a_den = r;
    }
    RationalApprox best{1, 2.0};
    mpq_class best_err = 2;
    for (int64_t q : qs) {
        mpq_class e = torus_dist(theta * mpq_class(q));
        if (e < best_err || (e == best_err && q < best.q)) {
            best_err = e;
            best.q = q;
        }
    }
    best.err = best_err.get_d();
    return best;
}

RationalApprox rational_approx_scan(double theta, int64_t q_max) {
    RationalApprox best{1, torus_norm(frac_mul(theta, 1))};
    for (int64_t q = 2; q <= q_max; ++q) {
        double e = torus_norm(frac_mul(theta, q));
        if (e < best.err) best = {q, e};
    }
    return best;
}

RationalApprox rational_approx(double theta, int64_t q_max) {
    if (!std::isfinite(theta)) throw Error("rational_approx: non-finite theta");
    RationalApprox r = rational_approx(mpq_class(theta), q_max);
    if (q_max <= 10000) {
        RationalApprox s = rational_approx_scan(theta, q_max);
        if (s.q != r.q && std::fabs(s.err - r.err) > 1e-15)
            throw Error("rational_approx: continued fraction and scan disagree");
    }
    return r;
}

}  // namespace proglab
