#include "proglab/nil.hpp"

#include <omp.h>

#include <algorithm>
#include <climits>
#include <cmath>

namespace proglab {

namespace {

mpz_class floor_q(const mpq_class& x) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

void check_point(const NilGroup& G, const NilPoint& x) {
    if (static_cast<int>(x.size()) != G.m) throw Error("nil: point has wrong dimension");
}

mpz_class binom2(const mpz_class& n) { return n * (n - 1) / 2; }

}  // namespace

NilGroup NilGroup::heisenberg() { return {Kind::heisenberg, 3, {false, false, true}}; }

NilGroup NilGroup::abelian(int m, std::vector<bool> g2_coords) {
    if (m < 1) throw Error("nil: abelian dimension must be >= 1");
    if (g2_coords.empty()) g2_coords.assign(static_cast<size_t>(m), true);
    if (static_cast<int>(g2_coords.size()) != m) throw Error("nil: G_2 coordinate mask has wrong length");
    return {Kind::abelian, m, std::move(g2_coords)};
}

NilPoint nil_identity(const NilGroup& G) { return NilPoint(static_cast<size_t>(G.m), mpq_class(0)); }

NilPoint nil_mul(const NilGroup& G, const NilPoint& x, const NilPoint& y) {
    check_point(G, x);
    check_point(G, y);
    NilPoint z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    if (G.kind == NilGroup::Kind::heisenberg) z[2] += x[0] * y[1];
    return z;
}

NilPoint nil_inv(const NilGroup& G, const NilPoint& x) {
    check_point(G, x);
    NilPoint z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
    if (G.kind == NilGroup::Kind::heisenberg) z[2] += x[0] * x[1];
    return z;
}

NilPoint nil_pow(const NilGroup& G, const NilPoint& x, const mpz_class& n) {
    check_point(G, x);
    const mpq_class nq(n);
    NilPoint z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = nq * x[i];
    if (G.kind == NilGroup::Kind::heisenberg) z[2] += mpq_class(binom2(n)) * x[0] * x[1];
    return z;
}

NilPoint nil_commutator(const NilGroup& G, const NilPoint& x, const NilPoint& y) {
    return nil_mul(G, nil_mul(G, x, y), nil_mul(G, nil_inv(G, x), nil_inv(G, y)));
}

bool in_lattice(const NilPoint& x) {
    return std::all_of(x.begin(), x.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

bool in_g2(const NilGroup& G, const NilPoint& x) {
    check_point(G, x);
    for (int i = 0; i < G.m; ++i)
        if (!G.central[i] && x[i] != 0) return false;
    return true;
}

double nil_quasi_distance(const NilGroup& G, const NilPoint& x, const NilPoint& y) {
    auto d = nil_mul(G, x, nil_inv(G, y));
    double best = 0;
    for (auto& c : d) best = std::max(best, std::abs(c.get_d()));
    return best;
}

NilPoint polyseq_eval(const NilGroup& G, const PolySeq2& s, const mpz_class& n) {
    if (!in_g2(G, s.g2)) throw Error("polyseq: g2 must lie in G_2");
    return nil_mul(G, nil_mul(G, s.g0, nil_pow(G, s.g1, n)), nil_pow(G, s.g2, binom2(n)));
}

std::array<int64_t, 4> tau(int64_t x, int64_t y) { return {2 * (x + 2 * y), 3 * (x + y), 6 * y, 6 * x}; }

int rational_rank(std::vector<std::vector<mpq_class>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    int rank = 0;
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<size_t>(rank) || rows[r][c] == 0) continue;
            mpq_class f = rows[r][c] / rows[rank][c];
            for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::optional<std::vector<mpq_class>> span_coefficients(const std::vector<std::vector<mpq_class>>& basis,
                                                        const std::vector<mpq_class>& v) {
    const size_t nb = basis.size(), dim = v.size();
    // Augmented system: rows are coordinates, columns basis vectors then v.
    std::vector<std::vector<mpq_class>> A(dim, std::vector<mpq_class>(nb + 1));
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < nb; ++j) A[i][j] = basis[j][i];
        A[i][nb] = v[i];
    }
    std::vector<int> pivot_col;
    size_t row = 0;
    for (size_t c = 0; c < nb && row < dim; ++c) {
        size_t piv = row;
        while (piv < dim && A[piv][c] == 0) ++piv;
        if (piv == dim) continue;
        std::swap(A[piv], A[row]);
        mpq_class inv = 1 / A[row][c];
        for (size_t k = c; k <= nb; ++k) A[row][k] *= inv;
        for (size_t r = 0; r < dim; ++r) {
            if (r == row || A[r][c] == 0) continue;
            mpq_class f = A[r][c];
            for (size_t k = c; k <= nb; ++k) A[r][k] -= f * A[row][k];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    for (size_t r = row; r < dim; ++r)
        if (A[r][nb] != 0) return std::nullopt;
    std::vector<mpq_class> coef(nb, 0);
    for (size_t r = 0; r < pivot_col.size(); ++r) coef[pivot_col[r]] = A[r][nb];
    return coef;
}

Report flag_span_check() {
    Report rep;
    rep.name = "flag_spans";
    rep.inputs = {{"range", 10}};
    using Vec = std::vector<mpq_class>;
    const std::vector<Vec> basis = {{1, 1, 1, 1}, {0, 1, -2, 4}, {0, 0, 1, 2}, {0, 0, 0, 1}};
    const int expected_rank[3] = {2, 3, 4};
    for (int i = 1; i <= 3; ++i) {
        std::vector<Vec> rows;
        for (int64_t x = -10; x <= 10; ++x)
            for (int64_t y = -10; y <= 10; ++y) {
                auto t = tau(x, y);
                Vec r;
                for (auto c : t) {
                    mpz_class p = 1;
                    for (int e = 0; e < i; ++e) p *= c;
                    r.emplace_back(p);
                }
                rows.push_back(std::move(r));
            }
        const int rank = rational_rank(rows);
        const std::string tag = "tau" + std::to_string(i);
        rep.check(tag + "_rank", rank == expected_rank[i - 1], rank, expected_rank[i - 1]);
        // Membership of the first i+1 listed vectors plus equal rank pins the span.
        const int members = std::min(i + 1, 4);
        bool all_in = true;
        for (int b = 0; b < members; ++b) all_in = all_in && span_coefficients(rows, basis[b]).has_value();
        std::vector<Vec> claimed(basis.begin(), basis.begin() + members);
        const int claimed_rank = rational_rank(claimed);
        rep.check(tag + "_contains_basis", all_in && claimed_rank == rank, all_in, true,
                  "basis of rank " + std::to_string(claimed_rank));
    }
    auto coef = span_coefficients({basis[0], basis[1]}, {2, 3, 0, 6});
    const bool ok = coef && (*coef)[0] == 2 && (*coef)[1] == 1;
    rep.check("tau_1_0_coefficients", ok, ok ? json::array({(*coef)[0].get_d(), (*coef)[1].get_d()}) : json(nullptr),
              json::array({2, 1}));
    return rep;
}

std::array<NilPoint, 4> gtau_compose(const NilGroup& G, const GTau& t) {
    return {t.g0, nil_mul(G, t.g0, t.g1),
            nil_mul(G, nil_mul(G, t.g0, nil_pow(G, t.g1, -2)), t.g2),
            nil_mul(G, nil_mul(G, t.g0, nil_pow(G, t.g1, 4)), nil_pow(G, t.g2, 2))};
}

std::optional<GTau> gtau_decompose(const NilGroup& G, const std::array<NilPoint, 4>& q) {
    GTau t;
    t.g0 = q[0];
    t.g1 = nil_mul(G, nil_inv(G, t.g0), q[1]);
    t.g2 = nil_mul(G, nil_inv(G, nil_mul(G, t.g0, nil_pow(G, t.g1, -2))), q[2]);
    if (!in_g2(G, t.g2)) return std::nullopt;
    auto fourth = nil_mul(G, nil_mul(G, t.g0, nil_pow(G, t.g1, 4)), nil_pow(G, t.g2, 2));
    if (fourth != q[3]) return std::nullopt;
    return t;
}

bool constraint_check(const NilGroup& G, const PolySeq2& s, int64_t x, int64_t y) {
    auto t = tau(x, y);
    std::array<NilPoint, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = polyseq_eval(G, s, mpz_class(static_cast<long>(t[i])));
    return gtau_decompose(G, q).has_value();
}

std::array<mpq_class, 3> vertical_freq_system(const mpq_class& xi) {
    // xi1 + xi2 + xi3 = xi, xi2 - 2 xi3 = 4 xi, xi3 = 2 xi.
    std::vector<std::vector<mpq_class>> A = {{1, 1, 1}, {0, 1, -2}, {0, 0, 1}};
    std::vector<mpq_class> rhs = {xi, 4 * xi, 2 * xi};
    mpq_class det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                    A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                    A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
    if (det == 0) throw Error("vertical_freq_system: singular system");
    std::vector<std::vector<mpq_class>> cols = {{A[0][0], A[1][0], A[2][0]},
                                                {A[0][1], A[1][1], A[2][1]},
                                                {A[0][2], A[1][2], A[2][2]}};
    auto sol = span_coefficients(cols, rhs);
    if (!sol) throw Error("vertical_freq_system: inconsistent system");
    return {(*sol)[0], (*sol)[1], (*sol)[2]};
}

std::pair<NilPoint, NilPoint> fundamental_domain(const NilGroup& G, const NilPoint& g) {
    check_point(G, g);
    NilPoint frac(g.size()), lat(g.size());
    if (G.kind == NilGroup::Kind::heisenberg) {
        // (fa + la, fb + lb, fc + lc + fa lb) = (a, b, c)
        lat[0] = floor_q(g[0]);
        frac[0] = g[0] - lat[0];
        lat[1] = floor_q(g[1]);
        frac[1] = g[1] - lat[1];
        mpq_class rest = g[2] - frac[0] * lat[1];
        lat[2] = floor_q(rest);
        frac[2] = rest - lat[2];
    } else {
        for (size_t i = 0; i < g.size(); ++i) {
            lat[i] = floor_q(g[i]);
            frac[i] = g[i] - lat[i];
        }
    }
    return {frac, lat};
}

namespace {

std::vector<int64_t> horizontal_k(const NilGroup& G, const std::vector<int64_t>& k) {
    const int h = G.horizontal_dim();
    if (G.kind == NilGroup::Kind::heisenberg && k.size() == 3) {
        if (k[2] != 0) throw Error("horizontal character must vanish on the commutator subgroup");
        return {k[0], k[1]};
    }
    if (static_cast<int>(k.size()) != h) throw Error("horizontal character has wrong dimension");
    return k;
}

mpq_class pair(const std::vector<int64_t>& k, const NilPoint& x) {
    mpq_class s = 0;
    for (size_t i = 0; i < k.size(); ++i) s += mpq_class(mpz_class(static_cast<long>(k[i]))) * x[i];
    return s;
}

}  // namespace

BinomPoly horiz_char_apply(const NilGroup& G, const std::vector<int64_t>& k_in, const PolySeq2& s) {
    const auto k = horizontal_k(G, k_in);
    check_point(G, s.g0);
    check_point(G, s.g1);
    check_point(G, s.g2);
    if (!in_g2(G, s.g2)) throw Error("polyseq: g2 must lie in G_2");
    // The abelianised coordinates are additive, so k.psi(g(n)) is
    // k.g0 + binom(n,1) k.g1 + binom(n,2) k.g2.
    return BinomPoly::from_exact({pair(k, s.g0), pair(k, s.g1), pair(k, s.g2)});
}

std::optional<Obstruction> low_freq_obstruction(const NilGroup& G, const PolySeq2& s, int64_t N, int64_t K_max) {
    if (K_max < 1) throw Error("low_freq_obstruction: K_max must be >= 1");
    const int h = G.horizontal_dim();
    uint64_t count = 1;
    for (int i = 0; i < h; ++i) count *= static_cast<uint64_t>(2 * K_max + 1);
    check_budget("low_freq_obstruction", count * 64);

    // Canonical order: the first nonzero coordinate is positive and scans
    // 1..K; later coordinates run 0, 1, -1, 2, -2, ... (first one fastest
    // varying last). k and -k give the same norm, so only one is visited.
    auto zigzag = [](int64_t i) { return (i % 2 == 1) ? (i + 1) / 2 : -(i / 2); };
    std::optional<Obstruction> best;
    for (int p = 0; p < h; ++p)
        for (int64_t lead = 1; lead <= K_max; ++lead) {
            const int tail = h - p - 1;
            std::vector<int64_t> idx(static_cast<size_t>(tail), 0);
            while (true) {
                std::vector<int64_t> k(static_cast<size_t>(h), 0);
                k[p] = lead;
                for (int t = 0; t < tail; ++t) k[p + 1 + t] = zigzag(idx[t]);
                double norm = cinf_norm(horiz_char_apply(G, k, s), N);
                if (!best || norm < best->norm) best = Obstruction{k, norm};
                int t = tail - 1;
                while (t >= 0 && ++idx[t] > 2 * K_max) idx[t--] = 0;
                if (t < 0) break;
            }
        }
    if (best && best->norm <= 1) return best;
    return std::nullopt;
}

double equi_discrepancy(const NilGroup& G, const PolySeq2& s, const CharSpec& chr, int64_t N) {
    if (N < 1) throw Error("equi_discrepancy: N must be >= 1");
    check_budget("equi_discrepancy", static_cast<uint64_t>(N) * 32);
    std::vector<int64_t> k;
    std::vector<int> coords;
    if (chr.kind == CharSpec::Kind::horizontal) {
        k = horizontal_k(G, chr.k);
        for (int i = 0; i < G.horizontal_dim(); ++i) coords.push_back(i);
    } else {
        for (int i = 0; i < G.m; ++i)
            if (G.central[i]) coords.push_back(i);
        if (chr.k.size() != coords.size()) throw Error("vertical character has wrong dimension");
        k = chr.k;
    }
    std::vector<cplx> vals(static_cast<size_t>(N));
#pragma omp parallel for schedule(static)
    for (int64_t n = 1; n <= N; ++n) {
        auto [frac, lat] = fundamental_domain(G, polyseq_eval(G, s, mpz_class(static_cast<long>(n))));
        mpq_class phase = 0;
        for (size_t i = 0; i < coords.size(); ++i) phase += mpq_class(mpz_class(static_cast<long>(k[i]))) * frac[coords[i]];
        phase -= floor_q(phase);
        vals[n - 1] = e_of(phase.get_d());
    }
    return std::abs(pairwise_sum(vals)) / static_cast<double>(N);
}

TorusApprox torus_fejer_approx(const TorusFn& F, int d, double L, double eps, int64_t samples,
                               std::optional<int64_t> R_override) {
    if (d != 1 && d != 2) throw Error("torus_fejer_approx: d must be 1 or 2");
    if (!(eps > 0 && eps < 0.5)) throw Error("torus_fejer_approx: eps must be in (0, 1/2)");
    if (!(L >= 0)) throw Error("torus_fejer_approx: L must be >= 0");
    TorusApprox out;
    out.R = R_override ? *R_override
                       : std::max<int64_t>(1, static_cast<int64_t>(std::ceil(std::pow(kTorusFejerC * L * d / eps, 2))));
    if (out.R < 1) throw Error("torus_fejer_approx: R must be >= 1");
    const int64_t R = out.R;
    const int64_t n = samples > 0 ? samples : std::max<int64_t>(8 * R, 256);
    if (n < 2 * R) throw Error("torus_fejer_approx: need at least 2R samples per axis");
    const int64_t nf = 2 * R - 1;  // frequencies -R+1 .. R-1
    {
        const auto un = static_cast<uint64_t>(n), uf = static_cast<uint64_t>(nf);
        check_budget("torus_fejer_approx", d == 1 ? 4 * un * uf : 4 * un * un * uf + 4 * un * uf * uf);
    }
    std::vector<cplx> root(static_cast<size_t>(n));
    for (int64_t j = 0; j < n; ++j) root[j] = e_of(static_cast<double>(j) / n);
    auto rt = [&](int64_t xi, int64_t j) { return root[((xi * j) % n + n) % n]; };
    auto weight = [R](int64_t xi) { return 1.0 - static_cast<double>(std::abs(xi)) / R; };

    if (d == 1) {
        std::vector<cplx> f(static_cast<size_t>(n));
        for (int64_t j = 0; j < n; ++j) f[j] = F({static_cast<double>(j) / n});
        std::vector<cplx> c(static_cast<size_t>(nf));
#pragma omp parallel for schedule(static)
        for (int64_t i = 0; i < nf; ++i) {
            const int64_t xi = i - (R - 1);
            KahanSum s;
            for (int64_t j = 0; j < n; ++j) s.add(f[j] * rt(-xi, j));
            c[i] = weight(xi) * s.value() / static_cast<double>(n);
        }
        std::vector<double> err(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
        for (int64_t j = 0; j < n; ++j) {
            KahanSum s;
            for (int64_t i = 0; i < nf; ++i) s.add(c[i] * rt(i - (R - 1), j));
            err[j] = std::abs(s.value() - f[j]);
        }
        for (int64_t i = 0; i < nf; ++i) {
            out.coeffs[{i - (R - 1)}] = c[i];
            out.coeff_l1 += std::abs(c[i]);
        }
        out.sup_err = *std::max_element(err.begin(), err.end());
    } else {
        std::vector<cplx> f(static_cast<size_t>(n * n));
        for (int64_t a = 0; a < n; ++a)
            for (int64_t b = 0; b < n; ++b)
                f[a * n + b] = F({static_cast<double>(a) / n, static_cast<double>(b) / n});
        // A[a][xi2] = sum_b f[a][b] e(-xi2 b / n)
        std::vector<cplx> A(static_cast<size_t>(n * nf));
#pragma omp parallel for schedule(static)
        for (int64_t a = 0; a < n; ++a)
            for (int64_t i2 = 0; i2 < nf; ++i2) {
                KahanSum s;
                for (int64_t b = 0; b < n; ++b) s.add(f[a * n + b] * rt(-(i2 - (R - 1)), b));
                A[a * nf + i2] = s.value();
            }
        std::vector<cplx> c(static_cast<size_t>(nf * nf));
#pragma omp parallel for schedule(static)
        for (int64_t i1 = 0; i1 < nf; ++i1)
            for (int64_t i2 = 0; i2 < nf; ++i2) {
                KahanSum s;
                for (int64_t a = 0; a < n; ++a) s.add(A[a * nf + i2] * rt(-(i1 - (R - 1)), a));
                c[i1 * nf + i2] = weight(i1 - (R - 1)) * weight(i2 - (R - 1)) * s.value() /
                                  (static_cast<double>(n) * static_cast<double>(n));
            }
        // B[i1][b] = sum_xi2 c e(xi2 b / n); then back along the first axis.
        std::vector<cplx> B(static_cast<size_t>(nf * n));
#pragma omp parallel for schedule(static)
        for (int64_t i1 = 0; i1 < nf; ++i1)
            for (int64_t b = 0; b < n; ++b) {
                KahanSum s;
                for (int64_t i2 = 0; i2 < nf; ++i2) s.add(c[i1 * nf + i2] * rt(i2 - (R - 1), b));
                B[i1 * n + b] = s.value();
            }
        std::vector<double> err(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
        for (int64_t a = 0; a < n; ++a) {
            double m = 0;
            for (int64_t b = 0; b < n; ++b) {
                KahanSum s;
                for (int64_t i1 = 0; i1 < nf; ++i1) s.add(B[i1 * n + b] * rt(i1 - (R - 1), a));
                m = std::max(m, std::abs(s.value() - f[a * n + b]));
            }
            err[a] = m;
        }
        for (int64_t i1 = 0; i1 < nf; ++i1)
            for (int64_t i2 = 0; i2 < nf; ++i2) {
                const cplx v = c[i1 * nf + i2];
                if (v == cplx{}) continue;
                out.coeffs[{i1 - (R - 1), i2 - (R - 1)}] = v;
                out.coeff_l1 += std::abs(v);
            }
        out.sup_err = *std::max_element(err.begin(), err.end());
    }
    out.within_eps = out.sup_err <= eps;
    return out;
}

json nil_point_to_json(const NilGroup& G, const NilPoint& x) {
    auto num = [](const mpz_class& z) -> json {
        if (z.fits_slong_p()) return static_cast<int64_t>(z.get_si());
        return z.get_str();
    };
    json coords = json::array();
    for (auto& c : x) coords.push_back(json::array({num(c.get_num()), num(c.get_den())}));
    return {{"group", G.kind == NilGroup::Kind::heisenberg ? std::string("heisenberg3")
                                                             : "abelian" + std::to_string(G.m)},
            {"coords", coords}};
}

NilPoint nil_point_from_json(const json& j) {
    NilPoint x;
    for (auto& c : j.at("coords")) {
        auto part = [](const json& v) {
            return v.is_string() ? mpz_class(v.get<std::string>()) : mpz_class(static_cast<long>(v.get<int64_t>()));
        };
        mpz_class den = part(c.at(1));
        if (den == 0) throw Error("nil point: zero denominator");
        mpq_class q(part(c.at(0)), den);
        q.canonicalize();
        x.push_back(q);
    }
    return x;
}

json polyseq_to_json(const NilGroup& G, const PolySeq2& s) {
    return {{"g0", nil_point_to_json(G, s.g0)}, {"g1", nil_point_to_json(G, s.g1)}, {"g2", nil_point_to_json(G, s.g2)}};
}

}  // namespace proglab
