#include <algorithm>

#include "proglab/nil.hpp"
#include "proglab/verify.hpp"
#include "verify_util.hpp"

namespace proglab {

namespace {

mpq_class random_q(Rng& rng, int64_t num = 50, int64_t den = 12) {
    mpq_class q(static_cast<long>(rng.uniform_int(-num, num)), static_cast<unsigned long>(rng.uniform_int(1, den)));
    q.canonicalize();
    return q;
}

NilPoint random_point(const NilGroup& G, Rng& rng) {
    NilPoint x(static_cast<size_t>(G.m));
    for (auto& c : x) c = random_q(rng);
    return x;
}

NilPoint random_g2_point(const NilGroup& G, Rng& rng) {
    NilPoint x = nil_identity(G);
    for (int i = 0; i < G.m; ++i)
        if (G.central[i]) x[i] = random_q(rng);
    return x;
}

PolySeq2 random_seq(const NilGroup& G, Rng& rng) {
    return {random_point(G, rng), random_point(G, rng), random_g2_point(G, rng)};
}

NilGroup random_group(Rng& rng) {
    switch (rng.uniform_int(0, 2)) {
        case 0: return NilGroup::heisenberg();
        case 1: return NilGroup::abelian(2);
        default: return NilGroup::abelian(3, {false, true, true});
    }
}

// Fit g0 g1^n g2^binom(n,2) through the values at n = 0, 1, 2.
std::optional<PolySeq2> fit(const NilGroup& G, const NilPoint& p0, const NilPoint& p1, const NilPoint& p2) {
    PolySeq2 s;
    s.g0 = p0;
    s.g1 = nil_mul(G, nil_inv(G, p0), p1);
    s.g2 = nil_mul(G, nil_inv(G, nil_mul(G, s.g0, nil_pow(G, s.g1, 2))), p2);
    if (!in_g2(G, s.g2)) return std::nullopt;
    return s;
}

}  // namespace

Report constraint_suite(int constraint_trials, int closure_trials, uint64_t seed) {
    Report rep;
    rep.name = "constraint";
    rep.inputs = {{"constraint_trials", constraint_trials}, {"closure_trials", closure_trials}, {"seed", seed}};
    const Rng root(seed);

    std::vector<char> ok(static_cast<size_t>(constraint_trials), 0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < constraint_trials; ++t) {
        Rng rng = root.split(static_cast<uint64_t>(t));
        const NilGroup G = t % 4 == 3 ? NilGroup::abelian(2) : NilGroup::heisenberg();
        ok[t] = constraint_check(G, random_seq(G, rng), rng.uniform_int(-20, 20), rng.uniform_int(-20, 20));
    }
    const auto c_fail = std::count(ok.begin(), ok.end(), 0);
    rep.check("orbit_constraint_holds", c_fail == 0, c_fail, 0, "failures over random exact-rational (seq, x, y)");

    std::vector<char> closed(static_cast<size_t>(closure_trials), 0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < closure_trials; ++t) {
        Rng rng = root.split(static_cast<uint64_t>(constraint_trials + t));
        const NilGroup G = NilGroup::heisenberg();
        auto a = gtau_compose(G, {random_point(G, rng), random_point(G, rng), random_g2_point(G, rng)});
        auto b = gtau_compose(G, {random_point(G, rng), random_point(G, rng), random_g2_point(G, rng)});
        std::array<NilPoint, 4> prod, inv;
        for (int i = 0; i < 4; ++i) {
            prod[i] = nil_mul(G, a[i], b[i]);
            inv[i] = nil_inv(G, a[i]);
        }
        closed[t] = gtau_decompose(G, prod).has_value() && gtau_decompose(G, inv).has_value();
    }
    const auto cl_fail = std::count(closed.begin(), closed.end(), 0);
    rep.check("gtau_closed_under_products_and_inverses", cl_fail == 0, cl_fail, 0);

    // Perturbing the last entry off the constraint surface must be detected.
    Rng rng = root.split(~uint64_t{0});
    int64_t missed = 0;
    const NilGroup H = NilGroup::heisenberg();
    for (int t = 0; t < 200; ++t) {
        auto q = gtau_compose(H, {random_point(H, rng), random_point(H, rng), random_g2_point(H, rng)});
        mpq_class bump = 0;
        while (bump == 0) bump = random_q(rng);
        q[3][static_cast<size_t>(rng.uniform_int(0, 2))] += bump;
        if (gtau_decompose(H, q)) ++missed;
    }
    rep.check("perturbation_rejected", missed == 0, missed, 0);

    bool vert_ok = true;
    for (int t = 0; t < 50; ++t) {
        mpq_class xi = t == 0 ? mpq_class(1) : t == 1 ? mpq_class(0) : random_q(rng);
        auto v = vertical_freq_system(xi);
        vert_ok = vert_ok && v[0] == -9 * xi && v[1] == 8 * xi && v[2] == 2 * xi;
    }
    rep.check("vertical_system_solution", vert_ok, vert_ok, true, "(-9 xi, 8 xi, 2 xi), determinant 1");
    rep.absorb(flag_span_check());
    return rep;
}

Report verify_nil(uint64_t seed) {
    Report rep;
    rep.name = "nil";
    rep.inputs = {{"seed", seed}};
    Rng rng(seed);

    int64_t axiom_bad = 0;
    for (int t = 0; t < 2000; ++t) {
        const NilGroup G = random_group(rng);
        auto x = random_point(G, rng), y = random_point(G, rng), z = random_point(G, rng);
        const auto e = nil_identity(G);
        const bool assoc = nil_mul(G, nil_mul(G, x, y), z) == nil_mul(G, x, nil_mul(G, y, z));
        const bool unit = nil_mul(G, x, e) == x && nil_mul(G, e, x) == x;
        const bool inv = nil_mul(G, x, nil_inv(G, x)) == e && nil_mul(G, nil_inv(G, x), x) == e;
        const int64_t n = rng.uniform_int(-6, 6);
        NilPoint rep_mul = e;
        for (int64_t i = 0; i < std::abs(n); ++i) rep_mul = nil_mul(G, rep_mul, n > 0 ? x : nil_inv(G, x));
        const bool pw = nil_pow(G, x, n) == rep_mul;
        const bool comm = in_g2(G, nil_commutator(G, x, y));
        if (!(assoc && unit && inv && pw && comm)) ++axiom_bad;
    }
    rep.check("group_axioms", axiom_bad == 0, axiom_bad, 0, "associativity, unit, inverse, powers, commutators in G_2");

    // Second differences of a degree-2 sequence lie in G_2, third ones vanish.
    int64_t deriv_bad = 0;
    for (int t = 0; t < 100; ++t) {
        const NilGroup G = random_group(rng);
        const auto s = random_seq(G, rng);
        auto at = [&](int64_t n) { return polyseq_eval(G, s, mpz_class(static_cast<long>(n))); };
        auto d1 = [&](int64_t n) { return nil_mul(G, nil_inv(G, at(n)), at(n + 1)); };
        auto d2 = [&](int64_t n) { return nil_mul(G, nil_inv(G, d1(n)), d1(n + 1)); };
        for (int64_t n = -20; n <= 20; ++n) {
            const auto a = d2(n);
            if (!in_g2(G, a) || nil_mul(G, nil_inv(G, a), d2(n + 1)) != nil_identity(G)) {
                ++deriv_bad;
                break;
            }
        }
    }
    rep.check("sequence_differences", deriv_bad == 0, deriv_bad, 0);

    rep.absorb(constraint_suite(300, 1000, rng.next()));

    int64_t fd_bad = 0;
    for (int t = 0; t < 500; ++t) {
        const NilGroup G = random_group(rng);
        auto g = random_point(G, rng);
        auto [frac, lat] = fundamental_domain(G, g);
        bool ok = in_lattice(lat) && nil_mul(G, frac, lat) == g;
        for (const auto& c : frac) ok = ok && c >= 0 && c < 1;
        if (!ok) ++fd_bad;
    }
    {
        const NilGroup G = NilGroup::heisenberg();
        auto [f1, l1] = fundamental_domain(G, {0, 0, mpq_class(5, 2)});
        auto [f2, l2] = fundamental_domain(G, {mpq_class(3, 2), 0, 0});
        if (f1 != NilPoint{0, 0, mpq_class(1, 2)} || l1 != NilPoint{0, 0, 2}) ++fd_bad;
        if (f2 != NilPoint{mpq_class(1, 2), 0, 0} || l2 != NilPoint{1, 0, 0}) ++fd_bad;
    }
    rep.check("fundamental_domain", fd_bad == 0, fd_bad, 0);

    // Horizontal characters are homomorphisms: compare on a pointwise product, refitted.
    int64_t hom_bad = 0;
    for (int t = 0; t < 200; ++t) {
        const NilGroup G = NilGroup::heisenberg();
        const auto s = random_seq(G, rng), u = random_seq(G, rng);
        auto pt = [&](int64_t n) {
            const mpz_class z(static_cast<long>(n));
            return nil_mul(G, polyseq_eval(G, s, z), polyseq_eval(G, u, z));
        };
        auto prod = fit(G, pt(0), pt(1), pt(2));
        if (!prod) {
            ++hom_bad;
            continue;
        }
        bool ok = true;
        for (int64_t n = -10; n <= 10; ++n) ok = ok && polyseq_eval(G, *prod, mpz_class(static_cast<long>(n))) == pt(n);
        const std::vector<int64_t> k = {rng.uniform_int(-5, 5), rng.uniform_int(-5, 5)};
        auto a = horiz_char_apply(G, k, s), b = horiz_char_apply(G, k, u), c = horiz_char_apply(G, k, *prod);
        for (int64_t n = -10; n <= 10; ++n) {
            const mpz_class z(static_cast<long>(n));
            ok = ok && c.eval_exact(z) == a.eval_exact(z) + b.eval_exact(z);
        }
        if (!ok) ++hom_bad;
    }
    rep.check("horizontal_character_homomorphism", hom_bad == 0, hom_bad, 0);

    {
        const NilGroup G = NilGroup::heisenberg();
        PolySeq2 half{nil_identity(G), {mpq_class(1, 2), 0, 0}, nil_identity(G)};
        auto ob = low_freq_obstruction(G, half, 1000, 5);
        const bool half_ok = ob && ob->k == std::vector<int64_t>{2, 0} && ob->norm == 0;
        PolySeq2 id{nil_identity(G), nil_identity(G), nil_identity(G)};
        auto oi = low_freq_obstruction(G, id, 1000, 5);
        const bool id_ok = oi && oi->k == std::vector<int64_t>{1, 0} && oi->norm == 0;
        // An irrational-looking slope on a one-dimensional torus has no low-frequency obstruction.
        const NilGroup A = NilGroup::abelian(1);
        PolySeq2 irr{nil_identity(A), {mpq_class(std::sqrt(2.0) - 1)}, nil_identity(A)};
        const bool irr_ok = !low_freq_obstruction(A, irr, 1000, 5).has_value();
        rep.check("low_frequency_examples", half_ok && id_ok && irr_ok,
                  json{{"half", half_ok}, {"identity", id_ok}, {"irrational", irr_ok}}, nullptr);
    }

    {
        // Golden-ratio slope: F_31 / F_30.
        const NilGroup G = NilGroup::heisenberg();
        PolySeq2 s{nil_identity(G), {mpq_class(1346269, 832040), 0, 0}, nil_identity(G)};
        const double disc = equi_discrepancy(G, s, {CharSpec::Kind::horizontal, {1, 0}}, 1000);
        rep.check("golden_ratio_equidistribution", disc <= 0.02, disc, 0.02);
        PolySeq2 rat{nil_identity(G), {mpq_class(1, 3), 0, 0}, nil_identity(G)};
        const double stuck = equi_discrepancy(G, rat, {CharSpec::Kind::horizontal, {3, 0}}, 999);
        rep.check("rational_slope_not_equidistributed", std::fabs(stuck - 1) <= 1e-12, stuck, 1);
    }

    {
        auto dist = [](double x) { return std::min(x, 1 - x); };
        auto t1 = torus_fejer_approx([&](const std::vector<double>& x) { return cplx(dist(x[0])); }, 1, 1, 0.05);
        auto t2 = torus_fejer_approx([&](const std::vector<double>& x) { return cplx(dist(x[0]) + dist(x[1])); }, 2,
                                     1, 0.05);
        rep.check("torus_fejer_1d", t1.within_eps, t1.sup_err, 0.05, "R = " + std::to_string(t1.R));
        rep.check("torus_fejer_2d", t2.within_eps, t2.sup_err, 0.05, "R = " + std::to_string(t2.R));
        // A pure character keeps its own coefficient damped by the Fejer weight 1 - 1/R.
        auto te = torus_fejer_approx([](const std::vector<double>& x) { return e_of(x[0]); }, 1, 1, 0.2, 0, 10);
        const double c1 = std::abs(te.coeffs[{1}]);
        rep.check("torus_fejer_character", std::fabs(c1 - 0.9) <= 1e-12, c1, 0.9);
    }
    return rep;
}

}  // namespace proglab
