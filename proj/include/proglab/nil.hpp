#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "proglab/arith.hpp"
#include "proglab/report.hpp"

namespace proglab {

// Degree-2 filtered group. Heisenberg3 uses matrix-entry coordinates
// (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]]; G_2 is the c-axis.
// Abelian{m} is R^m, represented on rational points, with a designated
// subset of coordinates as G_2.
struct NilGroup {
    enum class Kind { abelian, heisenberg };
    Kind kind = Kind::heisenberg;
    int m = 3;
    std::vector<bool> central;  // coordinates spanning G_2

    static NilGroup heisenberg();
    // G_2 defaults to the whole group, which is a valid degree-2 filtration.
    static NilGroup abelian(int m, std::vector<bool> g2_coords = {});
    int horizontal_dim() const { return kind == Kind::heisenberg ? 2 : m; }
};

using NilPoint = std::vector<mpq_class>;

NilPoint nil_identity(const NilGroup& G);
NilPoint nil_mul(const NilGroup& G, const NilPoint& x, const NilPoint& y);
NilPoint nil_inv(const NilGroup& G, const NilPoint& x);
NilPoint nil_pow(const NilGroup& G, const NilPoint& x, const mpz_class& n);
NilPoint nil_commutator(const NilGroup& G, const NilPoint& x, const NilPoint& y);  // x y x^-1 y^-1
bool in_lattice(const NilPoint& x);
bool in_g2(const NilGroup& G, const NilPoint& x);
// max |psi(x y^-1)|; diagnostics only.
double nil_quasi_distance(const NilGroup& G, const NilPoint& x, const NilPoint& y);

struct PolySeq2 {
    NilPoint g0, g1, g2;
};
// g0 g1^n g2^binom(n, 2).
NilPoint polyseq_eval(const NilGroup& G, const PolySeq2& s, const mpz_class& n);

std::array<int64_t, 4> tau(int64_t x, int64_t y);

Report flag_span_check();

// Rank of a set of rational vectors, by exact elimination.
int rational_rank(std::vector<std::vector<mpq_class>> rows);
// Coefficients c with sum c_i basis_i = v, if v lies in the span.
std::optional<std::vector<mpq_class>> span_coefficients(const std::vector<std::vector<mpq_class>>& basis,
                                                        const std::vector<mpq_class>& v);

struct GTau {
    NilPoint g0, g1, g2;
};
std::optional<GTau> gtau_decompose(const NilGroup& G, const std::array<NilPoint, 4>& quad);
std::array<NilPoint, 4> gtau_compose(const NilGroup& G, const GTau& t);
bool constraint_check(const NilGroup& G, const PolySeq2& s, int64_t x, int64_t y);

std::array<mpq_class, 3> vertical_freq_system(const mpq_class& xi);

// g = frac * lat, lat integral, frac coordinates in [0, 1).
std::pair<NilPoint, NilPoint> fundamental_domain(const NilGroup& G, const NilPoint& g);

// Horizontal character: integer vector on the abelianised coordinates
// (a, b) for Heisenberg3; a third entry is accepted only if zero.
BinomPoly horiz_char_apply(const NilGroup& G, const std::vector<int64_t>& k, const PolySeq2& s);

struct Obstruction {
    std::vector<int64_t> k;
    double norm = 0;
};
std::optional<Obstruction> low_freq_obstruction(const NilGroup& G, const PolySeq2& s, int64_t N, int64_t K_max);

struct CharSpec {
    enum class Kind { horizontal, vertical };
    Kind kind = Kind::horizontal;
    std::vector<int64_t> k;  // horizontal frequency, or the vertical frequency on G_2 coordinates
};
// |E_{n in [N]} F(g(n) Gamma)| with F a horizontal character of the
// fundamental-domain representative, or e(xi . central coords) of it.
double equi_discrepancy(const NilGroup& G, const PolySeq2& s, const CharSpec& chr, int64_t N);

// Fejer-smoothed trigonometric approximation of F on T^d, d in {1, 2}.
// F is sampled on an n^d grid; coefficients come from the sampled DFT and
// the error is measured on the same grid.
struct TorusApprox {
    std::map<std::vector<int64_t>, cplx> coeffs;
    double coeff_l1 = 0;
    int64_t R = 0;
    double sup_err = 0;
    bool within_eps = false;
};
inline constexpr double kTorusFejerC = 0.25;
using TorusFn = std::function<cplx(const std::vector<double>&)>;
TorusApprox torus_fejer_approx(const TorusFn& F, int d, double L, double eps, int64_t samples = 0,
                               std::optional<int64_t> R_override = std::nullopt);

json nil_point_to_json(const NilGroup& G, const NilPoint& x);
NilPoint nil_point_from_json(const json& j);
json polyseq_to_json(const NilGroup& G, const PolySeq2& s);

}  // namespace proglab
