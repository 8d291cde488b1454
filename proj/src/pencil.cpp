#include "canon/pencil.hpp"

#include <algorithm>
#include <numeric>

#include "canon/errors.hpp"

namespace canon {

namespace {

Exponent unit_exponent(std::size_t n, std::size_t i) {
    Exponent e(n, 0);
    e[i] = 1;
    return e;
}

Fp factorial(std::size_t n, std::uint32_t p) {
    Fp r(1, p);
    for (std::size_t k = 2; k <= n; ++k) r *= Fp(k, p);
    return r;
}

}  // namespace

PencilData build_pencil(const CurveContext& ctx, const Matrix& V) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    if (V.rows() != 2 || V.cols() != g) throw std::invalid_argument("build_pencil: V must be 2 x g");
    Echelon ev = rref(V);
    if (ev.rank() != 2) throw InadmissiblePencil("V is not 2-dimensional");

    PencilData pd;
    pd.V = ev.reduced;
    for (std::size_t j = 0; j < g; ++j)
        if (std::find(ev.pivots.begin(), ev.pivots.end(), j) == ev.pivots.end()) pd.complement.push_back(j);

    const GradedPiece& r2 = ctx.piece(2);
    const GradedPiece& r3 = ctx.piece(3);
    const auto& t2 = monomials(g, 2);
    Matrix products(p, 0, r3.dim());
    for (std::size_t r = 0; r < 2; ++r) {
        Form s = Form::linear(pd.V.row(r));
        for (std::size_t m : r2.standard) products.append_row(r3.reduction * (s * Form::monomial(p, t2[m], Fp(1, p))).coeffs());
    }
    auto ker = kernel_basis(products);
    pd.product_rank = r3.dim() - ker.size();
    if (ker.size() != 1)
        throw InadmissiblePencil("V.R_2 has codimension " + std::to_string(ker.size()) + " in R_3");
    pd.vbar = normalize_first_nonzero(ker[0]);
    pd.functional = r3.reduction.transpose() * pd.vbar;
    return pd;
}

Fp trilinear(const PencilData& pencil, const Vec& s, const Vec& t, const Vec& u) {
    const std::size_t g = s.size();
    const std::uint32_t p = s[0].prime();
    const auto& t3 = monomials(g, 3);
    Fp acc(0, p);
    Exponent e(g, 0);
    for (std::size_t i = 0; i < g; ++i) {
        if (s[i].is_zero()) continue;
        for (std::size_t j = 0; j < g; ++j) {
            if (t[j].is_zero()) continue;
            for (std::size_t k = 0; k < g; ++k) {
                if (u[k].is_zero()) continue;
                std::fill(e.begin(), e.end(), 0);
                ++e[i];
                ++e[j];
                ++e[k];
                acc += s[i] * t[j] * u[k] * pencil.functional[t3.index_of(e)];
            }
        }
    }
    return acc;
}

Vec reduce_mod_pencil(const PencilData& pencil, const Vec& w) {
    Vec r = w;
    for (std::size_t row = 0; row < 2; ++row) {
        Vec v = pencil.V.row(row);
        std::size_t pivot = 0;
        while (v[pivot].is_zero()) ++pivot;
        r = sub(r, scale(v, r[pivot]));
    }
    return r;
}

Form psi_cubic(const PencilData& pencil) {
    const std::uint32_t p = pencil.V.prime();
    const std::size_t g = pencil.V.cols();
    const std::size_t n = pencil.complement.size();
    const auto& tab = monomials(n, 3);
    const auto& t3 = monomials(g, 3);
    Form out(p, n, 3);
    for (std::size_t k = 0; k < tab.size(); ++k) {
        Exponent full(g, 0);
        Fp multinomial = factorial(3, p);
        for (std::size_t a = 0; a < n; ++a) {
            full[pencil.complement[a]] = tab[k][a];
            multinomial /= factorial(tab[k][a], p);
        }
        out.coeffs()[k] = multinomial * pencil.functional[t3.index_of(full)];
    }
    return out;
}

Form hessian_determinant(const Form& f) {
    const std::size_t n = f.nvars();
    if (n > 4 || f.degree() < 2) throw std::invalid_argument("hessian_determinant: unsupported size");
    std::vector<std::vector<Form>> h;
    for (std::size_t i = 0; i < n; ++i) {
        h.emplace_back();
        for (std::size_t j = 0; j < n; ++j) h[i].push_back(f.partial(i).partial(j));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Form det(f.prime(), n, n * (f.degree() - 2));
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Form term = h[0][perm[0]];
        for (std::size_t i = 1; i < n; ++i) term = term * h[i][perm[i]];
        det = inversions % 2 ? det - term : det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

CupGram cup_gram(const CurveContext& ctx, const PencilData& pencil, const Vec& w) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    const auto& t3 = monomials(g, 3);
    CupGram cg{w, Matrix(p, g, g), 0};
    Exponent e(g, 0);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            Fp acc(0, p);
            for (std::size_t k = 0; k < g; ++k) {
                if (w[k].is_zero()) continue;
                std::fill(e.begin(), e.end(), 0);
                ++e[i];
                ++e[j];
                ++e[k];
                acc += w[k] * pencil.functional[t3.index_of(e)];
            }
            cg.gram(i, j) = acc;
            cg.gram(j, i) = acc;
        }
    cg.corank = g - rank(cg.gram);
    return cg;
}

Matrix cup_gram_via_classes(const CurveContext& ctx, const PencilData& pencil, const Vec& w) {
    const std::uint32_t p = ctx.prime();
    const std::size_t g = ctx.nvars();
    RingClass wc = ctx.class_of(Form::linear(w));
    std::vector<RingClass> z;
    for (std::size_t i = 0; i < g; ++i) z.push_back(ctx.class_of(Form::monomial(p, unit_exponent(g, i), Fp(1, p))));
    Matrix out(p, g, g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) out(i, j) = dot(pencil.vbar, ctx.coordinates(multiply(multiply(wc, z[i]), z[j])));
    return out;
}

Matrix complement_gram(const PencilData& pencil, const CupGram& cup) {
    return cup.gram.select_rows(pencil.complement).select_cols(pencil.complement);
}

bool hessian_psi_membership(const CurveContext& ctx, const PencilData& pencil, const Vec& w) {
    return determinant(complement_gram(pencil, cup_gram(ctx, pencil, w))).is_zero();
}

}  // namespace canon
