#ifndef GAUSSYM_FINITE_N_GRAM_SCHMIDT_HPP
#define GAUSSYM_FINITE_N_GRAM_SCHMIDT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gaussym/core/errors.hpp"
#include "gaussym/core/precision.hpp"
#include "gaussym/finite_n/skew_moments.hpp"

namespace gaussym::finite_n {

/// Skew-orthogonal polynomials R_0, ..., R_{N-1} in the monomial basis.
///
/// Row j of `coeffs` holds the coefficients of R_j (degree j). Even members are
/// monic; the pair normalization <R_{2k}, R_{2k+1}>_1 = 1 is carried by the odd member.
struct SkewBasis {
    int N = 0;
    unsigned mantissa_bits = default_mantissa_bits;
    std::vector<xreal> coeffs; // row-major N x N, lower triangular
    std::vector<xreal> leading;
    xreal defect = 0;          // max |<R_i, R_j>_1 - J_ij|
    double lost_bits = 0.0;    // worst cancellation over all pivots

    const xreal& coeff(int row, int col) const { return coeffs[static_cast<std::size_t>(row) * N + col]; }

    /// log |prod_l a_l|
    xreal log_abs_leading_product() const {
        precision_scope scope(mantissa_bits);
        xreal acc = 0;
        for (const auto& a : leading) acc += log(abs(a));
        return acc;
    }

    /// sign of prod_l a_l
    int leading_product_sign() const {
        int s = 1;
        for (const auto& a : leading)
            if (a < 0) s = -s;
        return s;
    }
};

struct GramSchmidtOptions {
    double defect_tolerance = 1e-20;
    // bits that must survive the worst pivot cancellation
    unsigned reserve_bits = 96;
};

namespace detail {

inline unsigned next_ladder_bits(double needed) {
    unsigned b = default_mantissa_bits;
    while (b < needed && b < 16 * max_mantissa_bits) b *= 2;
    return b;
}

} // namespace detail

/// Pairing matrix P = C M C^T of the polynomials in `coeffs` under the moment matrix `M`.
inline std::vector<xreal> skew_pairing(const std::vector<xreal>& coeffs, const std::vector<xreal>& M, int N) {
    std::vector<xreal> CM(static_cast<std::size_t>(N) * N, xreal(0));
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            xreal acc = 0;
            for (int k = 0; k <= r; ++k)
                acc += coeffs[static_cast<std::size_t>(r) * N + k] * M[static_cast<std::size_t>(k) * N + c];
            CM[static_cast<std::size_t>(r) * N + c] = acc;
        }
    std::vector<xreal> P(static_cast<std::size_t>(N) * N, xreal(0));
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            xreal acc = 0;
            for (int k = 0; k <= c; ++k)
                acc += CM[static_cast<std::size_t>(r) * N + k] * coeffs[static_cast<std::size_t>(c) * N + k];
            P[static_cast<std::size_t>(r) * N + c] = acc;
        }
    return P;
}

/// Largest deviation of P from the standard block form diag(J, ..., J), J = [[0, 1], [-1, 0]].
inline xreal standard_form_defect(const std::vector<xreal>& P, int N) {
    xreal worst = 0;
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            xreal target = 0;
            if (r % 2 == 0 && c == r + 1) target = 1;
            if (r % 2 == 1 && c == r - 1) target = -1;
            worst = std::max(worst, xreal(abs(P[static_cast<std::size_t>(r) * N + c] - target)));
        }
    return worst;
}

/// Symplectic Gram-Schmidt on a raw antisymmetric N x N matrix (N even).
///
/// Throws precision_escalation when a pivot <R_{2k}, x^{2k+1}-projection> loses
/// more than (bits - reserve_bits) bits to cancellation, or the final standard-form
/// defect misses the tolerance.
inline SkewBasis symplectic_gram_schmidt(const std::vector<xreal>& M, int N, unsigned bits,
                                         GramSchmidtOptions opt = {}) {
    if (N < 2 || N % 2 != 0) throw invalid_input("symplectic_gram_schmidt needs even N >= 2");
    if (M.size() != static_cast<std::size_t>(N) * N) throw invalid_input("moment matrix has the wrong size");

    precision_scope scope(bits);
    const auto at = [&](int i, int j) -> const xreal& { return M[static_cast<std::size_t>(i) * N + j]; };
    auto pair = [&](const std::vector<xreal>& p, const std::vector<xreal>& q) {
        xreal acc = 0;
        for (int i = 0; i < N; ++i) {
            if (p[i] == 0) continue;
            xreal row = 0;
            for (int j = 0; j < N; ++j)
                if (q[j] != 0) row += at(i, j) * q[j];
            acc += p[i] * row;
        }
        return acc;
    };
    auto abs_pair = [&](const std::vector<xreal>& p, const std::vector<xreal>& q) {
        xreal acc = 0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) acc += abs(p[i]) * abs(at(i, j)) * abs(q[j]);
        return acc;
    };

    SkewBasis basis;
    basis.N = N;
    basis.mantissa_bits = bits;
    basis.coeffs.assign(static_cast<std::size_t>(N) * N, xreal(0));
    basis.leading.assign(N, xreal(0));
    std::vector<std::vector<xreal>> R;
    R.reserve(N);
    double lost = 0.0;

    for (int k = 0; k < N / 2; ++k) {
        std::vector<xreal> e(N, xreal(0)), o(N, xreal(0));
        e[2 * k] = 1;
        o[2 * k + 1] = 1;
        for (int l = 0; l < k; ++l) {
            const auto& Re = R[2 * l];
            const auto& Ro = R[2 * l + 1];
            for (auto* v : {&e, &o}) {
                const xreal with_odd = pair(*v, Ro);
                const xreal with_even = pair(*v, Re);
                for (int i = 0; i < N; ++i) (*v)[i] += with_even * Ro[i] - with_odd * Re[i];
            }
        }
        const xreal c = pair(e, o);
        const xreal scale = abs_pair(e, o);
        if (c == 0 || scale == 0)
            throw precision_escalation("zero pivot at pair " + std::to_string(k), detail::next_ladder_bits(2.0 * bits));
        const double loss = (log2(scale) - log2(abs(c))).convert_to<double>();
        lost = std::max(lost, loss);
        if (loss > static_cast<double>(bits) - opt.reserve_bits) {
            const unsigned need = detail::next_ladder_bits(loss + opt.reserve_bits + 32);
            throw precision_escalation("pivot " + std::to_string(k) + " lost " + std::to_string(static_cast<int>(loss)) +
                                           " of " + std::to_string(bits) + " bits; need " + std::to_string(need),
                                       need);
        }
        for (auto& x : o) x /= c;
        R.push_back(std::move(e));
        R.push_back(std::move(o));
    }

    for (int r = 0; r < N; ++r) {
        for (int c = 0; c <= r; ++c) basis.coeffs[static_cast<std::size_t>(r) * N + c] = R[r][c];
        basis.leading[r] = R[r][r];
    }
    basis.lost_bits = lost;
    basis.defect = standard_form_defect(skew_pairing(basis.coeffs, M, N), N);
    if (basis.defect > xreal(opt.defect_tolerance)) {
        throw precision_escalation("standard-form defect " + to_decimal(basis.defect) + " above tolerance",
                                   detail::next_ladder_bits(2.0 * bits));
    }
    return basis;
}

inline SkewBasis symplectic_gram_schmidt(const SkewMomentMatrix& M, GramSchmidtOptions opt = {}) {
    return symplectic_gram_schmidt(M.entries, M.N, M.mantissa_bits, opt);
}

} // namespace gaussym::finite_n

#endif
