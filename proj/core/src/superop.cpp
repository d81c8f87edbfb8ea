// SPDX-License-Identifier: MIT

#include "opdiam/superop.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "opdiam/errors.hpp"
#include "opdiam/rng.hpp"

namespace opdiam {

namespace {

// Jacobi eigensolves and positivity sampling are skipped above this Choi
// dimension; the power-iteration estimate takes over for the cp flag.
constexpr std::size_t kEagerEigCap = 512;
constexpr int kPositivityProbes = 500;

ComplexMatrix map_identity_image(const ComplexMatrix& choi, std::size_t n, std::size_t m) {
    ComplexMatrix u(m, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < m; ++l) u(k, l) += choi(i * m + k, i * m + l);
    return u;
}

// Partial trace over the output factor: P[i,j] = tr(Phi(E_ij)).
ComplexMatrix output_trace_matrix(const ComplexMatrix& choi, std::size_t n, std::size_t m) {
    ComplexMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k) p(i, j) += choi(i * m + k, j * m + k);
    return p;
}

double max_deviation_from_scalar(const ComplexMatrix& a, cplx scalar) {
    double dev = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            dev = std::max(dev, std::abs(a(i, j) - (i == j ? scalar : cplx(0.0))));
    return dev;
}

ComplexMatrix apply_choi(const ComplexMatrix& choi, std::size_t n, std::size_t m,
                         const ComplexMatrix& a) {
    ComplexMatrix out(m, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out(k, l) += aij * choi(i * m + k, j * m + l);
        }
    }
    return out;
}

} // namespace

SuperOpFlags classify(const ComplexMatrix& choi, std::size_t dim_in, std::size_t dim_out) {
    const std::size_t n = dim_in;
    const std::size_t m = dim_out;
    const double scale = std::max(1.0, choi.max_abs());

    SuperOpFlags flags;
    flags.self_adjoint = choi.is_hermitian(kAtol * scale);

    const ComplexMatrix at_identity = map_identity_image(choi, n, m);
    const double unit_tol = kAtol * scale * double(n);
    flags.unital = max_deviation_from_scalar(at_identity, cplx(1.0)) <= unit_tol;
    const cplx c = at_identity.trace() / double(m);
    if (max_deviation_from_scalar(at_identity, c) <= unit_tol) flags.paraunital_scalar = c;

    const ComplexMatrix traces = output_trace_matrix(choi, n, m);
    const cplx k_scale = traces.trace() / double(n);
    if (max_deviation_from_scalar(traces, k_scale) <= kAtol * scale * double(m))
        flags.trace_scale = k_scale;

    bool scalar_blocks = true;
    for (std::size_t i = 0; i < n && scalar_blocks; ++i) {
        for (std::size_t j = 0; j < n && scalar_blocks; ++j) {
            cplx block_trace = 0.0;
            for (std::size_t k = 0; k < m; ++k) block_trace += choi(i * m + k, j * m + k);
            const cplx mean = block_trace / double(m);
            for (std::size_t k = 0; k < m && scalar_blocks; ++k)
                for (std::size_t l = 0; l < m; ++l) {
                    const cplx want = k == l ? mean : cplx(0.0);
                    if (std::abs(choi(i * m + k, j * m + l) - want) > kAtol * scale) {
                        scalar_blocks = false;
                        break;
                    }
                }
        }
    }
    flags.scalar_times_identity = scalar_blocks;

    if (flags.self_adjoint) {
        const ComplexMatrix herm = re_part(choi); // exact symmetrization of rounding
        if (choi.rows() <= kEagerEigCap) {
            const EigenDecomposition eig = hermitian_eig(herm);
            const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
            flags.cp = eig.values.front() >= -kAtol * std::max(1.0, top);
        } else {
            const ExtremalEigs ext = hermitian_extremal_eigs(herm);
            const double top = std::max(std::abs(ext.min), std::abs(ext.max));
            // Flag-grade estimate only; the loose tolerance reflects that.
            flags.cp = ext.min >= -1e-7 * std::max(1.0, top);
        }
    }

    if (!flags.self_adjoint) {
        flags.positive_sampled = false; // a positive map is self-adjoint
    } else if (flags.cp) {
        flags.positive_sampled = true;
    } else if (choi.rows() <= kEagerEigCap) {
        Rng rng(Rng::derive(0xC1A55151u, n * 131 + m));
        bool all_psd = true;
        for (int probe = 0; probe < kPositivityProbes && all_psd; ++probe) {
            ComplexMatrix v(n, 1);
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                v(i, 0) = rng.cgauss();
                norm += std::norm(v(i, 0));
            }
            norm = std::sqrt(norm);
            ComplexMatrix rank_one(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    rank_one(i, j) = v(i, 0) * std::conj(v(j, 0)) / (norm * norm);
            const ComplexMatrix image = re_part(apply_choi(choi, n, m, rank_one));
            const EigenDecomposition eig = hermitian_eig(image);
            const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
            if (eig.values.front() < -1e-8 * std::max(1.0, top)) all_psd = false;
        }
        flags.positive_sampled = all_psd;
    }

    return flags;
}

SuperOp SuperOp::from_choi(ComplexMatrix choi, std::size_t dim_in, std::size_t dim_out) {
    if (dim_in == 0 || dim_out == 0)
        throw DimensionMismatch("from_choi: dimensions must be positive");
    const std::size_t d = dim_in * dim_out;
    if (choi.rows() != d || choi.cols() != d)
        throw DimensionMismatch("from_choi: Choi matrix is " + std::to_string(choi.rows()) + "x" +
                                std::to_string(choi.cols()) + ", expected " + std::to_string(d) +
                                "x" + std::to_string(d));
    SuperOp out;
    out.dim_in_ = dim_in;
    out.dim_out_ = dim_out;
    out.choi_ = std::move(choi);
    out.flags_ = classify(out.choi_, dim_in, dim_out);
    return out;
}

SuperOp SuperOp::from_kraus(const std::vector<ComplexMatrix>& plus,
                            const std::vector<ComplexMatrix>& minus) {
    if (plus.empty() && minus.empty()) throw EmptyInput("from_kraus: no operators");
    const ComplexMatrix& first = plus.empty() ? minus.front() : plus.front();
    const std::size_t m = first.rows();
    const std::size_t n = first.cols();

    ComplexMatrix choi(n * m, n * m);
    auto accumulate = [&](const ComplexMatrix& op, double sign) {
        if (op.rows() != m || op.cols() != n)
            throw DimensionMismatch("from_kraus: operator shape mismatch");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < m; ++k)
                    for (std::size_t l = 0; l < m; ++l)
                        choi(i * m + k, j * m + l) += sign * op(k, i) * std::conj(op(l, j));
    };
    for (const auto& op : plus) accumulate(op, 1.0);
    for (const auto& op : minus) accumulate(op, -1.0);

    SuperOp out = from_choi(std::move(choi), n, m);
    if (minus.empty()) {
        // PSD by construction; record it even if the eigensolver verdict was
        // borderline, and certify positivity.
        out.flags_.cp = true;
        out.flags_.positive_sampled = true;
        out.flags_.positive_certified = true;
    }
    return out;
}

SuperOp SuperOp::from_transfer(const ComplexMatrix& transfer, std::size_t dim_in,
                               std::size_t dim_out) {
    const std::size_t n = dim_in;
    const std::size_t m = dim_out;
    if (transfer.rows() != m * m || transfer.cols() != n * n)
        throw DimensionMismatch("from_transfer: expected " + std::to_string(m * m) + "x" +
                                std::to_string(n * n) + ", got " + std::to_string(transfer.rows()) +
                                "x" + std::to_string(transfer.cols()));
    ComplexMatrix choi(n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                    choi(i * m + k, j * m + l) = transfer(k + m * l, i + n * j);
    return from_choi(std::move(choi), n, m);
}

ComplexMatrix SuperOp::apply(const ComplexMatrix& a) const {
    if (a.rows() != dim_in_ || a.cols() != dim_in_)
        throw DimensionMismatch("apply: argument is " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", map expects " +
                                std::to_string(dim_in_) + "x" + std::to_string(dim_in_));
    return apply_choi(choi_, dim_in_, dim_out_, a);
}

ComplexMatrix SuperOp::choi_block(std::size_t i, std::size_t j) const {
    ComplexMatrix block(dim_out_, dim_out_);
    for (std::size_t k = 0; k < dim_out_; ++k)
        for (std::size_t l = 0; l < dim_out_; ++l)
            block(k, l) = choi_(i * dim_out_ + k, j * dim_out_ + l);
    return block;
}

ComplexMatrix SuperOp::to_transfer() const {
    const std::size_t n = dim_in_;
    const std::size_t m = dim_out_;
    ComplexMatrix t(m * m, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                    t(k + m * l, i + n * j) = choi_(i * m + k, j * m + l);
    return t;
}

SuperOp& SuperOp::certify_positive() {
    flags_.positive_certified = true;
    return *this;
}

SuperOp compose(const SuperOp& after, const SuperOp& before) {
    if (after.dim_in() != before.dim_out())
        throw DimensionMismatch("compose: inner dimensions " + std::to_string(after.dim_in()) +
                                " vs " + std::to_string(before.dim_out()));
    const std::size_t n = before.dim_in();
    const std::size_t p = after.dim_out();
    ComplexMatrix choi(n * p, n * p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix image = after.apply(before.choi_block(i, j));
            for (std::size_t k = 0; k < p; ++k)
                for (std::size_t l = 0; l < p; ++l) choi(i * p + k, j * p + l) = image(k, l);
        }
    SuperOp out = SuperOp::from_choi(std::move(choi), n, p);
    if (after.flags().positive_certified && before.flags().positive_certified)
        out.certify_positive();
    return out;
}

SuperOp adjoint_map(const SuperOp& phi) {
    const std::size_t n = phi.dim_in();
    const std::size_t m = phi.dim_out();
    const ComplexMatrix& c = phi.choi();
    ComplexMatrix adj(m * n, m * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l)
                    adj(k * n + i, l * n + j) = std::conj(c(i * m + k, j * m + l));
    SuperOp out = SuperOp::from_choi(std::move(adj), m, n);
    if (phi.flags().positive_certified) out.certify_positive();
    return out;
}

SuperOp amplify(const SuperOp& phi, std::size_t k, std::size_t max_dim) {
    if (k == 0) throw DimensionMismatch("amplify: level must be >= 1");
    const std::size_t n = phi.dim_in();
    const std::size_t m = phi.dim_out();
    if (k * std::max(n, m) > max_dim)
        throw ResourceLimit("amplify: level " + std::to_string(k) + " takes dimension " +
                            std::to_string(k * std::max(n, m)) + " past the cap " +
                            std::to_string(max_dim));
    if (k == 1) return phi;

    const std::size_t big_n = k * n;
    const std::size_t big_m = k * m;
    const ComplexMatrix& c = phi.choi();
    ComplexMatrix big(big_n * big_m, big_n * big_m);
    for (std::size_t u = 0; u < k; ++u)
        for (std::size_t up = 0; up < k; ++up)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    for (std::size_t j = 0; j < m; ++j)
                        for (std::size_t jp = 0; jp < m; ++jp)
                            big((u * n + a) * big_m + u * m + j,
                                (up * n + b) * big_m + up * m + jp) = c(a * m + j, b * m + jp);

    // The blockwise map shares every classification flag with its base except
    // the scalar-functional shape, which survives amplification only for the
    // zero map; re-running the eager eigensolver here would be prohibitive.
    SuperOp out;
    out.dim_in_ = big_n;
    out.dim_out_ = big_m;
    out.choi_ = std::move(big);
    out.flags_ = phi.flags();
    out.flags_.scalar_times_identity = phi.choi().max_abs() <= kAtol;
    out.flags_.positive_certified = phi.flags().cp;
    if (!phi.flags().cp) out.flags_.positive_sampled.reset();
    return out;
}

KrausDecomposition choi_kraus(const SuperOp& phi, double atol) {
    if (!phi.flags().self_adjoint)
        throw NonSelfAdjoint("choi_kraus: Choi matrix is not Hermitian");
    const std::size_t n = phi.dim_in();
    const std::size_t m = phi.dim_out();
    const EigenDecomposition eig = hermitian_eig(re_part(phi.choi()));
    const double top =
        std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    const double cut = atol * std::max(1.0, top);

    auto reshape = [&](std::size_t col, double weight) {
        ComplexMatrix op(m, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < m; ++k) op(k, i) = weight * eig.vectors(i * m + k, col);
        return op;
    };

    KrausDecomposition out;
    for (std::size_t c = eig.values.size(); c-- > 0;) { // descending: largest plus first
        if (eig.values[c] > cut) out.ops_plus.push_back(reshape(c, std::sqrt(eig.values[c])));
    }
    for (std::size_t c = 0; c < eig.values.size(); ++c) { // ascending: most negative first
        if (eig.values[c] < -cut) out.ops_minus.push_back(reshape(c, std::sqrt(-eig.values[c])));
    }
    return out;
}

TraceTranslation trace_translate_cp(const SuperOp& phi) {
    if (!phi.flags().self_adjoint)
        throw NonSelfAdjoint("trace_translate_cp: map is not self-adjoint");
    const std::size_t n = phi.dim_in();
    const std::size_t m = phi.dim_out();

    TraceTranslation out;
    if (phi.flags().cp) {
        out.beta = 0.0;
        out.cp_map = phi;
        out.cp_map.certify_positive();
        return out;
    }

    const KrausDecomposition kraus = choi_kraus(phi);
    ComplexMatrix minus_at_identity(m, m);
    for (const auto& op : kraus.ops_minus) minus_at_identity += op * dagger(op);
    out.beta = double(m * m) * operator_norm(minus_at_identity);

    ComplexMatrix choi = phi.choi();
    for (std::size_t d = 0; d < choi.rows(); ++d) choi(d, d) += out.beta;
    out.cp_map = SuperOp::from_choi(std::move(choi), n, m);
    // Complete positivity holds by the translation bound, not only by the
    // eigensolver's verdict, so record it unconditionally.
    out.cp_map.flags_.cp = true;
    out.cp_map.flags_.positive_sampled = true;
    out.cp_map.certify_positive();
    return out;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t n) {
    std::vector<ComplexMatrix> basis;
    basis.reserve(n * n - 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ComplexMatrix x(n, n);
            x(i, j) = inv_sqrt2;
            x(j, i) = inv_sqrt2;
            basis.push_back(x);
            ComplexMatrix y(n, n);
            y(i, j) = cplx(0.0, inv_sqrt2);
            y(j, i) = cplx(0.0, -inv_sqrt2);
            basis.push_back(y);
        }
    }
    for (std::size_t r = 1; r < n; ++r) {
        ComplexMatrix d(n, n);
        const double norm = std::sqrt(double(r) * double(r + 1));
        for (std::size_t i = 0; i < r; ++i) d(i, i) = 1.0 / norm;
        d(r, r) = -double(r) / norm;
        basis.push_back(d);
    }
    return basis;
}

SectionTranslation section_translate(const SuperOp& phi) {
    const SuperOpFlags& flags = phi.flags();
    if (!flags.trace_scale)
        throw NotScaledTP("section_translate: tr(Phi(A)) is not a fixed multiple of tr(A)");
    if (!flags.paraunital_scalar)
        throw NotParaunital("section_translate: Phi(I) is not a scalar multiple of I");
    if (!flags.self_adjoint) throw NonSelfAdjoint("section_translate: map is not self-adjoint");

    const std::size_t n = phi.dim_in();
    const std::size_t m = phi.dim_out();
    const double c = flags.paraunital_scalar->real();
    const double k = flags.trace_scale->real();

    // A nonpositive paraunital scalar is shifted away first; the shift keeps
    // every precondition and is folded back into the returned gamma.
    const double alpha = c <= 0.0 ? std::abs(c) + 1.0 : 0.0;
    ComplexMatrix shifted_choi = phi.choi();
    if (alpha != 0.0)
        for (std::size_t d = 0; d < shifted_choi.rows(); ++d) shifted_choi(d, d) += alpha;
    const double c_shift = c + alpha * double(n);
    const double k_shift = k + alpha * double(m);

    const std::vector<ComplexMatrix> domain_basis = traceless_hermitian_basis(n);
    std::vector<ComplexMatrix> images; // orthonormalized images in M_m
    std::vector<ComplexMatrix> preimages;
    images.reserve(domain_basis.size());
    preimages.reserve(domain_basis.size());

    for (const ComplexMatrix& g : domain_basis) {
        ComplexMatrix w = re_part(apply_choi(shifted_choi, n, m, g));
        ComplexMatrix p = g;
        const double input_norm = std::sqrt(std::abs(hs_inner(w, w).real()));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t s = 0; s < images.size(); ++s) {
                const double proj = hs_inner(images[s], w).real();
                w -= proj * images[s];
                p -= proj * preimages[s];
            }
        }
        const double norm = std::sqrt(std::abs(hs_inner(w, w).real()));
        if (norm <= 1e-10 * std::max(1.0, input_norm)) continue;
        w *= cplx(1.0 / norm);
        p *= cplx(1.0 / norm);
        images.push_back(std::move(w));
        preimages.push_back(std::move(p));
    }
    if (images.size() < domain_basis.size())
        throw NullSpaceTooLarge("section_translate: map kills a non-scalar direction (rank " +
                                std::to_string(images.size()) + " of " +
                                std::to_string(domain_basis.size()) + " on trace-zero inputs)");

    // Left inverse on Hermitian arguments: project onto the image system and
    // map back through the tracked preimages; the identity direction returns
    // I_n / c; everything orthogonal to the image system maps to zero.
    auto left_inverse_herm = [&](const ComplexMatrix& x) {
        ComplexMatrix out(n, n);
        for (std::size_t s = 0; s < images.size(); ++s) {
            const double coeff = hs_inner(images[s], x).real();
            out += coeff * preimages[s];
        }
        const double id_coeff = x.trace().real() / (c_shift * double(m));
        for (std::size_t i = 0; i < n; ++i) out(i, i) += id_coeff;
        return out;
    };

    ComplexMatrix inverse_choi(m * n, m * n);
    for (std::size_t kk = 0; kk < m; ++kk)
        for (std::size_t ll = 0; ll < m; ++ll) {
            ComplexMatrix h(m, m);
            h(kk, ll) += 0.5;
            h(ll, kk) += 0.5;
            ComplexMatrix image = left_inverse_herm(h);
            if (kk != ll) {
                ComplexMatrix anti(m, m);
                anti(ll, kk) = cplx(0.0, 0.5);
                anti(kk, ll) = cplx(0.0, -0.5);
                image += cplx(0.0, 1.0) * left_inverse_herm(anti);
            }
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) inverse_choi(kk * n + i, ll * n + j) = image(i, j);
        }

    SuperOp psi = SuperOp::from_choi(std::move(inverse_choi), m, n);
    const TraceTranslation translated = trace_translate_cp(psi);
    const double beta = translated.beta;
    const double gamma_shift = -beta * k_shift / (1.0 / c_shift + beta * double(m));

    SectionTranslation out;
    out.gamma = alpha + gamma_shift;
    ComplexMatrix section_choi = phi.choi();
    for (std::size_t d = 0; d < section_choi.rows(); ++d) section_choi(d, d) += out.gamma;
    out.section = SuperOp::from_choi(std::move(section_choi), n, m);
    out.cp_left_inverse = translated.cp_map;

    // The construction is exact in exact arithmetic; a large residual here
    // means the inverse was computed across a nearly-degenerate image system.
    const SuperOp round_trip = compose(out.cp_left_inverse, out.section);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    const cplx want = (i == a && j == b) ? cplx(1.0) : cplx(0.0);
                    residual = std::max(residual,
                                        std::abs(round_trip.choi()(i * n + a, j * n + b) - want));
                }
    if (residual > 1e-6 * std::max(1.0, phi.choi().max_abs()))
        throw NullSpaceTooLarge("section_translate: image system too ill-conditioned (round-trip "
                                "residual " +
                                std::to_string(residual) + ")");
    return out;
}

} // namespace opdiam
