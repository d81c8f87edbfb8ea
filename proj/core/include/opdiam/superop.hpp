// SPDX-License-Identifier: MIT
// Linear maps between matrix algebras, stored canonically as Choi matrices.
// Covers construction from Choi/Kraus/transfer data, classification flags,
// blockwise amplification, the Kraus sign-split, the trace-translation
// constructions, a library of named example maps, and seeded random
// ensembles for property tests.
//
// Conventions, fixed once and round-trip tested:
//   Choi block (i,j) is the image of the matrix unit E_ij, i.e.
//     choi[i*m + k, j*m + l] = Phi(E_ij)[k, l]      for Phi : M_n -> M_m.
//   Vectorization is column-stacking, vec(A)[i + rows*j] = A[i, j]; the
//   transfer matrix satisfies vec(Phi(A)) = T vec(A) with
//     T[k + m*l, i + n*j] = choi[i*m + k, j*m + l].
//   Amplification acts blockwise in first-factor-outer order: an element of
//   M_k(M_n) is indexed by (u*n + a) and [A_uv] maps to [Phi(A_uv)].

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opdiam/eig.hpp"
#include "opdiam/matrix.hpp"

namespace opdiam {

class SuperOp;
struct TraceTranslation;

struct SuperOpFlags {
    bool self_adjoint = false; // Phi(A*) = Phi(A)*, i.e. Choi Hermitian
    bool unital = false;       // Phi(I_n) = I_m
    std::optional<cplx> paraunital_scalar; // c with Phi(I_n) = c I_m
    std::optional<cplx> trace_scale;       // k with tr(Phi(A)) = k tr(A)
    bool cp = false;                       // Choi PSD within tolerance
    std::optional<bool> positive_sampled;  // Phi(vv*) PSD on sampled vectors
    // Positivity established by construction (CP, or a constructor that is
    // provably positive). Only this flag, never the sampled one, may justify
    // upper-bound certificates.
    bool positive_certified = false;
    // Phi = f(.) I_m for a linear functional f: every Choi block scalar.
    bool scalar_times_identity = false;
};

// Classification computed from the Choi matrix. The CP eigensolve switches
// from Jacobi to a power-iteration estimate above Choi dimension 512, and
// positivity sampling (500 rank-one probes) is skipped there as well.
SuperOpFlags classify(const ComplexMatrix& choi, std::size_t dim_in, std::size_t dim_out);

class SuperOp {
  public:
    SuperOp() = default;

    // The Choi matrix must be (n*m) x (n*m). Flags are classified eagerly;
    // a constructor that guarantees positivity follows up with
    // certify_positive() (classify never certifies positivity on its own).
    static SuperOp from_choi(ComplexMatrix choi, std::size_t dim_in, std::size_t dim_out);
    // Phi(A) = sum K A K* over plus minus sum L A L* over minus. All ops m x n.
    static SuperOp from_kraus(const std::vector<ComplexMatrix>& plus,
                              const std::vector<ComplexMatrix>& minus = {});
    // Transfer matrix (m*m) x (n*n) in the column-stacking convention.
    static SuperOp from_transfer(const ComplexMatrix& transfer, std::size_t dim_in,
                                 std::size_t dim_out);

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    const ComplexMatrix& choi() const { return choi_; }
    const SuperOpFlags& flags() const { return flags_; }

    ComplexMatrix apply(const ComplexMatrix& a) const;
    ComplexMatrix choi_block(std::size_t i, std::size_t j) const; // Phi(E_ij)
    ComplexMatrix to_transfer() const;

    // Marks positivity established by construction; returns *this for
    // constructor chaining in the named-example table.
    SuperOp& certify_positive();

  private:
    std::size_t dim_in_ = 0;
    std::size_t dim_out_ = 0;
    ComplexMatrix choi_;
    SuperOpFlags flags_;

    // These two constructors know more than the classifier can: amplify
    // inherits flags analytically instead of re-solving a large Choi
    // eigenproblem, and the trace translation is CP by theorem even when the
    // eigensolver verdict is borderline.
    friend SuperOp amplify(const SuperOp& phi, std::size_t k, std::size_t max_dim);
    friend TraceTranslation trace_translate_cp(const SuperOp& phi);
};

// after(before(A)); dimensions must chain. Flags re-classified.
SuperOp compose(const SuperOp& after, const SuperOp& before);

// Adjoint with respect to the Hilbert-Schmidt pairing:
// tr(Phi(A)* B) = tr(A* adjoint_map(Phi)(B)).
SuperOp adjoint_map(const SuperOp& phi);

// Blockwise amplification [A_uv] -> [Phi(A_uv)] on M_k(M_n). Throws
// ResourceLimit when k * max(n, m) exceeds max_dim. Flags are inherited
// analytically (they are k-invariant) instead of re-classified.
SuperOp amplify(const SuperOp& phi, std::size_t k, std::size_t max_dim = 64);

struct KrausDecomposition {
    std::vector<ComplexMatrix> ops_plus;
    std::vector<ComplexMatrix> ops_minus;
};

// Eigenvalue sign-split of the Choi matrix: eigenvalue t with unit
// eigenvector reshaped to K (m x n, column-stacking) contributes sqrt(|t|) K
// to ops_plus when t > atol, to ops_minus when t < -atol. Throws
// NonSelfAdjoint unless the Choi matrix is Hermitian.
KrausDecomposition choi_kraus(const SuperOp& phi, double atol = kAtol);

struct TraceTranslation {
    double beta = 0.0;
    SuperOp cp_map; // Phi + beta tr(.) I_m, PSD Choi
};

// beta = m^2 ||Phi_minus(I_n)|| makes Phi + beta tr(.) I_m completely
// positive (the norm of a CP map is attained at the identity). beta = 0 when
// Phi is already CP. Throws NonSelfAdjoint.
TraceTranslation trace_translate_cp(const SuperOp& phi);

struct SectionTranslation {
    double gamma = 0.0;
    SuperOp section;         // Phi + gamma tr(.) I_m
    SuperOp cp_left_inverse; // Psi_cp, CP with Psi_cp(section(A)) = A
};

// Builds the left inverse of Phi on its image operator system (zero-extended
// over a Hermitian basis complement), trace-translates it to a CP map, and
// returns gamma with compose(cp_left_inverse, section) = id. Precondition
// checks in order: scaled trace-preserving (NotScaledTP), paraunital
// (NotParaunital), self-adjoint (NonSelfAdjoint), injectivity on the
// trace-zero Hermitian subspace (NullSpaceTooLarge). A paraunital scalar
// c <= 0 is first shifted away by (|c|+1) tr(.) I_m; the shift is folded
// into the returned gamma.
SectionTranslation section_translate(const SuperOp& phi);

// Orthonormal basis of the trace-zero Hermitian subspace of M_n under the
// real pairing <A,B> = tr(AB): off-diagonal pairs (E_ij+E_ji)/sqrt(2),
// i(E_ij-E_ji)/sqrt(2), then diagonal diag(1,..,1,-r,0,..)/sqrt(r(r+1)).
// Shared by section_translate and the seminorm optimizers.
std::vector<ComplexMatrix> traceless_hermitian_basis(std::size_t n);

// Named example maps. Fixed-dimension ids accept n = 0 (default) or their
// own dimension; parametric ids accept any n >= 2 (corner: even n).
//   diambound       M_2 -> M_2   [[a,b],[c,d]] -> diag((a+b), (d-b))/sqrt(2)
//   corner          M_n -> M_n   keep the upper-right n/2 block
//   transpose       M_n -> M_n   A -> A^T
//   choi_map        M_n -> M_n   A -> n tr(A) I - A
//   id              M_n -> M_n   identity
//   id_plus_trace   M_n -> M_n   A -> A + tr(A) I
//   depolarizing    M_n -> M_n   A -> (A + tr(A) I / n) / 2
//   final_psi       M_n -> M_n   A -> A^T/n^2 + (n^2-1)/n^3 tr(A) I
//   final_phi       M_n -> M_n   A -> n^2 A^T - (n^2-1)/n tr(A) I
//   counterexample  M_2 -> M_2   [[a,b],[c,d]] -> [[a-d,b],[c,a+d]]
//   paulsen         M_4 -> M_4   X -> [[tr(X11)/2 I, X12^T],[X21^T, tr(X22)/2 I]]
//   trig            M_3 -> M_2   A -> [[tr(A), 2 tr(S*A)],[2 tr(SA), tr(A)]]/3,
//                                S the cyclic shift
// Throws UnknownExample for unrecognized ids or dimension mismatches.
SuperOp named_example(const std::string& id, std::size_t n = 0);
const std::vector<std::string>& named_example_ids();

// Seeded random ensembles; deterministic per (kind, n, m, seed).
//   hermitian_choi: Choi = Hermitian part of a Ginibre draw (self-adjoint map)
//   ginibre_cp:     Choi = G G* / (n m) (completely positive)
//   unital_channel: A -> V*(A tensor I_d)V for a random isometry V (unital CP)
//   ucp_bijection:  (1-t) id + t * unital_channel, t halved from 0.2 until
//                   the transfer matrix is invertible (requires m = n)
// Throws ResourceLimit when max(n, m) exceeds max_dim and UnknownExample for
// an unrecognized kind.
SuperOp random_superop(const std::string& kind, std::size_t n, std::size_t m,
                       std::uint64_t seed, std::size_t max_dim = 64);

} // namespace opdiam
