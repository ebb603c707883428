#pragma once

#include "nchrr/twisted.hpp"

namespace nchrr {

// One bar word of endomorphism matrices of a common free cover:
// coeff * f1[f2|...|fm]. All factors are homogeneous morphisms with
// identical source and target shift vectors.
struct MatrixWord {
    Scalar coeff;
    std::vector<Morphism> factors;
};
using MatrixChainSum = std::vector<MatrixWord>;

// Hochschild differential of the one-object DG category of the free cover;
// returns the formal expansion without combining like terms.
MatrixChainSum b_matrix_word(const MatrixWord& w);

// Supertrace to chains over the base algebra, with the cyclic-sum sign
//   * = r_{i1} + (r_{i1}-r_j)|a^{(1)}| + sum_k (r_{i_k}-r_j)|s a^{(k)}|.
HochschildChain str_chain(const MatrixWord& w);
HochschildChain str_chain(const MatrixChainSum& c);

HomotopyIdempotent identity_idempotent(const TwistedModule& n);

// eu(L) = sum_l (-1)^l str(pi[alpha|...|alpha]); terminates because alpha
// is strictly upper triangular. The result is checked to be a b-cycle.
HochschildChain euler_chain(const TwistedModule& n, const HomotopyIdempotent& pi);

// Operator-level bar word over End_k(X): homogeneous End elements as
// letters, kept unexpanded so the FLS integral stays cheap.
struct OperatorWord {
    Scalar coeff;
    std::vector<AlgebraElement> letters;  // letters[0] is the a0 slot
};

// Everything the pairing needs about one algebra, built once.
class Pairing {
  public:
    explicit Pairing(AlgebraPtr a);

    const AlgebraPtr& algebra() const { return a_; }
    const AlgebraPtr& op() const { return aop_; }
    const EndAlgebra& end_algebra() const { return end_; }
    const Retraction& retraction() const { return retr_; }

    // a ∧ b = ± L(a0)R(b0) sh[L(a1)|...|R(b_m)] as operator words.
    std::vector<OperatorWord> wedge_words(const HochschildChain& a, const HochschildChain& b) const;
    // Same, expanded into the elementary-matrix basis of End_k(A).
    HochschildChain wedge(const HochschildChain& a, const HochschildChain& b) const;

    // Dispatch: associative trace / graded supertrace / FLS integral.
    Scalar pair(const HochschildChain& a, const HochschildChain& b) const;
    Scalar pair_assoc(const HochschildChain& a, const HochschildChain& b) const;
    Scalar pair_graded(const HochschildChain& a, const HochschildChain& b) const;
    Scalar pair_fls(const HochschildChain& a, const HochschildChain& b) const;

    Scalar integrate(const std::vector<OperatorWord>& words) const;

  private:
    void require_cycles(const HochschildChain& a, const HochschildChain& b) const;
    AlgebraElement op_elem_in_a(const AlgebraElement& x) const;

    AlgebraPtr a_, aop_;
    AlgebraComplex ac_;
    EndAlgebra end_;
    Retraction retr_;
    std::vector<AlgebraElement> l_images_, r_images_;  // basis-wise L and R in End
    SparseMatrix p_tot_, i_tot_, h_tot_;               // retraction on total spaces
    std::vector<int> h_degrees_;                       // degree per H slot
};

// phi(T1[T2|...|Tn]) = sum_j str_H(F_n(tau^j(...))), F_n = p T1 H T2 H ... H Tn i.
Scalar fls_integral(const EndAlgebra& end, const Retraction& r, const HochschildChain& c);

struct HrrReport {
    long long chi_oracle = 0;
    Scalar pairing;
    long long rr1_tensor = 0;
    bool equal = false;
    HochschildChain eu_n, eu_m;
};

// chi(M,N) vs <Eu(N), Eu(M)^vee> vs the tensor form of the same number.
HrrReport hrr_verify(const Pairing& ctx, const TwistedModule& m, const TwistedModule& n,
                     const std::optional<HomotopyIdempotent>& pi_m = std::nullopt,
                     const std::optional<HomotopyIdempotent>& pi_n = std::nullopt);

// G[i][j] = <lefts[i], rights[j]^vee>.
SparseMatrix pairing_gram(const Pairing& ctx, const std::vector<HochschildChain>& lefts,
                          const std::vector<HochschildChain>& rights);

}  // namespace nchrr
