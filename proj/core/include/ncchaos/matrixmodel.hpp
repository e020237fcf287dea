#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "ncchaos/sum_moment.hpp"
#include "ncchaos/words.hpp"

namespace ncchaos {

inline constexpr std::size_t kDefaultMatrixBudgetBytes = 1ULL << 30;

enum class EnsembleKind {
    GaussianHermitian, // GUE, semicircular limit
    ShiftedWishart,    // centered Wishart, free Poisson(lambda) limit
};

struct MatrixEnsembleSpec {
    int dim = 0;
    int count = 0;
    EnsembleKind kind = EnsembleKind::GaussianHermitian;
    double lambda = 1.0; // ShiftedWishart aspect ratio
    std::uint64_t seed = 0;
};

using CMatrix = Eigen::MatrixXcd;

// Independent Hermitian samples; deterministic given the seed (per-matrix
// derived streams). GaussianHermitian is normalized so (1/dim) E tr M^2 = 1.
std::vector<CMatrix> sample_family(const MatrixEnsembleSpec& spec);

// (1/dim) Re tr( P_1(M_{v_1}) ... P_k(M_{v_k}) )
double empirical_word_moment(const std::vector<CMatrix>& family, const Word& w);

// (1/dim) Re tr( Q^{(h)}(f; M_1..M_N)^m ); requires N <= family size.
double empirical_sum_moment(const ChebyshevSumSpec& spec, const std::vector<CMatrix>& family,
                            int m);

} // namespace ncchaos
