#pragma once

#include "ofp/algebra.hpp"
#include "ofp/distribution.hpp"
#include "ofp/ncpoly.hpp"
#include "ofp/report.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ofp {

// Supported (B, E) pairs: B = M_d with the normalized trace (d = 1 is the scalar case), and
// B = C^k with coordinate averaging.
enum class MCModel { MatrixTrace, CoordinateAverage };

struct MCConfig {
  AlgebraPtr block_algebra;
  MCModel model = MCModel::MatrixTrace;
  int N = 256;
  int samples = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  double finite_size_constant = 10.0;  // deterministic tolerance term c / N
};

// Model matching the shape of B, or throws AlgebraError when unsupported.
MCModel mc_model_for(const AlgebraPtr& B);
// Throws AlgebraError when the configuration is invalid or the (B, E) pair unsupported.
void validate_mc_config(const MCConfig& cfg);

// n x n self-adjoint matrix with centered Gaussian entries, E|g_ij|^2 = 1/n.
Eigen::MatrixXcd sample_gue(int n, std::mt19937_64& rng);

struct MCEstimate {
  Element mean;
  Eigen::VectorXd standard_error;  // per coordinate
};

// Block-averaged empirical E_B-moments of the words: each semicircular generator is a dN GUE,
// each circular one (G1 + i G2) / sqrt(2), all independent; coefficients act as b (x) I_N and
// E_B is the block-wise normalized partial trace.
std::vector<MCEstimate> mc_moments(const MCConfig& cfg, const DistributionSpec& spec,
                                   const std::vector<Monomial>& words);
MCEstimate mc_moment(const MCConfig& cfg, const DistributionSpec& spec, const Monomial& word);

// Compares mc_moments with moments_from_cumulants; a word passes when every coordinate deviates
// by at most max(3 standard errors, c / N).
VerificationReport mc_crosscheck(const MCConfig& cfg, const DistributionSpec& spec, const std::vector<Monomial>& words);

// Pairwise summation in index order.
double pairwise_sum(const double* x, std::size_t n);

}  // namespace ofp
