#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fiberwalk/digraph.hpp"

namespace fiberwalk {

// Multiplicative parameters of the dyad-dependent reciprocation model.
// alpha[i] scales outgoing edges of node i+1, beta[i] incoming ones, rho[i]
// reciprocation; lambda is stored per dyad {i,j}, i < j, in triangular order.
struct P1Params {
    int n = 0;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> rho;
    std::vector<double> lambda;

    double lambda_at(int i, int j) const { return lambda[static_cast<std::size_t>(dyad_index(n, i, j))]; }
};

// Probabilities of the four configurations of one dyad, in DyadState order:
// (p00, p10, p01, p11).
using DyadProbs = std::array<double, 4>;

// Literal evaluation with the stored lambda: p00 = l, p10 = l a_i b_j,
// p01 = l a_j b_i, p11 = l a_i b_j a_j b_i r_i r_j. Requires i < j.
DyadProbs dyad_probs(const P1Params& params, int i, int j);

// Sets every lambda to the value normalizing its dyad's four probabilities.
P1Params normalized_params(int n, std::vector<double> alpha, std::vector<double> beta,
                           std::vector<double> rho);

// Fitted configuration probabilities, one 4-vector per dyad.
struct P1Fit {
    int n = 0;
    std::vector<DyadProbs> probs; // triangular dyad order

    const DyadProbs& dyad(int i, int j) const {
        return probs[static_cast<std::size_t>(dyad_index(n, i, j))];
    }
};

// Expected sufficient statistics under a fit (real-valued analogue of
// SufficientStats).
struct ExpectedStats {
    std::vector<double> out_degree;
    std::vector<double> in_degree;
    std::vector<double> recip_degree;
};

ExpectedStats expected_stats(const P1Fit& fit);

struct FitOptions {
    double tol = 1e-8;      // on the largest |expected - observed| statistic
    int max_iter = 5000;    // scaling cycles
    double param_floor = 1e-10; // pin for parameters with zero observed margin
};

struct FitReport {
    P1Fit fit;
    P1Params params;
    int iterations = 0;
    double max_stat_residual = 0.0;
    bool converged = false;
};

// Maximum-likelihood fit by cyclic proportional scaling of the alpha, beta and
// rho blocks, with per-dyad renormalization folded into lambda. Returns the
// last iterate when max_iter is reached first (converged = false).
FitReport fit_p1(const DirectedGraph& g, const FitOptions& opts = {});

inline constexpr double kChiSquareProbFloor = 1e-12;

// Chi-square contribution of one dyad observed in the given state.
double dyad_chi_term(const DyadProbs& p, DyadState s, double prob_floor = kChiSquareProbFloor);

// Sum over dyads and configurations of (indicator - p)^2 / p, with the
// probability floor applied before division. Throws DegenerateFit when an
// observed configuration has probability below the floor.
double chi_square(const DirectedGraph& g, const P1Fit& fit,
                  double prob_floor = kChiSquareProbFloor);

} // namespace fiberwalk
