#pragma once

// Independent verification path: a finite-cutoff fixed-point solver for the
// 2-point-function integral equation on [0, L2]^2 (bare mass
// mu^2 = 1 - 2 lambda log(1+L2)), and a residual evaluator that inserts any
// supplied g(a,b) into the infinite-cutoff equation.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "phi4/quadrature.hpp"

namespace phi4::oracle {

struct GridFunction {
    double cutoff = 0.0;              // L2
    double lambda = 0.0;
    double tol = 0.0;
    int iterations = 0;
    double final_delta = 0.0;         // last max |G_new - G_old|
    std::vector<double> nodes;        // strictly increasing in (0, L2)
    std::vector<double> weights;
    std::vector<double> values;       // row-major n x n, symmetric

    int n() const { return static_cast<int>(nodes.size()); }
    double value(int i, int j) const { return values[static_cast<std::size_t>(i) * nodes.size() + j]; }
};

// Damped fixed-point iteration G <- (1-damping) G + damping F(G) of the
// discrete equation; Gauss-Legendre nodes under a rational map clustering
// near 0, principal values by pole subtraction with a 3-point derivative
// correction at the diagonal. Damping is halved automatically when the
// update starts oscillating. init0 overrides the 1/(1+a+b) initial grid.
GridFunction solve_fixed_point(double lambda, double cutoff, int n_nodes,
                               double damping = 0.5, double tol = 1e-10,
                               int max_iter = 20000,
                               const std::function<double(double, double)>* init0 = nullptr);

// Max |G - F(G)| of a grid under its own discretisation.
double discrete_residual(const GridFunction& g);

// Max equation residual of the grid under a quadrature rule with twice the
// nodes (off-grid values by tensor cubic spline); guards against
// discretisation-locked false convergence.
double refined_rule_residual(const GridFunction& g, int refine_factor = 2);

struct ResidualReport {
    double a = 0.0, b = 0.0;
    double lhs = 0.0;           // (1+a+b) g(a,b)
    double rhs = 0.0;           // 1 + the three integral terms
    double abs_residual = 0.0;
    double rel_residual = 0.0;  // abs / (1 + |lhs|)
    double tail_estimate = 0.0; // quadrature error attributed to the folded tails
};

// Inserts g into the infinite-cutoff equation. The singular kernels are
// integrated exactly as written (difference quotients), which is their
// principal value for Hoelder g; the double term keeps the antisymmetric
// numerator combined before dividing.
ResidualReport residual(const std::function<double(double, double)>& g, double a, double b,
                        double lambda, const quad::QuadSpec& spec = {});

// For each cutoff: solve, then report max deviation from the closed form over
// interior nodes (a, b <= cutoff/4).
std::vector<std::pair<double, double>> compare_oracle_to_closedform(
    double lambda, const std::vector<double>& cutoffs, int n_nodes);

// nodes as header row/column, values matrix
void write_csv(const GridFunction& g, std::ostream& os);
std::string metadata_json(const GridFunction& g);

} // namespace phi4::oracle
