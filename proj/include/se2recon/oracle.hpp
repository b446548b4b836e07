#pragma once

#include <Eigen/Dense>

#include <functional>

#include "se2recon/grid.hpp"

namespace se2recon {

// Largest instance the dense path will materialize: dim = n^2 * m.
inline constexpr std::size_t kOracleDimLimit = 4096;

// Explicit matrix of a linear operator on coefficient stacks, built
// column-by-column from canonical basis stacks.
struct DenseOperator {
  int n = 0;
  int m = 0;
  Eigen::MatrixXcd mat;
};

struct SolvabilityCertificate {
  double sigma = 0;          // |Q_perp P|, largest singular value
  bool solvable = false;     // sigma < 1 - tol
  bool marginal = false;     // sigma within tol of 1; finite precision cannot decide
  int dim_ran_p = 0;         // numerical rank of P
  int dim_intersection = 0;  // dim(Ker Q  intersect  Ran P) estimate
};

using StackOperator = std::function<CoefficientStack(const CoefficientStack&)>;

// Stacks are flattened in storage order (plane-major).
Eigen::VectorXcd to_vector(const CoefficientStack& stack);
CoefficientStack from_vector(const Eigen::VectorXcd& vec, int n, int m);

// Applies op to every canonical basis stack. Throws SizeGuardError beyond
// kOracleDimLimit.
DenseOperator materialize(const StackOperator& op, int n, int m);

// Certifies solvability of the paired-projection system. Both inputs must
// pass the projector checks (Hermitian and idempotent to 1e-8).
SolvabilityCertificate certify(const DenseOperator& p, const DenseOperator& q,
                               double tol = 1e-8);

// Solves (I - (I - Q) P) F = F0 densely. Requires a solvable instance and
// F0 in Ran(Q); the returned solution has residual <= 1e-10 * |F0|.
Eigen::VectorXcd direct_solve(const DenseOperator& p, const DenseOperator& q,
                              const Eigen::VectorXcd& f0);

// Human-readable certificate block for the CLI.
std::string format_certificate(const SolvabilityCertificate& cert);

}  // namespace se2recon
