#include "se2recon/oracle.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace se2recon {
namespace {

constexpr double kProjectorTol = 1e-8;
constexpr double kSolvableTol = 1e-8;
constexpr double kRankTol = 1e-6;

void require_square(const DenseOperator& op, const char* what) {
  const auto dim = static_cast<Eigen::Index>(op.n) * op.n * op.m;
  if (op.mat.rows() != dim || op.mat.cols() != dim) {
    throw DimensionError(std::string(what) + ": matrix does not match n^2 * m");
  }
}

// Operator norm upper bound; cheap and sufficient for defect checks.
double frobenius(const Eigen::MatrixXcd& a) { return a.norm(); }

void require_projector(const DenseOperator& op, const char* name) {
  const double herm = frobenius(op.mat - op.mat.adjoint());
  const double idem = frobenius(op.mat * op.mat - op.mat);
  if (herm > kProjectorTol || idem > kProjectorTol) {
    throw ContractError(std::string("certify: ") + name +
                        " is not an orthogonal projector (hermitian defect " +
                        std::to_string(herm) + ", idempotent defect " + std::to_string(idem) +
                        ")");
  }
}

}  // namespace

Eigen::VectorXcd to_vector(const CoefficientStack& stack) {
  Eigen::VectorXcd vec(static_cast<Eigen::Index>(stack.data.size()));
  for (std::size_t k = 0; k < stack.data.size(); ++k) vec[static_cast<Eigen::Index>(k)] = stack.data[k];
  return vec;
}

CoefficientStack from_vector(const Eigen::VectorXcd& vec, int n, int m) {
  CoefficientStack stack(n, m);
  if (static_cast<std::size_t>(vec.size()) != stack.data.size()) {
    throw DimensionError("from_vector: length does not match n^2 * m");
  }
  for (std::size_t k = 0; k < stack.data.size(); ++k) stack.data[k] = vec[static_cast<Eigen::Index>(k)];
  return stack;
}

DenseOperator materialize(const StackOperator& op, int n, int m) {
  const std::size_t dim = static_cast<std::size_t>(n) * n * m;
  if (dim > kOracleDimLimit) {
    throw SizeGuardError("materialize: n^2 * m = " + std::to_string(dim) +
                         " exceeds the dense limit of " + std::to_string(kOracleDimLimit));
  }
  DenseOperator dense;
  dense.n = n;
  dense.m = m;
  dense.mat.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  CoefficientStack basis(n, m);
  for (std::size_t k = 0; k < dim; ++k) {
    basis.data[k] = 1.0;
    const CoefficientStack col = op(basis);
    basis.data[k] = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      dense.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = col.data[i];
    }
  }
  return dense;
}

SolvabilityCertificate certify(const DenseOperator& p, const DenseOperator& q, double tol) {
  require_square(p, "certify(P)");
  require_square(q, "certify(Q)");
  if (p.mat.rows() != q.mat.rows()) throw DimensionError("certify: P and Q dimensions differ");
  require_projector(p, "P");
  require_projector(q, "Q");

  const Eigen::Index dim = p.mat.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

  // |Q_perp P|^2 is the top eigenvalue of the Hermitian product P Q_perp P.
  const Eigen::MatrixXcd pqp = p.mat * (id - q.mat) * p.mat;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> pqp_eig(pqp, Eigen::EigenvaluesOnly);
  const double top = std::max(0.0, pqp_eig.eigenvalues().maxCoeff());

  SolvabilityCertificate cert;
  cert.sigma = std::sqrt(top);
  cert.solvable = cert.sigma < 1.0 - tol;
  cert.marginal = !cert.solvable && cert.sigma <= 1.0 + 1e-9;

  // Eigenvectors of P with eigenvalue near 1 give an orthonormal basis of Ran(P).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> p_eig(p.mat);
  const auto& evals = p_eig.eigenvalues();
  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  int rank = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (evals[i] > kRankTol * scale) ++rank;
  }
  cert.dim_ran_p = rank;

  if (rank > 0) {
    const Eigen::MatrixXcd basis = p_eig.eigenvectors().rightCols(rank);
    Eigen::JacobiSVD<Eigen::MatrixXcd> qb_svd(q.mat * basis);
    const auto& svals = qb_svd.singularValues();
    int zero = 0;
    for (Eigen::Index i = 0; i < svals.size(); ++i) {
      if (svals[i] < tol) ++zero;
    }
    cert.dim_intersection = zero;
  }
  return cert;
}

Eigen::VectorXcd direct_solve(const DenseOperator& p, const DenseOperator& q,
                              const Eigen::VectorXcd& f0) {
  require_square(p, "direct_solve(P)");
  require_square(q, "direct_solve(Q)");
  if (f0.size() != p.mat.rows()) throw DimensionError("direct_solve: F0 length mismatch");

  const SolvabilityCertificate cert = certify(p, q, kSolvableTol);
  if (!cert.solvable) {
    throw NotSolvableError("direct_solve: sigma = " + std::to_string(cert.sigma) +
                           " is not below 1; the system has no unique solution");
  }
  const double f0_norm = f0.norm();
  if ((q.mat * f0 - f0).norm() > 1e-8 * std::max(1.0, f0_norm)) {
    throw ContractError("direct_solve: F0 is not in Ran(Q)");
  }

  const Eigen::Index dim = p.mat.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  const Eigen::MatrixXcd system = id - (id - q.mat) * p.mat;
  const Eigen::VectorXcd sol = system.partialPivLu().solve(f0);

  const double residual = (system * sol - f0).norm();
  if (residual > 1e-10 * std::max(1.0, f0_norm)) {
    throw NotSolvableError("direct_solve: residual " + std::to_string(residual) +
                           " exceeds tolerance; system is numerically singular");
  }
  return sol;
}

std::string format_certificate(const SolvabilityCertificate& cert) {
  std::ostringstream out;
  out << "sigma            = " << cert.sigma << "\n";
  out << "solvable         = " << (cert.solvable ? "yes" : (cert.marginal ? "marginal" : "no"))
      << "\n";
  out << "rank(P)          = " << cert.dim_ran_p << "\n";
  out << "dim(KerQ^RanP)   = " << cert.dim_intersection << "\n";
  return out.str();
}

}  // namespace se2recon
