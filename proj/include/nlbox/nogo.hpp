#pragma once

// Small dense complex linear algebra for two quantum no-go constructions:
//   - the four-preparation / four-entangled-outcome orthogonality table (each
//     product preparation is orthogonal to exactly one designated outcome)
//     and the tensor-power overlap decay behind it
//   - the preferred-observable construction: projecting a pure state onto the
//     eigenspaces of a stipulated always-definite observable R yields the
//     definite-property branches; R = identity recovers the
//     eigenvalue-eigenstate link.
//
// Inner products are conjugate-linear in the first argument. Tensor products
// use Kronecker ordering with the left factor outermost. Doubles throughout;
// checks here are against 0/1 with wide margins.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "nlbox/errors.hpp"

namespace nlbox {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kEigenvalueClusterTolerance = 1e-9;
inline constexpr double kBranchWeightCutoff = 1e-12;
inline constexpr int kMaxTensorDimension = 1 << 14;

struct StateVector {
    CVector amplitudes;

    explicit StateVector(CVector amps) : amplitudes(std::move(amps)) {
        if (amplitudes.size() == 0) throw DimensionMismatch("empty state vector");
        if (std::fabs(amplitudes.norm() - 1.0) > kNormTolerance)
            throw DomainError("state vector is not normalized");
    }

    int dimension() const { return static_cast<int>(amplitudes.size()); }
};

inline StateVector normalized(const CVector& v) {
    double n = v.norm();
    if (n == 0) throw DomainError("cannot normalize the zero vector");
    return StateVector(v / n);
}

// Qubit basis states.
inline StateVector ket0() { return StateVector((CVector(2) << 1, 0).finished()); }
inline StateVector ket1() { return StateVector((CVector(2) << 0, 1).finished()); }
inline StateVector ket_plus() {
    return StateVector((CVector(2) << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished());
}
inline StateVector ket_minus() {
    return StateVector((CVector(2) << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0)).finished());
}

inline Complex inner(const StateVector& u, const StateVector& v) {
    if (u.dimension() != v.dimension())
        throw DimensionMismatch("inner product of states with different dimensions");
    return u.amplitudes.dot(v.amplitudes);  // conjugates the first argument
}

inline StateVector tensor(const StateVector& u, const StateVector& v) {
    long du = u.dimension(), dv = v.dimension();
    if (du * dv > kMaxTensorDimension)
        throw DimensionMismatch("tensor product exceeds the dimension cap");
    CVector out(du * dv);
    for (long i = 0; i < du; ++i)
        for (long j = 0; j < dv; ++j) out[i * dv + j] = u.amplitudes[i] * v.amplitudes[j];
    return StateVector(std::move(out));
}

inline StateVector tensor_power(const StateVector& u, int n) {
    if (n < 1) throw DomainError("tensor power needs n >= 1");
    double dims = std::pow(static_cast<double>(u.dimension()), n);
    if (dims > static_cast<double>(kMaxTensorDimension))
        throw DimensionMismatch("tensor power exceeds the dimension cap");
    StateVector acc = u;
    for (int k = 1; k < n; ++k) acc = tensor(acc, u);
    return acc;
}

inline double born(const StateVector& state, const StateVector& outcome) {
    return std::norm(inner(outcome, state));
}

// ---------------------------------------------------------------------------
// Orthogonality table for the four product preparations |0>|0>, |0>|+>,
// |+>|0>, |+>|+> measured in the entangled basis below (1/sqrt2 normalization
// applied). Row i is a probability distribution with a zero in column i.

struct PbrTable {
    std::array<std::string, 4> preparation_labels;
    std::array<std::string, 4> outcome_labels;
    std::vector<StateVector> preparations;
    std::vector<StateVector> outcomes;
    std::array<std::array<double, 4>, 4> probabilities{};  // [preparation][outcome]
};

inline PbrTable pbr_table() {
    PbrTable t;
    StateVector k0 = ket0(), k1 = ket1(), kp = ket_plus(), km = ket_minus();
    t.preparations = {tensor(k0, k0), tensor(k0, kp), tensor(kp, k0), tensor(kp, kp)};
    t.preparation_labels = {"|0>|0>", "|0>|+>", "|+>|0>", "|+>|+>"};
    auto sum2 = [](const StateVector& a, const StateVector& b) {
        return normalized(a.amplitudes + b.amplitudes);
    };
    t.outcomes = {sum2(tensor(k0, k1), tensor(k1, k0)), sum2(tensor(k0, km), tensor(k1, kp)),
                  sum2(tensor(kp, k1), tensor(km, k0)), sum2(tensor(kp, km), tensor(km, kp))};
    t.outcome_labels = {"(|0>|1>+|1>|0>)/sqrt2", "(|0>|->+|1>|+>)/sqrt2",
                        "(|+>|1>+|->|0>)/sqrt2", "(|+>|->+|->|+>)/sqrt2"};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            t.probabilities[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                born(t.preparations[static_cast<std::size_t>(i)],
                     t.outcomes[static_cast<std::size_t>(j)]);
    return t;
}

// ---------------------------------------------------------------------------
// Preferred-observable projection decomposition

struct HermitianObservable {
    CMatrix matrix;

    explicit HermitianObservable(CMatrix m) : matrix(std::move(m)) {
        if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
            throw DimensionMismatch("observable must be a nonempty square matrix");
        if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kNormTolerance)
            throw DomainError("observable is not Hermitian");
    }

    int dimension() const { return static_cast<int>(matrix.rows()); }
};

struct ProjectionBranch {
    double eigenvalue;   // cluster mean
    StateVector state;   // normalized projection of e onto the eigenspace
    double weight;       // squared norm of the unnormalized projection
};

struct ProjectionDecomposition {
    std::vector<ProjectionBranch> branches;
};

// Project e onto the eigenspaces of R (eigenvalues clustered within 1e-9,
// so degenerate eigenspaces act as single blocks). Branches lighter than the
// weight cutoff are omitted. For R = identity the single branch is e itself.
inline ProjectionDecomposition preferred_projections(const StateVector& e,
                                                     const HermitianObservable& R) {
    if (e.dimension() != R.dimension())
        throw DimensionMismatch("state and observable dimensions differ");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(R.matrix);
    if (solver.info() != Eigen::Success)
        throw DomainError("eigendecomposition failed");
    const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
    const CMatrix& evecs = solver.eigenvectors();
    ProjectionDecomposition out;
    int n = e.dimension();
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && evals[end] - evals[end - 1] <= kEigenvalueClusterTolerance) ++end;
        CVector proj = CVector::Zero(n);
        double eigsum = 0;
        for (int k = start; k < end; ++k) {
            const CVector vec = evecs.col(k);
            proj += vec * vec.dot(e.amplitudes);
            eigsum += evals[k];
        }
        double weight = proj.squaredNorm();
        if (weight >= kBranchWeightCutoff) {
            out.branches.push_back(
                {eigsum / (end - start), StateVector(proj / std::sqrt(weight)), weight});
        }
        start = end;
    }
    return out;
}

}  // namespace nlbox
