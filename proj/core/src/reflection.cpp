// SPDX-License-Identifier: Apache-2.0
//
// dpis - simulation toolkit for dual-polarized RIS/FIS-aided SISO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "dpis/reflection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpis {

namespace {

void check_even_size(int n, const char* who) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument(std::string(who) + ": size must be an even integer >= 2");
    }
}

void check_pair(const PolarizedChannel& h_r, const PolarizedChannel& h_t, const char* who) {
    if (h_r.size() != h_t.size() || h_r.size() == 0) {
        throw std::invalid_argument(std::string(who) + ": channel dimension mismatch");
    }
}

}  // namespace

ReflectionMatrix identity_matrix(int n) {
    if (n < 1) {
        throw std::invalid_argument("identity_matrix: size must be positive");
    }
    return ReflectionMatrix{Eigen::MatrixXcd::Identity(n, n),
                            ReflectionArchitecture::DiagonalUnitModulus, SurfaceDesign::Custom};
}

ReflectionMatrix dris_optimal(const PolarizedChannel& h_r, const PolarizedChannel& h_t,
                              std::vector<int>* degenerate_indices) {
    check_pair(h_r, h_t, "dris_optimal");
    const int n = h_r.size();

    const std::complex<double> cascade = channel_product(h_r, h_t);
    // Common offset aligning the reflected sum with the specular term.
    const double psi =
        cascade == std::complex<double>(0.0, 0.0) ? std::numbers::pi : std::arg(-cascade);

    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const std::complex<double> product = h_r.entries[i] * h_t.entries[i];
        if (std::abs(product) == 0.0) {
            // Zero cascade entry (chi = 0): any phase is optimal, use 0.
            theta(i, i) = 1.0;
            if (degenerate_indices != nullptr) {
                degenerate_indices->push_back(i);
            }
        } else {
            theta(i, i) = std::polar(1.0, -std::arg(product) + psi);
        }
    }
    return ReflectionMatrix{std::move(theta), ReflectionArchitecture::DiagonalUnitModulus,
                            SurfaceDesign::DRIS};
}

Eigen::MatrixXcd complete_orthonormal_basis(const Eigen::VectorXcd& u, double skip_threshold) {
    const auto n = u.size();
    if (n < 1) {
        throw std::invalid_argument("complete_orthonormal_basis: empty vector");
    }
    const double norm = u.norm();
    if (!(norm > 0.0)) {
        throw std::invalid_argument("complete_orthonormal_basis: zero vector");
    }

    Eigen::MatrixXcd basis(n, n);
    basis.col(0) = u / norm;
    Eigen::Index cols = 1;

    for (Eigen::Index k = 0; k < n && cols < n; ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v[k] = 1.0;
        // Two projection passes keep the loss of orthogonality at round-off
        // level even when the candidate is close to the running span.
        for (int pass = 0; pass < 2; ++pass) {
            v -= basis.leftCols(cols) * (basis.leftCols(cols).adjoint() * v);
        }
        const double residual = v.norm();
        if (residual > skip_threshold) {
            basis.col(cols++) = v / residual;
        }
    }
    if (cols < n) {
        throw std::runtime_error("complete_orthonormal_basis: basis completion failed");
    }
    return basis;
}

ReflectionMatrix bdris_optimal(const PolarizedChannel& h_r, const PolarizedChannel& h_t) {
    check_pair(h_r, h_t, "bdris_optimal");

    const double norm_r = h_r.entries.norm();
    const double norm_t = h_t.entries.norm();
    if (!(norm_r > 0.0) || !(norm_t > 0.0)) {
        throw std::invalid_argument("bdris_optimal: zero-norm channel");
    }

    const std::complex<double> cascade = channel_product(h_r, h_t);
    const double psi =
        cascade == std::complex<double>(0.0, 0.0) ? std::numbers::pi : std::arg(-cascade);

    // Unitary map sending h_T/|h_T| to e^{j psi} h_R^H/|h_R|, so the reflected
    // term reaches |h_R||h_T| with the phase that adds to the specular term.
    const Eigen::MatrixXcd a = complete_orthonormal_basis(h_t.entries / norm_t);
    const Eigen::MatrixXcd b = complete_orthonormal_basis(h_r.entries.conjugate() / norm_r);
    Eigen::MatrixXcd theta = std::polar(1.0, psi) * (b * a.adjoint());
    return ReflectionMatrix{std::move(theta), ReflectionArchitecture::Unitary,
                            SurfaceDesign::BDRIS};
}

ReflectionMatrix dfis_matrix(int n) {
    check_even_size(n, "dfis_matrix");
    return ReflectionMatrix{-Eigen::MatrixXcd::Identity(n, n),
                            ReflectionArchitecture::DiagonalUnitModulus, SurfaceDesign::DFIS};
}

ReflectionMatrix bdfis_matrix(int n) {
    check_even_size(n, "bdfis_matrix");
    const int m = n / 2;
    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(n, n);
    theta.topRightCorner(m, m) = -Eigen::MatrixXcd::Identity(m, m);
    theta.bottomLeftCorner(m, m) = -Eigen::MatrixXcd::Identity(m, m);
    return ReflectionMatrix{std::move(theta), ReflectionArchitecture::Unitary,
                            SurfaceDesign::BDFIS};
}

ConstraintReport validate(const ReflectionMatrix& theta) {
    const auto n = theta.entries.rows();
    if (n != theta.entries.cols() || n == 0) {
        throw std::invalid_argument("validate: matrix must be square and non-empty");
    }

    const Eigen::MatrixXcd gram = theta.entries.adjoint() * theta.entries;
    const double unitarity =
        (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();

    double offdiag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) {
                offdiag = std::max(offdiag, std::abs(theta.entries(i, j)));
            }
        }
    }
    const double diag_residual =
        (theta.entries.diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff();

    ConstraintReport report{};
    report.unitarity_residual = unitarity;
    report.max_offdiagonal = offdiag;
    report.diagonal_modulus_residual = diag_residual;
    report.unitary_pass = unitarity <= kReflectionTolerance;
    report.diagonal_pass =
        offdiag <= kReflectionTolerance && diag_residual <= kReflectionTolerance;
    report.claim_pass = theta.architecture == ReflectionArchitecture::DiagonalUnitModulus
                            ? report.diagonal_pass
                            : report.unitary_pass;
    return report;
}

}  // namespace dpis
