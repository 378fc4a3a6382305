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

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "dpis/channel.hpp"

namespace dpis {

/// Constraint class of a reflection matrix: independent per-element phase
/// shifts (diagonal, unit-modulus) or any lossless matrix (unitary).
enum class ReflectionArchitecture { DiagonalUnitModulus, Unitary };

/// Which design produced a matrix. Also used to select a design in the
/// statistics and CLI layers.
enum class SurfaceDesign { DRIS, BDRIS, DFIS, BDFIS, Custom };

/// Max-entry residual threshold for the unitarity and diagonal checks.
inline constexpr double kReflectionTolerance = 1e-10;

struct ReflectionMatrix {
    Eigen::MatrixXcd entries;
    ReflectionArchitecture architecture;
    SurfaceDesign origin = SurfaceDesign::Custom;

    int size() const { return static_cast<int>(entries.rows()); }
};

/// Residuals of the constraint checks, each against kReflectionTolerance.
/// claim_pass is the check matching the matrix's declared architecture.
struct ConstraintReport {
    double unitarity_residual;         // max |(T^H T - I)_ij|
    double max_offdiagonal;            // max |T_ij|, i != j
    double diagonal_modulus_residual;  // max | |T_nn| - 1 |
    bool unitary_pass;
    bool diagonal_pass;
    bool claim_pass;
};

/// Identity matrix tagged as a custom diagonal design (cancels the surface
/// entirely: reflected and specular terms are equal and opposite).
ReflectionMatrix identity_matrix(int n);

/// Phase-shift design that aligns every cascade term with the specular
/// reflection: entry n gets -arg(h_R[n] h_T[n]) plus the common offset
/// arg(-h_R h_T). Entries whose cascade product is exactly zero (possible at
/// chi = 0) contribute nothing; their phase is set to 0 and the index is
/// appended to degenerate_indices when provided.
ReflectionMatrix dris_optimal(const PolarizedChannel& h_r, const PolarizedChannel& h_t,
                              std::vector<int>* degenerate_indices = nullptr);

/// Unitary design mapping h_T/|h_T| onto e^{j psi} h_R^H/|h_R| with
/// psi = arg(-h_R h_T) (psi = pi when h_R h_T = 0), built as B A^H from two
/// orthonormal bases completed by stabilized Gram-Schmidt over the canonical
/// basis. Achieves |h_R Theta h_T| = |h_R| |h_T|.
ReflectionMatrix bdris_optimal(const PolarizedChannel& h_r, const PolarizedChannel& h_t);

/// Fixed diagonal design Theta = -I.
ReflectionMatrix dfis_matrix(int n);

/// Fixed unitary design [[0, -I], [-I, 0]]: each co-located cross-polarized
/// pair is coupled through a pi phase shift, so the surface swaps the two
/// polarizations on reflection. A column permutation of a block-diagonal
/// matrix with 2x2 blocks [[0, -1], [-1, 0]].
ReflectionMatrix bdfis_matrix(int n);

/// Constraint residuals of an arbitrary matrix.
ConstraintReport validate(const ReflectionMatrix& theta);

/// Orthonormal basis of C^n whose first column is u (must be unit norm).
/// Canonical basis vectors nearly parallel to the running span (residual
/// below skip_threshold) are skipped.
Eigen::MatrixXcd complete_orthonormal_basis(const Eigen::VectorXcd& u,
                                            double skip_threshold = 1e-6);

}  // namespace dpis
