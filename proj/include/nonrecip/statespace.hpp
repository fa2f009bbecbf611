// Copyright 2026 The nonrecip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nonrecip/units.hpp"

namespace nonrecip {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

struct BasisLabel {
  std::string name;
  std::size_t index = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Ordered set of named basis vectors. Indices are contiguous from 0 and
/// names are unique within one basis.
class Basis {
 public:
  Basis() = default;

  explicit Basis(const std::vector<std::string>& names) {
    labels_.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names[j] == names[i]) throw DomainError("duplicate basis label '" + names[i] + "'");
      }
      labels_.push_back({names[i], i});
    }
  }

  /// Levels "0", "1", ..., "d-1" of a single d-level system.
  static Basis levels(std::size_t d) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back(std::to_string(i));
    return Basis(names);
  }

  std::size_t size() const { return labels_.size(); }
  const BasisLabel& operator[](std::size_t i) const { return labels_.at(i); }
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  bool contains(std::string_view name) const {
    return std::any_of(labels_.begin(), labels_.end(),
                       [&](const BasisLabel& l) { return l.name == name; });
  }

  std::size_t index_of(std::string_view name) const {
    for (const auto& l : labels_) {
      if (l.name == name) return l.index;
    }
    throw DomainError("unknown basis label '" + std::string(name) + "'");
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& l : labels_) out.push_back(l.name);
    return out;
  }

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  std::vector<BasisLabel> labels_;
};

/// Product basis, a-major: label of (i, j) is a[i].name + b[j].name at index i*|b| + j.
inline Basis tensor_basis(const Basis& a, const Basis& b) {
  std::vector<std::string> names;
  names.reserve(a.size() * b.size());
  for (const auto& la : a) {
    for (const auto& lb : b) names.push_back(la.name + lb.name);
  }
  return Basis(names);
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

/// ||U^dagger U - I||_F
inline double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Largest singular value.
inline double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// ||u1 - exp(i phi) u2|| in operator norm, with phi the phase of
/// tr(u2^dagger u1) (the alignment that minimises the Frobenius distance).
inline double phase_aligned_distance(const Matrix& u1, const Matrix& u2) {
  const Complex overlap = (u2.adjoint() * u1).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return operator_norm(u1 - phase * u2);
}

/// exp(-i h dt) for Hermitian h through the eigendecomposition. No validation.
inline Matrix exp_minus_i_h_dt(const Matrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * (w(k) * dt));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Dense square complex matrix over a labeled basis.
class Operator {
 public:
  Operator() = default;

  Operator(Basis basis, Matrix m) : basis_(std::move(basis)), m_(std::move(m)) {
    if (m_.rows() != m_.cols() || static_cast<std::size_t>(m_.rows()) != basis_.size()) {
      throw DomainError("operator matrix is " + std::to_string(m_.rows()) + "x" +
                        std::to_string(m_.cols()) + " but basis has " +
                        std::to_string(basis_.size()) + " labels");
    }
    if (!m_.allFinite()) throw DomainError("operator has non-finite entries");
  }

  static Operator zero(const Basis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    return Operator(basis, Matrix::Zero(n, n));
  }

  static Operator identity(const Basis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    return Operator(basis, Matrix::Identity(n, n));
  }

  /// |row><col|
  static Operator outer(const Basis& basis, std::string_view row, std::string_view col) {
    Operator op = zero(basis);
    op.m_(static_cast<Eigen::Index>(basis.index_of(row)),
          static_cast<Eigen::Index>(basis.index_of(col))) = 1.0;
    return op;
  }

  const Basis& basis() const { return basis_; }
  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return basis_.size(); }

  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  Complex element(std::string_view row, std::string_view col) const {
    return (*this)(basis_.index_of(row), basis_.index_of(col));
  }

  bool is_hermitian(double tol) const { return hermiticity_defect(m_) <= tol; }

  Operator adjoint() const { return Operator(basis_, m_.adjoint()); }

  friend Operator operator+(const Operator& a, const Operator& b) {
    check_same_basis(a, b);
    return Operator(a.basis_, a.m_ + b.m_);
  }
  friend Operator operator-(const Operator& a, const Operator& b) {
    check_same_basis(a, b);
    return Operator(a.basis_, a.m_ - b.m_);
  }
  friend Operator operator*(const Operator& a, const Operator& b) {
    check_same_basis(a, b);
    return Operator(a.basis_, a.m_ * b.m_);
  }
  friend Operator operator*(Complex s, const Operator& a) { return Operator(a.basis_, s * a.m_); }

 private:
  static void check_same_basis(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw DomainError("operator dimension mismatch");
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.basis_[i].name != b.basis_[i].name) throw DomainError("operators live on different bases");
    }
  }

  Basis basis_;
  Matrix m_;
};

/// a (x) b with a-major index order and concatenated labels.
inline Operator tensor_product(const Operator& a, const Operator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return Operator(tensor_basis(a.basis(), b.basis()), std::move(out));
}

/// exp(-i h dt). Throws DomainError unless h is Hermitian within 1e-9.
inline Operator matrix_exponential_step(const Operator& h, double dt) {
  if (!h.is_hermitian(1e-9)) throw DomainError("matrix_exponential_step: generator is not Hermitian");
  return Operator(h.basis(), exp_minus_i_h_dt(h.matrix(), dt));
}

class PureState {
 public:
  struct Unnormalized {};

  PureState() = default;

  PureState(Basis basis, Vector amplitudes) : PureState(std::move(basis), std::move(amplitudes), Unnormalized{}) {
    if (std::abs(amps_.squaredNorm() - 1.0) > 1e-9) {
      throw DomainError("state is not normalized (norm^2 = " + std::to_string(amps_.squaredNorm()) + ")");
    }
  }

  PureState(Basis basis, Vector amplitudes, Unnormalized) : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != basis_.size()) throw DomainError("state/basis dimension mismatch");
    if (!amps_.allFinite()) throw DomainError("state has non-finite amplitudes");
  }

  static PureState basis_state(const Basis& basis, std::string_view name, Complex phase = 1.0) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
    v(static_cast<Eigen::Index>(basis.index_of(name))) = phase;
    return PureState(basis, std::move(v));
  }

  const Basis& basis() const { return basis_; }
  const Vector& amplitudes() const { return amps_; }
  std::size_t dim() const { return basis_.size(); }
  Complex amplitude(std::string_view name) const {
    return amps_(static_cast<Eigen::Index>(basis_.index_of(name)));
  }

  Complex inner(const PureState& other) const {
    if (dim() != other.dim()) throw DomainError("state dimension mismatch");
    return amps_.dot(other.amps_);
  }

 private:
  Basis basis_;
  Vector amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (checked on construction).
class DensityMatrix {
 public:
  DensityMatrix() = default;

  DensityMatrix(Basis basis, Matrix rho, double tol = 1e-9) : basis_(std::move(basis)), rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || static_cast<std::size_t>(rho_.rows()) != basis_.size()) {
      throw DomainError("density matrix/basis dimension mismatch");
    }
    if (!rho_.allFinite()) throw DomainError("density matrix has non-finite entries");
    if (hermiticity_defect(rho_) > tol) throw DomainError("density matrix is not Hermitian");
    if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > tol) throw DomainError("density matrix trace differs from 1");
    if (min_eigenvalue(rho_) < -tol) throw DomainError("density matrix has a negative eigenvalue");
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static DensityMatrix maximally_mixed(const Basis& basis) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    return DensityMatrix(basis, Matrix::Identity(n, n) / static_cast<double>(n));
  }

  const Basis& basis() const { return basis_; }
  const Matrix& matrix() const { return rho_; }
  std::size_t dim() const { return basis_.size(); }

  double population(std::string_view name) const {
    const auto i = static_cast<Eigen::Index>(basis_.index_of(name));
    return rho_(i, i).real();
  }

  static double min_eigenvalue(const Matrix& rho) {
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

 private:
  Basis basis_;
  Matrix rho_;
};

/// <target|rho|target> for raw matrices.
inline Complex expectation(const Vector& target, const Matrix& rho) { return target.dot(rho * target); }

/// F = <target|rho|target>, real part clamped to [0, 1].
inline double fidelity_pure_target(const PureState& target, const DensityMatrix& rho) {
  if (target.dim() != rho.dim()) throw DomainError("fidelity: target and density matrix dimensions differ");
  const Complex f = expectation(target.amplitudes(), rho.matrix());
  if (std::abs(f.imag()) >= 1e-9) throw DomainError("fidelity: expectation value is not real");
  return std::clamp(f.real(), 0.0, 1.0);
}

}  // namespace nonrecip
