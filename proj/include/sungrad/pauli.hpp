// Copyright 2026 The sungrad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sungrad {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Hermitian Pauli monomial on n qubits in symplectic form.
///
/// Bit q of `x_mask`/`z_mask` describes qubit q, and qubit 0 is the leftmost
/// letter of the text form and the most significant tensor factor of the
/// dense matrix. Letters encode as I=(0,0), X=(1,0), Y=(1,1), Z=(0,1), so the
/// monomial equals i^{|x&z|} X^x Z^z.
class PauliString {
 public:
  static constexpr int kMaxQubits = 31;

  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses "XZI"-style text. Surrounding whitespace is ignored.
  static PauliString parse(std::string_view text);
  static PauliString identity(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  bool is_identity() const { return x_ == 0 && z_ == 0; }

  /// Letter acting on qubit q: one of 'I', 'X', 'Y', 'Z'.
  char letter(int qubit) const;
  std::string str() const;

  /// Rank in the lexicographic I<X<Y<Z order (qubit 0 most significant).
  std::uint64_t rank() const;

  /// True when the two strings commute.
  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend bool operator<(const PauliString& a, const PauliString& b) {
    return a.n_qubits_ != b.n_qubits_ ? a.n_qubits_ < b.n_qubits_
                                      : a.rank() < b.rank();
  }

 private:
  int n_qubits_;
  std::uint64_t x_;
  std::uint64_t z_;
};

/// A phased Pauli string; stored coefficients are nonzero.
struct PauliTerm {
  Complex coefficient;
  PauliString string;
};

/// All 4^n - 1 non-identity strings in lexicographic order.
std::vector<PauliString> enumerate_basis(int n_qubits);

/// dense(p) * dense(q) = phase * dense(result); the phase is one of ±1, ±i.
PauliTerm pauli_product(const PauliString& p, const PauliString& q);

/// [p, q] as 2 * phase * string, or nothing when p and q commute.
std::optional<PauliTerm> pauli_commutator(const PauliString& p,
                                          const PauliString& q);

/// Kronecker product of single-qubit factors. Throws ResourceError above
/// kMaxDenseQubits.
ComplexMatrix pauli_matrix(const PauliString& p);
inline constexpr int kMaxDenseQubits = 12;

/// Comma-separated list, e.g. "XI, IX,ZZ". Empty entries are rejected.
std::vector<PauliString> parse_pauli_list(std::string_view text);
std::string format_pauli_list(const std::vector<PauliString>& strings);

}  // namespace sungrad

template <>
struct std::hash<sungrad::PauliString> {
  std::size_t operator()(const sungrad::PauliString& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.x_mask() * 0x9E3779B97F4A7C15ULL ^
                                      (p.z_mask() << 1) ^
                                      static_cast<std::uint64_t>(p.n_qubits()));
  }
};
