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

#include "sungrad/pauli.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

#include "sungrad/error.hpp"

namespace sungrad {

namespace {

std::uint64_t mask_for(int n_qubits) {
  return n_qubits >= 64 ? ~0ULL : ((1ULL << n_qubits) - 1);
}

void check_same_size(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw std::invalid_argument("Pauli strings act on different qubit counts: " +
                                p.str() + " vs " + q.str());
  }
}

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("PauliString: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
  const std::uint64_t m = mask_for(n_qubits);
  if ((x_mask & ~m) != 0 || (z_mask & ~m) != 0) {
    throw std::invalid_argument("PauliString: mask has bits beyond n_qubits");
  }
}

PauliString PauliString::identity(int n_qubits) {
  return PauliString(n_qubits, 0, 0);
}

PauliString PauliString::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  if (text.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("Pauli string too long: " + std::string(text));
  }
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < text.size(); ++q) {
    const std::uint64_t bit = 1ULL << q;
    switch (text[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" +
                                    std::string(1, text[q]) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  return PauliString(static_cast<int>(text.size()), x, z);
}

char PauliString::letter(int qubit) const {
  const bool xb = (x_ >> qubit) & 1ULL;
  const bool zb = (z_ >> qubit) & 1ULL;
  if (xb) return zb ? 'Y' : 'X';
  return zb ? 'Z' : 'I';
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

std::uint64_t PauliString::rank() const {
  std::uint64_t r = 0;
  for (int q = 0; q < n_qubits_; ++q) {
    const std::uint64_t xb = (x_ >> q) & 1ULL;
    const std::uint64_t zb = (z_ >> q) & 1ULL;
    // I=0, X=1, Y=2, Z=3
    const std::uint64_t digit = xb ? (zb ? 2 : 1) : (zb ? 3 : 0);
    r = r * 4 + digit;
  }
  return r;
}

bool PauliString::commutes_with(const PauliString& other) const {
  check_same_size(*this, other);
  return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

std::vector<PauliString> enumerate_basis(int n_qubits) {
  if (n_qubits < 1 || n_qubits > PauliString::kMaxQubits) {
    throw std::invalid_argument("enumerate_basis: n_qubits must be in [1, " +
                                std::to_string(PauliString::kMaxQubits) + "]");
  }
  if (n_qubits > kMaxDenseQubits) {
    throw ResourceError("enumerate_basis: 4^" + std::to_string(n_qubits) +
                        " strings exceed the enumeration budget");
  }
  const std::uint64_t count = 1ULL << (2 * n_qubits);
  std::vector<PauliString> out;
  out.reserve(count - 1);
  for (std::uint64_t r = 1; r < count; ++r) {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::uint64_t rest = r;
    for (int q = n_qubits - 1; q >= 0; --q) {
      const std::uint64_t digit = rest & 3ULL;
      rest >>= 2;
      const std::uint64_t bit = 1ULL << q;
      if (digit == 1 || digit == 2) x |= bit;
      if (digit == 2 || digit == 3) z |= bit;
    }
    out.emplace_back(n_qubits, x, z);
  }
  return out;
}

PauliTerm pauli_product(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  const int k = std::popcount(p.x_mask() & p.z_mask()) +
                std::popcount(q.x_mask() & q.z_mask()) -
                std::popcount(x & z) +
                2 * std::popcount(p.z_mask() & q.x_mask());
  return PauliTerm{i_power(k), PauliString(p.n_qubits(), x, z)};
}

std::optional<PauliTerm> pauli_commutator(const PauliString& p,
                                          const PauliString& q) {
  if (p.commutes_with(q)) return std::nullopt;
  PauliTerm t = pauli_product(p, q);
  t.coefficient *= 2.0;
  return t;
}

ComplexMatrix pauli_matrix(const PauliString& p) {
  const int n = p.n_qubits();
  if (n > kMaxDenseQubits) {
    throw ResourceError("pauli_matrix: 2^" + std::to_string(n) +
                        " dimension exceeds the dense budget");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  // Row r has its single nonzero at column r ^ flip, with a phase from Z and Y.
  std::uint64_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if ((p.x_mask() >> q) & 1ULL) flip |= 1ULL << (n - 1 - q);
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto col = static_cast<std::uint64_t>(r) ^ flip;
    Complex v{1.0, 0.0};
    for (int q = 0; q < n; ++q) {
      const int shift = n - 1 - q;
      const bool row_bit = (static_cast<std::uint64_t>(r) >> shift) & 1ULL;
      switch (p.letter(q)) {
        case 'Z': if (row_bit) v = -v; break;
        // Y|b> = i(-1)^b |1-b>, so <r|Y|c> = i for r=1 and -i for r=0.
        case 'Y': v *= row_bit ? Complex(0.0, 1.0) : Complex(0.0, -1.0); break;
        default: break;
      }
    }
    m(r, static_cast<Eigen::Index>(col)) = v;
  }
  return m;
}

std::vector<PauliString> parse_pauli_list(std::string_view text) {
  std::vector<PauliString> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(PauliString::parse(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (const auto& p : out) {
    if (p.n_qubits() != out.front().n_qubits()) {
      throw std::invalid_argument("Pauli list mixes qubit counts: " +
                                  std::string(text));
    }
  }
  return out;
}

std::string format_pauli_list(const std::vector<PauliString>& strings) {
  std::string s;
  for (std::size_t i = 0; i < strings.size(); ++i) {
    if (i) s += ',';
    s += strings[i].str();
  }
  return s;
}

}  // namespace sungrad
