// Copyright 2026 The factorqubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace factorqubo {

using BigInt = boost::multiprecision::cpp_int;

// ceil(log2(n)); 0 for n == 1. Throws InvalidInput for n == 0.
unsigned bit_length(const BigInt &n);

// Number of binary digits of n (floor(log2(n)) + 1, 0 for n == 0). Differs
// from bit_length() only at powers of two.
unsigned digit_count(const BigInt &n);

struct FactorLengths {
    unsigned p = 0;
    unsigned q = 0;

    friend bool operator==(const FactorLengths &, const FactorLengths &) = default;
};

// Equal-length convention: both factors get ceil(L_N / 2) bits.
FactorLengths factor_lengths(unsigned n_length);

enum class FactorRole { P, Q };

// One factor laid out little-endian. Position 0 and position length-1 are
// fixed to 1; positions 1 .. length-2 are free binary variables.
class FactorBitVector {
  public:
    FactorBitVector(FactorRole role, unsigned length);

    FactorRole role() const noexcept { return role_; }
    unsigned length() const noexcept { return length_; }
    unsigned free_count() const noexcept { return length_ - 2; }
    bool is_fixed(unsigned position) const noexcept { return position == 0 || position + 1 == length_; }

    // "p3", "q1", ... for free positions.
    std::string variable_name(unsigned position) const;

    // free_bits[i] is the value of position i + 1.
    BigInt reconstruct(std::span<const std::uint8_t> free_bits) const;

  private:
    FactorRole role_;
    unsigned length_;
};

class FactorizationInstance {
  public:
    FactorizationInstance(BigInt n, unsigned p_length, unsigned q_length);

    const BigInt &n() const noexcept { return n_; }
    unsigned length() const noexcept { return static_cast<unsigned>(n_bits_.size()); }
    unsigned p_length() const noexcept { return p_length_; }
    unsigned q_length() const noexcept { return q_length_; }
    const std::vector<std::uint8_t> &n_bits() const noexcept { return n_bits_; }
    std::uint8_t n_bit(unsigned i) const { return i < n_bits_.size() ? n_bits_[i] : 0; }

    FactorBitVector p_bits() const { return {FactorRole::P, p_length_}; }
    FactorBitVector q_bits() const { return {FactorRole::Q, q_length_}; }

    // Whether an odd integer with exactly this many bits fits the factor layout.
    bool fits_p(const BigInt &p) const;
    bool fits_q(const BigInt &q) const;

    friend bool operator==(const FactorizationInstance &, const FactorizationInstance &) = default;

  private:
    BigInt n_;
    unsigned p_length_;
    unsigned q_length_;
    std::vector<std::uint8_t> n_bits_;
};

FactorizationInstance make_instance(const BigInt &n, std::optional<FactorLengths> overrides = std::nullopt);

bool verify_factorization(const FactorizationInstance &instance, const BigInt &p, const BigInt &q);

// Whether (p, q), in either order, can be expressed with the instance's factor
// layout. False means the built objectives have no zero-energy state for it.
bool representable(const FactorizationInstance &instance, const BigInt &p, const BigInt &q);

BigInt parse_bigint(const std::string &text);
std::string to_string(const BigInt &n);

}  // namespace factorqubo
