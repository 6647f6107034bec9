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

#include "factorqubo/model.hpp"

#include <cctype>

#include "factorqubo/error.hpp"

namespace factorqubo {

const char *to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InstanceTooSmall: return "instance-too-small";
    case ErrorKind::EvenInput: return "even-input";
    case ErrorKind::InconsistentLengths: return "inconsistent-lengths";
    case ErrorKind::IncompleteAssignment: return "incomplete-assignment";
    case ErrorKind::NotQuadratic: return "not-quadratic";
    case ErrorKind::PlanMismatch: return "plan-mismatch";
    case ErrorKind::WrongVariableDomain: return "wrong-variable-domain";
    case ErrorKind::TooManyVariables: return "too-many-variables";
    case ErrorKind::EmbeddingNotFound: return "embedding-not-found";
    case ErrorKind::EmbeddingMismatch: return "embedding-mismatch";
    case ErrorKind::NoSolution: return "no-solution";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Parse: return "parse-error";
    }
    return "unknown";
}

unsigned digit_count(const BigInt &n) {
    if (n <= 0)
        return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
}

unsigned bit_length(const BigInt &n) {
    if (n <= 0)
        throw Error(ErrorKind::InvalidInput, "bit_length requires n >= 1");
    unsigned top = static_cast<unsigned>(boost::multiprecision::msb(n));
    bool power_of_two = boost::multiprecision::lsb(n) == top;
    return power_of_two ? top : top + 1;
}

FactorLengths factor_lengths(unsigned n_length) {
    if (n_length < 4)
        throw Error(ErrorKind::InstanceTooSmall,
                    "L_N = " + std::to_string(n_length) + " leaves no room for a nontrivial odd semiprime");
    unsigned half = (n_length + 1) / 2;
    return {half, half};
}

FactorBitVector::FactorBitVector(FactorRole role, unsigned length) : role_(role), length_(length) {
    if (length < 2)
        throw Error(ErrorKind::InvalidInput, "factor length must be at least 2");
}

std::string FactorBitVector::variable_name(unsigned position) const {
    if (is_fixed(position) || position >= length_)
        throw Error(ErrorKind::InvalidInput, "position " + std::to_string(position) + " is not a free bit");
    return (role_ == FactorRole::P ? "p" : "q") + std::to_string(position);
}

BigInt FactorBitVector::reconstruct(std::span<const std::uint8_t> free_bits) const {
    if (free_bits.size() != free_count())
        throw Error(ErrorKind::IncompleteAssignment, "expected " + std::to_string(free_count()) + " free bits");
    BigInt value = 1;
    bit_set(value, length_ - 1);
    for (unsigned i = 0; i < free_bits.size(); ++i) {
        if (free_bits[i] > 1)
            throw Error(ErrorKind::WrongVariableDomain, "factor bits must be 0 or 1");
        if (free_bits[i])
            bit_set(value, i + 1);
    }
    return value;
}

FactorizationInstance::FactorizationInstance(BigInt n, unsigned p_length, unsigned q_length)
    : n_(std::move(n)), p_length_(p_length), q_length_(q_length) {
    unsigned len = bit_length(n_);
    n_bits_.resize(len);
    for (unsigned i = 0; i < len; ++i)
        n_bits_[i] = bit_test(n_, i) ? 1 : 0;
}

namespace {

bool fits(const BigInt &x, unsigned length) { return x > 0 && bit_test(x, 0) && digit_count(x) == length; }

}  // namespace

bool FactorizationInstance::fits_p(const BigInt &p) const { return fits(p, p_length_); }
bool FactorizationInstance::fits_q(const BigInt &q) const { return fits(q, q_length_); }

FactorizationInstance make_instance(const BigInt &n, std::optional<FactorLengths> overrides) {
    if (n < 9)
        throw Error(ErrorKind::InstanceTooSmall, "N must be at least 9, got " + to_string(n));
    if (!bit_test(n, 0))
        throw Error(ErrorKind::EvenInput, "N must be odd, got " + to_string(n));
    unsigned len = bit_length(n);
    FactorLengths lengths = factor_lengths(len);
    if (overrides) {
        unsigned sum = overrides->p + overrides->q;
        if (overrides->p < 2 || overrides->q < 2 || (sum != len && sum != len + 1))
            throw Error(ErrorKind::InconsistentLengths,
                        "L_p + L_q must be L_N or L_N + 1 (L_N = " + std::to_string(len) + ", got " +
                            std::to_string(overrides->p) + " + " + std::to_string(overrides->q) + ")");
        lengths = *overrides;
    }
    return FactorizationInstance(n, lengths.p, lengths.q);
}

bool verify_factorization(const FactorizationInstance &instance, const BigInt &p, const BigInt &q) {
    return p >= 1 && q >= 1 && p * q == instance.n();
}

bool representable(const FactorizationInstance &instance, const BigInt &p, const BigInt &q) {
    return (instance.fits_p(p) && instance.fits_q(q)) || (instance.fits_p(q) && instance.fits_q(p));
}

BigInt parse_bigint(const std::string &text) {
    if (text.empty())
        throw Error(ErrorKind::Parse, "empty integer");
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error(ErrorKind::Parse, "not a non-negative decimal integer: '" + text + "'");
    return BigInt(text);
}

std::string to_string(const BigInt &n) { return n.str(); }

}  // namespace factorqubo
