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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "factorqubo/pbf.hpp"

namespace factorqubo {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational &r);
// Accepts "7", "-3/4" and finite decimals such as "0.125".
Rational parse_rational(const std::string &text);
double to_double(const Rational &r);

using SpinPair = std::pair<VarId, VarId>;

// H(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j + offset over s_i in {-1, +1}.
class IsingProgram {
  public:
    using CouplingMap = std::map<SpinPair, Rational>;

    IsingProgram() = default;
    explicit IsingProgram(Registry vars) : vars_(std::move(vars)), h_(vars_.size()) {}

    const Registry &variables() const noexcept { return vars_; }
    std::size_t size() const noexcept { return vars_.size(); }

    const std::vector<Rational> &fields() const noexcept { return h_; }
    const Rational &field(VarId v) const { return h_.at(v); }
    const CouplingMap &couplings() const noexcept { return j_; }
    Rational coupling(VarId u, VarId v) const;
    const Rational &offset() const noexcept { return offset_; }

    void add_field(VarId v, const Rational &value);
    // Pairs are stored as (min, max); u == v is rejected.
    void add_coupling(VarId u, VarId v, const Rational &value);
    void add_offset(const Rational &value) { offset_ += value; }

    // spins[v] in {-1, +1}; throws WrongVariableDomain otherwise.
    Rational energy(std::span<const std::int8_t> spins) const;

    // Largest |h| or |J| (offset excluded).
    Rational max_abs_coefficient() const;

    friend bool operator==(const IsingProgram &, const IsingProgram &) = default;

  private:
    Registry vars_;
    std::vector<Rational> h_;
    CouplingMap j_;
    Rational offset_{0};
};

// x = (s + 1) / 2. Throws NotQuadratic for degree > 2.
IsingProgram to_ising(const PseudoBooleanPolynomial &qubo);

// s = 2x - 1. Throws InvalidInput if a resulting coefficient is not an integer.
PseudoBooleanPolynomial from_ising(const IsingProgram &ising);

}  // namespace factorqubo
