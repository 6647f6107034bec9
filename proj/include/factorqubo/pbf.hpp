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

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace factorqubo {

using VarId = std::uint32_t;
using Coeff = std::int64_t;

enum class VarKind { Generic, PBit, QBit, Carry, Ancilla, Physical };

const char *to_string(VarKind kind);

struct Variable {
    std::string name;
    VarKind kind = VarKind::Generic;

    friend bool operator==(const Variable &, const Variable &) = default;
};

// Dense, append-only table of named variables. A VarId is an index into it.
class Registry {
  public:
    Registry() = default;
    Registry(std::initializer_list<std::string> names);

    VarId add(std::string name, VarKind kind = VarKind::Generic);
    std::optional<VarId> find(const std::string &name) const;
    VarId at(const std::string &name) const;

    std::size_t size() const noexcept { return vars_.size(); }
    bool empty() const noexcept { return vars_.empty(); }
    const Variable &operator[](VarId id) const { return vars_[id]; }
    const std::string &name(VarId id) const { return vars_[id].name; }
    VarKind kind(VarId id) const { return vars_[id].kind; }
    auto begin() const { return vars_.begin(); }
    auto end() const { return vars_.end(); }

    // True when the first size() entries of other equal this registry.
    bool is_prefix_of(const Registry &other) const;

    friend bool operator==(const Registry &a, const Registry &b) { return a.vars_ == b.vars_; }

  private:
    std::vector<Variable> vars_;
    std::unordered_map<std::string, VarId> index_;
};

// A product of distinct binary variables. x*x collapses to x on construction.
class Monomial {
  public:
    Monomial() = default;
    Monomial(std::initializer_list<VarId> vars);
    explicit Monomial(std::vector<VarId> vars);

    std::size_t degree() const noexcept { return vars_.size(); }
    bool is_constant() const noexcept { return vars_.empty(); }
    bool contains(VarId v) const;
    const std::vector<VarId> &vars() const noexcept { return vars_; }
    VarId operator[](std::size_t i) const { return vars_[i]; }

    friend Monomial operator*(const Monomial &a, const Monomial &b);
    friend auto operator<=>(const Monomial &, const Monomial &) = default;
    friend bool operator==(const Monomial &, const Monomial &) = default;

  private:
    std::vector<VarId> vars_;
};

// Multilinear polynomial with integer coefficients over a variable registry.
// Holds HUBOs and QUBOs alike; zero coefficients are never stored.
class PseudoBooleanPolynomial {
  public:
    using TermMap = std::map<Monomial, Coeff>;

    PseudoBooleanPolynomial() = default;
    explicit PseudoBooleanPolynomial(Registry vars) : vars_(std::move(vars)) {}

    static PseudoBooleanPolynomial constant(Registry vars, Coeff c);
    static PseudoBooleanPolynomial variable(Registry vars, VarId v, Coeff c = 1);

    const Registry &variables() const noexcept { return vars_; }
    Registry &variables() noexcept { return vars_; }
    const TermMap &terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    std::size_t degree() const;
    bool is_quadratic() const { return degree() <= 2; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Coeff constant_term() const;
    Coeff coefficient(const Monomial &m) const;
    // Number of degree-2 monomials, i.e. edges of the interaction graph.
    std::size_t quadratic_term_count() const;
    // Largest |c| over non-constant terms (0 for a constant polynomial).
    Coeff max_abs_coefficient() const;

    void add_term(const Monomial &m, Coeff c);

    // assignment[v] is the value of variable v; it must cover every variable.
    Coeff evaluate(std::span<const std::uint8_t> assignment) const;
    Coeff evaluate(const std::map<std::string, int> &assignment) const;

    PseudoBooleanPolynomial &operator+=(const PseudoBooleanPolynomial &other);
    PseudoBooleanPolynomial &operator-=(const PseudoBooleanPolynomial &other);
    PseudoBooleanPolynomial &operator*=(Coeff c);
    friend PseudoBooleanPolynomial operator+(PseudoBooleanPolynomial a, const PseudoBooleanPolynomial &b) {
        return a += b;
    }
    friend PseudoBooleanPolynomial operator-(PseudoBooleanPolynomial a, const PseudoBooleanPolynomial &b) {
        return a -= b;
    }
    friend PseudoBooleanPolynomial operator*(PseudoBooleanPolynomial a, Coeff c) { return a *= c; }
    friend PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial &a, const PseudoBooleanPolynomial &b);

    friend bool operator==(const PseudoBooleanPolynomial &, const PseudoBooleanPolynomial &) = default;

    std::string to_string() const;

  private:
    void adopt_registry(const Registry &other);

    Registry vars_;
    TermMap terms_;
};

PseudoBooleanPolynomial square(const PseudoBooleanPolynomial &poly);

struct Quadratization {
    PseudoBooleanPolynomial qubo;
    std::map<std::pair<VarId, VarId>, VarId> ancillas;
};

// Pairwise substitution a = x*y with penalty M*(xy - 2xa - 2ya + 3a) until
// every monomial has degree <= 2. M = 1 + sum of |c| over the monomials that
// contained the chosen pair; the pair is the one shared by the most monomials
// of degree >= 3, ties going to the lexicographically smallest (x, y).
Quadratization quadratize(const PseudoBooleanPolynomial &poly);

// Checked coefficient arithmetic; throws Error(Overflow).
Coeff checked_add(Coeff a, Coeff b);
Coeff checked_mul(Coeff a, Coeff b);

}  // namespace factorqubo
