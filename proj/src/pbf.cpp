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

#include "factorqubo/pbf.hpp"

#include <algorithm>
#include <sstream>

#include "factorqubo/error.hpp"

namespace factorqubo {

const char *to_string(VarKind kind) {
    switch (kind) {
    case VarKind::Generic: return "generic";
    case VarKind::PBit: return "p";
    case VarKind::QBit: return "q";
    case VarKind::Carry: return "carry";
    case VarKind::Ancilla: return "ancilla";
    case VarKind::Physical: return "physical";
    }
    return "generic";
}

Coeff checked_add(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "coefficient addition overflows 64 bits");
    return r;
}

Coeff checked_mul(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error(ErrorKind::Overflow, "coefficient product overflows 64 bits");
    return r;
}

Registry::Registry(std::initializer_list<std::string> names) {
    for (const auto &n : names)
        add(n);
}

VarId Registry::add(std::string name, VarKind kind) {
    if (name.empty())
        throw Error(ErrorKind::InvalidInput, "variable name must not be empty");
    if (index_.contains(name))
        throw Error(ErrorKind::InvalidInput, "duplicate variable '" + name + "'");
    auto id = static_cast<VarId>(vars_.size());
    index_.emplace(name, id);
    vars_.push_back({std::move(name), kind});
    return id;
}

std::optional<VarId> Registry::find(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

VarId Registry::at(const std::string &name) const {
    auto id = find(name);
    if (!id)
        throw Error(ErrorKind::InvalidInput, "unknown variable '" + name + "'");
    return *id;
}

bool Registry::is_prefix_of(const Registry &other) const {
    return vars_.size() <= other.vars_.size() && std::equal(vars_.begin(), vars_.end(), other.vars_.begin());
}

Monomial::Monomial(std::initializer_list<VarId> vars) : Monomial(std::vector<VarId>(vars)) {}

Monomial::Monomial(std::vector<VarId> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool Monomial::contains(VarId v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial out;
    out.vars_.reserve(a.vars_.size() + b.vars_.size());
    std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(), std::back_inserter(out.vars_));
    return out;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::constant(Registry vars, Coeff c) {
    PseudoBooleanPolynomial p(std::move(vars));
    p.add_term({}, c);
    return p;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::variable(Registry vars, VarId v, Coeff c) {
    if (v >= vars.size())
        throw Error(ErrorKind::InvalidInput, "variable id out of range");
    PseudoBooleanPolynomial p(std::move(vars));
    p.add_term({v}, c);
    return p;
}

std::size_t PseudoBooleanPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto &[m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

Coeff PseudoBooleanPolynomial::constant_term() const { return coefficient({}); }

Coeff PseudoBooleanPolynomial::coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

std::size_t PseudoBooleanPolynomial::quadratic_term_count() const {
    return static_cast<std::size_t>(
        std::count_if(terms_.begin(), terms_.end(), [](const auto &t) { return t.first.degree() == 2; }));
}

Coeff PseudoBooleanPolynomial::max_abs_coefficient() const {
    Coeff best = 0;
    for (const auto &[m, c] : terms_)
        if (!m.is_constant())
            best = std::max(best, c < 0 ? -c : c);
    return best;
}

void PseudoBooleanPolynomial::add_term(const Monomial &m, Coeff c) {
    if (c == 0)
        return;
    if (!m.is_constant() && m.vars().back() >= vars_.size())
        throw Error(ErrorKind::InvalidInput, "monomial references an unregistered variable");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = checked_add(it->second, c);
        if (it->second == 0)
            terms_.erase(it);
    }
}

Coeff PseudoBooleanPolynomial::evaluate(std::span<const std::uint8_t> assignment) const {
    if (assignment.size() < vars_.size())
        throw Error(ErrorKind::IncompleteAssignment, "assignment covers " + std::to_string(assignment.size()) +
                                                         " of " + std::to_string(vars_.size()) + " variables");
    Coeff total = 0;
    for (const auto &[m, c] : terms_) {
        bool on = std::all_of(m.vars().begin(), m.vars().end(), [&](VarId v) { return assignment[v] != 0; });
        if (on)
            total = checked_add(total, c);
    }
    return total;
}

Coeff PseudoBooleanPolynomial::evaluate(const std::map<std::string, int> &assignment) const {
    std::vector<std::uint8_t> dense(vars_.size());
    for (VarId v = 0; v < vars_.size(); ++v) {
        auto it = assignment.find(vars_.name(v));
        if (it == assignment.end())
            throw Error(ErrorKind::IncompleteAssignment, "no value for '" + vars_.name(v) + "'");
        if (it->second != 0 && it->second != 1)
            throw Error(ErrorKind::WrongVariableDomain, "binary variable '" + vars_.name(v) + "' must be 0 or 1");
        dense[v] = static_cast<std::uint8_t>(it->second);
    }
    return evaluate(dense);
}

void PseudoBooleanPolynomial::adopt_registry(const Registry &other) {
    if (other.is_prefix_of(vars_))
        return;
    if (vars_.is_prefix_of(other)) {
        vars_ = other;
        return;
    }
    throw Error(ErrorKind::InvalidInput, "polynomials are defined over incompatible variable registries");
}

PseudoBooleanPolynomial &PseudoBooleanPolynomial::operator+=(const PseudoBooleanPolynomial &other) {
    adopt_registry(other.vars_);
    for (const auto &[m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

PseudoBooleanPolynomial &PseudoBooleanPolynomial::operator-=(const PseudoBooleanPolynomial &other) {
    adopt_registry(other.vars_);
    for (const auto &[m, c] : other.terms_)
        add_term(m, checked_mul(c, -1));
    return *this;
}

PseudoBooleanPolynomial &PseudoBooleanPolynomial::operator*=(Coeff k) {
    if (k == 0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, c] : terms_)
        c = checked_mul(c, k);
    return *this;
}

PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial &a, const PseudoBooleanPolynomial &b) {
    PseudoBooleanPolynomial out(a.vars_);
    out.adopt_registry(b.vars_);
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_)
            out.add_term(ma * mb, checked_mul(ca, cb));
    return out;
}

std::string PseudoBooleanPolynomial::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        Coeff mag = c < 0 ? -c : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (m.is_constant() || mag != 1)
            os << mag;
        for (std::size_t i = 0; i < m.degree(); ++i)
            os << ((i == 0 && mag == 1) ? "" : "*") << vars_.name(m[i]);
    }
    return os.str();
}

PseudoBooleanPolynomial square(const PseudoBooleanPolynomial &poly) { return poly * poly; }

namespace {

std::string fresh_ancilla_name(const Registry &vars, std::size_t &counter) {
    std::string name;
    do {
        name = "a" + std::to_string(++counter);
    } while (vars.find(name));
    return name;
}

}  // namespace

Quadratization quadratize(const PseudoBooleanPolynomial &poly) {
    Quadratization out{poly, {}};
    PseudoBooleanPolynomial &cur = out.qubo;
    std::size_t ancilla_counter = 0;

    while (true) {
        std::map<std::pair<VarId, VarId>, std::size_t> pair_counts;
        for (const auto &[m, c] : cur.terms()) {
            if (m.degree() < 3)
                continue;
            const auto &v = m.vars();
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = i + 1; j < v.size(); ++j)
                    ++pair_counts[{v[i], v[j]}];
        }
        if (pair_counts.empty())
            break;

        // std::map iterates pairs in lexicographic order, so the first maximum wins ties.
        auto best = pair_counts.begin();
        for (auto it = pair_counts.begin(); it != pair_counts.end(); ++it)
            if (it->second > best->second)
                best = it;
        auto [x, y] = best->first;

        Coeff weight = 1;
        for (const auto &[m, c] : cur.terms())
            if (m.degree() >= 3 && m.contains(x) && m.contains(y))
                weight = checked_add(weight, c < 0 ? -c : c);

        Registry vars = cur.variables();
        VarId a = vars.add(fresh_ancilla_name(vars, ancilla_counter), VarKind::Ancilla);
        PseudoBooleanPolynomial next(vars);
        for (const auto &[m, c] : cur.terms()) {
            if (m.degree() >= 3 && m.contains(x) && m.contains(y)) {
                std::vector<VarId> rest;
                for (VarId v : m.vars())
                    if (v != x && v != y)
                        rest.push_back(v);
                rest.push_back(a);
                next.add_term(Monomial(std::move(rest)), c);
            } else {
                next.add_term(m, c);
            }
        }
        next.add_term({x, y}, weight);
        next.add_term({x, a}, checked_mul(-2, weight));
        next.add_term({y, a}, checked_mul(-2, weight));
        next.add_term({a}, checked_mul(3, weight));
        out.ancillas.emplace(std::make_pair(x, y), a);
        cur = std::move(next);
    }
    return out;
}

}  // namespace factorqubo
