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

#include "factorqubo/ising.hpp"

#include <algorithm>
#include <cctype>

#include "factorqubo/error.hpp"

namespace factorqubo {

std::string to_string(const Rational &r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational &r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

namespace {

std::int64_t parse_int(const std::string &s, const std::string &whole) {
    if (s.empty())
        throw Error(ErrorKind::Parse, "malformed number '" + whole + "'");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception &) {
        throw Error(ErrorKind::Parse, "malformed number '" + whole + "'");
    }
    if (pos != s.size())
        throw Error(ErrorKind::Parse, "malformed number '" + whole + "'");
    return v;
}

}  // namespace

Rational parse_rational(const std::string &text) {
    if (auto slash = text.find('/'); slash != std::string::npos) {
        auto den = parse_int(text.substr(slash + 1), text);
        if (den == 0)
            throw Error(ErrorKind::Parse, "zero denominator in '" + text + "'");
        return Rational(parse_int(text.substr(0, slash), text), den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        if (frac.size() > 17 || !std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw Error(ErrorKind::Parse, "malformed decimal '" + text + "'");
        std::string whole = text.substr(0, dot);
        bool negative = !whole.empty() && whole[0] == '-';
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        std::int64_t ipart = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole, text);
        std::int64_t fpart = frac.empty() ? 0 : parse_int(frac, text);
        Rational r(ipart);
        r += Rational(negative ? -fpart : fpart, scale);
        return r;
    }
    return Rational(parse_int(text, text));
}

Rational IsingProgram::coupling(VarId u, VarId v) const {
    auto it = j_.find({std::min(u, v), std::max(u, v)});
    return it == j_.end() ? Rational(0) : it->second;
}

void IsingProgram::add_field(VarId v, const Rational &value) {
    if (v >= h_.size())
        throw Error(ErrorKind::InvalidInput, "spin id out of range");
    h_[v] += value;
}

void IsingProgram::add_coupling(VarId u, VarId v, const Rational &value) {
    if (u == v)
        throw Error(ErrorKind::InvalidInput, "self-coupling on '" + vars_.name(u) + "'");
    if (u >= h_.size() || v >= h_.size())
        throw Error(ErrorKind::InvalidInput, "spin id out of range");
    SpinPair key{std::min(u, v), std::max(u, v)};
    auto [it, inserted] = j_.try_emplace(key, value);
    if (!inserted)
        it->second += value;
    if (it->second.numerator() == 0)
        j_.erase(it);
}

Rational IsingProgram::energy(std::span<const std::int8_t> spins) const {
    if (spins.size() < vars_.size())
        throw Error(ErrorKind::IncompleteAssignment, "spin state covers " + std::to_string(spins.size()) + " of " +
                                                         std::to_string(vars_.size()) + " spins");
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (spins[i] != 1 && spins[i] != -1)
            throw Error(ErrorKind::WrongVariableDomain, "spin '" + vars_.name(static_cast<VarId>(i)) + "' is not +-1");
    Rational e = offset_;
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (h_[i].numerator() != 0)
            e += spins[i] > 0 ? h_[i] : -h_[i];
    for (const auto &[pair, value] : j_)
        e += spins[pair.first] == spins[pair.second] ? value : -value;
    return e;
}

Rational IsingProgram::max_abs_coefficient() const {
    Rational best{0};
    for (const auto &h : h_)
        best = std::max(best, abs(h));
    for (const auto &[pair, value] : j_)
        best = std::max(best, abs(value));
    return best;
}

IsingProgram to_ising(const PseudoBooleanPolynomial &qubo) {
    if (qubo.degree() > 2)
        throw Error(ErrorKind::NotQuadratic, "degree " + std::to_string(qubo.degree()) + " polynomial");
    IsingProgram out(qubo.variables());
    for (const auto &[m, c] : qubo.terms()) {
        Rational k(c);
        switch (m.degree()) {
        case 0: out.add_offset(k); break;
        case 1:
            // c x = c/2 s + c/2
            out.add_field(m[0], k / 2);
            out.add_offset(k / 2);
            break;
        case 2:
            // c x y = c/4 (s t + s + t + 1)
            out.add_coupling(m[0], m[1], k / 4);
            out.add_field(m[0], k / 4);
            out.add_field(m[1], k / 4);
            out.add_offset(k / 4);
            break;
        }
    }
    return out;
}

namespace {

Coeff require_integral(const Rational &r) {
    if (r.denominator() != 1)
        throw Error(ErrorKind::InvalidInput, "Ising program maps to a non-integral QUBO coefficient " + to_string(r));
    return r.numerator();
}

}  // namespace

PseudoBooleanPolynomial from_ising(const IsingProgram &ising) {
    // Accumulate in rationals first: individual pieces may be fractional even
    // when the final coefficients are integral.
    std::map<Monomial, Rational> acc;
    Rational constant = ising.offset();
    for (VarId v = 0; v < ising.size(); ++v) {
        const Rational &h = ising.field(v);
        if (h.numerator() == 0)
            continue;
        // h s = 2h x - h
        acc[Monomial{v}] += 2 * h;
        constant -= h;
    }
    for (const auto &[pair, j] : ising.couplings()) {
        // J s t = 4J xy - 2J x - 2J y + J
        acc[Monomial{pair.first, pair.second}] += 4 * j;
        acc[Monomial{pair.first}] -= 2 * j;
        acc[Monomial{pair.second}] -= 2 * j;
        constant += j;
    }
    PseudoBooleanPolynomial out(ising.variables());
    out.add_term({}, require_integral(constant));
    for (const auto &[m, c] : acc)
        out.add_term(m, require_integral(c));
    return out;
}

}  // namespace factorqubo
