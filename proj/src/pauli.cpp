// Copyright 2026 The dicke-vqe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dicke/pauli.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "dicke/error.hpp"

namespace dicke {

char pauli_char(Pauli p) {
    constexpr char table[] = {'I', 'X', 'Y', 'Z'};
    return table[static_cast<int>(p)];
}

Pauli parse_pauli(char c) {
    switch (c) {
    case 'I':
        return Pauli::I;
    case 'X':
        return Pauli::X;
    case 'Y':
        return Pauli::Y;
    case 'Z':
        return Pauli::Z;
    default:
        throw InvalidArgument(std::string("invalid Pauli label '") + c + "'");
    }
}

PauliString::PauliString(std::initializer_list<std::pair<unsigned, Pauli>> factors) {
    for (const auto &[q, p] : factors) {
        if (at(q) != Pauli::I) {
            throw InvalidArgument("duplicate qubit in Pauli string");
        }
        set(q, p);
    }
}

PauliString PauliString::from_label(std::string_view label) {
    PauliString s;
    for (std::size_t q = 0; q < label.size(); ++q) {
        s.set(static_cast<unsigned>(q), parse_pauli(label[q]));
    }
    return s;
}

Pauli PauliString::at(unsigned qubit) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), qubit,
                               [](const auto &f, unsigned q) { return f.first < q; });
    return (it != factors_.end() && it->first == qubit) ? it->second : Pauli::I;
}

void PauliString::set(unsigned qubit, Pauli p) {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), qubit,
                               [](const auto &f, unsigned q) { return f.first < q; });
    const bool present = it != factors_.end() && it->first == qubit;
    if (p == Pauli::I) {
        if (present) {
            factors_.erase(it);
        }
    } else if (present) {
        it->second = p;
    } else {
        factors_.insert(it, {qubit, p});
    }
}

unsigned PauliString::span() const { return factors_.empty() ? 0 : factors_.back().first + 1; }

std::uint64_t PauliString::x_mask() const {
    std::uint64_t m = 0;
    for (const auto &[q, p] : factors_) {
        if (p == Pauli::X || p == Pauli::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t m = 0;
    for (const auto &[q, p] : factors_) {
        if (p == Pauli::Z || p == Pauli::Y) {
            m |= std::uint64_t{1} << q;
        }
    }
    return m;
}

std::string PauliString::label(unsigned n_qubits) const {
    std::string s(std::max(n_qubits, span()), 'I');
    for (const auto &[q, p] : factors_) {
        s[q] = pauli_char(p);
    }
    return s;
}

namespace {

// a * b = phase * c for single-qubit Paulis.
std::pair<cplx, Pauli> multiply_single(Pauli a, Pauli b) {
    if (a == Pauli::I) {
        return {1.0, b};
    }
    if (b == Pauli::I) {
        return {1.0, a};
    }
    if (a == b) {
        return {1.0, Pauli::I};
    }
    const int ia = static_cast<int>(a);
    const int ib = static_cast<int>(b);
    const auto c = static_cast<Pauli>(6 - ia - ib);
    // cyclic X->Y->Z gives +i
    const bool cyclic = (ib - ia + 3) % 3 == 1;
    return {cyclic ? cplx(0, 1) : cplx(0, -1), c};
}

} // namespace

std::pair<cplx, PauliString> PauliString::multiply(const PauliString &other) const {
    PauliString out;
    cplx phase = 1.0;
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            auto [ph, p] = multiply_single(a->second, b->second);
            phase *= ph;
            if (p != Pauli::I) {
                out.factors_.emplace_back(a->first, p);
            }
            ++a;
            ++b;
        }
    }
    return {phase, out};
}

bool PauliString::qubitwise_commutes(const PauliString &other) const {
    for (const auto &[q, p] : factors_) {
        const Pauli o = other.at(q);
        if (o != Pauli::I && o != p) {
            return false;
        }
    }
    return true;
}

void PauliTermSum::set_num_qubits(unsigned n) {
    for (const auto &[s, c] : terms_) {
        if (s.span() > n) {
            throw InvalidArgument("term acts outside the requested qubit range");
        }
    }
    n_qubits_ = n;
}

void PauliTermSum::add(cplx coeff, const PauliString &s) {
    n_qubits_ = std::max(n_qubits_, s.span());
    terms_[s] += coeff;
}

void PauliTermSum::add(const PauliTermSum &other, cplx scale) {
    n_qubits_ = std::max(n_qubits_, other.n_qubits_);
    for (const auto &[s, c] : other.terms_) {
        terms_[s] += scale * c;
    }
}

cplx PauliTermSum::coefficient(const PauliString &s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

PauliTermSum PauliTermSum::canonicalized(double threshold) const {
    PauliTermSum out(n_qubits_);
    for (const auto &[s, c] : terms_) {
        cplx v = c;
        if (std::abs(v.real()) < threshold) {
            v.real(0.0);
        }
        if (std::abs(v.imag()) < threshold) {
            v.imag(0.0);
        }
        if (v != cplx(0.0)) {
            out.terms_.emplace(s, v);
        }
    }
    return out;
}

PauliTermSum PauliTermSum::adjoint() const {
    PauliTermSum out(n_qubits_);
    for (const auto &[s, c] : terms_) {
        out.terms_.emplace(s, std::conj(c));
    }
    return out;
}

bool PauliTermSum::is_hermitian(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [tol](const auto &t) { return std::abs(t.second.imag()) <= tol; });
}

std::size_t PauliTermSum::max_weight() const {
    std::size_t w = 0;
    for (const auto &[s, c] : terms_) {
        w = std::max(w, s.weight());
    }
    return w;
}

PauliTermSum PauliTermSum::operator*(const PauliTermSum &other) const {
    PauliTermSum out(std::max(n_qubits_, other.n_qubits_));
    for (const auto &[sa, ca] : terms_) {
        for (const auto &[sb, cb] : other.terms_) {
            auto [phase, s] = sa.multiply(sb);
            out.terms_[s] += phase * ca * cb;
        }
    }
    return out.canonicalized();
}

PauliTermSum PauliTermSum::operator+(const PauliTermSum &other) const {
    PauliTermSum out = *this;
    out.add(other);
    return out.canonicalized();
}

PauliTermSum PauliTermSum::operator-(const PauliTermSum &other) const {
    PauliTermSum out = *this;
    out.add(other, -1.0);
    return out.canonicalized();
}

PauliTermSum PauliTermSum::operator*(cplx s) const {
    PauliTermSum out(n_qubits_);
    for (const auto &[str, c] : terms_) {
        out.terms_.emplace(str, c * s);
    }
    return out.canonicalized();
}

Eigen::MatrixXcd PauliTermSum::to_dense() const {
    if (n_qubits_ > 14) {
        throw ResourceError("dense Pauli matrix limited to 14 qubits");
    }
    const std::size_t dim = std::size_t{1} << n_qubits_;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto &[s, c] : terms_) {
        const std::uint64_t x = s.x_mask();
        const std::uint64_t z = s.z_mask();
        int n_y = 0;
        for (const auto &f : s.factors()) {
            n_y += f.second == Pauli::Y ? 1 : 0;
        }
        const cplx iy[] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
        for (std::size_t b = 0; b < dim; ++b) {
            // Y = i X Z, so P|b> = i^{nY} (-1)^{|b & z|} |b ^ x>
            const double sign = (__builtin_popcountll(b & z) % 2) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) +=
                c * iy[n_y % 4] * sign;
        }
    }
    return m;
}

void PauliTermSum::write(std::ostream &os) const {
    char buf[64];
    for (const auto &[s, c] : terms_) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g ", c.real(), c.imag());
        os << buf << s.label(n_qubits_) << '\n';
    }
}

PauliTermSum PauliTermSum::read(std::istream &is) {
    PauliTermSum out;
    std::string line;
    unsigned width = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        double re = 0;
        double im = 0;
        std::string label;
        if (!(ls >> re >> im >> label)) {
            throw InvalidArgument("malformed Pauli term line: " + line);
        }
        if (width != 0 && label.size() != width) {
            throw InvalidArgument("inconsistent Pauli label widths");
        }
        width = static_cast<unsigned>(label.size());
        out.add(cplx(re, im), PauliString::from_label(label));
    }
    out.n_qubits_ = std::max(out.n_qubits_, width);
    return out;
}

PauliTermSum sigma_plus(unsigned qubit, unsigned n_qubits) {
    PauliTermSum s(n_qubits);
    s.add(0.5, PauliString{{qubit, Pauli::X}});
    s.add(cplx(0, -0.5), PauliString{{qubit, Pauli::Y}});
    return s;
}

PauliTermSum sigma_minus(unsigned qubit, unsigned n_qubits) {
    PauliTermSum s(n_qubits);
    s.add(0.5, PauliString{{qubit, Pauli::X}});
    s.add(cplx(0, 0.5), PauliString{{qubit, Pauli::Y}});
    return s;
}

} // namespace dicke
