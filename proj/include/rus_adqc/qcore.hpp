// Copyright 2026 The rus-adqc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file qcore.hpp
 * Dense complex linear algebra for one- and two-qubit operators, the gate
 * constructors used throughout the library, and gate metrics.
 *
 * Conventions fixed here and relied upon everywhere else:
 *  - Tensor ordering: qubit 0 is the most significant factor. In every joint
 *    ancilla/register object the ancilla is qubit 0.
 *  - Roots of Z are trace-real: Zroot(n) = diag(e^{-i pi/2n}, e^{i pi/2n}),
 *    so Zroot(2) = Z^{1/2} and Zroot(4) = Z^{1/4} (the T-equivalent gate).
 *  - CPhase(alpha) applies diag(e^{-2i alpha}, e^{2i alpha}) to the second
 *    factor when the first is |1>. CPhase(pi/8) is C(Z^{1/2}).
 *  - E(alpha) = (H (x) H) CPhase(alpha), the fixed ancilla/register
 *    interaction.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace rus_adqc {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

class SquareOperator {
  public:
    SquareOperator() = default;

    /// Zero operator of the given dimension.
    explicit SquareOperator(std::size_t dim)
        : dim_(dim), entries_(dim * dim, cplx{0.0, 0.0}) {
        if (dim == 0) {
            throw std::invalid_argument("SquareOperator: dimension must be positive");
        }
    }

    /// Row-major entries.
    SquareOperator(std::size_t dim, std::vector<cplx> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (dim == 0 || entries_.size() != dim * dim) {
            throw std::invalid_argument("SquareOperator: entry count does not match dimension");
        }
        for (const auto &e : entries_) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
                throw std::invalid_argument("SquareOperator: non-finite entry");
            }
        }
    }

    SquareOperator(std::initializer_list<std::initializer_list<cplx>> rows)
        : dim_(rows.size()) {
        entries_.reserve(dim_ * dim_);
        for (const auto &row : rows) {
            if (row.size() != dim_) {
                throw std::invalid_argument("SquareOperator: ragged rows");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static SquareOperator identity(std::size_t dim) {
        SquareOperator out(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            out(i, i) = 1.0;
        }
        return out;
    }

    static SquareOperator diagonal(const std::vector<cplx> &diag) {
        SquareOperator out(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            out(i, i) = diag[i];
        }
        return out;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<cplx> &entries() const noexcept { return entries_; }

    cplx &operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim_ + c];
    }

    [[nodiscard]] SquareOperator adjoint() const {
        SquareOperator out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    [[nodiscard]] cplx trace() const {
        cplx t{0.0, 0.0};
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    SquareOperator &operator*=(cplx s) {
        for (auto &e : entries_) {
            e *= s;
        }
        return *this;
    }

    friend SquareOperator operator*(const SquareOperator &a, const SquareOperator &b) {
        require_same_dim(a, b);
        const std::size_t n = a.dim_;
        SquareOperator out(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{0.0, 0.0}) {
                    continue;
                }
                for (std::size_t c = 0; c < n; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    friend SquareOperator operator*(cplx s, SquareOperator a) {
        a *= s;
        return a;
    }

    friend SquareOperator operator+(SquareOperator a, const SquareOperator &b) {
        require_same_dim(a, b);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            a.entries_[i] += b.entries_[i];
        }
        return a;
    }

    friend SquareOperator operator-(SquareOperator a, const SquareOperator &b) {
        require_same_dim(a, b);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            a.entries_[i] -= b.entries_[i];
        }
        return a;
    }

    static void require_same_dim(const SquareOperator &a, const SquareOperator &b) {
        if (a.dim_ != b.dim_) {
            throw Error(Errc::DimensionMismatch,
                        "dimension mismatch: " + std::to_string(a.dim_) + " vs " +
                            std::to_string(b.dim_));
        }
    }

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> entries_;
};

[[nodiscard]] inline double max_abs_diff(const SquareOperator &a, const SquareOperator &b) {
    SquareOperator::require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

/// max |U^dagger U - I|.
[[nodiscard]] inline double unitarity_error(const SquareOperator &u) {
    return max_abs_diff(u.adjoint() * u, SquareOperator::identity(u.dim()));
}

/// max-entry difference between a and e^{i theta} b, with theta chosen to
/// align the two operators' overlap. Zero iff equal up to global phase.
[[nodiscard]] inline double phase_aligned_diff(const SquareOperator &a, const SquareOperator &b) {
    const cplx overlap = (b.adjoint() * a).trace();
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    return max_abs_diff(a, phase * b);
}

[[nodiscard]] inline SquareOperator kron(const SquareOperator &a, const SquareOperator &b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    SquareOperator out(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra) {
        for (std::size_t ca = 0; ca < na; ++ca) {
            const cplx s = a(ra, ca);
            for (std::size_t rb = 0; rb < nb; ++rb) {
                for (std::size_t cb = 0; cb < nb; ++cb) {
                    out(ra * nb + rb, ca * nb + cb) = s * b(rb, cb);
                }
            }
        }
    }
    return out;
}

/// Gauss-Jordan inverse with partial pivoting.
[[nodiscard]] inline SquareOperator inverse(const SquareOperator &m) {
    const std::size_t n = m.dim();
    SquareOperator a = m;
    SquareOperator inv = SquareOperator::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, col)) < 1e-300) {
            throw std::domain_error("inverse: singular operator");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const cplx d = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= d;
            inv(col, c) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const cplx f = a(r, col);
            if (f == cplx{0.0, 0.0}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

/// Closest unitary in the polar sense, via the Newton iteration
/// X <- (X + X^{-dagger}) / 2. Intended for operators already within
/// roundoff of unitary, where it converges in two or three iterations.
[[nodiscard]] inline SquareOperator polar_project(const SquareOperator &m) {
    SquareOperator x = m;
    for (int it = 0; it < 20; ++it) {
        SquareOperator next = 0.5 * (x + inverse(x).adjoint());
        const double delta = max_abs_diff(next, x);
        x = std::move(next);
        if (delta < 1e-15) {
            break;
        }
    }
    return x;
}

/// Full 2^n operator for a two-qubit gate u acting on qubits (qa, qb) of an
/// n-qubit system; the first tensor factor of u acts on qa.
[[nodiscard]] inline SquareOperator embed_two_qubit(const SquareOperator &u, std::size_t qa,
                                                    std::size_t qb, std::size_t n) {
    if (u.dim() != 4 || qa == qb || qa >= n || qb >= n) {
        throw std::invalid_argument("embed_two_qubit: bad gate or qubit indices");
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t sa = n - 1 - qa;
    const std::size_t sb = n - 1 - qb;
    SquareOperator out(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t ba = (col >> sa) & 1U;
        const std::size_t bb = (col >> sb) & 1U;
        const std::size_t rest = col & ~((std::size_t{1} << sa) | (std::size_t{1} << sb));
        for (std::size_t ra = 0; ra < 2; ++ra) {
            for (std::size_t rb = 0; rb < 2; ++rb) {
                const std::size_t row = rest | (ra << sa) | (rb << sb);
                out(row, col) = u(ra * 2 + rb, ba * 2 + bb);
            }
        }
    }
    return out;
}

/// Full 2^n operator for a single-qubit gate on qubit q of an n-qubit system.
[[nodiscard]] inline SquareOperator embed_one_qubit(const SquareOperator &u, std::size_t q,
                                                    std::size_t n) {
    if (u.dim() != 2 || q >= n) {
        throw std::invalid_argument("embed_one_qubit: bad gate or qubit index");
    }
    SquareOperator out = SquareOperator::identity(1);
    for (std::size_t k = 0; k < n; ++k) {
        out = kron(out, k == q ? u : SquareOperator::identity(2));
    }
    return out;
}

// ---------------------------------------------------------------------------
// States

class StateVector {
  public:
    StateVector() = default;

    /// Validates the norm (within 1e-10) and renormalizes exactly.
    StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes)
        : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
        if (n_qubits == 0 || amps_.size() != (std::size_t{1} << n_qubits)) {
            throw std::invalid_argument("StateVector: amplitude count must be 2^n_qubits");
        }
        const double nrm = norm();
        if (!std::isfinite(nrm) || std::abs(nrm * nrm - 1.0) > 1e-10) {
            throw std::invalid_argument("StateVector: amplitudes are not normalized");
        }
        for (auto &a : amps_) {
            a /= nrm;
        }
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    static StateVector normalized(std::size_t n_qubits, std::vector<cplx> amplitudes) {
        double s = 0.0;
        for (const auto &a : amplitudes) {
            s += std::norm(a);
        }
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("StateVector: cannot normalize a zero vector");
        }
        const double inv = 1.0 / std::sqrt(s);
        for (auto &a : amplitudes) {
            a *= inv;
        }
        return StateVector(n_qubits, std::move(amplitudes));
    }

    static StateVector basis(std::size_t n_qubits, std::size_t index) {
        std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
        amps.at(index) = 1.0;
        return StateVector(n_qubits, std::move(amps));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] const std::vector<cplx> &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Applies a 2x2 gate to qubit q. The result is left unnormalized only by
    /// roundoff; no renormalization happens here.
    void apply(const SquareOperator &u, std::size_t q) {
        if (u.dim() != 2 || q >= n_qubits_) {
            throw std::invalid_argument("StateVector::apply: bad gate or qubit index");
        }
        const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - q);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & stride) != 0) {
                continue;
            }
            const cplx a0 = amps_[i];
            const cplx a1 = amps_[i | stride];
            amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
            amps_[i | stride] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }

    /// Applies a 4x4 gate to qubits (qa, qb); its first tensor factor acts on qa.
    void apply(const SquareOperator &u, std::size_t qa, std::size_t qb) {
        if (u.dim() != 4 || qa == qb || qa >= n_qubits_ || qb >= n_qubits_) {
            throw std::invalid_argument("StateVector::apply: bad gate or qubit indices");
        }
        const std::size_t sa = std::size_t{1} << (n_qubits_ - 1 - qa);
        const std::size_t sb = std::size_t{1} << (n_qubits_ - 1 - qb);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & sa) != 0 || (i & sb) != 0) {
                continue;
            }
            const std::array<std::size_t, 4> idx{i, i | sb, i | sa, i | sa | sb};
            std::array<cplx, 4> in{};
            for (std::size_t k = 0; k < 4; ++k) {
                in[k] = amps_[idx[k]];
            }
            for (std::size_t r = 0; r < 4; ++r) {
                cplx acc{0.0, 0.0};
                for (std::size_t c = 0; c < 4; ++c) {
                    acc += u(r, c) * in[c];
                }
                amps_[idx[r]] = acc;
            }
        }
    }

    /// Applies a full 2^n operator.
    void apply_full(const SquareOperator &u) {
        if (u.dim() != amps_.size()) {
            throw Error(Errc::DimensionMismatch, "StateVector::apply_full: dimension mismatch");
        }
        std::vector<cplx> out(amps_.size(), cplx{0.0, 0.0});
        for (std::size_t r = 0; r < amps_.size(); ++r) {
            for (std::size_t c = 0; c < amps_.size(); ++c) {
                out[r] += u(r, c) * amps_[c];
            }
        }
        amps_ = std::move(out);
    }

    void renormalize() {
        const double nrm = norm();
        for (auto &a : amps_) {
            a /= nrm;
        }
    }

  private:
    std::size_t n_qubits_ = 0;
    std::vector<cplx> amps_;
};

[[nodiscard]] inline cplx inner(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw Error(Errc::DimensionMismatch, "inner: dimension mismatch");
    }
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |<a|b>|^2, global-phase invariant.
[[nodiscard]] inline double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b));
}

// ---------------------------------------------------------------------------
// Gate constructors

namespace gates {

inline SquareOperator I() { return SquareOperator::identity(2); }
inline SquareOperator X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline SquareOperator Y() { return {{0.0, -kI}, {kI, 0.0}}; }
inline SquareOperator Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline SquareOperator H() {
    const double s = 1.0 / std::numbers::sqrt2;
    return {{s, s}, {s, -s}};
}

/// Z^{1/n} in the trace-real convention diag(e^{-i pi/2n}, e^{i pi/2n}).
inline SquareOperator zroot(double n) {
    if (!std::isfinite(n) || n < 1.0) {
        throw std::invalid_argument("Zroot: n must be finite and >= 1");
    }
    const double t = kPi / (2.0 * n);
    return SquareOperator::diagonal({std::polar(1.0, -t), std::polar(1.0, t)});
}

/// e^{-i theta Z / 2}.
inline SquareOperator rz(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("Rz: non-finite angle");
    }
    return SquareOperator::diagonal({std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2)});
}

/// e^{i alpha Z(x)Z}.
inline SquareOperator ising(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::invalid_argument("Ising: non-finite angle");
    }
    const cplx p = std::polar(1.0, alpha);
    const cplx m = std::conj(p);
    return SquareOperator::diagonal({p, m, m, p});
}

/// |0><0| (x) I + |1><1| (x) diag(e^{-2i alpha}, e^{2i alpha}).
inline SquareOperator cphase(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::invalid_argument("CPhase: non-finite angle");
    }
    return SquareOperator::diagonal(
        {1.0, 1.0, std::polar(1.0, -2.0 * alpha), std::polar(1.0, 2.0 * alpha)});
}

/// The fixed interaction (H (x) H) CPhase(alpha).
inline SquareOperator interaction(double alpha) { return kron(H(), H()) * cphase(alpha); }

/// The symmetric flavour (H (x) H) e^{i alpha Z(x)Z}.
inline SquareOperator symmetric_interaction(double alpha) {
    return kron(H(), H()) * ising(alpha);
}

inline SquareOperator pauli(int index) {
    switch (index) {
    case 0: return I();
    case 1: return X();
    case 2: return Y();
    case 3: return Z();
    default: throw std::invalid_argument("pauli: index must be in 0..3");
    }
}

} // namespace gates

/**
 * Builds a named gate. Recognized names: I, X, Y, Z, H, Zroot (parameter n,
 * integer >= 1), Rz (theta), Ising (alpha), CPhase (alpha), E (alpha).
 * Aliases S = Zroot(2) and T = Zroot(4) are accepted for convenience.
 */
[[nodiscard]] inline SquareOperator make_gate(std::string_view name,
                                              std::optional<double> parameter = std::nullopt) {
    if (parameter && !std::isfinite(*parameter)) {
        throw std::invalid_argument("make_gate: non-finite parameter");
    }
    auto need = [&]() -> double {
        if (!parameter) {
            throw std::invalid_argument("make_gate: gate '" + std::string(name) +
                                        "' requires a parameter");
        }
        return *parameter;
    };
    if (name == "I") return gates::I();
    if (name == "X") return gates::X();
    if (name == "Y") return gates::Y();
    if (name == "Z") return gates::Z();
    if (name == "H") return gates::H();
    if (name == "S") return gates::zroot(2);
    if (name == "T") return gates::zroot(4);
    if (name == "Zroot") {
        const double n = need();
        if (n < 1.0 || std::floor(n) != n) {
            throw std::invalid_argument("make_gate: Zroot requires an integer n >= 1");
        }
        return gates::zroot(n);
    }
    if (name == "Rz") return gates::rz(need());
    if (name == "Ising") return gates::ising(need());
    if (name == "CPhase") return gates::cphase(need());
    if (name == "E") return gates::interaction(need());
    throw std::invalid_argument("make_gate: unknown gate '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Metrics

/// d(U, V) = 1 - |Tr(U^dagger V)| / dim, in [0, 1]; zero iff U = e^{i theta} V.
[[nodiscard]] inline double gate_distance(const SquareOperator &u, const SquareOperator &v) {
    SquareOperator::require_same_dim(u, v);
    cplx t{0.0, 0.0};
    const std::size_t n = u.dim();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            t += std::conj(u(r, c)) * v(r, c);
        }
    }
    const double d = 1.0 - std::abs(t) / static_cast<double>(n);
    return std::clamp(d, 0.0, 1.0);
}

struct AxisAngle {
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    double angle = 0.0; ///< radians, [0, pi]
    bool degenerate = false; ///< input was a phase times identity; axis is z by convention
};

/// Decomposes a 2x2 unitary as e^{i g} e^{-i (angle/2) axis.sigma}.
[[nodiscard]] inline AxisAngle axis_angle(const SquareOperator &u) {
    if (u.dim() != 2) {
        throw Error(Errc::DimensionMismatch, "axis_angle: expects a 2x2 operator");
    }
    if (unitarity_error(u) > 1e-10) {
        throw std::invalid_argument("axis_angle: input is not unitary within 1e-10");
    }
    const cplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const cplx root = std::sqrt(det);
    cplx v00 = u(0, 0) / root;
    cplx v01 = u(0, 1) / root;
    cplx v10 = u(1, 0) / root;
    cplx v11 = u(1, 1) / root;
    // Pick the SU(2) representative with non-negative scalar part.
    if ((v00 + v11).real() < 0.0) {
        v00 = -v00;
        v01 = -v01;
        v10 = -v10;
        v11 = -v11;
    }
    const double c = 0.5 * (v00 + v11).real();
    const double nx = -0.5 * (v01 + v10).imag();
    const double ny = 0.5 * (v10 - v01).real();
    const double nz = -0.5 * (v00 - v11).imag();
    const double s = std::sqrt(nx * nx + ny * ny + nz * nz);

    AxisAngle out;
    if (s < 1e-6) {
        out.degenerate = true;
        out.angle = 0.0;
        return out;
    }
    out.axis = {nx / s, ny / s, nz / s};
    out.angle = 2.0 * std::atan2(s, c);
    return out;
}

/// e^{-i (angle/2) axis.sigma}.
[[nodiscard]] inline SquareOperator from_axis_angle(const AxisAngle &aa) {
    const double c = std::cos(aa.angle / 2);
    const double s = std::sin(aa.angle / 2);
    const auto &n = aa.axis;
    return {{cplx{c, -s * n[2]}, cplx{-s * n[1], -s * n[0]}},
            {cplx{s * n[1], -s * n[0]}, cplx{c, s * n[2]}}};
}

/// Reduces an angle to (-pi, pi].
[[nodiscard]] inline double wrap_pi(double x) {
    double r = std::remainder(x, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    return r;
}

/// Reduces an angle to (-pi/2, pi/2] (i.e. modulo pi).
[[nodiscard]] inline double wrap_half_pi(double x) {
    double r = std::remainder(x, kPi);
    if (r <= -kPi / 2) {
        r += kPi;
    }
    return r;
}

/// Arc distance between two angles on the circle of circumference pi.
[[nodiscard]] inline double circular_distance_mod_pi(double a, double b) {
    return std::abs(wrap_half_pi(a - b));
}

/**
 * Phases of a diagonal two-qubit unitary written as
 * e^{i g} (e^{i z1 Z} (x) e^{i z2 Z}) e^{i beta Z(x)Z}.
 *
 * The four diagonal phases fix (g, z1, z2, beta) only up to the shifts
 * (beta, z1, z2, g) -> (beta + pi/2, z1 - pi/2, z2 - pi/2, g + pi/2) and
 * independent pi shifts of z2 or beta absorbed into g. The canonical
 * representative has z1 in [-pi/4, pi/4), z2 in [-pi/2, pi/2),
 * beta in (-pi/2, pi/2] and g in (-pi, pi].
 */
struct IsingDecomposition {
    double global_phase = 0.0;
    double z1 = 0.0;
    double z2 = 0.0;
    double beta = 0.0;
};

[[nodiscard]] inline SquareOperator reconstruct(const IsingDecomposition &d) {
    std::vector<cplx> diag(4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double sa = a == 0 ? 1.0 : -1.0;
            const double sb = b == 0 ? 1.0 : -1.0;
            diag[static_cast<std::size_t>(2 * a + b)] =
                std::polar(1.0, d.global_phase + d.z1 * sa + d.z2 * sb + d.beta * sa * sb);
        }
    }
    return SquareOperator::diagonal(diag);
}

[[nodiscard]] inline IsingDecomposition ising_decompose(const SquareOperator &u) {
    if (u.dim() != 4) {
        throw Error(Errc::DimensionMismatch, "ising_decompose: expects a 4x4 operator");
    }
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (r != c && std::abs(u(r, c)) >= 1e-10) {
                throw Error(Errc::NotDiagonal, "ising_decompose: input is not diagonal");
            }
        }
    }
    std::array<double, 4> ph{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(std::abs(u(i, i)) - 1.0) > 1e-8) {
            throw std::invalid_argument("ising_decompose: diagonal entry is not unimodular");
        }
        ph[i] = std::arg(u(i, i));
    }
    IsingDecomposition d;
    d.global_phase = (ph[0] + ph[1] + ph[2] + ph[3]) / 4;
    d.z1 = (ph[0] + ph[1] - ph[2] - ph[3]) / 4;
    d.z2 = (ph[0] - ph[1] + ph[2] - ph[3]) / 4;
    d.beta = (ph[0] - ph[1] - ph[2] + ph[3]) / 4;

    const double half = kPi / 2;
    const double k1 = std::floor((d.z1 + kPi / 4) / half);
    d.z1 -= k1 * half;
    d.z2 -= k1 * half;
    d.beta += k1 * half;
    d.global_phase += k1 * half;

    const double k2 = std::floor((d.z2 + half) / kPi);
    d.z2 -= k2 * kPi;
    d.global_phase += k2 * kPi;

    const double wrapped = wrap_half_pi(d.beta);
    d.global_phase += std::round((d.beta - wrapped) / kPi) * kPi;
    d.beta = wrapped;
    d.global_phase = wrap_pi(d.global_phase);
    return d;
}

} // namespace rus_adqc
