#include "coeffbody/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace coeffbody {

MultiPoly MultiPoly::constant(std::size_t nvars, const QComplex& value) {
    MultiPoly p(nvars);
    p.add_term(Exponent(nvars, 0), value);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) {
        throw std::out_of_range("MultiPoly::variable: index out of range");
    }
    Exponent e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, std::move(e), 1);
}

MultiPoly MultiPoly::monomial(std::size_t nvars, Exponent exponent, const QComplex& coeff) {
    if (exponent.size() != nvars) {
        throw std::invalid_argument("MultiPoly::monomial: exponent length mismatch");
    }
    MultiPoly p(nvars);
    p.add_term(exponent, coeff);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) {
        return true;
    }
    if (terms_.size() > 1) {
        return false;
    }
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; });
}

QComplex MultiPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

QComplex MultiPoly::coefficient(const Exponent& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? QComplex{} : it->second;
}

unsigned MultiPoly::total_degree() const {
    unsigned deg = 0;
    for (const auto& [e, c] : terms_) {
        unsigned d = 0;
        for (unsigned v : e) {
            d += v;
        }
        deg = std::max(deg, d);
    }
    return deg;
}

void MultiPoly::add_term(const Exponent& exponent, const QComplex& coeff) {
    if (exponent.size() != nvars_) {
        throw std::invalid_argument("MultiPoly::add_term: exponent length mismatch");
    }
    if (coeff.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void MultiPoly::require_same_ring(const MultiPoly& o) const {
    if (nvars_ != o.nvars_) {
        throw std::invalid_argument("MultiPoly: variable-count mismatch (" + std::to_string(nvars_) + " vs " +
                                    std::to_string(o.nvars_) + ")");
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [e, c] : r.terms_) {
        c = -c;
    }
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    require_same_ring(o);
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_same_ring(b);
    MultiPoly r(a.nvars_);
    MultiPoly::Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const QComplex& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) {
        c *= s;
    }
    return *this;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    if (var >= nvars_) {
        throw std::out_of_range("MultiPoly::derivative: variable out of range");
    }
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) {
            continue;
        }
        Exponent d = e;
        --d[var];
        r.add_term(d, c * QComplex(static_cast<long>(e[var])));
    }
    return r;
}

MultiPoly MultiPoly::extended(std::size_t nvars) const {
    if (nvars < nvars_) {
        throw std::invalid_argument("MultiPoly::extended: cannot drop variables");
    }
    MultiPoly r(nvars);
    for (const auto& [e, c] : terms_) {
        Exponent x = e;
        x.resize(nvars, 0);
        r.terms_.emplace(std::move(x), c);
    }
    return r;
}

MultiPoly MultiPoly::substitute(std::size_t var, const QComplex& value) const {
    if (var >= nvars_) {
        throw std::out_of_range("MultiPoly::substitute: variable out of range");
    }
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        QComplex factor = 1;
        for (unsigned k = 0; k < e[var]; ++k) {
            factor *= value;
        }
        Exponent x = e;
        x[var] = 0;
        r.add_term(x, c * factor);
    }
    return r;
}

MultiPoly MultiPoly::conj() const {
    MultiPoly r(*this);
    for (auto& [e, c] : r.terms_) {
        c = c.conj();
    }
    return r;
}

namespace {

template <class T>
T evaluate_impl(const MultiPoly::TermMap& terms, std::size_t nvars, std::span<const T> point) {
    if (point.size() != nvars) {
        throw std::invalid_argument("MultiPoly::evaluate: point dimension mismatch");
    }
    T sum{};
    for (const auto& [e, c] : terms) {
        T term;
        if constexpr (std::is_same_v<T, QComplex>) {
            term = c;
        } else {
            term = c.to_complex();
        }
        for (std::size_t i = 0; i < nvars; ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                term *= point[i];
            }
        }
        sum += term;
    }
    return sum;
}

}  // namespace

QComplex MultiPoly::evaluate(std::span<const QComplex> point) const {
    return evaluate_impl<QComplex>(terms_, nvars_, point);
}

std::complex<double> MultiPoly::evaluate(std::span<const std::complex<double>> point) const {
    return evaluate_impl<std::complex<double>>(terms_, nvars_, point);
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
    if (names.size() < nvars_) {
        throw std::invalid_argument("MultiPoly::to_string: not enough variable names");
    }
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    // Highest total degree first reads more naturally.
    std::vector<std::pair<Exponent, QComplex>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
        unsigned dx = 0;
        unsigned dy = 0;
        for (unsigned v : x.first) dx += v;
        for (unsigned v : y.first) dy += v;
        return dx > dy;
    });
    for (const auto& [e, c] : ordered) {
        std::ostringstream mono;
        bool has_var = false;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (has_var) {
                mono << "*";
            }
            mono << names[i];
            if (e[i] > 1) {
                mono << "^" << e[i];
            }
            has_var = true;
        }
        QComplex coeff = c;
        bool negative = coeff.is_real() && sgn(coeff.re) < 0;
        if (negative) {
            coeff = -coeff;
        }
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        bool unit = coeff == QComplex(1);
        if (!has_var) {
            os << coeff;
        } else if (unit) {
            os << mono.str();
        } else {
            os << coeff << "*" << mono.str();
        }
    }
    return os.str();
}

std::string MultiPoly::to_string() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars_; ++i) {
        names.push_back("x" + std::to_string(i + 1));
    }
    return to_string(names);
}

MultiPoly invert_unit(const MultiPoly& p) {
    if (!p.is_constant() || p.is_zero()) {
        throw std::domain_error("MultiPoly: only nonzero constants are invertible");
    }
    return MultiPoly::constant(p.nvars(), QComplex(1) / p.constant_term());
}

std::vector<std::string> coefficient_names(std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        names.push_back("c" + std::to_string(i));
    }
    return names;
}

}  // namespace coeffbody
