#include "coeffbody/forms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace coeffbody {

namespace {

// Sorts in place and returns the permutation sign, or 0 on a repeated index.
int normalize(PolyForm::Index& index) {
    int sign = 1;
    for (std::size_t i = 0; i < index.size(); ++i) {
        for (std::size_t j = 0; j + 1 < index.size() - i; ++j) {
            if (index[j] > index[j + 1]) {
                std::swap(index[j], index[j + 1]);
                sign = -sign;
            }
        }
    }
    if (std::adjacent_find(index.begin(), index.end()) != index.end()) {
        return 0;
    }
    return sign;
}

}  // namespace

PolyForm::PolyForm(std::size_t n, std::size_t degree) : n_(n), degree_(degree) {
    if (degree < 1 || degree > kMaxDegree) {
        throw std::invalid_argument("PolyForm: degree must be 1, 2 or 3");
    }
}

PolyForm PolyForm::dc(std::size_t n, std::size_t k) {
    PolyForm f(n, 1);
    f.add_term({k}, MultiPoly::constant(n, 1));
    return f;
}

MultiPoly PolyForm::coefficient(Index index) const {
    if (index.size() != degree_) {
        throw std::invalid_argument("PolyForm::coefficient: index length differs from degree");
    }
    int sign = normalize(index);
    if (sign == 0) {
        return MultiPoly(n_);
    }
    auto it = terms_.find(index);
    if (it == terms_.end()) {
        return MultiPoly(n_);
    }
    return sign > 0 ? it->second : -it->second;
}

void PolyForm::add_term(Index index, const MultiPoly& coeff) {
    if (index.size() != degree_) {
        throw std::invalid_argument("PolyForm::add_term: index length differs from degree");
    }
    if (coeff.nvars() != n_) {
        throw std::invalid_argument("PolyForm::add_term: coefficient ring mismatch");
    }
    for (std::size_t k : index) {
        if (k < 1 || k > n_) {
            throw std::out_of_range("PolyForm::add_term: index out of range");
        }
    }
    int sign = normalize(index);
    if (sign == 0 || coeff.is_zero()) {
        return;
    }
    auto& slot = terms_.try_emplace(index, MultiPoly(n_)).first->second;
    if (sign > 0) {
        slot += coeff;
    } else {
        slot -= coeff;
    }
    if (slot.is_zero()) {
        terms_.erase(index);
    }
}

void PolyForm::require_same_space(const PolyForm& o) const {
    if (n_ != o.n_ || degree_ != o.degree_) {
        throw std::invalid_argument("PolyForm: dimension or degree mismatch");
    }
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
    require_same_space(o);
    for (const auto& [index, coeff] : o.terms_) {
        add_term(index, coeff);
    }
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
    require_same_space(o);
    for (const auto& [index, coeff] : o.terms_) {
        add_term(index, -coeff);
    }
    return *this;
}

PolyForm operator*(const MultiPoly& f, const PolyForm& a) {
    PolyForm out(a.n_, a.degree_);
    for (const auto& [index, coeff] : a.terms_) {
        out.add_term(index, f * coeff);
    }
    return out;
}

PolyForm PolyForm::at(std::span<const QComplex> point) const {
    PolyForm out(n_, degree_);
    for (const auto& [index, coeff] : terms_) {
        out.add_term(index, MultiPoly::constant(n_, coeff.evaluate(point)));
    }
    return out;
}

std::string PolyForm::to_string() const {
    if (terms_.empty()) {
        return "0";
    }
    auto names = coefficient_names(n_);
    std::ostringstream os;
    bool first = true;
    for (const auto& [index, coeff] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        if (coeff != MultiPoly::constant(n_, 1)) {
            os << "(" << coeff.to_string(names) << ")";
        }
        for (std::size_t i = 0; i < index.size(); ++i) {
            os << (i == 0 ? "" : "^") << "dc" << index[i];
        }
    }
    return os.str();
}

std::vector<PolyForm> dual_basis_forms(std::size_t n) {
    std::vector<PolyForm> omega;
    for (std::size_t k = 1; k <= n; ++k) {
        PolyForm w = PolyForm::dc(n, k);
        for (std::size_t m = 1; m < k; ++m) {
            w -= (MultiPoly::variable(n, m - 1) * QComplex(static_cast<long>(m + 1))) * omega[k - m - 1];
        }
        omega.push_back(std::move(w));
    }
    return omega;
}

std::vector<PolyForm> eta_forms(std::size_t n) {
    if (n < 3) {
        throw std::invalid_argument("eta_forms: n must be at least 3");
    }
    auto omega = dual_basis_forms(n);
    std::vector<PolyForm> eta;
    for (std::size_t k = 3; k <= n; ++k) {
        PolyForm e = PolyForm::dc(n, k);
        e -= (MultiPoly::variable(n, k - 2) * QComplex(static_cast<long>(k))) * omega[0];
        e -= (MultiPoly::variable(n, k - 3) * QComplex(static_cast<long>(k - 1))) * omega[1];
        eta.push_back(std::move(e));
    }
    return eta;
}

MultiPoly pair(const PolyForm& form, const PolyVectorField& field) {
    if (form.degree() != 1) {
        throw std::invalid_argument("pair: only 1-forms can be paired with a vector field");
    }
    if (form.n() != field.n) {
        throw std::invalid_argument("pair: dimension mismatch");
    }
    MultiPoly out(form.n());
    for (const auto& [index, coeff] : form.terms()) {
        out += coeff * field.components[index[0] - 1];
    }
    return out;
}

PolyForm exterior_derivative(const PolyForm& form) {
    if (form.degree() + 1 > PolyForm::kMaxDegree) {
        throw std::invalid_argument("exterior_derivative: unsupported degree");
    }
    PolyForm out(form.n(), form.degree() + 1);
    for (const auto& [index, coeff] : form.terms()) {
        for (std::size_t j = 1; j <= form.n(); ++j) {
            auto dj = coeff.derivative(j - 1);
            if (dj.is_zero()) {
                continue;
            }
            PolyForm::Index full{j};
            full.insert(full.end(), index.begin(), index.end());
            out.add_term(full, dj);
        }
    }
    return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    if (a.n() != b.n()) {
        throw std::invalid_argument("wedge: dimension mismatch");
    }
    if (a.degree() + b.degree() > PolyForm::kMaxDegree) {
        throw std::invalid_argument("wedge: total degree exceeds 3");
    }
    PolyForm out(a.n(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            PolyForm::Index full = ia;
            full.insert(full.end(), ib.begin(), ib.end());
            out.add_term(full, ca * cb);
        }
    }
    return out;
}

}  // namespace coeffbody
