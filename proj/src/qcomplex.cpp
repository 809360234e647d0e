#include "coeffbody/qcomplex.hpp"

#include <sstream>
#include <stdexcept>

namespace coeffbody {

QComplex& QComplex::operator/=(const QComplex& o) {
    mpq_class d = o.norm();
    if (sgn(d) == 0) {
        throw std::domain_error("QComplex: division by zero");
    }
    mpq_class r = (re * o.re + im * o.im) / d;
    mpq_class m = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(m);
    return *this;
}

std::string QComplex::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QComplex& z) {
    if (z.is_real()) {
        return os << z.re.get_str();
    }
    if (sgn(z.re) == 0) {
        return os << z.im.get_str() << "i";
    }
    os << "(" << z.re.get_str() << (sgn(z.im) < 0 ? "" : "+") << z.im.get_str() << "i)";
    return os;
}

}  // namespace coeffbody
