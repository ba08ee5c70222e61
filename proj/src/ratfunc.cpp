#include "orekit/ratfunc.hpp"

#include <sstream>

#include "orekit/config.hpp"

namespace orekit {

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    require_same_field(num_.field(), den_.field());
    if (den_.is_zero()) throw Error("zero denominator");
    normalize();
}

RatFunc::RatFunc(MultiPoly num) : num_(std::move(num)), den_(MultiPoly::one(num_.field())) {}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MultiPoly::one(den_.field());
        return;
    }
    // cheap reduction: common monomial factor
    Monomial g = num_.monomial_content().gcd(den_.monomial_content());
    if (!g.is_one()) {
        MultiPoly gm = MultiPoly::of_term(num_.field(), g, Scalar::of_int(num_.field()->characteristic, 1));
        num_ = *num_.divide_exact(gm);
        den_ = *den_.divide_exact(gm);
    }
    // full GCD pass only for large operands
    if (num_.term_count() > gcd_threshold() || den_.term_count() > gcd_threshold()) {
        MultiPoly d = poly_gcd(num_, den_);
        if (!d.is_constant()) {
            num_ = *num_.divide_exact(d);
            den_ = *den_.divide_exact(d);
        }
    }
    // scalar normalization: denominator leading coefficient 1
    const Scalar& lc = den_.leading_term().second;
    if (!lc.is_one()) {
        Scalar inv = lc.inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

bool RatFunc::is_one() const { return num_ == den_; }

bool RatFunc::is_polynomial() const {
    return den_.is_constant() && !den_.is_zero();
}

Scalar RatFunc::as_scalar() const {
    if (!num_.is_constant() || !den_.is_constant()) throw Error("not a scalar");
    if (num_.is_zero()) return Scalar::of_int(field()->characteristic, 0);
    return num_.constant_term() / den_.constant_term();
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw Error("division by zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc acc = one(field());
    RatFunc base = *this;
    std::uint64_t k = static_cast<std::uint64_t>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool RatFunc::operator==(const RatFunc& o) const { return ratfunc_eq(*this, o); }

RatFunc RatFunc::reduced() const {
    RatFunc r = *this;
    if (r.num_.is_zero()) return r;
    MultiPoly d = poly_gcd(r.num_, r.den_);
    if (!d.is_constant()) {
        r.num_ = *r.num_.divide_exact(d);
        r.den_ = *r.den_.divide_exact(d);
    }
    const Scalar& lc = r.den_.leading_term().second;
    if (!lc.is_one()) {
        Scalar inv = lc.inverse();
        r.num_ = r.num_.scaled(inv);
        r.den_ = r.den_.scaled(inv);
    }
    return r;
}

bool ratfunc_eq(const RatFunc& f, const RatFunc& g) {
    require_same_field(f.field(), g.field());
    return f.num() * g.den() == g.num() * f.den();
}

std::string RatFunc::str() const {
    if (is_polynomial()) return num_.str();
    std::ostringstream os;
    bool nparen = num_.term_count() > 1;
    bool dparen = den_.term_count() > 1;
    os << (nparen ? "(" : "") << num_.str() << (nparen ? ")" : "") << "/"
       << (dparen ? "(" : "") << den_.str() << (dparen ? ")" : "");
    return os.str();
}

RatFunc eval_poly(const MultiPoly& p, const FieldPtr& target,
                  const std::map<std::uint32_t, RatFunc>& images) {
    if (p.field()->characteristic != target->characteristic)
        throw FieldMismatch("eval_poly: characteristic mismatch");
    RatFunc acc = RatFunc::zero(target);
    for (auto& [m, c] : p.terms()) {
        RatFunc term = RatFunc::constant(target, c);
        for (auto& [v, e] : m.exps) {
            auto it = images.find(v);
            if (it == images.end()) throw Error("eval_poly: missing image for variable");
            term = term * it->second.pow(static_cast<std::int64_t>(e));
        }
        acc = acc + term;
    }
    return acc;
}

RatFunc eval_ratfunc(const RatFunc& f, const FieldPtr& target,
                     const std::map<std::uint32_t, RatFunc>& images) {
    RatFunc n = eval_poly(f.num(), target, images);
    RatFunc d = eval_poly(f.den(), target, images);
    return n / d;
}

std::map<Monomial, RatFunc, GrlexLess> pth_power_decompose(const RatFunc& f) {
    const FieldPtr& field = f.field();
    std::uint64_t p = field->characteristic;
    if (p == 0) throw Error("pth_power_decompose requires positive characteristic");

    // clear the denominator into k: f = u v^{p-1} / v^p
    MultiPoly u = f.num() * f.den().pow(p - 1);
    MultiPoly vp = f.den().pow(p);

    std::map<Monomial, MultiPoly, GrlexLess> groups;
    for (auto& [m, c] : u.terms()) {
        Monomial residue, quotient;
        for (auto& [v, e] : m.exps) {
            std::uint32_t r = e % static_cast<std::uint32_t>(p);
            std::uint32_t q = e - r;
            if (r) residue.exps.emplace_back(v, r);
            if (q) quotient.exps.emplace_back(v, q);
        }
        auto it = groups.find(residue);
        if (it == groups.end()) it = groups.emplace(residue, MultiPoly::zero(field)).first;
        it->second.add_term(quotient, c);
    }

    std::map<Monomial, RatFunc, GrlexLess> out;
    for (auto& [residue, numpart] : groups) {
        if (numpart.is_zero()) continue;
        out.emplace(residue, RatFunc(numpart, vp));
    }
    return out;
}

}  // namespace orekit
