#include "orekit/maps.hpp"

namespace orekit {

DerivationSpec::DerivationSpec(FieldPtr f, std::map<std::uint32_t, RatFunc> imgs)
    : field(std::move(f)), images(std::move(imgs)) {
    if (images.size() != field->nvars()) throw Error("derivation: every generator needs exactly one image");
    for (auto& [v, img] : images) {
        if (v >= field->nvars()) throw Error("derivation: image for unknown variable");
        require_same_field(field, img.field());
    }
}

const RatFunc& DerivationSpec::image(std::uint32_t var) const {
    auto it = images.find(var);
    if (it == images.end()) throw Error("derivation: no image for variable");
    return it->second;
}

RatFunc apply_derivation_poly(const DerivationSpec& d, const MultiPoly& u) {
    RatFunc acc = RatFunc::zero(d.field);
    const std::uint64_t ch = d.field->characteristic;
    for (auto& [m, c] : u.terms()) {
        for (auto& [v, e] : m.exps) {
            // c * e * x_v^(e-1) * prod_{w != v} x_w^(e_w) * d(x_v)
            Scalar k = c * Scalar::of_int(ch, static_cast<std::int64_t>(e));
            if (k.is_zero()) continue;
            Monomial rest;
            for (auto& [w, ew] : m.exps) {
                std::uint32_t x = (w == v) ? ew - 1 : ew;
                if (x) rest.exps.emplace_back(w, x);
            }
            acc = acc + RatFunc(MultiPoly::of_term(d.field, rest, k)) * d.image(v);
        }
    }
    return acc;
}

RatFunc apply_derivation(const DerivationSpec& d, const RatFunc& f) {
    require_same_field(d.field, f.field());
    RatFunc du = apply_derivation_poly(d, f.num());
    if (f.is_polynomial()) {
        Scalar c = f.den().constant_term();
        return c.is_one() ? du : du.scaled(c.inverse());
    }
    RatFunc dv = apply_derivation_poly(d, f.den());
    RatFunc u(f.num()), v(f.den());
    return (du * v - u * dv) / (v * v);
}

DerivationPower::DerivationPower(DerivationSpec d, std::uint64_t n) : d_(std::move(d)), n_(n) {
    by_power_.resize(n + 1);
    for (std::uint32_t v = 0; v < d_.field->nvars(); ++v) by_power_[0][v] = RatFunc::variable(d_.field, v);
    for (std::uint64_t j = 1; j <= n; ++j)
        for (std::uint32_t v = 0; v < d_.field->nvars(); ++v)
            by_power_[j][v] = apply_derivation(d_, by_power_[j - 1][v]);
}

RatFunc DerivationPower::operator()(const RatFunc& f) const {
    RatFunc g = f;
    for (std::uint64_t i = 0; i < n_; ++i) g = apply_derivation(d_, g);
    return g;
}

const RatFunc& DerivationPower::image(std::uint32_t var) const {
    return by_power_[n_].at(var);
}

DerivationSpec DerivationPower::to_derivation_spec() const {
    return DerivationSpec(d_.field, by_power_[n_]);
}

DerivationPower compose_power(DerivationSpec d, std::uint64_t n) {
    return DerivationPower(std::move(d), n);
}

bool derivation_equal_on_generators(const DerivationSpec& d1, const DerivationSpec& d2) {
    require_same_field(d1.field, d2.field);
    for (std::uint32_t v = 0; v < d1.field->nvars(); ++v)
        if (!ratfunc_eq(d1.image(v), d2.image(v))) return false;
    return true;
}

bool derivation_equal_on_generators(const DerivationPower& d1, const DerivationPower& d2) {
    require_same_field(d1.base().field, d2.base().field);
    for (std::uint32_t v = 0; v < d1.base().field->nvars(); ++v)
        if (!ratfunc_eq(d1.image(v), d2.image(v))) return false;
    return true;
}

AutomorphismSpec::AutomorphismSpec(FieldPtr f, std::map<std::uint32_t, RatFunc> imgs,
                                   std::map<std::uint32_t, RatFunc> inverse)
    : field(std::move(f)), images(std::move(imgs)), inverse_images(std::move(inverse)) {
    if (images.size() != field->nvars()) throw Error("automorphism: every generator needs exactly one image");
    if (!inverse_images.empty()) {
        if (inverse_images.size() != field->nvars())
            throw Error("automorphism: inverse must cover every generator");
        AutomorphismSpec inv(field, inverse_images);
        for (std::uint32_t v = 0; v < field->nvars(); ++v) {
            RatFunc round_trip = apply_automorphism(inv, images.at(v));
            if (!ratfunc_eq(round_trip, RatFunc::variable(field, v)))
                throw Error("automorphism: supplied inverse fails on generator " + field->var_name(v));
        }
    }
}

RatFunc apply_automorphism(const AutomorphismSpec& a, const RatFunc& f) {
    require_same_field(a.field, f.field());
    return eval_ratfunc(f, a.field, a.images);
}

}  // namespace orekit
