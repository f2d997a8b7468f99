#include "symplat/schwartz.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace symplat::padic {

Rat Box::reduce_center(const Int& p, const Rat& c, int depth) {
    Int den = denominator(c);
    int m = ord(p, den);
    if (p_power(p, m) != Rat(den))
        throw std::invalid_argument("box center denominator is not a power of p");
    if (depth + m <= 0) return Rat(0);
    Int modulus = boost::multiprecision::pow(p, static_cast<unsigned>(depth + m));
    return Rat(mod_floor(numerator(c), modulus), den);
}

Box::Box(Int p, std::vector<Coord> coords) : p_(std::move(p)), c_(std::move(coords)) {
    if (p_ < 2) throw std::invalid_argument("box: p must be at least 2");
    if (c_.empty()) throw std::invalid_argument("box: dimension must be positive");
    for (Coord& co : c_) co.center = reduce_center(p_, co.center, co.depth);
}

bool Box::contains(const std::vector<Rat>& point) const {
    if (point.size() != c_.size()) throw std::invalid_argument("box: point dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (ord(p_, Rat(point[i] - c_[i].center)) < c_[i].depth) return false;
    return true;
}

Rat Box::volume() const {
    int total = 0;
    for (const Coord& co : c_) total += co.depth;
    return p_power(p_, -total);
}

bool Box::operator==(const Box& o) const {
    if (p_ != o.p_ || c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i].depth != o.c_[i].depth || c_[i].center != o.c_[i].center) return false;
    return true;
}

bool Box::operator<(const Box& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].depth != o.c_[i].depth) return c_[i].depth < o.c_[i].depth;
        if (c_[i].center != o.c_[i].center) return c_[i].center < o.c_[i].center;
    }
    return false;
}

std::string Box::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << " x ";
        os << "(" << to_string(c_[i].center) << " + p^" << c_[i].depth << " Zp)";
    }
    return os.str();
}

Schwartz::Schwartz(Int p, std::size_t dim) : p_(std::move(p)), dim_(dim) {
    if (p_ < 2) throw std::invalid_argument("schwartz: p must be at least 2");
    if (dim_ == 0) throw std::invalid_argument("schwartz: dimension must be positive");
}

Schwartz Schwartz::indicator(const Box& b) {
    Schwartz s(b.prime(), b.dim());
    s.add_term(Cyclotomic(b.prime(), Rat(1)), b);
    return s;
}

void Schwartz::add_term(const Cyclotomic& coeff, const Box& box) {
    if (box.prime() != p_ || box.dim() != dim_)
        throw std::invalid_argument("schwartz: term does not match the ambient space");
    if (coeff.prime() != 0 && coeff.prime() != p_ && !coeff.is_rational())
        throw std::invalid_argument("schwartz: coefficient belongs to a different prime");
    if (coeff.is_zero()) return;
    terms_.push_back({coeff, box});
}

Schwartz Schwartz::operator+(const Schwartz& o) const {
    if (p_ != o.p_ || dim_ != o.dim_)
        throw std::invalid_argument("schwartz: sum across different spaces");
    Schwartz out = *this;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    return out;
}

Schwartz Schwartz::operator-(const Schwartz& o) const { return *this + o.scaled(Rat(-1)); }

Schwartz Schwartz::scaled(const Cyclotomic& c) const {
    Schwartz out(p_, dim_);
    for (const Term& t : terms_) out.add_term(t.coeff * c, t.box);
    return out;
}

Schwartz Schwartz::scaled(const Rat& c) const { return scaled(Cyclotomic(p_, c)); }

Cyclotomic Schwartz::evaluate(const std::vector<Rat>& point) const {
    Cyclotomic sum(p_);
    for (const Term& t : terms_)
        if (t.box.contains(point)) sum += t.coeff;
    return sum;
}

Cyclotomic Schwartz::integral() const {
    Cyclotomic sum(p_);
    for (const Term& t : terms_) sum += t.coeff * t.box.volume();
    return sum;
}

Schwartz Schwartz::reflected() const {
    Schwartz out(p_, dim_);
    for (const Term& t : terms_) {
        std::vector<Coord> coords;
        coords.reserve(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            coords.push_back({-t.box.coord(i).center, t.box.coord(i).depth});
        out.add_term(t.coeff, Box(p_, std::move(coords)));
    }
    return out;
}

Schwartz& Schwartz::normalize(std::size_t term_budget) {
    std::vector<Term> live;
    for (Term& t : terms_)
        if (!t.coeff.is_zero()) live.push_back(std::move(t));
    terms_ = std::move(live);
    if (terms_.empty()) return *this;

    std::vector<int> target(dim_, -(1 << 20));
    for (const Term& t : terms_)
        for (std::size_t i = 0; i < dim_; ++i)
            target[i] = std::max(target[i], t.box.coord(i).depth);

    Int expansion_total = 0;
    for (const Term& t : terms_) {
        Int pieces = 1;
        for (std::size_t i = 0; i < dim_; ++i) {
            pieces *= boost::multiprecision::pow(
                p_, static_cast<unsigned>(target[i] - t.box.coord(i).depth));
            if (pieces > Int(term_budget)) break;
        }
        expansion_total += pieces;
        if (expansion_total > Int(term_budget))
            throw std::runtime_error("schwartz normalize: refinement budget exceeded");
    }

    std::map<Box, Cyclotomic> acc;
    for (const Term& t : terms_) {
        std::vector<Int> radix(dim_), odo(dim_, Int(0));
        for (std::size_t i = 0; i < dim_; ++i)
            radix[i] = boost::multiprecision::pow(
                p_, static_cast<unsigned>(target[i] - t.box.coord(i).depth));
        while (true) {
            std::vector<Coord> coords;
            coords.reserve(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                Rat step = p_power(p_, t.box.coord(i).depth);
                coords.push_back({t.box.coord(i).center + Rat(odo[i]) * step, target[i]});
            }
            Box sub(p_, std::move(coords));
            auto it = acc.find(sub);
            if (it == acc.end())
                acc.emplace(std::move(sub), t.coeff);
            else
                it->second += t.coeff;
            std::size_t i = 0;
            for (; i < dim_; ++i) {
                if (++odo[i] < radix[i]) break;
                odo[i] = 0;
            }
            if (i == dim_) break;
        }
    }

    terms_.clear();
    for (auto& [box, coeff] : acc)
        if (!coeff.is_zero()) terms_.push_back({std::move(coeff), box});
    return *this;
}

bool Schwartz::same_function(const Schwartz& o) const {
    if (p_ != o.p_ || dim_ != o.dim_) return false;
    // Normalizing the difference refines both sides over a common grid, so
    // representations at different depths still cancel.
    Schwartz diff = *this - o;
    diff.normalize();
    return diff.terms_.empty();
}

FourierSpec full_fourier_spec(std::size_t dim) {
    FourierSpec spec;
    for (std::size_t i = 0; i < dim; ++i) spec.push_back({i, true, +1});
    return spec;
}

Schwartz fourier_transform(const Schwartz& phi, const FourierSpec& spec) {
    const Int& p = phi.prime();
    const std::size_t n = phi.dim();
    if (spec.size() != n) throw std::invalid_argument("fourier: malformed polarization pairing");
    std::vector<int> used(n, 0);
    for (const FourierAxis& ax : spec) {
        if (ax.source >= n || (ax.dual && ax.sign != 1 && ax.sign != -1))
            throw std::invalid_argument("fourier: malformed polarization pairing");
        ++used[ax.source];
    }
    for (int u : used)
        if (u != 1) throw std::invalid_argument("fourier: malformed polarization pairing");

    Schwartz out(p, n);
    for (const Schwartz::Term& t : phi.terms()) {
        Rat vol(1);
        std::vector<Coord> coords(n);
        std::vector<std::pair<std::size_t, Rat>> pending;  // (axis, a): psi(a*y) on the box
        for (std::size_t j = 0; j < n; ++j) {
            const Coord& src = t.box.coord(spec[j].source);
            if (!spec[j].dual) {
                coords[j] = src;
                continue;
            }
            vol *= p_power(p, -src.depth);
            coords[j] = {Rat(0), -src.depth};
            Rat a = Rat(spec[j].sign) * src.center;
            if (a != 0 && ord(p, a) + coords[j].depth < 0) pending.emplace_back(j, a);
        }

        struct Partial {
            Cyclotomic factor;
            std::vector<Coord> coords;
        };
        std::vector<Partial> work{{Cyclotomic(p, vol) * t.coeff, coords}};
        for (const auto& [axis, a] : pending) {
            const int va = ord(p, a);
            std::vector<Partial> next;
            for (Partial& w : work) {
                const int d = w.coords[axis].depth;
                Int count = boost::multiprecision::pow(p, static_cast<unsigned>(-va - d));
                if (count * Int(work.size()) * Int(next.size() + 1) > Int(1) << 22)
                    throw std::runtime_error("fourier: character refinement budget exceeded");
                for (Int j = 0; j < count; ++j) {
                    Partial piece = w;
                    Rat center = Rat(j) * p_power(p, d);
                    piece.coords[axis] = {center, -va};
                    piece.factor = piece.factor * Cyclotomic::psi(p, a * center);
                    next.push_back(std::move(piece));
                }
            }
            work = std::move(next);
        }
        for (Partial& w : work) out.add_term(w.factor, Box(p, std::move(w.coords)));
    }
    return out;
}

Schwartz weil_scaling(const Schwartz& phi, const QMat& action, const Rat& nu, int m, int n) {
    const Int& p = phi.prime();
    const std::size_t dim = phi.dim();
    if (action.rows() != dim || action.cols() != dim)
        throw std::invalid_argument("weil_scaling: action dimension mismatch");
    if (nu == 0) throw std::domain_error("weil_scaling: similitude factor must be nonzero");
    if ((m * n) % 2 != 0)
        throw std::domain_error("weil_scaling: normalization exponent is not an integer");

    std::vector<std::size_t> col_of(dim, dim);
    std::vector<int> col_used(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (action(i, j) == 0) continue;
            if (col_of[i] != dim)
                throw std::domain_error("weil_scaling: action must be an invertible monomial matrix");
            col_of[i] = j;
            ++col_used[j];
        }
        if (col_of[i] == dim || col_used[col_of[i]] > 1)
            throw std::domain_error("weil_scaling: action must be an invertible monomial matrix");
    }

    const Rat factor = p_power(p, ord(p, nu) * (m * n) / 2);
    Schwartz out(p, dim);
    for (const Schwartz::Term& t : phi.terms()) {
        std::vector<Coord> coords(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            const Rat& s = action(i, col_of[i]);
            const Coord& src = t.box.coord(col_of[i]);
            coords[i] = {s * src.center, src.depth + ord(p, s)};
        }
        out.add_term(t.coeff * factor, Box(p, std::move(coords)));
    }
    return out;
}

}  // namespace symplat::padic
