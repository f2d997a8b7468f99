#include "symplat/lattice.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace symplat::lattice {

GramLattice::GramLattice(IMat gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
    if (gram_.rows() != gram_.cols()) throw std::invalid_argument("lattice: gram not square");
    if (gram_.rows() == 0) throw std::invalid_argument("lattice: rank zero");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gram_(i, j) != gram_(j, i))
                throw std::invalid_argument("lattice: gram not symmetric");
    det_ = det_bareiss(gram_);
    if (det_ == 0) throw std::domain_error("lattice: degenerate gram");
    if (labels_.empty()) {
        for (std::size_t i = 0; i < gram_.rows(); ++i) labels_.push_back("v" + std::to_string(i + 1));
    }
    if (labels_.size() != gram_.rows()) throw std::invalid_argument("lattice: label count mismatch");
}

bool GramLattice::is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (gram_(i, i) % 2 != 0) return false;
    return true;
}

Rat GramLattice::pair(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    if (x.size() != rank() || y.size() != rank())
        throw std::invalid_argument("lattice: coordinate size mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) s += x[i] * Rat(gram_(i, j)) * y[j];
    }
    return s;
}

SymplecticForm standard_symplectic(std::size_t g) {
    if (g == 0) throw std::invalid_argument("symplectic form: g must be positive");
    IMat j(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        j(i, g + i) = 1;
        j(g + i, i) = -1;
    }
    return SymplecticForm{2 * g, j};
}

GramLattice tensor_symplectic(std::size_t g) {
    if (g == 0) throw std::invalid_argument("tensor lattice: g must be positive");
    const std::size_t n = 4 * g;
    IMat gram(n, n);
    for (std::size_t k = 0; k < g; ++k) {
        // gamma(e(x)e'_k, f(x)f'_k) = 1, gamma(e(x)f'_k, f(x)e'_k) = -1
        gram(k, 3 * g + k) = 1;
        gram(3 * g + k, k) = 1;
        gram(g + k, 2 * g + k) = -1;
        gram(2 * g + k, g + k) = -1;
    }
    std::vector<std::string> labels;
    auto idx = [](std::size_t k) { return std::to_string(k + 1); };
    for (std::size_t k = 0; k < g; ++k) labels.push_back("e.e'" + idx(k));
    for (std::size_t k = 0; k < g; ++k) labels.push_back("e.f'" + idx(k));
    for (std::size_t k = 0; k < g; ++k) labels.push_back("f.e'" + idx(k));
    for (std::size_t k = 0; k < g; ++k) labels.push_back("f.f'" + idx(k));
    return GramLattice(std::move(gram), std::move(labels));
}

std::pair<int, int> signature(const GramLattice& lat) {
    return symmetric_signature(to_rational(lat.gram()));
}

GramLattice rescale(const GramLattice& lat, const Int& n) {
    if (n <= 0) throw std::invalid_argument("rescale: factor must be positive");
    return GramLattice(lat.gram() * n, lat.labels());
}

std::string DiscriminantGroup::describe() const {
    if (invariant_factors.empty()) return "(Z/1)^0 (trivial)";
    bool uniform = true;
    for (const auto& f : invariant_factors)
        if (f != invariant_factors.front()) uniform = false;
    if (uniform)
        return "(Z/" + invariant_factors.front().str() + ")^" +
               std::to_string(invariant_factors.size());
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + invariant_factors[i].str();
    }
    return s;
}

DiscriminantGroup discriminant_group(const GramLattice& lat) {
    SmithResult snf = smith_normal_form(lat.gram());
    DiscriminantGroup dg;
    dg.order = 1;
    const std::size_t n = lat.rank();
    for (std::size_t i = 0; i < n; ++i) {
        Int d = snf.d(i, i);
        if (d <= 1) continue;
        dg.invariant_factors.push_back(d);
        dg.order *= d;
        // gram = u^-1 d v^-1, so dual = gram^-1 Z^n = v d^-1 Z^n; column i of v over d
        // generates a cyclic factor of order d.
        std::vector<Rat> gen(n);
        for (std::size_t r = 0; r < n; ++r) {
            Rat x = Rat(snf.v(r, i)) / Rat(d);
            x -= floor_div(numerator(x), denominator(x));  // reduce into [0,1)
            gen[r] = x;
        }
        dg.generators.push_back(std::move(gen));
    }
    return dg;
}

Int lattice_level(const GramLattice& lat) {
    QMat q = inverse(to_rational(lat.gram()));
    Int level = 1;
    for (std::size_t i = 0; i < lat.rank(); ++i)
        for (std::size_t j = 0; j < lat.rank(); ++j) {
            Rat v = (i == j) ? q(i, j) / 2 : q(i, j);
            level = lcm(level, denominator(v));
        }
    return level;
}

std::vector<std::vector<Rat>> coset_representatives(const GramLattice& lat, const Int& max_order) {
    DiscriminantGroup dg = discriminant_group(lat);
    if (dg.order > max_order)
        throw std::domain_error("coset_representatives: discriminant group order " +
                                dg.order.str() + " exceeds bound " + max_order.str());
    const std::size_t n = lat.rank(), m = dg.invariant_factors.size();
    std::vector<std::vector<Rat>> out;
    std::vector<Int> c(m, Int(0));
    while (true) {
        std::vector<Rat> x(n, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t r = 0; r < n; ++r) x[r] += Rat(c[i]) * dg.generators[i][r];
        for (auto& v : x) v -= floor_div(numerator(v), denominator(v));
        out.push_back(std::move(x));
        // increment the exponent tuple, last index fastest
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (++c[i] < dg.invariant_factors[i]) break;
            c[i] = 0;
            if (i == 0) return out;
        }
        if (m == 0) return out;
    }
}

namespace {

int64_t to_i64(const Int& v) {
    if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
        throw std::domain_error("lattice document: entry out of range");
    return v.convert_to<int64_t>();
}

}  // namespace

std::string to_document(const GramLattice& lat) {
    nlohmann::ordered_json doc;
    doc["rank"] = lat.rank();
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < lat.rank(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < lat.rank(); ++j) row.push_back(to_i64(lat.gram()(i, j)));
        rows.push_back(std::move(row));
    }
    doc["gram"] = std::move(rows);
    doc["labels"] = lat.labels();
    return doc.dump(2) + "\n";
}

GramLattice from_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("lattice document: ") + e.what());
    }
    try {
        if (!doc.contains("rank") || !doc.contains("gram"))
            throw std::invalid_argument("lattice document: missing rank or gram");
        std::size_t n = doc["rank"].get<std::size_t>();
        if (!doc["gram"].is_array() || doc["gram"].size() != n)
            throw std::invalid_argument("lattice document: gram shape mismatch");
        IMat gram(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!doc["gram"][i].is_array() || doc["gram"][i].size() != n)
                throw std::invalid_argument("lattice document: gram shape mismatch");
            for (std::size_t j = 0; j < n; ++j) gram(i, j) = Int(doc["gram"][i][j].get<int64_t>());
        }
        std::vector<std::string> labels;
        if (doc.contains("labels")) labels = doc["labels"].get<std::vector<std::string>>();
        return GramLattice(std::move(gram), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("lattice document: ") + e.what());
    }
}

GramLattice load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("lattice document: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_document(ss.str());
}

void save_file(const GramLattice& lat, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("lattice document: cannot write " + path);
    out << to_document(lat);
}

}  // namespace symplat::lattice
