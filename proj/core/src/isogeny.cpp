#include "symplat/isogeny.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <thread>

namespace symplat::isogeny {

namespace {

const IMat kJ2{{Int(0), Int(1)}, {Int(-1), Int(0)}};

struct ExtGcd {
    Int g, x, y;  // x*a + y*b == g >= 0
};

ExtGcd ext_gcd(Int a, Int b) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    return {a, x0, y0};
}

// M in SL2(Z) with M * (x, y)^T = (gcd, 0)^T; (x, y) != (0, 0).
IMat sl2_gcd(const Int& x, const Int& y) {
    if (x == 0 && y == 0) throw std::invalid_argument("sl2_gcd: zero vector");
    ExtGcd e = ext_gcd(x, y);
    IMat m(2, 2);
    m(0, 0) = e.x;
    m(0, 1) = e.y;
    m(1, 0) = -y / e.g;
    m(1, 1) = x / e.g;
    return m;
}

// Embed a 2x2 block on the hyperbolic plane (index i, g+i) into Sp_2g.
IMat plane_embed(std::size_t g, std::size_t i, const IMat& m2) {
    IMat m = IMat::identity(2 * g);
    m(i, i) = m2(0, 0);
    m(i, g + i) = m2(0, 1);
    m(g + i, i) = m2(1, 0);
    m(g + i, g + i) = m2(1, 1);
    return m;
}

// diag(A, A^-T) for A in GL_g(Z) with det 1.
IMat gl_embed(std::size_t g, const IMat& a) {
    QMat ainv = inverse(to_rational(a));
    IMat m(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            m(i, j) = a(i, j);
            if (denominator(ainv(j, i)) != 1)
                throw std::invalid_argument("gl_embed: matrix not unimodular");
            m(g + i, g + j) = numerator(ainv(j, i));
        }
    return m;
}

// [[I, S], [0, I]] and [[I, 0], [S, I]] for symmetric S.
IMat shear_upper(std::size_t g, const IMat& s) {
    IMat m = IMat::identity(2 * g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) m(i, g + j) = s(i, j);
    return m;
}
IMat shear_lower(std::size_t g, const IMat& s) {
    IMat m = IMat::identity(2 * g);
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) m(g + i, j) = s(i, j);
    return m;
}

}  // namespace

Int raw_degree(std::size_t g, const IMat& m) {
    if (m.rows() != 2 * g || m.cols() != 2)
        throw std::invalid_argument("isogeny matrix: expected 2g x 2 shape");
    Int d = 0;
    for (std::size_t k = 0; k < g; ++k) d += m(k, 0) * m(g + k, 1) - m(g + k, 0) * m(k, 1);
    return d;
}

IsogenyMatrix::IsogenyMatrix(std::size_t g, IMat entries) : g_(g), m_(std::move(entries)) {
    if (g_ == 0) throw std::invalid_argument("isogeny matrix: g must be positive");
    degree_ = raw_degree(g_, m_);
    if (degree_ <= 0)
        throw std::domain_error("isogeny matrix: degree " + degree_.str() + " not positive");
}

IMat to_homology(const IsogenyMatrix& b) { return b.entries() * kJ2; }

IsogenyMatrix from_homology(std::size_t g, const IMat& h) {
    return IsogenyMatrix(g, h * (-kJ2));
}

std::vector<Int> tensor_vector(const IsogenyMatrix& b) {
    const std::size_t g = b.genus();
    const IMat& m = b.entries();
    std::vector<Int> v(4 * g);
    for (std::size_t k = 0; k < g; ++k) {
        v[k] = m(g + k, 1);
        v[g + k] = -m(k, 1);
        v[2 * g + k] = -m(g + k, 0);
        v[3 * g + k] = m(k, 0);
    }
    return v;
}

IsogenyMatrix matrix_of_vector(std::size_t g, const std::vector<Int>& v) {
    if (v.size() != 4 * g) throw std::invalid_argument("matrix_of_vector: expected length 4g");
    IMat m(2 * g, 2);
    for (std::size_t k = 0; k < g; ++k) {
        m(k, 0) = v[3 * g + k];
        m(g + k, 0) = -v[2 * g + k];
        m(k, 1) = -v[g + k];
        m(g + k, 1) = v[k];
    }
    return IsogenyMatrix(g, std::move(m));
}

IMat congruence_class(const IsogenyMatrix& b, const Int& n) {
    if (n <= 0) throw std::invalid_argument("congruence_class: level must be positive");
    IMat h = to_homology(b);
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) = mod_floor(h(i, j), n);
    return h;
}

bool congruence_check(const IsogenyMatrix& b, const Int& n, const IMat& residue) {
    IMat r = residue;
    if (r.rows() != 2 * b.genus() || r.cols() != 2)
        throw std::invalid_argument("congruence_check: residue shape mismatch");
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = mod_floor(r(i, j), n);
    return congruence_class(b, n) == r;
}

bool LevelDatum::scaled_symplectic_check(std::size_t g, const Int& d) const {
    if (residue.rows() != 2 * g || residue.cols() != 2)
        throw std::invalid_argument("level datum: residue shape mismatch");
    lattice::SymplecticForm sp = lattice::standard_symplectic(g);
    IMat lhs = residue.transpose() * sp.j * residue;
    IMat rhs = kJ2 * d;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (mod_floor(lhs(i, j) - rhs(i, j), n) != 0) return false;
    return true;
}

std::vector<IsogenyMatrix> enumerate(std::size_t g, const Int& d, const Int& height,
                                     const std::optional<LevelDatum>& filter, int workers) {
    if (d <= 0) throw std::invalid_argument("enumerate: degree must be positive");
    if (height <= 0 || height > 64) throw std::invalid_argument("enumerate: height out of range");
    const int64_t h = height.convert_to<int64_t>();
    const int64_t dd = d.convert_to<int64_t>();
    const std::size_t n = 2 * g;
    const int64_t w = 2 * h + 1;

    // residue filter precomputed as int64 targets
    std::vector<int64_t> want;
    int64_t nn = 0;
    if (filter) {
        nn = filter->n.convert_to<int64_t>();
        if (nn <= 0) throw std::invalid_argument("enumerate: filter level must be positive");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                want.push_back(mod_floor(filter->residue(i, j), filter->n).convert_to<int64_t>());
    }

    uint64_t total_a = 1;
    for (std::size_t i = 0; i < n; ++i) total_a *= static_cast<uint64_t>(w);

    auto scan = [&](uint64_t a_begin, uint64_t a_end, std::vector<IsogenyMatrix>& out) {
        std::vector<int64_t> a(n), b(n), coef(n);
        for (uint64_t ai = a_begin; ai < a_end; ++ai) {
            uint64_t t = ai;
            for (std::size_t i = n; i-- > 0;) {
                a[i] = static_cast<int64_t>(t % w) - h;
                t /= w;
            }
            // degree = sum_k a_k b_{g+k} - a_{g+k} b_k  =  coef . b
            for (std::size_t k = 0; k < g; ++k) {
                coef[g + k] = a[k];
                coef[k] = -a[g + k];
            }
            std::fill(b.begin(), b.end(), -h);
            while (true) {
                int64_t deg = 0;
                for (std::size_t i = 0; i < n; ++i) deg += coef[i] * b[i];
                if (deg == dd) {
                    bool ok = true;
                    if (filter) {
                        // homology residue: columns (-b_col, a_col) mod nn
                        for (std::size_t i = 0; i < n && ok; ++i) {
                            int64_t c0 = ((-b[i]) % nn + nn) % nn;
                            int64_t c1 = (a[i] % nn + nn) % nn;
                            ok = c0 == want[2 * i] && c1 == want[2 * i + 1];
                        }
                    }
                    if (ok) {
                        IMat m(n, 2);
                        for (std::size_t i = 0; i < n; ++i) {
                            m(i, 0) = a[i];
                            m(i, 1) = b[i];
                        }
                        out.emplace_back(g, std::move(m));
                    }
                }
                std::size_t i = n;
                while (i > 0) {
                    --i;
                    if (++b[i] <= h) break;
                    b[i] = -h;
                    if (i == 0) goto next_a;
                }
            }
        next_a:;
        }
    };

    if (workers < 1) workers = 1;
    if (workers == 1 || total_a < 64) {
        std::vector<IsogenyMatrix> out;
        scan(0, total_a, out);
        return out;
    }
    std::vector<std::vector<IsogenyMatrix>> parts(workers);
    std::vector<std::thread> pool;
    uint64_t chunk = (total_a + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        uint64_t lo = std::min<uint64_t>(t * chunk, total_a);
        uint64_t hi = std::min<uint64_t>(lo + chunk, total_a);
        pool.emplace_back([&, lo, hi, t] { scan(lo, hi, parts[t]); });
    }
    for (auto& th : pool) th.join();
    std::vector<IsogenyMatrix> out;
    for (auto& p : parts)
        for (auto& m : p) out.push_back(std::move(m));
    return out;
}

std::vector<GroupMove> action_generators(std::size_t g, const Int& n) {
    if (n <= 0) throw std::invalid_argument("action_generators: level must be positive");
    std::vector<GroupMove> gens;
    auto add_left = [&](IMat m, const std::string& name) {
        gens.push_back({true, std::move(m), name});
    };
    auto add_right = [&](IMat m, const std::string& name) {
        gens.push_back({false, std::move(m), name});
    };

    // right factor: SL2(Z) shears (level n) and, at level 1, the rotation
    IMat t = IMat::identity(2), l = IMat::identity(2);
    t(0, 1) = n;
    l(1, 0) = n;
    add_right(t, "R+");
    t(0, 1) = -n;
    add_right(t, "R-");
    add_right(l, "L+");
    l(1, 0) = -n;
    add_right(l, "L-");
    if (n == 1) {
        add_right(IMat{{Int(0), Int(-1)}, {Int(1), Int(0)}}, "S");
        add_right(IMat{{Int(0), Int(1)}, {Int(-1), Int(0)}}, "S'");
    }

    // left factor: Sp_2g(Z) generated by symmetric shears and GL_g transvections
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j) {
            IMat s(g, g);
            s(i, j) = n;
            s(j, i) = n;
            std::string tag = std::to_string(i) + std::to_string(j);
            add_left(shear_upper(g, s), "U+" + tag);
            add_left(shear_lower(g, s), "D+" + tag);
            s(i, j) = -n;
            s(j, i) = -n;
            add_left(shear_upper(g, s), "U-" + tag);
            add_left(shear_lower(g, s), "D-" + tag);
        }
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            if (i == j) continue;
            IMat a = IMat::identity(g);
            a(i, j) = n;
            add_left(gl_embed(g, a), "G+" + std::to_string(i) + std::to_string(j));
            a(i, j) = -n;
            add_left(gl_embed(g, a), "G-" + std::to_string(i) + std::to_string(j));
        }
    if (n == 1) {
        lattice::SymplecticForm sp = lattice::standard_symplectic(g);
        add_left(sp.j, "J");
        add_left(-sp.j, "J'");
    }
    return gens;
}

IsogenyMatrix apply_move(const IsogenyMatrix& b, const GroupMove& mv) {
    if (mv.left) return IsogenyMatrix(b.genus(), mv.m * b.entries());
    return IsogenyMatrix(b.genus(), b.entries() * mv.m);
}

bool is_symplectic(std::size_t g, const IMat& m) {
    if (m.rows() != 2 * g || m.cols() != 2 * g) return false;
    lattice::SymplecticForm sp = lattice::standard_symplectic(g);
    return m.transpose() * sp.j * m == sp.j;
}

std::pair<Int, Int> ReduceResult::divisor_pair() const {
    return {d1, d2 * pair_divisor};
}

ReduceResult symplectic_reduce(const IsogenyMatrix& b0) {
    const std::size_t g = b0.genus();
    const Int d = b0.degree();
    IMat b = b0.entries();
    IMat gamma = IMat::identity(2);
    IMat delta = IMat::identity(2 * g);

    auto left = [&](const IMat& m) {
        b = m * b;
        delta = m * delta;
    };
    auto right = [&](const IMat& m) {
        b = b * m;
        gamma = gamma * m;
    };
    auto col = [&](std::size_t j, std::size_t i) { return b(i, j); };

    for (int guard = 0; guard < 256; ++guard) {
        // collect column 0 onto c*e_0
        for (std::size_t i = 0; i < g; ++i)
            if (col(0, g + i) != 0) left(plane_embed(g, i, sl2_gcd(col(0, i), col(0, g + i))));
        for (std::size_t i = 1; i < g; ++i) {
            if (col(0, i) == 0) continue;
            IMat m2 = sl2_gcd(col(0, 0), col(0, i));
            IMat a = IMat::identity(g);
            a(0, 0) = m2(0, 0);
            a(0, i) = m2(0, 1);
            a(i, 0) = m2(1, 0);
            a(i, i) = m2(1, 1);
            left(gl_embed(g, a));
        }
        if (col(0, 0) < 0) left(plane_embed(g, 0, IMat{{Int(-1), Int(0)}, {Int(0), Int(-1)}}));
        const Int c = col(0, 0);
        assert(c > 0 && d % c == 0);

        // clean column 1 inside the stabilizer of c*e_0
        for (std::size_t i = 1; i < g; ++i)
            if (col(1, g + i) != 0) left(plane_embed(g, i, sl2_gcd(col(1, i), col(1, g + i))));
        for (std::size_t i = 2; i < g; ++i) {
            if (col(1, i) == 0) continue;
            IMat m2 = sl2_gcd(col(1, 1), col(1, i));
            IMat a = IMat::identity(g);
            a(1, 1) = m2(0, 0);
            a(1, i) = m2(0, 1);
            a(i, 1) = m2(1, 0);
            a(i, i) = m2(1, 1);
            left(gl_embed(g, a));
        }
        const Int q = col(1, g);
        assert(q == d / c);
        if (col(1, 0) != 0) {  // reduce r mod q via the symmetric shear e_0 block
            IMat s(g, g);
            s(0, 0) = -floor_div(col(1, 0), q);
            left(shear_upper(g, s));
        }
        if (g >= 2 && col(1, 1) != 0) {  // reduce h mod q via the (0,1) symmetric shear
            IMat s(g, g);
            Int f = -floor_div(col(1, 1), q);
            s(0, 1) = f;
            s(1, 0) = f;
            left(shear_upper(g, s));
        }
        if (col(1, 0) != 0) {  // reduce r mod c by a column operation
            IMat m = IMat::identity(2);
            m(0, 1) = -floor_div(col(1, 0), c);
            right(m);
        }

        const Int r = col(1, 0);
        const Int h = g >= 2 ? col(1, 1) : Int(0);
        const Int c_all = gcd(gcd(c, r), gcd(h, q));
        if (c_all == c) {
            assert(r == 0);
            break;
        }
        // expose a column of content c_all, then swap it into position 0
        Int big = gcd(h, q);
        Int best_k = 0, best = gcd(gcd(r, h), q) + c;  // sentinel above any gcd
        for (Int k = 0; k <= big; ++k) {
            Int cand = gcd(gcd(r + k * c, h), q);
            if (cand < best) {
                best = cand;
                best_k = k;
            }
            if (best == c_all) break;
        }
        assert(best == c_all);
        IMat m = IMat::identity(2);
        m(0, 1) = best_k;
        right(m);
        right(IMat{{Int(0), Int(-1)}, {Int(1), Int(0)}});
    }

    ReduceResult res;
    res.d1 = col(0, 0);
    const Int q = col(1, g);
    Int h = g >= 2 ? col(1, 1) : Int(0);
    if (h == 0) {
        res.d2 = q;
        res.pair_divisor = 1;
        res.unit_residue = 0;
    } else {
        res.d2 = gcd(h, q);
        res.pair_divisor = q / res.d2;
        res.unit_residue = h / res.d2;
        if (2 * res.unit_residue > res.pair_divisor) {
            // flip the sign of the e_1 plane and re-reduce mod q
            left(plane_embed(g, 1, IMat{{Int(-1), Int(0)}, {Int(0), Int(-1)}}));
            IMat s(g, g);
            Int f = -floor_div(col(1, 1), q);
            s(0, 1) = f;
            s(1, 0) = f;
            left(shear_upper(g, s));
            h = col(1, 1);
            res.d2 = gcd(h, q);
            res.pair_divisor = q / res.d2;
            res.unit_residue = h / res.d2;
        }
    }
    res.rep = b;
    res.gamma = gamma;
    res.delta = delta;

    if (res.d2 % res.d1 != 0 || res.d1 * res.d2 * res.pair_divisor != d)
        throw std::logic_error("symplectic_reduce: divisor invariant violated");
    if (delta * b0.entries() * gamma != res.rep)
        throw std::logic_error("symplectic_reduce: transform mismatch");
    return res;
}

}  // namespace symplat::isogeny
