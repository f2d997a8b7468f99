#include "symplat/snf.hpp"

#include <algorithm>
#include <stdexcept>

namespace symplat {

Int det_bareiss(IMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

QMat inverse(QMat m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    QMat inv = QMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw std::domain_error("inverse: singular matrix");
        if (p != c) {
            m.swap_rows(c, p);
            inv.swap_rows(c, p);
        }
        Rat d = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Int height(const IMat& m) {
    Int h = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) h = std::max(h, Int(abs(m(i, j))));
    return h;
}

namespace {

// Smallest nonzero |entry| in the trailing block starting at (k,k); returns false if none.
bool find_pivot(const IMat& a, std::size_t k, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = k; i < a.rows(); ++i)
        for (std::size_t j = k; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            Int v = abs(a(i, j));
            if (!found || v < best) {
                best = v;
                pi = i;
                pj = j;
                found = true;
            }
        }
    return found;
}

}  // namespace

SmithResult smith_normal_form(const IMat& a0) {
    SmithResult r;
    r.d = a0;
    r.u = IMat::identity(a0.rows());
    r.v = IMat::identity(a0.cols());
    IMat& d = r.d;
    const std::size_t m = d.rows(), n = d.cols();

    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        std::size_t pi, pj;
        if (!find_pivot(d, k, pi, pj)) break;
        d.swap_rows(k, pi);
        r.u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        r.v.swap_cols(k, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = k + 1; i < m; ++i) {
                if (d(i, k) == 0) continue;
                // nearest-multiple reduction keeps entries small
                Int q = floor_div(2 * d(i, k) + d(k, k), 2 * d(k, k));
                d.add_row(i, k, -q);
                r.u.add_row(i, k, -q);
                if (d(i, k) != 0) {
                    d.swap_rows(i, k);
                    r.u.swap_rows(i, k);
                    dirty = true;
                }
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (d(k, j) == 0) continue;
                Int q = floor_div(2 * d(k, j) + d(k, k), 2 * d(k, k));
                d.add_col(j, k, -q);
                r.v.add_col(j, k, -q);
                if (d(k, j) != 0) {
                    d.swap_cols(j, k);
                    r.v.swap_cols(j, k);
                    dirty = true;
                }
            }
        }

        // Divisibility pass: fold a non-divisible entry into the pivot's row and retry.
        bool redo = false;
        for (std::size_t i = k + 1; i < m && !redo; ++i)
            for (std::size_t j = k + 1; j < n && !redo; ++j)
                if (d(i, j) % d(k, k) != 0) {
                    d.add_row(k, i, 1);
                    r.u.add_row(k, i, 1);
                    redo = true;
                }
        if (redo) {
            --k;
            continue;
        }
        if (d(k, k) < 0) {
            d.scale_row(k, Int(-1));
            r.u.scale_row(k, Int(-1));
        }
    }
    for (std::size_t k = 0; k < std::min(m, n); ++k)
        if (d(k, k) != 0) r.divisors.push_back(d(k, k));
    return r;
}

std::pair<int, int> symmetric_signature(const QMat& g0) {
    if (g0.rows() != g0.cols()) throw std::invalid_argument("signature: matrix not square");
    QMat g = g0;
    const std::size_t n = g.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g(i, j) != g(j, i)) throw std::domain_error("signature: matrix not symmetric");

    int plus = 0, minus = 0;
    std::size_t k = 0;
    while (k < n) {
        if (g(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && g(p, p) == 0) ++p;
            if (p < n) {
                g.swap_rows(k, p);
                g.swap_cols(k, p);
            } else {
                // all-zero diagonal: congruence by (row/col j += row/col i) creates 2*g(i,j)
                std::size_t bi = n, bj = n;
                for (std::size_t i = k; i < n && bi == n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (g(i, j) != 0) {
                            bi = i;
                            bj = j;
                            break;
                        }
                if (bi == n) throw std::domain_error("signature: degenerate form");
                g.add_row(bi, bj, Rat(1));
                g.add_col(bi, bj, Rat(1));
                if (bi != k) {
                    g.swap_rows(k, bi);
                    g.swap_cols(k, bi);
                }
            }
        }
        Rat piv = g(k, k);
        if (piv > 0)
            ++plus;
        else
            ++minus;
        // Replace the trailing block by its Schur complement; row/col k are dead after this.
        std::vector<Rat> f(n, Rat(0));
        for (std::size_t i = k + 1; i < n; ++i) f[i] = g(i, k) / piv;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (f[i] == 0) continue;
            for (std::size_t j = k + 1; j < n; ++j) g(i, j) -= f[i] * g(k, j);
        }
        ++k;
    }
    return {plus, minus};
}

}  // namespace symplat
