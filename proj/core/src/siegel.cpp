#include "symplat/siegel.hpp"

#include <cmath>
#include <stdexcept>

namespace symplat::siegel {

namespace {

double to_d(const Int& x) { return x.convert_to<double>(); }

Eigen::MatrixXd complex_entry_matrix(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("pair json: missing ") + key);
    auto rows = doc.at(key);
    Eigen::MatrixXd m(rows.size(), rows.empty() ? 0 : rows.at(0).size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows.at(i).at(j).get<double>();
    return m;
}

}  // namespace

SiegelPair make_pair(Complex tau, Eigen::MatrixXcd tau_prime, double tol) {
    if (!(tau.imag() > 0)) throw std::domain_error("siegel pair: tau not in the upper half plane");
    if (tau_prime.rows() != tau_prime.cols() || tau_prime.rows() == 0)
        throw std::domain_error("siegel pair: tau' must be square and nonempty");
    double asym = (tau_prime - tau_prime.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) throw std::domain_error("siegel pair: tau' not symmetric");
    Eigen::MatrixXd im = tau_prime.imag();
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (im + im.transpose()));
    if (llt.info() != Eigen::Success)
        throw std::domain_error("siegel pair: Im(tau') not positive definite");
    return SiegelPair{tau, std::move(tau_prime)};
}

SiegelPair pair_from_json(const nlohmann::json& doc) {
    try {
        Complex tau(doc.at("tau").at("re").get<double>(), doc.at("tau").at("im").get<double>());
        Eigen::MatrixXd re = complex_entry_matrix(doc.at("tau_prime"), "re");
        Eigen::MatrixXd im = complex_entry_matrix(doc.at("tau_prime"), "im");
        if (re.rows() != im.rows() || re.cols() != im.cols())
            throw std::invalid_argument("pair json: re/im shape mismatch");
        Eigen::MatrixXcd tp = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
        return make_pair(tau, std::move(tp));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("pair json: ") + e.what());
    }
}

nlohmann::ordered_json pair_to_json(const SiegelPair& pair) {
    nlohmann::ordered_json doc;
    doc["tau"] = {{"re", pair.tau.real()}, {"im", pair.tau.imag()}};
    nlohmann::ordered_json re = nlohmann::ordered_json::array(),
                           im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < pair.tau_prime.rows(); ++i) {
        nlohmann::ordered_json rrow = nlohmann::ordered_json::array(),
                               irow = nlohmann::ordered_json::array();
        for (Eigen::Index j = 0; j < pair.tau_prime.cols(); ++j) {
            rrow.push_back(pair.tau_prime(i, j).real());
            irow.push_back(pair.tau_prime(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    doc["tau_prime"] = {{"re", std::move(re)}, {"im", std::move(im)}};
    return doc;
}

Eigen::MatrixXcd augmented_scalar(Complex tau) {
    Eigen::MatrixXcd m(2, 1);
    m(0, 0) = tau;
    m(1, 0) = 1;
    return m;
}

Eigen::MatrixXcd augmented_matrix(const Eigen::MatrixXcd& tau_prime) {
    Eigen::Index g = tau_prime.rows();
    Eigen::MatrixXcd m(2 * g, g);
    m.topRows(g) = tau_prime;
    m.bottomRows(g) = Eigen::MatrixXcd::Identity(g, g);
    return m;
}

Eigen::VectorXcd period_vector(const isogeny::IsogenyMatrix& b, const SiegelPair& pair) {
    const std::size_t g = b.genus();
    if (pair.genus() != g) throw std::invalid_argument("period_vector: genus mismatch");
    Eigen::VectorXcd bt(2 * g);
    for (std::size_t i = 0; i < 2 * g; ++i)
        bt(i) = to_d(b.entries()(i, 0)) * pair.tau + to_d(b.entries()(i, 1));
    Eigen::VectorXcd out(g);
    for (std::size_t j = 0; j < g; ++j) {
        Complex acc = bt(g + j);
        for (std::size_t k = 0; k < g; ++k) acc += bt(k) * pair.tau_prime(k, j);
        out(j) = acc;
    }
    return out;
}

Eigen::Matrix2d transporter_sl2(Complex tau) {
    double y = tau.imag();
    if (!(y > 0)) throw std::domain_error("transporter_sl2: tau not in the upper half plane");
    double s = std::sqrt(y);
    Eigen::Matrix2d m;
    m << s, tau.real() / s, 0, 1 / s;
    return m;
}

Eigen::MatrixXd transporter_sp(const Eigen::MatrixXcd& tau_prime) {
    Eigen::Index g = tau_prime.rows();
    Eigen::MatrixXd im = tau_prime.imag();
    im = 0.5 * (im + im.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(im);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
        throw std::domain_error("transporter_sp: Im(tau') not positive definite");
    Eigen::MatrixXd a = es.operatorSqrt();
    Eigen::MatrixXd ainv = es.operatorInverseSqrt();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * g, 2 * g);
    m.topLeftCorner(g, g) = a;
    m.topRightCorner(g, g) = tau_prime.real() * ainv;
    m.bottomRightCorner(g, g) = ainv;
    return m;
}

double tensor_pairing(std::size_t g, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != static_cast<Eigen::Index>(4 * g) || b.size() != a.size())
        throw std::invalid_argument("tensor_pairing: dimension mismatch");
    double acc = 0;
    for (std::size_t k = 0; k < g; ++k) {
        acc += a(k) * b(3 * g + k) + a(3 * g + k) * b(k);
        acc -= a(g + k) * b(2 * g + k) + a(2 * g + k) * b(g + k);
    }
    return acc;
}

PlaneBases n0_p0_bases(std::size_t g) {
    PlaneBases out;
    for (std::size_t j = 0; j < g; ++j) {
        Eigen::VectorXd n1 = Eigen::VectorXd::Zero(4 * g), p1 = n1;
        n1(j) = 1;
        n1(3 * g + j) = -1;  // e.e'_j - f.f'_j
        p1(j) = 1;
        p1(3 * g + j) = 1;   // e.e'_j + f.f'_j
        out.n0.basis.push_back(std::move(n1));
        out.p0.push_back(std::move(p1));
    }
    for (std::size_t j = 0; j < g; ++j) {
        Eigen::VectorXd n2 = Eigen::VectorXd::Zero(4 * g), p2 = n2;
        n2(g + j) = 1;
        n2(2 * g + j) = 1;   // e.f'_j + f.e'_j
        p2(g + j) = 1;
        p2(2 * g + j) = -1;  // e.f'_j - f.e'_j
        out.n0.basis.push_back(std::move(n2));
        out.p0.push_back(std::move(p2));
    }
    return out;
}

Eigen::MatrixXd plane_gram(std::size_t g, const NegativePlane& plane) {
    Eigen::Index n = static_cast<Eigen::Index>(plane.basis.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            gram(i, j) = tensor_pairing(g, plane.basis[i], plane.basis[j]);
    return gram;
}

double plane_distance(const NegativePlane& a, const NegativePlane& b) {
    if (a.basis.size() != b.basis.size() || a.basis.empty())
        throw std::invalid_argument("plane_distance: rank mismatch");
    Eigen::Index dim = a.basis[0].size(), n = static_cast<Eigen::Index>(a.basis.size());
    Eigen::MatrixXd ma(dim, n), mb(dim, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        ma.col(j) = a.basis[j];
        mb.col(j) = b.basis[j];
    }
    auto projector = [&](const Eigen::MatrixXd& m) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, n);
        return Eigen::MatrixXd(q * q.transpose());
    };
    return (projector(ma) - projector(mb)).norm();
}

NegativePlane phi_plane(const SiegelPair& pair) {
    const std::size_t g = pair.genus();
    Eigen::Matrix2d m = transporter_sl2(pair.tau);
    Eigen::MatrixXd mp = transporter_sp(pair.tau_prime);
    const double w = m(0, 0), x = m(0, 1), y = m(1, 0), z = m(1, 1);
    Eigen::MatrixXd bw = mp.topLeftCorner(g, g), bx = mp.topRightCorner(g, g);
    Eigen::MatrixXd by = mp.bottomLeftCorner(g, g), bz = mp.bottomRightCorner(g, g);

    NegativePlane plane;
    for (std::size_t j = 0; j < g; ++j) {
        Eigen::VectorXd r = Eigen::VectorXd::Zero(4 * g);
        for (std::size_t k = 0; k < g; ++k) {
            r(k) = -(x * bx(k, j) - w * bw(k, j));
            r(g + k) = -(x * bz(k, j) - w * by(k, j));
            r(2 * g + k) = -(z * bx(k, j) - y * bw(k, j));
            r(3 * g + k) = -(z * bz(k, j) - y * by(k, j));
        }
        plane.basis.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < g; ++j) {
        Eigen::VectorXd s = Eigen::VectorXd::Zero(4 * g);
        for (std::size_t k = 0; k < g; ++k) {
            s(k) = w * bx(k, j) + x * bw(k, j);
            s(g + k) = w * bz(k, j) + x * by(k, j);
            s(2 * g + k) = y * bx(k, j) + z * bw(k, j);
            s(3 * g + k) = y * bz(k, j) + z * by(k, j);
        }
        plane.basis.push_back(std::move(s));
    }
    return plane;
}

OrthogonalityReport orthogonality_identities(const isogeny::IsogenyMatrix& b,
                                             const SiegelPair& pair, double tol_abs,
                                             double tol_rel) {
    const std::size_t g = b.genus();
    if (pair.genus() != g) throw std::invalid_argument("orthogonality: genus mismatch");

    Eigen::Matrix2d m = transporter_sl2(pair.tau);
    Eigen::MatrixXd mp = transporter_sp(pair.tau_prime);
    Eigen::MatrixXcd iyz =
        Complex(0, 1) * mp.bottomLeftCorner(g, g).cast<Complex>() +
        mp.bottomRightCorner(g, g).cast<Complex>();
    Complex denom = Complex(0, 1) * m(1, 0) + m(1, 1);

    Eigen::VectorXcd period = period_vector(b, pair);
    Eigen::VectorXcd beta = denom * (period.transpose() * iyz).transpose();

    auto tv = isogeny::tensor_vector(b);
    Eigen::VectorXd bphi(4 * g);
    for (std::size_t i = 0; i < 4 * g; ++i) bphi(i) = to_d(tv[i]);

    NegativePlane plane = phi_plane(pair);
    OrthogonalityReport rep;
    double bscale = 1 + bphi.cwiseAbs().maxCoeff();
    for (std::size_t j = 0; j < g; ++j) {
        double re_pair = tensor_pairing(g, bphi, -plane.basis[j]);
        double im_pair = tensor_pairing(g, bphi, plane.basis[g + j]);
        double gap = std::abs(re_pair - beta(j).real()) + std::abs(im_pair - beta(j).imag());
        rep.max_abs_discrepancy = std::max(rep.max_abs_discrepancy, gap);
        rep.max_rel_discrepancy = std::max(rep.max_rel_discrepancy, gap / (1 + std::abs(beta(j))));
    }
    for (std::size_t j = 0; j < g; ++j)
        rep.period_max = std::max(rep.period_max, std::abs(period(j)));
    for (std::size_t j = 0; j < 2 * g; ++j) {
        double scale = bscale * (1 + plane.basis[j].cwiseAbs().maxCoeff());
        rep.pairing_max =
            std::max(rep.pairing_max, std::abs(tensor_pairing(g, bphi, plane.basis[j])) / scale);
    }
    double pscale = (1 + bphi.cwiseAbs().maxCoeff()) * (1 + std::abs(pair.tau)) *
                    (1 + pair.tau_prime.cwiseAbs().maxCoeff());
    rep.identity_ok = rep.max_rel_discrepancy < tol_rel;
    rep.period_vanishes = rep.period_max < tol_abs * pscale;
    rep.orthogonal = rep.pairing_max < tol_abs;
    rep.equivalent = rep.period_vanishes == rep.orthogonal;
    return rep;
}

Complex matched_tau_prime(const isogeny::IsogenyMatrix& b1, Complex tau) {
    if (b1.genus() != 1) throw std::invalid_argument("matched_tau_prime: needs genus 1");
    Complex top = to_d(b1.entries()(0, 0)) * tau + to_d(b1.entries()(0, 1));
    Complex bottom = to_d(b1.entries()(1, 0)) * tau + to_d(b1.entries()(1, 1));
    if (std::abs(top) < 1e-14) throw std::domain_error("matched_tau_prime: degenerate data");
    return -bottom / top;
}

std::pair<isogeny::IsogenyMatrix, SiegelPair> embed_zero_case(const isogeny::IsogenyMatrix& b1,
                                                              Complex tau, Complex spectator) {
    Complex matched = matched_tau_prime(b1, tau);
    IMat big(4, 2);
    for (std::size_t j = 0; j < 2; ++j) {
        big(0, j) = b1.entries()(0, j);
        big(2, j) = b1.entries()(1, j);
    }
    Eigen::MatrixXcd tp = Eigen::MatrixXcd::Zero(2, 2);
    tp(0, 0) = matched;
    tp(1, 1) = spectator;
    return {isogeny::IsogenyMatrix(2, big), make_pair(tau, std::move(tp))};
}

}  // namespace symplat::siegel
