#include "g2cubic/g2_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace g2cubic {

// ---------------------------------------------------------------- LieElement

LieElement LieElement::basis(int index) {
    if (index < 0 || index >= kLieDim) throw std::out_of_range("Lie basis index");
    LieElement e;
    e[index] = 1;
    return e;
}

LieElement& LieElement::operator+=(const LieElement& o) {
    for (int i = 0; i < kLieDim; ++i) (*this)[i] += o[i];
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
    for (int i = 0; i < kLieDim; ++i) (*this)[i] -= o[i];
    return *this;
}

LieElement& LieElement::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

bool LieElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

std::string LieElement::to_string() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < kLieDim; ++i) os << (i ? "," : "") << c_[static_cast<std::size_t>(i)].get_str();
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- roots

const std::vector<RootVector>& positive_roots() {
    static const std::vector<RootVector> roots = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
    return roots;
}

const std::vector<RootVector>& all_roots() {
    static const std::vector<RootVector> roots = [] {
        std::vector<RootVector> r = positive_roots();
        for (const auto& a : positive_roots()) r.push_back(-a);
        return r;
    }();
    return roots;
}

bool is_root(RootVector r) {
    const auto& roots = all_roots();
    return std::find(roots.begin(), roots.end(), r) != roots.end();
}

int basis_index(RootVector r) {
    const auto& roots = all_roots();
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) throw std::invalid_argument("not a root of G2");
    return 2 + static_cast<int>(it - roots.begin());
}

std::optional<RootVector> root_of(int index) {
    if (index < 0 || index >= kLieDim) throw std::out_of_range("Lie basis index");
    if (index < 2) return std::nullopt;
    return all_roots()[static_cast<std::size_t>(index - 2)];
}

int inner_product(RootVector a, RootVector b) {
    // Gram matrix for (alpha1, alpha2): [[2,-3],[-3,6]]
    return 2 * a.c1 * b.c1 - 3 * (a.c1 * b.c2 + a.c2 * b.c1) + 6 * a.c2 * b.c2;
}

int cartan_pairing(RootVector beta, RootVector alpha) {
    return 2 * inner_product(beta, alpha) / inner_product(alpha, alpha);
}

std::array<int, 2> coroot_in_chevalley_basis(RootVector alpha) {
    int n = inner_product(alpha, alpha);
    return {2 * alpha.c1 / n, 6 * alpha.c2 / n};
}

int chain_length_bound(RootVector alpha, RootVector beta) {
    int p = 0;
    while (is_root(beta - RootVector{alpha.c1 * (p + 1), alpha.c2 * (p + 1)})) ++p;
    return p + 1;
}

// ---------------------------------------------------------------- sign search

namespace {

using IntVec = std::array<long, kLieDim>;

struct SignSearch {
    // pair ids for unordered {alpha,beta} with alpha+beta a root
    std::map<std::pair<int, int>, int> pair_id;
    std::vector<std::pair<int, int>> pairs;  // (i,j) basis indices with i<j
    std::vector<int> sign;                   // 0 unknown, else +-1 for N(pairs[k].first, pairs[k].second)

    int lookup(int i, int j) const {
        auto it = pair_id.find({std::min(i, j), std::max(i, j)});
        return it == pair_id.end() ? -1 : it->second;
    }

    // N(X_i, X_j) with the current signs; requires the pair to be assigned.
    long constant(int i, int j) const {
        int id = lookup(i, j);
        RootVector a = *root_of(i), b = *root_of(j);
        long n = chain_length_bound(a, b) * sign[static_cast<std::size_t>(id)];
        return i < j ? n : -n;
    }

    IntVec basis_bracket(int i, int j) const {
        IntVec r{};
        auto ri = root_of(i), rj = root_of(j);
        if (!ri && !rj) return r;
        if (!ri || !rj) {
            bool flip = static_cast<bool>(ri);  // [X, H] = -[H, X]
            int h = flip ? j : i;
            int x = flip ? i : j;
            RootVector simple = h == 0 ? RootVector{1, 0} : RootVector{0, 1};
            long w = cartan_pairing(*root_of(x), simple);
            r[static_cast<std::size_t>(x)] = flip ? -w : w;
            return r;
        }
        RootVector s = *ri + *rj;
        if (s == RootVector{0, 0}) {
            auto h = coroot_in_chevalley_basis(*ri);
            r[0] = h[0];
            r[1] = h[1];
            return r;
        }
        if (!is_root(s)) return r;
        r[static_cast<std::size_t>(basis_index(s))] = constant(i, j);
        return r;
    }

    IntVec bracket(int i, const IntVec& v) const {
        IntVec r{};
        for (int k = 0; k < kLieDim; ++k) {
            if (!v[static_cast<std::size_t>(k)]) continue;
            IntVec b = basis_bracket(i, k);
            for (int m = 0; m < kLieDim; ++m) r[static_cast<std::size_t>(m)] += v[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(m)];
        }
        return r;
    }

    bool jacobi_holds(int a, int b, int c) const {
        IntVec total{};
        const int t[3] = {a, b, c};
        for (int k = 0; k < 3; ++k) {
            int x = t[k], y = t[(k + 1) % 3], z = t[(k + 2) % 3];
            IntVec inner = basis_bracket(y, z);
            IntVec outer = bracket(x, inner);
            for (int m = 0; m < kLieDim; ++m) total[static_cast<std::size_t>(m)] += outer[static_cast<std::size_t>(m)];
        }
        return std::all_of(total.begin(), total.end(), [](long v) { return v == 0; });
    }

    std::vector<int> dependencies(int a, int b, int c) const {
        std::vector<int> deps;
        const int t[3] = {a, b, c};
        for (int k = 0; k < 3; ++k) {
            int x = t[k], y = t[(k + 1) % 3], z = t[(k + 2) % 3];
            RootVector s = *root_of(y) + *root_of(z);
            if (!is_root(s)) continue;
            deps.push_back(lookup(y, z));
            RootVector s2 = s + *root_of(x);
            if (is_root(s2)) deps.push_back(lookup(x, basis_index(s)));
        }
        return deps;
    }
};

std::vector<int> solve_signs(SignSearch& S) {
    const int n = static_cast<int>(S.pairs.size());
    // variables in order: fixed ones first, then by id
    std::vector<int> order;
    std::vector<int> fixed_value(static_cast<std::size_t>(n), 0);
    auto fix = [&](RootVector a, RootVector b, int value) {
        int i = basis_index(a), j = basis_index(b);
        int id = S.lookup(i, j);
        int mag = chain_length_bound(a, b);
        if (std::abs(value) != mag) throw std::logic_error("inconsistent fixed structure constant");
        int sgn = value > 0 ? 1 : -1;
        fixed_value[static_cast<std::size_t>(id)] = i < j ? sgn : -sgn;
        order.push_back(id);
    };
    // these six make ad(X_{+-alpha1}) on V match the twisted action on cubic forms
    fix({1, 0}, {0, 1}, 1);
    fix({1, 0}, {1, 1}, 2);
    fix({1, 0}, {2, 1}, 3);
    fix({-1, 0}, {1, 1}, 3);
    fix({-1, 0}, {2, 1}, 2);
    fix({-1, 0}, {3, 1}, 1);
    for (int id = 0; id < n; ++id)
        if (!fixed_value[static_cast<std::size_t>(id)]) order.push_back(id);
    std::vector<int> position(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) position[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;

    // triples of root vectors grouped by the position at which they become decidable
    std::vector<std::vector<std::array<int, 3>>> checks(static_cast<std::size_t>(n));
    for (int a = 2; a < kLieDim; ++a)
        for (int b = a + 1; b < kLieDim; ++b)
            for (int c = b + 1; c < kLieDim; ++c) {
                auto deps = S.dependencies(a, b, c);
                if (deps.empty()) continue;
                int last = 0;
                for (int d : deps) last = std::max(last, position[static_cast<std::size_t>(d)]);
                checks[static_cast<std::size_t>(last)].push_back({a, b, c});
            }

    S.sign.assign(static_cast<std::size_t>(n), 0);
    std::function<bool(int)> go = [&](int k) -> bool {
        if (k == n) return true;
        int id = order[static_cast<std::size_t>(k)];
        int fv = fixed_value[static_cast<std::size_t>(id)];
        for (int s : {1, -1}) {
            if (fv && s != fv) continue;
            S.sign[static_cast<std::size_t>(id)] = s;
            bool ok = true;
            for (const auto& t : checks[static_cast<std::size_t>(k)])
                if (!S.jacobi_holds(t[0], t[1], t[2])) {
                    ok = false;
                    break;
                }
            if (ok && go(k + 1)) return true;
        }
        S.sign[static_cast<std::size_t>(id)] = 0;
        return false;
    };
    if (!go(0)) throw std::logic_error("no consistent sign choice for G2 structure constants");
    return S.sign;
}

}  // namespace

int G2Table::structure_constant(RootVector alpha, RootVector beta) const {
    if (!is_root(alpha) || !is_root(beta) || !is_root(alpha + beta)) return 0;
    const LieElement& e = products[static_cast<std::size_t>(basis_index(alpha))][static_cast<std::size_t>(basis_index(beta))];
    return static_cast<int>(e[basis_index(alpha + beta)].get_num().get_si());
}

G2Table build_chevalley_table() {
    SignSearch S;
    for (int i = 2; i < kLieDim; ++i)
        for (int j = i + 1; j < kLieDim; ++j)
            if (is_root(*root_of(i) + *root_of(j))) {
                S.pair_id[{i, j}] = static_cast<int>(S.pairs.size());
                S.pairs.emplace_back(i, j);
            }
    solve_signs(S);

    G2Table t;
    for (int i = 0; i < kLieDim; ++i)
        for (int j = 0; j < kLieDim; ++j) {
            IntVec v = S.basis_bracket(i, j);
            for (int m = 0; m < kLieDim; ++m) t.products[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][m] = v[static_cast<std::size_t>(m)];
        }
    return t;
}

const G2Table& chevalley_table() {
    static const G2Table table = build_chevalley_table();
    return table;
}

LieElement bracket(const LieElement& x, const LieElement& y, const G2Table& t) {
    LieElement r;
    Rational c;
    for (int i = 0; i < kLieDim; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < kLieDim; ++j) {
            if (y[j] == 0) continue;
            const LieElement& p = t.products[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (p.is_zero()) continue;
            c = x[i] * y[j];
            for (int m = 0; m < kLieDim; ++m)
                if (p[m] != 0) r[m] += c * p[m];
        }
    }
    return r;
}

// ---------------------------------------------------------------- root datum

double RootDatum::evaluate(RootVector alpha, double t1, double t2) const {
    // alpha1 -> t2 - t1, alpha2 -> 2 t1 - t2
    return alpha.c1 * (t2 - t1) + alpha.c2 * (2 * t1 - t2);
}

Rational RootDatum::evaluate(RootVector alpha, const Rational& t1, const Rational& t2) const {
    return Rational(alpha.c1) * (t2 - t1) + Rational(alpha.c2) * (2 * t1 - t2);
}

Rational RootDatum::pair_coroot(std::array<int, 2> coroot_h12, RootVector lambda) const {
    return evaluate(lambda, Rational(coroot_h12[0]), Rational(coroot_h12[1]));
}

RootDatum root_datum() {
    RootDatum d;
    d.positive = positive_roots();
    d.coroots_h12 = {{{-1, 1}, {1, 0}}};
    d.varpi1 = {2, 1};
    d.varpi2 = {3, 2};
    return d;
}

// ---------------------------------------------------------------- Levi action

bool in_levi(const LieElement& y) {
    const int keep[4] = {0, 1, basis_index({1, 0}), basis_index({-1, 0})};
    for (int i = 0; i < kLieDim; ++i)
        if (std::find(std::begin(keep), std::end(keep), i) == std::end(keep) && y[i] != 0) return false;
    return true;
}

const std::array<RootVector, 4>& cubic_space_roots() {
    static const std::array<RootVector, 4> v = {{{0, 1}, {1, 1}, {2, 1}, {3, 1}}};
    return v;
}

Matrix4 levi_action_matrix(const LieElement& y, const G2Table& t) {
    if (!in_levi(y)) throw std::invalid_argument("element has a component outside the Levi subalgebra");
    Matrix4 m{};
    const auto& vr = cubic_space_roots();
    for (int j = 0; j < 4; ++j) {
        LieElement img = bracket(y, LieElement::basis(basis_index(vr[static_cast<std::size_t>(j)])), t);
        LieElement rest = img;
        for (int i = 0; i < 4; ++i) {
            int bi = basis_index(vr[static_cast<std::size_t>(i)]);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = img[bi];
            rest[bi] = 0;
        }
        if (!rest.is_zero()) throw std::logic_error("Levi element does not preserve V");
    }
    return m;
}

std::array<Rational, 4> levi_to_gl2(const LieElement& y) {
    if (!in_levi(y)) throw std::invalid_argument("element has a component outside the Levi subalgebra");
    // H_a1 -> diag(1,-1), H_a2 -> diag(-1,0), X_a1 -> -E21, X_-a1 -> -E12
    const Rational& p = y[0];
    const Rational& q = y[1];
    const Rational& r = y[basis_index({1, 0})];
    const Rational& s = y[basis_index({-1, 0})];
    return {p - q, -s, -r, -p};
}

// ---------------------------------------------------------------- truncation

double truncation_weight(int j, const TorusPoint& m, const TruncationParam& T) {
    if (j != 1 && j != 2) throw std::invalid_argument("tau_hat index must be 1 or 2");
    // T = T1 a1v + T2 a2v = (T2 - T1) H1 + T1 H2
    double t1 = std::log(m.a) - (T.T2 - T.T1);
    double t2 = std::log(m.b) - T.T1;
    RootDatum d = root_datum();
    return d.evaluate(j == 1 ? d.varpi1 : d.varpi2, t1, t2);
}

bool tau_hat(int j, const TorusPoint& m, const TruncationParam& T) {
    if (j == 1) return m.b > std::exp(T.T1);
    if (j == 2) return m.a * m.b > std::exp(T.T2);
    throw std::invalid_argument("tau_hat index must be 1 or 2");
}

double truncation_residual_closed(double a, double T1) {
    if (!(a > 0)) throw std::invalid_argument("truncation_residual requires a > 0");
    return T1 - std::log(a);
}

double truncation_residual_quadrature(double a, double T1) {
    if (!(a > 0)) throw std::invalid_argument("truncation_residual requires a > 0");
    double e = std::exp(T1);
    if (a == e) return 0.0;
    double lo = std::min(a, e), hi = std::max(a, e);
    double sign = a < e ? 1.0 : -1.0;
    // log-spaced pieces keep the 1/b integrand well resolved for wide ranges
    double total = 0.0;
    int pieces = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo))));
    double ratio = std::pow(hi / lo, 1.0 / pieces);
    double left = lo;
    for (int k = 0; k < pieces; ++k) {
        double right = k + 1 == pieces ? hi : left * ratio;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [](double b) { return 1.0 / b; }, left, right, 10, 1e-14);
        left = right;
    }
    return sign * total;
}

// ---------------------------------------------------------------- dump

namespace {
std::string label(int index) {
    std::ostringstream os;
    if (index < 2) {
        os << "H[" << (index == 0 ? "1,0" : "0,1") << "]";
    } else {
        RootVector r = *root_of(index);
        os << "X[" << r.c1 << "," << r.c2 << "]";
    }
    return os.str();
}
}  // namespace

std::string dump_table(const G2Table& t) {
    std::ostringstream os;
    for (int i = 0; i < kLieDim; ++i)
        for (int j = i + 1; j < kLieDim; ++j) {
            const LieElement& p = t.products[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int m = 0; m < kLieDim; ++m)
                if (p[m] != 0) os << label(i) << " " << label(j) << " -> " << p[m].get_str() << " * " << label(m) << "\n";
        }
    return os.str();
}

}  // namespace g2cubic
