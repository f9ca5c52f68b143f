#include <doctest.h>

#include <cmath>
#include <random>

#include "g2cubic/zeta_assembly.hpp"

using namespace g2cubic;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kCatalan = 0.91596559417721901505;

Rational rnd_q(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> num(lo, hi), den(1, 12);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

ExactBundle random_exact_bundle(std::mt19937_64& rng) {
    ExactBundle b;
    auto& c = b.c;
    for (Rational* v : {&c.vol_L, &c.vol_M0, &c.vol_M1, &c.vol_M2, &c.c_F}) {
        do {
            *v = rnd_q(rng, 1, 30);
        } while (*v <= 0);
    }
    for (Rational* v : {&c.phi0, &c.phihat0, &c.sigma1_phi, &c.sigma1_phihat, &c.dbl_phi, &c.dbl_phihat, &c.dbl_log_phi}) {
        do {
            *v = rnd_q(rng, -20, 20);
        } while (*v == 0);
    }
    const Rational z0 = rnd_q(rng, -5, 5), z1 = rnd_q(rng, -5, 5), w0 = rnd_q(rng, -5, 5), w1 = rnd_q(rng, -5, 5);
    b.zplus_phi = [z0, z1](const Rational& s) { return Rational(z0 + z1 * s * s); };
    b.zplus_phihat = [w0, w1](const Rational& s) { return Rational(w0 + w1 * s); };
    return b;
}

FunctionalBundle to_double(const ExactBundle& e) {
    FunctionalBundle b;
    const auto& c = e.c;
    b.c = {c.vol_L.get_d(), c.vol_M0.get_d(), c.vol_M1.get_d(), c.vol_M2.get_d(), c.c_F.get_d(),
           c.phi0.get_d(), c.phihat0.get_d(), c.sigma1_phi.get_d(), c.sigma1_phihat.get_d(), c.dbl_phi.get_d(),
           c.dbl_phihat.get_d(), c.dbl_log_phi.get_d(), c.lim_term.get_d(), c.log_height_int.get_d(),
           c.n1.get_d(), c.n2.get_d()};
    auto zp = e.zplus_phi, zh = e.zplus_phihat;
    // the samplers above are polynomials in s with rational coefficients
    const Rational z0 = zp(0), z1 = zp(1) - z0, w0 = zh(0), w1 = zh(1) - w0;
    b.zplus_phi = [=](double s) { return z0.get_d() + z1.get_d() * s * s; };
    b.zplus_phihat = [=](double s) { return w0.get_d() + w1.get_d() * s; };
    return b;
}

Rational abs_q(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

TEST_CASE("all-zero bundle") {
    ExactBundle b;
    b.c.vol_L = b.c.vol_M0 = b.c.c_F = 1;
    for (const Rational& s : {Rational(1), Rational(7, 2), Rational(-3)}) CHECK(principal_part(b, s) == 0);
    const auto r = principal_residues(b);
    CHECK(r.at_0 == 0);
    CHECK(r.at_1_3 == 0);
    CHECK(r.at_5_3 == 0);
    CHECK(r.at_2 == 0);
    CHECK(identity_rhs(b, Rational(3), Rational(-2)) == 0);
}

TEST_CASE("evaluation at a pole is rejected, residues always available") {
    std::mt19937_64 rng(1);
    const auto b = random_exact_bundle(rng);
    for (const auto& p : principal_poles()) CHECK_THROWS_AS(principal_part(b, p), std::domain_error);
    CHECK_NOTHROW(principal_residues(b).at(Rational(1)));
    CHECK(principal_residues(b).at(Rational(1)) == 0);
    const auto d = to_double(b);
    CHECK_THROWS_AS(principal_part(d, 2.0), std::domain_error);
    CHECK_THROWS_AS(principal_part(d, 0.0), std::domain_error);
}

TEST_CASE("residues match the pole coefficients of the template") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto b = random_exact_bundle(rng);
        const auto& c = b.c;
        const auto r = principal_residues(b);
        CHECK(r.at_2 == c.vol_L * c.phihat0 + c.vol_M0 / c.c_F * c.dbl_phi);
        CHECK(r.at_1_3 == -(c.vol_M0 / (3 * c.c_F)) * c.sigma1_phi);
        CHECK(r.at_5_3 == c.vol_M0 / (3 * c.c_F) * c.sigma1_phihat);
        CHECK(r.at_0 == -c.vol_L * c.phi0 - c.vol_M0 / c.c_F * c.dbl_phihat);
        // exact limit oracle: (s - s0) PP(s) at s = s0 + eps differs from the residue by O(eps)
        Rational eps(1);
        for (int i = 0; i < 40; ++i) eps /= 10;
        for (const auto& pole : principal_poles()) {
            const Rational s = pole + eps;
            const Rational approx = (s - pole) * principal_part(b, s);
            CHECK(abs_q(approx - r.at(pole)) < Rational(1, 1000000000) * Rational(1, 1000000000) * Rational(1, 1000000000));
        }
        // generic bundles have all four poles; non-poles have zero limit
        CHECK(r.at_0 != 0);
        CHECK(r.at_1_3 != 0);
        CHECK(r.at_5_3 != 0);
        CHECK(r.at_2 != 0);
        for (const Rational& s0 : {Rational(1), Rational(1, 2), Rational(3)}) {
            const Rational s = s0 + eps;
            CHECK(abs_q((s - s0) * principal_part(b, s)) < Rational(1, 1000000000) * Rational(1, 1000000000));
        }
    }
}

TEST_CASE("laurent constant at two") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const auto b = random_exact_bundle(rng);
        Rational eps(1);
        for (int i = 0; i < 40; ++i) eps /= 10;
        const Rational s = 2 + eps;
        const Rational slope = ((s - 2) * principal_part(b, s) - principal_residues(b).at_2) / (s - 2);
        CHECK(abs_q(slope - laurent_constant_at_two(b)) < Rational(1, 1000000000) * Rational(1, 1000000000));
    }
}

TEST_CASE("numeric limit at two with richardson extrapolation") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = to_double(random_exact_bundle(rng));
        const double res = principal_residues(d).at_2;
        double prev_err = 0, prev_val = 0, prev_h = 0;
        for (int m = 1; m <= 6; ++m) {
            const double s = 2.0 + std::pow(10.0, -m);
            const double h = s - 2.0;
            const double val = h * principal_part(d, s);
            const double err = std::abs(val - res);
            if (m > 1) {
                // first-order convergence once h is small next to the distance 1/3 to the pole at 5/3
                if (m >= 3) CHECK(prev_err / err == doctest::Approx(10.0).epsilon(0.15));
                const double extrapolated = (prev_h * val - h * prev_val) / (prev_h - h);
                if (m == 6) CHECK(std::abs(extrapolated - res) < 1e-6);
            }
            prev_err = err;
            prev_val = val;
            prev_h = h;
        }
    }
}

TEST_CASE("complex evaluation agrees with the real path on the real axis") {
    std::mt19937_64 rng(5);
    const auto d = to_double(random_exact_bundle(rng));
    ComplexBundle cb;
    cb.c = {d.c.vol_L, d.c.vol_M0, d.c.vol_M1, d.c.vol_M2, d.c.c_F, d.c.phi0, d.c.phihat0, d.c.sigma1_phi,
            d.c.sigma1_phihat, d.c.dbl_phi, d.c.dbl_phihat, d.c.dbl_log_phi, 0, 0, 0, 0};
    cb.zplus_phi = [&](const std::complex<double>& s) { return std::complex<double>(d.zplus_phi(s.real())); };
    cb.zplus_phihat = [&](const std::complex<double>& s) { return std::complex<double>(d.zplus_phihat(s.real())); };
    CHECK(principal_part(cb, std::complex<double>(2.7, 0)).real() == doctest::Approx(principal_part(d, 2.7)));
    CHECK_THROWS_AS(principal_part(cb, std::complex<double>(1.0 / 3.0 * 3.0 - 1.0 + 1.0 / 3.0, 0)), std::domain_error);
}

TEST_CASE("bundle validation") {
    FunctionalBundle b;
    b.c.c_F = 0;
    CHECK_THROWS_AS(principal_part(b, 3.0), std::invalid_argument);
    b.c.c_F = 1;
    b.c.vol_M1 = -1;
    CHECK_THROWS_AS(principal_residues(b), std::invalid_argument);
}

TEST_CASE("truncated formula at two") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto b = random_exact_bundle(rng);
        const Rational T1 = rnd_q(rng, -9, 9), T2 = rnd_q(rng, -9, 9);
        const auto terms = tilde_terms_at_two(b, T1, T2);
        CHECK(terms[3] == T2 * b.c.vol_L * b.c.phihat0);
        // T1 enters affinely with slope (vol_M0/c_F) dbl_phi
        const Rational slope = b.c.vol_M0 / b.c.c_F * b.c.dbl_phi;
        const Rational base = tilde_Z_at_two(b, Rational(0), T2);
        CHECK(tilde_Z_at_two(b, T1, T2) - base == slope * T1);
        // e^{T2} = 1: the T2 term vanishes
        CHECK(tilde_terms_at_two(b, T1, Rational(0))[3] == 0);
    }
    CHECK(t_integral(2.0, 1.75) == 1.75);
    CHECK(t_integral(2.0, 0.0) == 0.0);
    CHECK(t_integral(2.0 + 1e-9, 1.75) == doctest::Approx(1.75).epsilon(1e-8));
}

TEST_CASE("truncated formula away from two") {
    std::mt19937_64 rng(23);
    auto b = to_double(random_exact_bundle(rng));
    const auto profile = [](double a) { return std::exp(-kPi * a * a); };
    b.a_profile = profile;
    const auto mom = profile_moments(profile);
    // oracle: 1/(2 pi) and -(gamma + log pi)/(4 pi) for the Gaussian profile
    CHECK(mom.dbl_phi == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-12));
    CHECK(mom.dbl_log_phi == doctest::Approx(-(kEulerGamma + std::log(kPi)) / (4 * kPi)).epsilon(1e-10));
    b.c.dbl_phi = mom.dbl_phi;
    b.c.dbl_log_phi = mom.dbl_log_phi;
    const TruncationParam T{0.7, -0.4};
    const double at2 = tilde_Z_principal(b, 2.0, T);
    CHECK(tilde_Z_principal(b, 2.0 + 1e-7, T) == doctest::Approx(at2).epsilon(1e-6));
    CHECK(tilde_Z_principal(b, 2.0 - 1e-7, T) == doctest::Approx(at2).epsilon(1e-6));
    CHECK_THROWS_AS(tilde_Z_principal(b, 5.0 / 3.0, T), std::invalid_argument);
    CHECK_THROWS_AS(tilde_Z_principal(b, 1.0, T), std::invalid_argument);
    FunctionalBundle no_profile = b;
    no_profile.a_profile = nullptr;
    CHECK_THROWS_AS(tilde_Z_principal(no_profile, 2.5, T), std::invalid_argument);

    // the difference to the principal part ignores the fields outside {vol_L, vol_M0, c_F, phihat0, dbl_phi}
    for (double s : {1.8, 2.5, 3.0}) {
        const double diff = tilde_Z_principal(b, s, T) - principal_part(b, s);
        auto v = b;
        v.c.phi0 += 3.0;
        v.c.sigma1_phi -= 1.5;
        v.c.sigma1_phihat += 2.0;
        v.c.dbl_phihat *= -2.0;
        v.c.vol_M1 = 9.0;
        v.zplus_phi = [](double x) { return std::sin(x); };
        v.zplus_phihat = [](double x) { return x * x * x; };
        CHECK(tilde_Z_principal(v, s, T) - principal_part(v, s) == doctest::Approx(diff).epsilon(1e-10));
    }
}

TEST_CASE("truncation residual in s") {
    for (double a : {0.1, 1.0, 3.5})
        for (double T1 : {-1.0, 0.0, 2.0}) {
            CHECK(truncation_residual_s(a, T1, 2.0) == doctest::Approx(T1 - std::log(a)));
            CHECK(truncation_residual_s(a, T1, 2.0 + 1e-8) == doctest::Approx(T1 - std::log(a)).epsilon(1e-6));
            const double s = 2.6, x = 2 - s;
            CHECK(truncation_residual_s(a, T1, s) == doctest::Approx((std::exp(x * T1) - std::pow(a, x)) / x));
        }
}

TEST_CASE("main identity right-hand side and bookkeeping") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto b = random_exact_bundle(rng);
        b.c.lim_term = rnd_q(rng, -5, 5);
        b.c.log_height_int = rnd_q(rng, -5, 5);
        b.c.n1 = rnd_q(rng, -5, 5);
        b.c.n2 = rnd_q(rng, -5, 5);
        const Rational T1 = rnd_q(rng, -9, 9), T2 = rnd_q(rng, -9, 9);
        CHECK(identity_rhs(b, T1 + 1, T2) - identity_rhs(b, T1, T2) == b.c.vol_M1 * b.c.n1);
        CHECK(identity_rhs(b, T1, T2 + 1) - identity_rhs(b, T1, T2) == b.c.vol_M2 * b.c.n2);
        const auto kept = apply_bookkeeping(b);
        CHECK(identity_rhs(kept, T1, T2) == tilde_Z_at_two(kept, T1, T2));
    }
}

TEST_CASE("bundle text") {
    const std::string text =
        "# sample\nvol_L = 2\nvol_M0=3/2\nc_F = 1\nphihat0 = -1/4\ndbl_phi = 5\nzplus_phi = 1, 0, 2\n";
    const auto e = parse_exact_bundle(text);
    CHECK(e.c.vol_M0 == Rational(3, 2));
    CHECK(e.c.phihat0 == Rational(-1, 4));
    CHECK(e.zplus_phi(Rational(3)) == 19);
    CHECK(!e.zplus_phihat);
    CHECK(principal_residues(e).at_2 == Rational(2) * Rational(-1, 4) + Rational(3, 2) * 5);
    const auto d = parse_bundle("vol_L=0.5\nzplus_phihat=2.5\n");
    CHECK(d.c.vol_L == 0.5);
    CHECK(d.zplus_phihat(7.0) == 2.5);
    CHECK_THROWS_AS(parse_bundle("bogus=1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bundle("vol_L\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bundle("vol_L=-1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bundle("phi0=abc\n"), std::invalid_argument);
    CHECK(bundle_keys().size() == 18);
}

TEST_CASE("sigma1 local factor") {
    CHECK(sigma1_closed(2, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(sigma1_factor(2, 2.0, 60) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    for (int p : {2, 3, 5, 7, 11})
        for (int K = 1; K <= 40; ++K) {
            const double gap = sigma1_closed(p, 2.0 / 3.0) - sigma1_factor(p, 2.0 / 3.0, K);
            CHECK(gap >= 0);
            CHECK(gap <= sigma1_tail_bound(p, 2.0 / 3.0, K) * (1 + 1e-12) + 1e-15);
        }
    CHECK_THROWS_AS(sigma1_factor(4, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(sigma1_factor(2, -1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(sigma1_factor(2, 1.0, 0), std::invalid_argument);
}

TEST_CASE("sigma1 archimedean quadratures") {
    for (double s : {2.0 / 3.0, 1.0, 2.0, 3.0, 5.5}) {
        const double a = sigma1_arch_exp_sinh(s), b = sigma1_arch_log_substitution(s);
        CHECK(std::abs(a - b) < 1e-8);
        const double closed = std::pow(kPi, -s / 2) * std::tgamma(s / 2);
        CHECK(a == doctest::Approx(closed).epsilon(1e-12));
        CHECK(b == doctest::Approx(closed).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sigma1_arch(0.0), std::invalid_argument);
}

TEST_CASE("density tables: partition and stabilization") {
    for (int p : {2, 5, 7}) {
        std::vector<LocalDensityTable> tables;
        for (int k = 1; k <= 4; ++k) {
            const auto t = local_disc_densities(p, k);
            CHECK(t.exact);
            CHECK(static_cast<int>(t.densities.size()) == k + 1);
            Rational sum = 0;
            for (const auto& d : t.densities) sum += d;
            CHECK(sum == 1);
            tables.push_back(t);
        }
        for (int k = 1; k < 4; ++k)
            for (int j = 0; j <= k - 1; ++j) CHECK(tables[k - 1].densities[j] == tables[k].densities[j]);
        // nonzero discriminant mod p: p^4 - p^3 - p^2 + p forms
        Rational d0(p * p * p * p - p * p * p - p * p + p, p * p * p * p);
        d0.canonicalize();
        CHECK(tables[0].densities[0] == d0);
    }
}

TEST_CASE("stratified counts agree with exhaustive enumeration") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {2, 5}, {5, 1}, {5, 2}, {7, 1}, {7, 2}}) {
        CAPTURE(p);
        CAPTURE(k);
        DensityOptions ex, st;
        ex.method = DensityMethod::Exhaustive;
        st.method = DensityMethod::Stratified;
        CHECK(local_disc_densities(p, k, ex).counts == local_disc_densities(p, k, st).counts);
    }
}

TEST_CASE("zero counts by root counting in the last coordinate") {
    // the discriminant is quadratic in x4; count its roots mod p^r by lifting, for every (x1, x2, x3)
    const std::int64_t p = 5;
    const int r = 3;
    const std::int64_t M = 125;
    auto P = [&](std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t m) {
        __int128 v = (__int128)b * b * c * c + 18 * (__int128)a * b * c * d - 4 * (__int128)b * b * b * d -
                     4 * (__int128)a * c * c * c - 27 * (__int128)a * a * d * d;
        v %= m;
        return v == 0;
    };
    long long total = 0;
    for (std::int64_t a = 0; a < M; ++a)
        for (std::int64_t b = 0; b < M; ++b)
            for (std::int64_t c = 0; c < M; ++c) {
                std::vector<std::int64_t> nodes;
                for (std::int64_t d = 0; d < p; ++d)
                    if (P(a, b, c, d, p)) nodes.push_back(d);
                std::int64_t mod = p;
                for (int l = 1; l < r && !nodes.empty(); ++l) {
                    std::vector<std::int64_t> next;
                    for (auto d : nodes)
                        for (std::int64_t e = 0; e < p; ++e)
                            if (P(a, b, c, d + mod * e, mod * p)) next.push_back(d + mod * e);
                    nodes.swap(next);
                    mod *= p;
                }
                total += static_cast<long long>(nodes.size());
            }
    CHECK(disc_zero_count(p, r) == Integer(std::to_string(total)));
}

TEST_CASE("density sampling fallback") {
    DensityOptions opt;
    opt.method = DensityMethod::Sampling;
    opt.samples = 200000;
    const auto s = local_disc_densities(5, 3, opt);
    CHECK_FALSE(s.exact);
    CHECK(s.std_error > 0);
    const auto exact = local_disc_densities(5, 3);
    for (std::size_t j = 0; j < s.densities.size(); ++j)
        CHECK(std::abs(s.densities[j].get_d() - exact.densities[j].get_d()) < 6 * s.std_error + 1e-12);
    CHECK(local_disc_densities(5, 3, opt).counts == s.counts);
    CHECK_THROWS_AS(local_disc_densities(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(local_disc_densities(2, 0), std::invalid_argument);
}

TEST_CASE("density csv") {
    const auto csv = densities_csv({local_disc_densities(2, 2)});
    CHECK(csv == "p,k,j,count,density_num,density_den\n2,2,0,96,3,8\n2,2,1,0,0,1\n2,2,2,160,5,8\n");
}

TEST_CASE("log-height term") {
    auto gauss = [](double y1, double y2) { return std::exp(-kPi * (y1 * y1 + y2 * y2)); };
    auto radial = [](double r) { return std::exp(-kPi * r * r); };
    const double closed = -(kEulerGamma + std::log(kPi)) / 2;
    const auto polar = log_height_polar(radial);
    const auto cart = log_height_cartesian(gauss);
    CHECK(polar.value == doctest::Approx(closed).epsilon(1e-12));
    CHECK(std::abs(polar.value - cart.value) < 1e-8);
    const auto polar_sup = log_height_polar(radial, HeightNorm::Sup);
    const auto cart_sup = log_height_cartesian(gauss, HeightNorm::Sup);
    CHECK(std::abs(polar_sup.value - cart_sup.value) < 1e-8);
    CHECK(sup_norm_angular_constant() == doctest::Approx(8 * (-kPi / 4 * std::log(2.0) + kCatalan / 2)).epsilon(1e-13));

    CHECK(log_height_cartesian([](double, double) { return 0.0; }).value == 0.0);
    CHECK(log_height_polar([](double) { return 0.0; }).value == 0.0);

    // phi_c(y) = phi(y / c): value c^2 (original + log c * mass)
    const double mass = plane_integral(gauss).value;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    for (double c : {0.5, 2.0, 3.0}) {
        const auto scaled = log_height_cartesian([&](double y1, double y2) { return gauss(y1 / c, y2 / c); });
        CHECK(std::abs(scaled.value - c * c * (cart.value + std::log(c) * mass)) < 1e-8);
    }
    // a non-radial test function
    auto skew = [](double y1, double y2) { return std::exp(-kPi * (2 * y1 * y1 + y2 * y2 / 2 + y1 * y2 / 3)); };
    CHECK(std::isfinite(log_height_cartesian(skew).value));

    CHECK_THROWS_AS(log_height_cartesian([](double, double) { return 1.0; }), std::invalid_argument);
    CHECK_THROWS_AS(log_height_polar([](double r) { return 1.0 / (1 + r * r); }), std::invalid_argument);
    CHECK(parse_height_norm("sup") == HeightNorm::Sup);
    CHECK_THROWS_AS(parse_height_norm("taxicab"), std::invalid_argument);
}
