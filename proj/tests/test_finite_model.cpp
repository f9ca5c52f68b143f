#include <doctest.h>

#include <map>
#include <random>

#include "g2cubic/cubic_forms.hpp"
#include "g2cubic/finite_model.hpp"

using namespace g2cubic;

namespace {

FiniteModelFunction constant(int N, Complex c) {
    FiniteModelFunction f(N);
    for (std::size_t i = 0; i < f.size(); ++i) f.raw(i) = c;
    return f;
}

FiniteModelFunction delta0(int N) {
    FiniteModelFunction f(N);
    f.raw(0) = 1.0;
    return f;
}

double max_diff(const FiniteModelFunction& a, const FiniteModelFunction& b) {
    double w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a.raw(i) - b.raw(i)));
    return w;
}

}  // namespace

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(FiniteModelFunction(3), std::invalid_argument);
    CHECK_THROWS_AS(FiniteModelFunction(6), std::invalid_argument);
    CHECK_THROWS_AS(FiniteModelFunction(1), std::invalid_argument);
    CHECK_NOTHROW(FiniteModelFunction(4));
    CHECK_THROWS_AS(ExactModelFunction(4), std::invalid_argument);
    CHECK_THROWS_AS(partial_fourier(delta0(5), {2}), std::invalid_argument);
    CHECK_THROWS_AS(partial_fourier(delta0(5), {}), std::invalid_argument);
    CHECK_THROWS_AS(verify_poisson_rearrangement(delta0(4)), std::invalid_argument);
}

TEST_CASE("fourier examples") {
    for (int N : {4, 5, 7}) {
        auto h = fourier(delta0(N));
        for (std::size_t i = 0; i < h.size(); ++i) CHECK(std::abs(h.raw(i) - 1.0 / (N * N)) < 1e-14);
        auto g = fourier(constant(N, 1.0));
        CHECK(std::abs(g.raw(0) - static_cast<double>(N * N)) < 1e-10);
        for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(g.raw(i)) < 1e-10);
    }
}

TEST_CASE("separable transform matches the direct definition") {
    auto phi = random_function(5, 1);
    CHECK(max_diff(fourier(phi), fourier_direct(phi)) < 1e-12);
    auto ex = random_integer_function(5, 2, 3);
    auto a = fourier(ex), b = fourier_direct(ex);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a.value(i) - b.value(i)).is_zero());
    CHECK(max_diff(to_complex(a), fourier(to_complex(ex))) < 1e-12);
}

TEST_CASE("involution, Plancherel and partial transforms on random functions") {
    for (int N : {5, 7, 11}) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto phi = random_function(N, seed);
            CHECK(involution_residual(phi) < 1e-12);
            CHECK(plancherel_residual(phi) < 1e-12);
            CHECK(partial_inversion_residual(phi, {4}) < 1e-12);
            CHECK(partial_inversion_residual(phi, {3, 4}) < 1e-12);
            CHECK(partial_consistency_residual(phi) < 1e-12);
        }
    }
    // the unnormalized form of Plancherel does not hold under the N^-2 convention
    auto phi = random_function(5, 9);
    auto hat = fourier(phi);
    double a = 0, b = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        a += std::norm(phi.raw(i));
        b += std::norm(hat.raw(i));
    }
    CHECK(std::abs(a - b) < 1e-9 * a);
    CHECK(std::abs(a - 25 * b) > 1.0);
}

TEST_CASE("partial transform examples") {
    const int N = 5;
    auto phi = random_function(N, 4);
    auto p34 = partial_fourier(phi, {3, 4});
    Complex s;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) s += phi.value(Point4{0, 0, a, b});
    CHECK(std::abs(p34.value(Point4{0, 0, 0, 0}) - s / 25.0) < 1e-14);
    auto d4 = partial_fourier(delta0(N), {4});
    for (std::size_t i = 0; i < d4.size(); ++i) {
        Point4 x = d4.point(i);
        double expect = (x[0] == 0 && x[1] == 0 && x[2] == 0) ? 1.0 / N : 0.0;
        CHECK(std::abs(d4.raw(i) - expect) < 1e-15);
    }
}

TEST_CASE("orbit fibers") {
    for (int p : {2, 5, 7, 11}) {
        auto fib = orbit_fibers(p);
        std::map<FiberLabel, long> count;
        for (auto l : fib) ++count[l];
        long P = p;
        CHECK(count[FiberLabel::S0] == 1);
        CHECK(count[FiberLabel::S1] == P * P - 1);
        CHECK(count[FiberLabel::S2] == P * (P * P - 1));
        CHECK(count[FiberLabel::V0] == P * (P - 1) * (P - 1) * (P + 1));
    }
    // for p > 3 a singular nonzero form is a cube exactly when its Hessian vanishes mod p
    for (int p : {5, 7}) {
        auto fib = orbit_fibers(p);
        FiniteModelFunction grid(p);
        for (std::size_t i = 0; i < fib.size(); ++i) {
            Point4 x = grid.point(i);
            long a = x[0], b = x[1], c = x[2], d = x[3];
            bool hz = mod(b * b - 3 * a * c, p) == 0 && mod(b * c - 9 * a * d, p) == 0 && mod(c * c - 3 * b * d, p) == 0;
            if (fib[i] == FiberLabel::S1) CHECK(hz);
            if (fib[i] == FiberLabel::S2) CHECK_FALSE(hz);
        }
    }
}

TEST_CASE("poisson rearrangement") {
    auto one = verify_poisson_rearrangement(constant(5, 1.0));
    CHECK(one.pass);
    // both sides equal |V0(F_5)| = 480
    double v0 = 0;
    for (auto l : orbit_fibers(5)) v0 += l == FiberLabel::V0;
    CHECK(v0 == 480);
    auto hat = fourier(constant(5, 1.0));
    CHECK(std::abs(25.0 * hat.raw(0) - 1.0 - 24.0 - 120.0 - 480.0) < 1e-9);
    CHECK(verify_poisson_rearrangement(delta0(5)).max_residual < 1e-15);
    for (int N : {5, 7})
        for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(verify_poisson_rearrangement(random_function(N, seed)).pass);
}

TEST_CASE("remarkable equality and slice sum") {
    auto r = verify_remarkable_and_e9(delta0(5));
    CHECK(r.pass);
    auto p = partial_fourier(delta0(5), {3, 4});
    CHECK(std::abs(p.raw(0) - 1.0 / 25.0) < 1e-15);
    CHECK(verify_remarkable_and_e9(constant(7, 1.0)).pass);
    for (int N : {5, 7, 11}) CHECK(verify_remarkable_and_e9(random_function(N, 17)).pass);
    // pointwise form: (phi^)^(3,4)(0,0,c,0) = N^-2 sum phi(0,3c,.,.)
    const int N = 7;
    auto phi = random_function(N, 3);
    auto h34 = partial_fourier(fourier(phi), {3, 4});
    for (int c = 0; c < N; ++c) {
        Complex s;
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) s += phi.value(Point4{0, mod(3 * c, N), a, b});
        CHECK(std::abs(h34.value(Point4{0, 0, c, 0}) - s / 49.0) < 1e-13);
    }
}

TEST_CASE("fourier covariance") {
    auto phi = random_function(7, 8);
    CHECK(fourier_covariance_check(phi, {1, 0, 0, 1}).max_residual == 0.0);
    CHECK(fourier_covariance_check(phi, {3, 0, 0, 1}).pass);
    CHECK(fourier_covariance_check(phi, {2, 5, 1, 4}).pass);
    CHECK_THROWS_AS(fourier_covariance_check(phi, {1, 2, 2, 4}), std::invalid_argument);
}

TEST_CASE("finite action is a right action with the expected invariants") {
    const int N = 7;
    std::mt19937_64 rng(3);
    for (int k = 0; k < 50; ++k) {
        std::array<int, 4> l1{}, l2{};
        do {
            for (auto& e : l1) e = static_cast<int>(rng() % N);
        } while (mod(static_cast<long long>(l1[0]) * l1[3] - static_cast<long long>(l1[1]) * l1[2], N) == 0);
        do {
            for (auto& e : l2) e = static_cast<int>(rng() % N);
        } while (mod(static_cast<long long>(l2[0]) * l2[3] - static_cast<long long>(l2[1]) * l2[2], N) == 0);
        std::array<int, 4> prod = {mod(l1[0] * l2[0] + l1[1] * l2[2], N), mod(l1[0] * l2[1] + l1[1] * l2[3], N), mod(l1[2] * l2[0] + l1[3] * l2[2], N),
                                   mod(l1[2] * l2[1] + l1[3] * l2[3], N)};
        Point4 x = {static_cast<int>(rng() % N), static_cast<int>(rng() % N), static_cast<int>(rng() % N), static_cast<int>(rng() % N)};
        Point4 y = {static_cast<int>(rng() % N), static_cast<int>(rng() % N), static_cast<int>(rng() % N), static_cast<int>(rng() % N)};
        CHECK(act_mod(act_mod(x, l1, N), l2, N) == act_mod(x, prod, N));
        CHECK(pairing_mod(act_mod(x, l1, N), act_mod(y, iota_mod(l1, N), N), N) == pairing_mod(x, y, N));
    }
}

TEST_CASE("mean value formula") {
    for (int q : {2, 3, 5, 7}) {
        PlaneFunction one(q);
        for (auto& v : one.values) v = 1.0;
        auto r = verify_mean_value(one);
        CHECK(r.pass);
        PlaneFunction ind(q);
        ind.values[static_cast<std::size_t>(q)] = 1.0;  // (1,0)
        CHECK(verify_mean_value(ind).pass);
        PlaneFunction rnd(q);
        std::mt19937_64 rng(static_cast<std::uint64_t>(q));
        for (auto& v : rnd.values) v = Complex(unit_double(rng()), unit_double(rng()));
        CHECK(verify_mean_value(rnd).pass);
    }
}

TEST_CASE("exact path: every point indicator at N = 5") {
    const int N = 5;
    auto fibers = orbit_fibers(N);
    double worst = 0;
    ExactModelFunction grid(N);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto phi = exact_indicator(N, grid.point(i));
        worst = std::max({worst, involution_residual(phi), plancherel_residual(phi), poisson_residual(phi), rearrangement_residual(phi, fibers),
                          remarkable_residual(phi), pre_e12_residual(phi), partial_consistency_residual(phi),
                          partial_inversion_residual(phi, {3, 4}), covariance_residual(phi, {2, 1, 1, 1})});
    }
    CHECK(worst == 0.0);
}

TEST_CASE("exact path on random integer functions") {
    for (int N : {5, 7}) {
        auto phi = random_integer_function(N, 77, 4);
        CHECK(involution_residual(phi) == 0.0);
        CHECK(poisson_residual(phi) == 0.0);
        CHECK(rearrangement_residual(phi, orbit_fibers(N)) == 0.0);
        CHECK(remarkable_residual(phi) == 0.0);
        CHECK(pre_e12_residual(phi) == 0.0);
        CHECK(covariance_residual(phi, {1, 2, 3, 4}) == 0.0);
    }
}

TEST_CASE("report json") {
    IdentityReport r{"poisson_rearrangement", 5, 0.0, 1e-9, true};
    CHECK(r.to_json() == R"({"identity_name":"poisson_rearrangement","modulus":5,"max_residual":0.0,"pass":true})");
}
