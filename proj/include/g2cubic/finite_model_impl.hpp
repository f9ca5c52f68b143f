#pragma once

// Template definitions for finite_model.hpp.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace g2cubic {

template <class Ring>
ModelFunction<Ring>::ModelFunction(int modulus) : ring_(modulus) {
    std::size_t n = static_cast<std::size_t>(modulus);
    values_.assign(n * n * n * n, ring_.zero());
}

template <class Ring>
std::size_t ModelFunction<Ring>::index(const Point4& x) const {
    const int N = ring_.N;
    std::size_t i = 0;
    for (int c : x) i = i * static_cast<std::size_t>(N) + static_cast<std::size_t>(mod(c, N));
    return i;
}

template <class Ring>
Point4 ModelFunction<Ring>::point(std::size_t i) const {
    const std::size_t N = static_cast<std::size_t>(ring_.N);
    Point4 x{};
    for (int k = 3; k >= 0; --k) {
        x[static_cast<std::size_t>(k)] = static_cast<int>(i % N);
        i /= N;
    }
    return x;
}

namespace detail {

// out(..., k, ...) = sum_x in(..., x, ...) zeta^{x k} along one coordinate (0-based)
template <class Ring>
std::vector<typename Ring::value_type> axis_transform(const std::vector<typename Ring::value_type>& in, const Ring& ring, int axis) {
    const int N = ring.N;
    std::size_t stride = 1;
    for (int k = 3; k > axis; --k) stride *= static_cast<std::size_t>(N);
    const std::size_t block = stride * static_cast<std::size_t>(N);
    std::vector<typename Ring::value_type> out(in.size(), ring.zero());
    for (std::size_t outer = 0; outer < in.size(); outer += block)
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (int k = 0; k < N; ++k) {
                auto acc = ring.zero();
                for (int x = 0; x < N; ++x) ring.accumulate(acc, in[base + static_cast<std::size_t>(x) * stride], (x * k) % N);
                out[base + static_cast<std::size_t>(k) * stride] = acc;
            }
        }
    return out;
}

template <class F>
typename F::scalar_type sum_where(const F& phi, const std::function<bool(const Point4&)>& keep) {
    auto acc = phi.ring().scalar_zero();
    for (std::size_t i = 0; i < phi.size(); ++i)
        if (keep(phi.point(i))) acc = acc + phi.value(i);
    return acc;
}

}  // namespace detail

template <class Ring>
ModelFunction<Ring> fourier(const ModelFunction<Ring>& phi) {
    const int N = phi.modulus();
    auto cur = phi.raw_values();
    for (int axis = 0; axis < 4; ++axis) cur = detail::axis_transform(cur, phi.ring(), axis);
    const int inv3 = inverse_mod(3, N);
    ModelFunction<Ring> out(N);
    for (std::size_t i = 0; i < out.size(); ++i) {
        Point4 y = out.point(i);
        // [x,y] = x . (y4, -y3/3, y2/3, -y1)
        Point4 k = {y[3], mod(-static_cast<long long>(inv3) * y[2], N), mod(static_cast<long long>(inv3) * y[1], N), mod(-y[0], N)};
        out.raw(i) = cur[out.index(k)];
    }
    out.set_exponent(phi.exponent());
    out.rescale(2);
    return out;
}

template <class Ring>
ModelFunction<Ring> fourier_direct(const ModelFunction<Ring>& phi) {
    const int N = phi.modulus();
    ModelFunction<Ring> out(N);
    for (std::size_t j = 0; j < out.size(); ++j) {
        Point4 y = out.point(j);
        auto acc = phi.ring().zero();
        for (std::size_t i = 0; i < phi.size(); ++i) phi.ring().accumulate(acc, phi.raw(i), pairing_mod(phi.point(i), y, N));
        out.raw(j) = acc;
    }
    out.set_exponent(phi.exponent());
    out.rescale(2);
    return out;
}

template <class Ring>
ModelFunction<Ring> partial_fourier(const ModelFunction<Ring>& phi, const std::vector<int>& axes) {
    std::vector<int> sorted = axes;
    std::sort(sorted.begin(), sorted.end());
    bool ok = !sorted.empty() && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
              std::all_of(sorted.begin(), sorted.end(), [](int a) { return a == 3 || a == 4; });
    if (!ok) throw std::invalid_argument("partial Fourier axes must be a nonempty subset of {3,4}");
    auto cur = phi.raw_values();
    for (int a : sorted) cur = detail::axis_transform(cur, phi.ring(), a - 1);
    ModelFunction<Ring> out(phi.modulus());
    out.raw_values() = std::move(cur);
    out.set_exponent(phi.exponent());
    out.rescale(static_cast<int>(sorted.size()));
    return out;
}

template <class Ring>
ModelFunction<Ring> act_on_function(const ModelFunction<Ring>& phi, const std::array<int, 4>& l) {
    const int N = phi.modulus();
    ModelFunction<Ring> out(N);
    for (std::size_t i = 0; i < out.size(); ++i) out.raw(i) = phi.raw(phi.index(act_mod(out.point(i), l, N)));
    out.set_exponent(phi.exponent());
    return out;
}

// ---------------------------------------------------------------- residuals

template <class Ring>
double involution_residual(const ModelFunction<Ring>& phi) {
    auto back = fourier(fourier(phi));
    double worst = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, Ring::distance(back.value(i), phi.value(i)));
    return worst;
}

template <class Ring>
double plancherel_residual(const ModelFunction<Ring>& phi) {
    auto hat = fourier(phi);
    auto a = phi.ring().scalar_zero(), b = phi.ring().scalar_zero();
    for (std::size_t i = 0; i < phi.size(); ++i) {
        a = a + phi.value(i) * Ring::conj(phi.value(i));
        b = b + hat.value(i) * Ring::conj(hat.value(i));
    }
    double scale = std::max(1.0, std::abs(Ring::distance(a, phi.ring().scalar_zero())));
    return Ring::distance(a, b) / scale;
}

template <class Ring>
double partial_inversion_residual(const ModelFunction<Ring>& phi, const std::vector<int>& axes) {
    auto twice = partial_fourier(partial_fourier(phi, axes), axes);
    ModelFunction<Ring> expect(phi.modulus());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        Point4 x = phi.point(i);
        for (int a : axes) x[static_cast<std::size_t>(a - 1)] = -x[static_cast<std::size_t>(a - 1)];
        expect.raw(i) = phi.raw(phi.index(x));
    }
    expect.set_exponent(phi.exponent());
    expect.rescale(static_cast<int>(axes.size()));
    double worst = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, Ring::distance(twice.value(i), expect.value(i)));
    return worst;
}

template <class Ring>
double partial_consistency_residual(const ModelFunction<Ring>& phi) {
    auto both = partial_fourier(phi, {3, 4});
    auto stepwise = partial_fourier(partial_fourier(phi, {4}), {3});
    double worst = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) worst = std::max(worst, Ring::distance(both.value(i), stepwise.value(i)));
    return worst;
}

template <class Ring>
double poisson_residual(const ModelFunction<Ring>& phi) {
    const long long N = phi.modulus();
    auto hat = fourier(phi);
    auto lhs = detail::sum_where(phi, [](const Point4&) { return true; });
    auto rhs = Ring::times(N * N, hat.value(Point4{0, 0, 0, 0}));
    return Ring::distance(lhs, rhs);
}

template <class Ring>
double rearrangement_residual(const ModelFunction<Ring>& phi, const std::vector<FiberLabel>& fibers) {
    const long long N = phi.modulus();
    if (fibers.size() != phi.size()) throw std::invalid_argument("orbit fibers do not match the function's modulus");
    auto hat = fourier(phi);
    auto zero = phi.ring().scalar_zero();
    auto v0 = zero, s1 = zero, s2 = zero;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        switch (fibers[i]) {
            case FiberLabel::V0: v0 = v0 + phi.value(i); break;
            case FiberLabel::S1: s1 = s1 + phi.value(i); break;
            case FiberLabel::S2: s2 = s2 + phi.value(i); break;
            case FiberLabel::S0: break;
        }
    }
    auto rhs = Ring::times(N * N, hat.value(Point4{0, 0, 0, 0})) - phi.value(Point4{0, 0, 0, 0}) - s1 - s2;
    return Ring::distance(v0, rhs);
}

template <class Ring>
double remarkable_residual(const ModelFunction<Ring>& phi) {
    const int N = phi.modulus();
    auto hat = fourier(phi);
    auto a = partial_fourier(phi, {3, 4}).value(Point4{0, 0, 0, 0});
    auto b = partial_fourier(hat, {3, 4}).value(Point4{0, 0, 0, 0});
    ModelFunction<Ring> slice(N);
    slice.set_exponent(phi.exponent());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        Point4 x = phi.point(i);
        if (x[0] == 0 && x[1] == 0) slice.raw(i) = phi.raw(i);
    }
    slice.rescale(2);
    auto c = detail::sum_where(slice, [](const Point4&) { return true; });
    return std::max(Ring::distance(a, b), Ring::distance(a, c));
}

template <class Ring>
double pre_e12_residual(const ModelFunction<Ring>& phi) {
    const int N = phi.modulus();
    auto hat34 = partial_fourier(fourier(phi), {3, 4});
    auto lhs = detail::sum_where(hat34, [](const Point4& x) { return x[0] == 0 && x[1] == 0 && x[2] != 0 && x[3] == 0; });
    ModelFunction<Ring> slice(N);
    slice.set_exponent(phi.exponent());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        Point4 x = phi.point(i);
        if (x[0] == 0 && x[1] != 0) slice.raw(i) = phi.raw(i);
    }
    slice.rescale(2);
    auto rhs = detail::sum_where(slice, [](const Point4&) { return true; });
    return Ring::distance(lhs, rhs);
}

template <class Ring>
double covariance_residual(const ModelFunction<Ring>& phi, const std::array<int, 4>& l) {
    const int N = phi.modulus();
    auto lhs = fourier(act_on_function(phi, l));
    auto hat = fourier(phi);
    auto li = iota_mod(l, N);
    double worst = 0;
    for (std::size_t i = 0; i < phi.size(); ++i)
        worst = std::max(worst, Ring::distance(lhs.value(i), hat.value(act_mod(lhs.point(i), li, N))));
    return worst;
}

}  // namespace g2cubic
