#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "g2cubic/enumeration.hpp"
#include "g2cubic/form_algebra.hpp"
#include "g2cubic/polynomial.hpp"
#include "oracles.hpp"

using namespace g2cubic;
using namespace g2cubic::oracle;

namespace {

std::set<IntForm> canonical_set(const ClassTable& t) {
    std::set<IntForm> s;
    for (const auto& r : t.records) s.insert(r.representative);
    return s;
}

const ClassTable& table300(Strategy s) {
    static const ClassTable box = class_table(300, Strategy::BoxOracle);
    static const ClassTable red = class_table(300, Strategy::Reduction);
    return s == Strategy::BoxOracle ? box : red;
}

bool contains_class_of(const ClassTable& t, const IntForm& w) {
    const auto c = reduce_int(w).canonical;
    for (const auto& r : t.records)
        if (r.representative == c) return true;
    return false;
}

const ClassRecord* record_of(const ClassTable& t, const IntForm& w) {
    const auto c = reduce_int(w).canonical;
    for (const auto& r : t.records)
        if (r.representative == c) return &r;
    return nullptr;
}

}  // namespace

TEST_CASE("enumerate_box counts and order") {
    CHECK(enumerate_box_list(1).size() == 81);
    const auto b3 = enumerate_box_list(3);
    CHECK(b3.size() == 2401);
    CHECK(std::is_sorted(b3.begin(), b3.end()));
    CHECK(std::adjacent_find(b3.begin(), b3.end()) == b3.end());
    CHECK_THROWS_AS(enumerate_box_list(0), std::invalid_argument);
}

// The covering box rests on 4 H^3 = J(f,H)^2 + 27 disc f^2 for the Hessian H.
TEST_CASE("hessian syzygy behind the covering box") {
    const auto x1 = Polynomial::variable(0), x2 = Polynomial::variable(1), x3 = Polynomial::variable(2),
               x4 = Polynomial::variable(3), u = Polynomial::variable(4), v = Polynomial::variable(5);
    const auto f = x1 * u.pow(3) + x2 * u.pow(2) * v + x3 * u * v.pow(2) + x4 * v.pow(3);
    const auto P = x2 * x2 - 3 * x1 * x3, Q = x2 * x3 - 9 * x1 * x4, R = x3 * x3 - 3 * x2 * x4;
    const auto H = P * u * u + Q * u * v + R * v * v;
    const auto fu = 3 * x1 * u * u + 2 * x2 * u * v + x3 * v * v;
    const auto fv = x2 * u * u + 2 * x3 * u * v + 3 * x4 * v * v;
    const auto Hu = 2 * P * u + Q * v, Hv = Q * u + 2 * R * v;
    const auto J = fu * Hv - fv * Hu;
    const auto D = algebra::discriminant<Polynomial>({x1, x2, x3, x4});
    CHECK(4 * H.pow(3) == J * J + 27 * D * f * f);
    // and the Hessian discriminant is -3 disc
    CHECK(Q * Q - 4 * P * R == -3 * D);
}

TEST_CASE("covering box contains every canonical form found in a much wider search") {
    const std::int64_t X = 80;
    const auto box = covering_box(X);
    std::set<IntForm> wide;
    const std::int64_t c[4] = {3 * box.bound[0] + 2, 3 * box.bound[1], 3 * box.bound[2], 2 * box.bound[3]};
    IntForm f{};
    for (f[0] = -c[0]; f[0] <= c[0]; ++f[0])
        for (f[1] = -c[1]; f[1] <= c[1]; ++f[1])
            for (f[2] = -c[2]; f[2] <= c[2]; ++f[2])
                for (f[3] = -c[3]; f[3] <= c[3]; ++f[3]) {
                    const auto D = discriminant_int(f);
                    if (D == 0 || D > X || D < -X) continue;
                    if (in_reduced_domain(f) && is_canonical(f)) wide.insert(f);
                }
    for (const auto& g : wide) CHECK(box.contains(g));
    CHECK(canonical_set(class_table(X, Strategy::BoxOracle)) == wide);
}

TEST_CASE("covering box is monotone in X") {
    auto prev = covering_box(1);
    for (std::int64_t X : {10, 50, 100, 300, 1000}) {
        const auto b = covering_box(X);
        for (int i = 0; i < 4; ++i) CHECK(b.bound[i] >= prev.bound[i]);
        prev = b;
    }
}

TEST_CASE("strategies agree at X = 300") {
    const auto& a = table300(Strategy::BoxOracle);
    const auto& b = table300(Strategy::Reduction);
    CHECK(a.records == b.records);
    CHECK(a.records.size() > 0);
}

TEST_CASE("strategies agree for every X up to 60") {
    for (std::int64_t X = 1; X <= 60; ++X) {
        CAPTURE(X);
        CHECK(class_table(X, Strategy::BoxOracle).records == class_table(X, Strategy::Reduction).records);
    }
}

TEST_CASE("records are consistent and pairwise inequivalent") {
    const auto& t = table300(Strategy::Reduction);
    std::map<std::int64_t, std::vector<IntForm>> by_disc;
    for (const auto& r : t.records) {
        CHECK(r.disc != 0);
        CHECK(discriminant_int(r.representative) == r.disc);
        CHECK(r.stab_order == static_cast<int>(stabilizer_int(r.representative).size()));
        CHECK(r.splitting_index == brute_classify({r.representative[0], r.representative[1], r.representative[2],
                                                   r.representative[3]})
                                       .index);
        by_disc[r.disc].push_back(r.representative);
    }
    for (const auto& [D, reps] : by_disc)
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j)
                CHECK_FALSE(equivalent(BinaryCubicForm::from_integers(reps[i]), BinaryCubicForm::from_integers(reps[j])));
    CHECK(std::is_sorted(t.records.begin(), t.records.end(), [](const ClassRecord& a, const ClassRecord& b) {
        auto key = [](const ClassRecord& r) { return std::make_tuple(std::llabs(r.disc), r.disc, r.representative); };
        return key(a) < key(b);
    }));
}

TEST_CASE("witness classes and their splitting") {
    const auto& t = table300(Strategy::BoxOracle);
    const IntForm w1{0, 1, 1, 0}, w23{1, 0, -1, -1}, w27{1, 0, 0, 1};
    CHECK(discriminant_int(w1) == 1);
    CHECK(discriminant_int(w23) == -23);
    CHECK(discriminant_int(w27) == -27);
    for (Strategy s : {Strategy::BoxOracle, Strategy::Reduction}) {
        const auto& ts = table300(s);
        CHECK(contains_class_of(ts, w1));
        CHECK(contains_class_of(ts, w23));
        CHECK(contains_class_of(ts, w27));
    }
    CHECK(record_of(t, w1)->splitting_index == 1);
    CHECK(record_of(t, w23)->splitting_index == 3);
    CHECK(record_of(t, w27)->splitting_index == 2);
    CHECK(contains_class_of(class_table(27, Strategy::Reduction), w27));
}

TEST_CASE("records invariant under random unimodular twists") {
    std::mt19937_64 rng(2024);
    const auto& t = table300(Strategy::Reduction);
    for (const auto& r : t.records) {
        for (int k = 0; k < 20; ++k) {
            IntForm twisted;
            do {
                twisted = act_unimodular(r.representative, random_unimodular(rng, 6));
            } while (std::any_of(twisted.begin(), twisted.end(),
                                 [](std::int64_t x) { return x > kReductionBound || x < -kReductionBound; }));
            const auto rec = make_record(twisted);
            CHECK(rec == r);
        }
    }
}

TEST_CASE("splitting-index partition") {
    const auto& a = table300(Strategy::BoxOracle);
    const auto& b = table300(Strategy::Reduction);
    const auto pa = splitting_partition(a), pb = splitting_partition(b);
    CHECK(pa.total() == static_cast<long>(a.records.size()));
    CHECK(pa.positive == pb.positive);
    CHECK(pa.negative == pb.negative);
    ClassTable empty;
    CHECK(splitting_partition(empty).total() == 0);
}

TEST_CASE("dirichlet partial sums") {
    ClassTable empty;
    CHECK(dirichlet_partial(empty, 2.0, -1) == 0.0);
    const auto& t = table300(Strategy::Reduction);
    const auto t23 = truncate(t, 23);
    double fold = 0;
    for (auto it = t23.records.rbegin(); it != t23.records.rend(); ++it)
        if (it->disc < 0) fold += std::pow(static_cast<double>(-it->disc), -2.0) / it->stab_order;
    CHECK(dirichlet_partial(t23, 2.0, -1) == doctest::Approx(fold).epsilon(1e-14));
    for (int sign : {1, -1}) {
        CHECK(dirichlet_partial(t, 2.0, sign) >= dirichlet_partial(truncate(t, 100), 2.0, sign));
        CHECK(dirichlet_partial(t, 2.0, sign, Weighting::Raw) >= dirichlet_partial(t, 2.0, sign));
    }
    CHECK_THROWS_AS(dirichlet_partial(t, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(dirichlet_partial(t, 1.0, 0), std::invalid_argument);
}

TEST_CASE("sl2 classes refine gl2 classes") {
    EnumerationOptions opt;
    opt.group = ClassGroup::SL2;
    const auto s = class_table(100, Strategy::Reduction, opt);
    const auto sb = class_table(100, Strategy::BoxOracle, opt);
    CHECK(s.records == sb.records);
    const auto g = class_table(100, Strategy::Reduction);
    CHECK(s.records.size() >= g.records.size());
    CHECK(s.records.size() <= 2 * g.records.size());
    std::set<IntForm> gl;
    for (const auto& r : s.records) gl.insert(reduce_int(r.representative).canonical);
    CHECK(gl == canonical_set(g));
}

TEST_CASE("csv and json round trip") {
    const auto t = truncate(table300(Strategy::Reduction), 50);
    const auto csv = to_csv(t);
    CHECK(csv.rfind("disc,x1,x2,x3,x4,stab_order,splitting_index\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(records_from_csv(csv) == t.records);
    const auto back = table_from_json(to_json(t));
    CHECK(back.records == t.records);
    CHECK(back.bound == t.bound);
    CHECK(to_json(back) == to_json(t));
    CHECK_THROWS_AS(records_from_csv("bad header\n"), std::invalid_argument);
    CHECK_THROWS_AS(records_from_csv("disc,x1,x2,x3,x4,stab_order,splitting_index\n1,2,x,4,5,6,7\n"), std::invalid_argument);
}

TEST_CASE("cache reuse is bit-identical") {
    const auto dir = std::filesystem::temp_directory_path() / "g2cubic_cache_test";
    std::filesystem::remove_all(dir);
    ClassTableCache cache(dir);
    const auto first = cache.get(120, Strategy::Reduction);
    const auto path = cache.path_for(120, Strategy::Reduction, ClassGroup::GL2);
    REQUIRE(std::filesystem::exists(path));
    const auto bytes = read_file(path);
    const auto second = cache.get(120, Strategy::Reduction);
    CHECK(second.records == first.records);
    CHECK(to_csv(second) == bytes);
    cache.store(second);
    CHECK(read_file(path) == bytes);
    std::filesystem::remove_all(dir);
}
