#include "g2cubic/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace g2cubic {

namespace {

std::int64_t floor_bound(double v) {
    // small relative margin against rounding in the closed-form bounds
    return static_cast<std::int64_t>(std::floor(v * (1.0 + 1e-12) + 1e-9));
}

std::array<std::int64_t, 4> box_for_positive(std::int64_t D) {
    const double d = static_cast<double>(D);
    const double sd = std::sqrt(d);
    auto B = [&](double h) { return 2.0 * std::pow(h, 1.5) / std::sqrt(27.0 * d); };
    std::array<std::int64_t, 4> out{};
    // x1 = 0: P = x2^2 <= sqrt(D), |x3| <= |x2|, |x4| <= (x3^2 + D/x2^2)/(4|x2|)
    const std::int64_t b2 = floor_bound(std::pow(d, 0.25));
    out[1] = b2;
    out[2] = b2;
    out[3] = floor_bound((sd + d) / 4.0);
    const std::int64_t amax = floor_bound(B(sd));
    if (amax >= 1) {
        const double pmin = std::cbrt(27.0 * d / 4.0);
        const double rmax = (3.0 * d + pmin * pmin) / (4.0 * pmin);
        const double b4 = B(rmax);
        const double bpm = B(2.0 * sd + rmax);
        out[0] = amax;
        out[1] = std::max(out[1], floor_bound(bpm + b4));
        out[2] = std::max(out[2], floor_bound(bpm + static_cast<double>(amax)));
        out[3] = std::max(out[3], floor_bound(b4));
    }
    return out;
}

std::array<std::int64_t, 4> box_for_negative(std::int64_t n) {
    const double m = static_cast<double>(n);
    std::array<std::int64_t, 4> out{};
    // x1 = 0: 3 x2^4 <= |D|, |x3| <= |x2|, |x4| <= (x2^2 + |D|)/4
    const std::int64_t b2 = floor_bound(std::pow(m / 3.0, 0.25));
    out[1] = b2;
    out[2] = b2;
    out[3] = floor_bound((static_cast<double>(b2 * b2) + m) / 4.0);
    const std::int64_t amax = floor_bound(std::pow(16.0 * m / 27.0, 0.25));
    for (std::int64_t a = 1; a <= amax; ++a) {
        const double ad = static_cast<double>(a);
        const double t = 0.5 + std::pow(m / (3.0 * std::pow(ad, 4)), 0.25);
        const double y2 = std::cbrt(m / (4.0 * std::pow(ad, 4)));
        const double zz = 0.25 + y2;
        out[0] = std::max(out[0], a);
        out[1] = std::max(out[1], floor_bound(ad * (t + 1.0)));
        out[2] = std::max(out[2], floor_bound(ad * (t + zz)));
        out[3] = std::max(out[3], floor_bound(ad * t * zz));
    }
    return out;
}

bool record_less(const ClassRecord& x, const ClassRecord& y) {
    const auto ax = x.disc < 0 ? -x.disc : x.disc;
    const auto ay = y.disc < 0 ? -y.disc : y.disc;
    if (ax != ay) return ax < ay;
    if (x.disc != y.disc) return x.disc < y.disc;
    return x.representative < y.representative;
}

unsigned resolve_threads(unsigned requested) {
    unsigned t = requested ? requested : std::thread::hardware_concurrency();
    return std::max(1u, t);
}

// runs work(x1) for x1 in [-c, c], partitioned over threads; results merged in x1 order
template <class Result, class Work>
std::vector<Result> parallel_slices(std::int64_t c, unsigned threads, Work work) {
    const std::size_t n = static_cast<std::size_t>(2 * c + 1);
    std::vector<Result> results(n);
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = work(static_cast<std::int64_t>(i) - c);
        return results;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) results[i] = work(static_cast<std::int64_t>(i) - c);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

std::string strategy_name(Strategy s) { return s == Strategy::BoxOracle ? "box-oracle" : "reduction"; }

Strategy parse_strategy(const std::string& s) {
    if (s == "box-oracle") return Strategy::BoxOracle;
    if (s == "reduction") return Strategy::Reduction;
    throw std::invalid_argument("unknown strategy '" + s + "' (expected box-oracle or reduction)");
}

std::string group_name(ClassGroup g) { return g == ClassGroup::GL2 ? "GL2" : "SL2"; }

ClassGroup parse_group(const std::string& s) {
    if (s == "GL2" || s == "gl2") return ClassGroup::GL2;
    if (s == "SL2" || s == "sl2") return ClassGroup::SL2;
    throw std::invalid_argument("unknown group '" + s + "' (expected GL2 or SL2)");
}

const char* code_version() { return G2CUBIC_VERSION; }

void enumerate_box(std::int64_t c, const std::function<void(const IntForm&)>& visit) {
    if (c < 1) throw std::invalid_argument("enumerate_box: bound must be >= 1");
    IntForm f{};
    for (f[0] = -c; f[0] <= c; ++f[0])
        for (f[1] = -c; f[1] <= c; ++f[1])
            for (f[2] = -c; f[2] <= c; ++f[2])
                for (f[3] = -c; f[3] <= c; ++f[3]) visit(f);
}

std::vector<IntForm> enumerate_box_list(std::int64_t c) {
    std::vector<IntForm> out;
    enumerate_box(c, [&](const IntForm& f) { out.push_back(f); });
    return out;
}

bool CoveringBox::contains(const IntForm& f) const {
    for (int i = 0; i < 4; ++i)
        if (abs64(f[i]) > bound[i]) return false;
    return true;
}

CoveringBox covering_box(std::int64_t X) {
    if (X < 1) throw std::invalid_argument("covering_box: X must be >= 1");
    CoveringBox box;
    for (std::int64_t D = 1; D <= X; ++D) {
        for (const auto& b : {box_for_positive(D), box_for_negative(D)})
            for (int i = 0; i < 4; ++i) box.bound[i] = std::max(box.bound[i], b[i]);
    }
    return box;
}

void sort_records(std::vector<ClassRecord>& records) { std::sort(records.begin(), records.end(), record_less); }

ClassRecord make_record(const IntForm& f, ClassGroup group) {
    ClassRecord r;
    r.representative = reduce_int(f, group).canonical;
    r.disc = discriminant_int(r.representative);
    if (r.disc == 0) throw std::invalid_argument("make_record: degenerate form");
    r.stab_order = static_cast<int>(stabilizer_int(r.representative, group).size());
    r.splitting_index = classify_orbit(BinaryCubicForm::from_integers(r.representative)).index;
    return r;
}

ClassTable class_table(std::int64_t X, Strategy strategy, const EnumerationOptions& opt) {
    if (X < 1) throw std::invalid_argument("class_table: X must be >= 1");
    const CoveringBox box = covering_box(X);
    const unsigned threads = resolve_threads(opt.threads);
    const ClassGroup group = opt.group;

    auto in_range = [X](std::int64_t D) { return D != 0 && D >= -X && D <= X; };
    std::vector<std::vector<IntForm>> slices;

    if (strategy == Strategy::BoxOracle) {
        // every form of the covering box, reduced and deduplicated per discriminant
        slices = parallel_slices<std::vector<IntForm>>(box.bound[0], threads, [&](std::int64_t x1) {
            std::map<std::int64_t, std::vector<IntForm>> seen;
            IntForm f{x1, 0, 0, 0};
            for (f[1] = -box.bound[1]; f[1] <= box.bound[1]; ++f[1])
                for (f[2] = -box.bound[2]; f[2] <= box.bound[2]; ++f[2])
                    for (f[3] = -box.bound[3]; f[3] <= box.bound[3]; ++f[3]) {
                        const auto D = discriminant_int(f);
                        if (!in_range(D)) continue;
                        const IntForm canon = reduce_int(f, group).canonical;
                        auto& reps = seen[D];
                        if (std::find(reps.begin(), reps.end(), canon) == reps.end()) reps.push_back(canon);
                    }
            std::vector<IntForm> out;
            for (auto& [D, reps] : seen) out.insert(out.end(), reps.begin(), reps.end());
            return out;
        });
    } else {
        // canonical forms found directly; the search box is twice the covering box
        CoveringBox wide = box;
        for (auto& b : wide.bound) b *= 2;
        slices = parallel_slices<std::vector<IntForm>>(wide.bound[0], threads, [&](std::int64_t x1) {
            std::vector<IntForm> out;
            IntForm f{x1, 0, 0, 0};
            for (f[1] = -wide.bound[1]; f[1] <= wide.bound[1]; ++f[1])
                for (f[2] = -wide.bound[2]; f[2] <= wide.bound[2]; ++f[2])
                    for (f[3] = -wide.bound[3]; f[3] <= wide.bound[3]; ++f[3]) {
                        if (!in_range(discriminant_int(f))) continue;
                        if (is_canonical(f, group)) out.push_back(f);
                    }
            return out;
        });
    }

    std::set<IntForm> canonical;
    for (const auto& s : slices) canonical.insert(s.begin(), s.end());

    ClassTable t;
    t.bound = X;
    t.strategy = strategy;
    t.group = group;
    for (const auto& f : canonical) {
        if (!box.contains(f)) {
            std::ostringstream os;
            os << "covering box violated by canonical form (" << f[0] << ',' << f[1] << ',' << f[2] << ',' << f[3]
               << ") at X=" << X;
            throw std::logic_error(os.str());
        }
        ClassRecord r;
        r.representative = f;
        r.disc = discriminant_int(f);
        r.stab_order = static_cast<int>(stabilizer_int(f, group).size());
        r.splitting_index = classify_orbit(BinaryCubicForm::from_integers(f)).index;
        t.records.push_back(r);
    }
    sort_records(t.records);
    return t;
}

ClassTable truncate(const ClassTable& t, std::int64_t X) {
    ClassTable out = t;
    out.bound = std::min(t.bound, X);
    out.records.clear();
    for (const auto& r : t.records)
        if (abs64(r.disc) <= X) out.records.push_back(r);
    return out;
}

long SplittingCounts::total() const {
    long s = 0;
    for (int i = 0; i < 3; ++i) s += positive[i] + negative[i];
    return s;
}

SplittingCounts splitting_partition(const ClassTable& t) {
    SplittingCounts c;
    for (const auto& r : t.records) {
        if (r.splitting_index < 1 || r.splitting_index > 3)
            throw std::logic_error("splitting_partition: record with non-regular splitting");
        (r.disc > 0 ? c.positive : c.negative)[r.splitting_index - 1] += 1;
    }
    return c;
}

double dirichlet_partial(const ClassTable& t, double s, int sign, Weighting w) {
    if (!(s > 0)) throw std::invalid_argument("dirichlet_partial: s must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("dirichlet_partial: sign must be +1 or -1");
    double sum = 0;
    for (const auto& r : t.records) {
        if ((r.disc > 0 ? 1 : -1) != sign) continue;
        const double weight = w == Weighting::Stabilizer ? 1.0 / r.stab_order : 1.0;
        sum += weight * std::pow(static_cast<double>(abs64(r.disc)), -s);
    }
    return sum;
}

std::string to_csv(const ClassTable& t) {
    std::ostringstream os;
    os << "disc,x1,x2,x3,x4,stab_order,splitting_index\n";
    for (const auto& r : t.records) {
        os << r.disc;
        for (auto x : r.representative) os << ',' << x;
        os << ',' << r.stab_order << ',' << r.splitting_index << '\n';
    }
    return os.str();
}

std::vector<ClassRecord> records_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "disc,x1,x2,x3,x4,stab_order,splitting_index")
        throw std::invalid_argument("class table csv: bad header");
    std::vector<ClassRecord> out;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::int64_t> v;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t pos = 0;
            try {
                v.push_back(std::stoll(cell, &pos));
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != cell.size())
                throw std::invalid_argument("class table csv line " + std::to_string(lineno) + ": bad integer '" + cell + "'");
        }
        if (v.size() != 7)
            throw std::invalid_argument("class table csv line " + std::to_string(lineno) + ": expected 7 fields");
        ClassRecord r;
        r.disc = v[0];
        r.representative = {v[1], v[2], v[3], v[4]};
        r.stab_order = static_cast<int>(v[5]);
        r.splitting_index = static_cast<int>(v[6]);
        out.push_back(r);
    }
    return out;
}

std::string to_json(const ClassTable& t) {
    nlohmann::ordered_json j;
    j["bound"] = t.bound;
    j["strategy"] = strategy_name(t.strategy);
    j["group"] = group_name(t.group);
    j["version"] = code_version();
    auto& recs = j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : t.records) {
        nlohmann::ordered_json e;
        e["disc"] = r.disc;
        e["representative"] = r.representative;
        e["stab_order"] = r.stab_order;
        e["splitting_index"] = r.splitting_index;
        recs.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

ClassTable table_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ClassTable t;
    t.bound = j.at("bound").get<std::int64_t>();
    t.strategy = parse_strategy(j.at("strategy").get<std::string>());
    t.group = parse_group(j.at("group").get<std::string>());
    for (const auto& e : j.at("records")) {
        ClassRecord r;
        r.disc = e.at("disc").get<std::int64_t>();
        r.representative = e.at("representative").get<IntForm>();
        r.stab_order = e.at("stab_order").get<int>();
        r.splitting_index = e.at("splitting_index").get<int>();
        t.records.push_back(r);
    }
    return t;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::filesystem::path ClassTableCache::path_for(std::int64_t X, Strategy s, ClassGroup g) const {
    return dir_ / ("classes_X" + std::to_string(X) + "_" + strategy_name(s) + "_" + group_name(g) + "_v" +
                   code_version() + ".csv");
}

std::optional<ClassTable> ClassTableCache::load(std::int64_t X, Strategy s, ClassGroup g) const {
    const auto p = path_for(X, s, g);
    if (!std::filesystem::exists(p)) return std::nullopt;
    ClassTable t;
    t.bound = X;
    t.strategy = s;
    t.group = g;
    t.records = records_from_csv(read_file(p));
    return t;
}

void ClassTableCache::store(const ClassTable& t) const {
    write_file_atomic(path_for(t.bound, t.strategy, t.group), to_csv(t));
}

ClassTable ClassTableCache::get(std::int64_t X, Strategy s, const EnumerationOptions& opt) const {
    if (auto t = load(X, s, opt.group)) return *t;
    auto t = class_table(X, s, opt);
    store(t);
    return t;
}

}  // namespace g2cubic
