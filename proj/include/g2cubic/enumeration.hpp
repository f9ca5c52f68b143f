#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "g2cubic/cubic_forms.hpp"

namespace g2cubic {

struct ClassRecord {
    std::int64_t disc = 0;
    IntForm representative{};  // canonical form of the class
    int stab_order = 1;
    int splitting_index = 3;
    friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

enum class Strategy { BoxOracle, Reduction };

struct ClassTable {
    std::int64_t bound = 0;
    Strategy strategy = Strategy::Reduction;
    ClassGroup group = ClassGroup::GL2;
    std::vector<ClassRecord> records;  // sorted by (|disc|, negative first, representative)
};

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& s);
std::string group_name(ClassGroup g);
ClassGroup parse_group(const std::string& s);

// Calls visit on every form in [-c,c]^4 in lexicographic order.
void enumerate_box(std::int64_t c, const std::function<void(const IntForm&)>& visit);
std::vector<IntForm> enumerate_box_list(std::int64_t c);

// Per-coordinate bounds |x_i| <= bound[i] satisfied by every canonical form with 0 < |disc| <= X.
struct CoveringBox {
    std::array<std::int64_t, 4> bound{};
    bool contains(const IntForm& f) const;
};
CoveringBox covering_box(std::int64_t X);

struct EnumerationOptions {
    ClassGroup group = ClassGroup::GL2;
    unsigned threads = 0;  // 0: hardware concurrency
};

// Throws std::logic_error if a reduced representative falls outside the covering box.
ClassTable class_table(std::int64_t X, Strategy strategy, const EnumerationOptions& opt = {});
void sort_records(std::vector<ClassRecord>& records);
ClassTable truncate(const ClassTable& t, std::int64_t X);
// record for the class of f (canonicalized)
ClassRecord make_record(const IntForm& f, ClassGroup group = ClassGroup::GL2);

struct SplittingCounts {
    std::array<long, 3> positive{};  // index i-1
    std::array<long, 3> negative{};
    long total() const;
};
SplittingCounts splitting_partition(const ClassTable& t);

enum class Weighting { Stabilizer, Raw };
// sum over records with the given sign of w / |disc|^s, w = 1/stab_order or 1
double dirichlet_partial(const ClassTable& t, double s, int sign, Weighting w = Weighting::Stabilizer);

std::string to_csv(const ClassTable& t);
std::vector<ClassRecord> records_from_csv(const std::string& text);
std::string to_json(const ClassTable& t);
ClassTable table_from_json(const std::string& text);

// Atomic write (temp file then rename); errors carry the path.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

class ClassTableCache {
public:
    explicit ClassTableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
    std::filesystem::path path_for(std::int64_t X, Strategy s, ClassGroup g) const;
    std::optional<ClassTable> load(std::int64_t X, Strategy s, ClassGroup g) const;
    void store(const ClassTable& t) const;
    // load or compute then store
    ClassTable get(std::int64_t X, Strategy s, const EnumerationOptions& opt = {}) const;

private:
    std::filesystem::path dir_;
};

const char* code_version();

}  // namespace g2cubic
