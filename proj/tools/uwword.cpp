// uwword: run UW-RAM algorithms on user inputs and print one JSON record per run.
//
// Exit codes: 0 success, 1 oracle disagreement under --check, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uwram/uwram.hpp"

namespace {

using json = nlohmann::json;
using namespace uwram;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    unsigned w = 64;
    std::size_t k = 64;
    bool check = false;
    bool json_out = true;
    bool strict = false;
};

WideConfig config_of(const Globals& g) { return WideConfig{g.w, g.k}; }

Machine make_machine(const Globals& g, std::size_t cells, std::size_t k_override = 0) {
    const WideConfig c{g.w, k_override ? k_override : g.k};
    return Machine(c, cells, g.strict ? strictness::strict : strictness::permissive);
}

json counters_json(const CostCounter& c) {
    return {{"wide_alu", c.wide_alu},   {"wide_mem", c.wide_mem}, {"scalar_alu", c.scalar_alu},
            {"scalar_mem", c.scalar_mem}, {"wide", c.wide()},       {"scalar", c.scalar()},
            {"total", c.total()}};
}

class Timer {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json record(const std::string& command, const Globals& g) {
    return {{"command", command}, {"config", {{"w", g.w}, {"k", g.k}}}};
}

void emit(const Globals& g, const json& rec) {
    if (g.json_out) {
        std::cout << rec.dump() << '\n';
        return;
    }
    bool first = true;
    for (const auto& [key, value] : rec.items()) {
        std::cout << (first ? "" : " ") << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
        first = false;
    }
    std::cout << '\n';
}

/// Adds the check verdict and returns the exit code.
int finish(const Globals& g, json rec, std::optional<bool> agree, const Timer& timer) {
    rec["check"] = agree ? json(*agree) : json(nullptr);
    rec["wall_time_ms"] = timer.ms();
    emit(g, rec);
    return agree && !*agree ? 1 : 0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Text inputs drop one trailing line break so files written by editors behave like literals.
std::string read_text(const std::string& path) {
    std::string s = read_file(path);
    if (!s.empty() && s.back() == '\n') s.pop_back();
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::string pick(const std::string& literal, const std::string& file, const char* what) {
    if (!file.empty()) return read_text(file);
    if (literal.empty() && file.empty()) throw usage_error(std::string("missing ") + what);
    return literal;
}

/// Byte strings to symbols.  Dense mode numbers the distinct bytes in increasing order;
/// raw mode uses byte values as symbols.
struct Alphabet {
    std::array<int, 256> code{};
    std::vector<unsigned char> byte;
    std::size_t sigma = 0;
    bool raw = false;

    Alphabet(const std::vector<std::string>& inputs, std::optional<std::size_t> sigma_opt, bool raw_bytes)
        : raw(raw_bytes) {
        code.fill(-1);
        if (raw) {
            sigma = sigma_opt.value_or(256);
            for (const auto& s : inputs)
                for (unsigned char c : s)
                    if (c >= sigma)
                        throw usage_error("byte " + std::to_string(c) + " is not below sigma = " + std::to_string(sigma));
            return;
        }
        std::array<bool, 256> seen{};
        for (const auto& s : inputs)
            for (unsigned char c : s) seen[c] = true;
        for (int c = 0; c < 256; ++c)
            if (seen[c]) {
                code[c] = static_cast<int>(byte.size());
                byte.push_back(static_cast<unsigned char>(c));
            }
        sigma = sigma_opt.value_or(std::max<std::size_t>(byte.size(), 2));
        if (byte.size() > sigma)
            throw usage_error("inputs use " + std::to_string(byte.size()) + " distinct symbols but sigma = " +
                              std::to_string(sigma));
    }

    std::vector<symbol> encode(const std::string& s) const {
        std::vector<symbol> out;
        out.reserve(s.size());
        for (unsigned char c : s) out.push_back(raw ? c : static_cast<symbol>(code[c]));
        return out;
    }

    std::string decode(const std::vector<symbol>& s) const {
        std::string out;
        for (symbol c : s) out.push_back(static_cast<char>(raw ? c : byte.at(c)));
        return out;
    }
};

std::vector<std::string> lines_of(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

/// Splits a trace line into words; blank lines and '#' comments give nothing.
std::vector<std::string> words_of(const std::string& line) {
    std::istringstream in(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

u64 number(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    u64 v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || s[0] == '-')
        throw usage_error("line " + std::to_string(line) + ": '" + s + "' is not a nonnegative integer");
    return v;
}

void expect_args(const std::vector<std::string>& words, std::size_t n, std::size_t line) {
    if (words.size() != n + 1)
        throw usage_error("line " + std::to_string(line) + ": '" + words[0] + "' takes " + std::to_string(n) +
                          " argument(s)");
}

// -- subcommands -------------------------------------------------------------

struct SubsetSumArgs {
    std::vector<u64> weights;
    u64 target = 0;
};

int run_subsetsum(const Globals& g, const SubsetSumArgs& a) {
    Timer timer;
    Machine m = make_machine(g, SubsetSum::cells_needed(config_of(g), a.target));
    const CostCounter start = m.cost();
    const bool answer = subset_sum(m, a.weights, a.target);
    json rec = record("subsetsum", g);
    rec["input"] = {{"n", a.weights.size()}, {"target", a.target}};
    rec["answer"] = answer;
    rec["counters"] = counters_json(m.cost() - start);
    std::optional<bool> agree;
    if (g.check)
        agree = answer == (a.weights.size() <= oracle::subset_brute_max_items
                               ? oracle::subset_sum_brute(a.weights, a.target)
                               : oracle::subset_sum_dp(a.weights, a.target));
    return finish(g, rec, agree, timer);
}

struct KnapsackArgs {
    std::vector<u64> weights, values;
    u64 capacity = 0;
};

int run_knapsack(const Globals& g, const KnapsackArgs& a) {
    Timer timer;
    if (a.weights.size() != a.values.size()) throw usage_error("--weights and --values differ in length");
    std::vector<item> items;
    for (std::size_t i = 0; i < a.weights.size(); ++i) items.push_back({a.weights[i], a.values[i]});
    Machine m = make_machine(g, knapsack_cells(config_of(g), items, a.capacity));
    const CostCounter start = m.cost();
    const u64 answer = knapsack(m, items, a.capacity);
    json rec = record("knapsack", g);
    rec["input"] = {{"n", items.size()}, {"capacity", a.capacity}};
    rec["answer"] = answer;
    rec["counters"] = counters_json(m.cost() - start);
    std::optional<bool> agree;
    if (g.check) agree = answer == oracle::knapsack_dp(items, a.capacity);
    return finish(g, rec, agree, timer);
}

struct LcsArgs {
    std::string x, y, x_file, y_file;
    std::optional<std::size_t> sigma;
    bool raw = false, four_russians = false, recover = false;
};

int run_lcs(const Globals& g, const LcsArgs& a) {
    Timer timer;
    if (a.four_russians && a.recover) throw usage_error("--four-russians and --recover are exclusive");
    const std::string xs = pick(a.x, a.x_file, "--x or --x-file");
    const std::string ys = pick(a.y, a.y_file, "--y or --y-file");
    const Alphabet abc({xs, ys}, a.sigma, a.raw);
    const auto x = abc.encode(xs), y = abc.encode(ys);
    const WideConfig c = config_of(g);
    json rec = record("lcs", g);
    rec["input"] = {{"m", x.size()}, {"n", y.size()}, {"sigma", abc.sigma}};
    std::optional<bool> agree;
    if (a.four_russians) {
        Machine m = make_machine(g, four_russians_cells(c, x.size(), y.size(), abc.sigma));
        const CostCounter start = m.cost();
        FourRussians fr(m, x, y, abc.sigma);
        const u64 len = fr.length();
        const auto& p = fr.info();
        if (p.fallback) std::cerr << "uwword: " << p.notice << '\n';
        rec["answer"] = len;
        rec["four_russians"] = {{"t", p.t}, {"fallback", p.fallback}, {"notice", p.notice}};
        rec["counters"] = counters_json(m.cost() - start);
        if (g.check) agree = len == oracle::lcs(x, y).length();
    } else if (a.recover) {
        Machine m = make_machine(g, LcsDiagonals::cells_needed(c, x.size(), y.size(), abc.sigma, retention::full));
        const CostCounter start = m.cost();
        const auto s = lcs_recover(m, x, y, abc.sigma);
        rec["answer"] = s.size();
        rec["witness"] = abc.decode(s);
        rec["counters"] = counters_json(m.cost() - start);
        if (g.check)
            agree = s.size() == oracle::lcs(x, y).length() && oracle::is_subsequence(s, x) &&
                    oracle::is_subsequence(s, y);
    } else {
        Machine m = make_machine(g, LcsDiagonals::cells_needed(c, x.size(), y.size(), abc.sigma, retention::rolling));
        const CostCounter start = m.cost();
        const u64 len = lcs_length(m, x, y, abc.sigma);
        rec["answer"] = len;
        rec["counters"] = counters_json(m.cost() - start);
        if (g.check) agree = len == oracle::lcs(x, y).length();
    }
    return finish(g, rec, agree, timer);
}

struct SearchArgs {
    std::string algo = "shift-and";
    std::string pattern, pattern_file, text, text_file;
    std::optional<std::size_t> sigma;
    bool raw = false;
};

search_algo parse_algo(const std::string& s) {
    if (s == "shift-and") return search_algo::shift_and;
    if (s == "shift-and-parallel") return search_algo::shift_and_parallel;
    if (s == "shift-or") return search_algo::shift_or;
    if (s == "shift-or-parallel") return search_algo::shift_or_parallel;
    if (s == "bmh") return search_algo::bmh;
    throw usage_error("unknown search algorithm '" + s + "'");
}

int run_search(const Globals& g, const SearchArgs& a) {
    Timer timer;
    const search_algo algo = parse_algo(a.algo);
    const std::string ps = pick(a.pattern, a.pattern_file, "--pattern or --pattern-file");
    const std::string ts = a.text_file.empty() ? a.text : read_text(a.text_file);
    const Alphabet abc({ps, ts}, a.sigma, a.raw);
    const auto p = abc.encode(ps), t = abc.encode(ts);
    Machine m = make_machine(g, search_cells(config_of(g), algo, t.size(), p.size(), abc.sigma));
    const SearchReport r = search(m, algo, t, p, abc.sigma);
    json rec = record("search", g);
    rec["input"] = {{"algo", a.algo}, {"n", t.size()}, {"m", p.size()}, {"sigma", abc.sigma}};
    rec["answer"] = {{"occurrences", r.occurrences}, {"occ", r.occ}};
    if (algo == search_algo::bmh) rec["answer"]["windows"] = r.windows.size();
    rec["counters"] = counters_json(r.search);
    rec["preprocessing"] = counters_json(r.preprocessing);
    std::optional<bool> agree;
    if (g.check) {
        agree = r.occurrences == oracle::naive_search(t, p);
        if (algo == search_algo::bmh) agree = *agree && r.windows == oracle::bmh_scalar(t, p, abc.sigma).windows;
    }
    return finish(g, rec, agree, timer);
}

struct PqArgs {
    std::string trace_file;
    unsigned depth = 8;
};

int run_pq(const Globals& g, const PqArgs& a) {
    Timer timer;
    std::vector<oracle::pq_op> ops;
    std::size_t line_no = 0;
    for (const auto& line : lines_of(a.trace_file)) {
        ++line_no;
        const auto w = words_of(line);
        if (w.empty()) continue;
        if (w[0] == "min") {
            expect_args(w, 0, line_no);
            ops.push_back({oracle::pq_op_kind::min, 0});
            continue;
        }
        oracle::pq_op op{};
        if (w[0] == "insert") op.kind = oracle::pq_op_kind::insert;
        else if (w[0] == "delete") op.kind = oracle::pq_op_kind::erase;
        else if (w[0] == "succ") op.kind = oracle::pq_op_kind::successor;
        else throw usage_error("line " + std::to_string(line_no) + ": unknown operation '" + w[0] + "'");
        expect_args(w, 1, line_no);
        op.x = number(w[1], line_no);
        if (op.x >= (u64{1} << a.depth))
            throw usage_error("line " + std::to_string(line_no) + ": element outside the universe");
        ops.push_back(op);
    }

    Machine m = make_machine(g, PriorityQueue::cells_needed(config_of(g), a.depth));
    PriorityQueue q(m, a.depth);
    std::vector<oracle::pq_outcome> got;
    json answers = json::array();
    std::uint64_t worst = 0;
    const CostCounter start = m.cost();
    for (const auto& op : ops) {
        const CostCounter before = m.cost();
        oracle::pq_outcome o;
        switch (op.kind) {
        case oracle::pq_op_kind::insert: q.insert(op.x); break;
        case oracle::pq_op_kind::erase:
            try {
                q.erase(op.x);
            } catch (const precondition_error&) {
                o.error = true;
            }
            break;
        case oracle::pq_op_kind::min: o.value = q.min(); break;
        case oracle::pq_op_kind::successor: o.value = q.successor(op.x); break;
        }
        worst = std::max(worst, (m.cost() - before).total());
        if (op.kind == oracle::pq_op_kind::min || op.kind == oracle::pq_op_kind::successor)
            answers.push_back(o.value ? json(*o.value) : json(nullptr));
        else if (o.error)
            answers.push_back("absent");
        got.push_back(o);
    }
    json rec = record("pq-trace", g);
    rec["input"] = {{"ops", ops.size()}, {"universe", u64{1} << a.depth}};
    rec["answer"] = answers;
    rec["counters"] = counters_json(m.cost() - start);
    rec["max_op_cost"] = worst;
    std::optional<bool> agree;
    if (g.check) {
        const auto want = oracle::pq_trace(ops, u64{1} << a.depth);
        agree = want.size() == got.size();
        for (std::size_t i = 0; *agree && i < want.size(); ++i)
            agree = want[i].value == got[i].value && want[i].error == got[i].error;
    }
    return finish(g, rec, agree, timer);
}

struct DpsArgs {
    std::string trace_file;
    std::size_t n = 8;
    u64 universe = 16;
    std::string op = "add";
    unsigned iota = 1;
};

int run_dps(const Globals& g, const DpsArgs& a) {
    Timer timer;
    const combine_kind kind = a.op == "max" ? combine_kind::max : combine_kind::add_mod;
    std::vector<oracle::dps_op> ops;
    std::size_t line_no = 0;
    for (const auto& line : lines_of(a.trace_file)) {
        ++line_no;
        const auto w = words_of(line);
        if (w.empty()) continue;
        oracle::dps_op op{};
        if (w[0] == "update") {
            expect_args(w, 2, line_no);
            op = {oracle::dps_op_kind::update, number(w[1], line_no), number(w[2], line_no)};
            if (op.value >= a.universe) throw usage_error("line " + std::to_string(line_no) + ": value outside universe");
        } else if (w[0] == "retrieve") {
            expect_args(w, 1, line_no);
            op = {oracle::dps_op_kind::retrieve, number(w[1], line_no), 0};
        } else {
            throw usage_error("line " + std::to_string(line_no) + ": unknown operation '" + w[0] + "'");
        }
        if (op.index >= a.n) throw usage_error("line " + std::to_string(line_no) + ": index out of range");
        ops.push_back(op);
    }

    Machine m = make_machine(g, DynamicPrefixSums::cells_needed(config_of(g), a.n, a.universe, kind, a.iota));
    DynamicPrefixSums dps(m, a.n, a.universe, kind, a.iota);
    std::vector<u64> got;
    std::uint64_t worst = 0;
    const CostCounter start = m.cost();
    for (const auto& op : ops) {
        const CostCounter before = m.cost();
        if (op.kind == oracle::dps_op_kind::update) dps.update(op.index, op.value);
        else got.push_back(dps.retrieve(op.index));
        worst = std::max(worst, (m.cost() - before).total());
    }
    json rec = record("dps-trace", g);
    rec["input"] = {{"ops", ops.size()}, {"n", a.n}, {"universe", a.universe}, {"op", a.op}, {"iota", a.iota}};
    rec["answer"] = got;
    rec["counters"] = counters_json(m.cost() - start);
    rec["max_op_cost"] = worst;
    std::optional<bool> agree;
    if (g.check) agree = got == oracle::dps_trace(ops, a.n, a.universe, kind);
    return finish(g, rec, agree, timer);
}

struct FsramArgs {
    std::string layout_file, ops_file;
};

int run_fsram(const Globals& g, const FsramArgs& a) {
    Timer timer;
    std::istringstream layout_text(read_file(a.layout_file));
    FsRamLayout layout;
    try {
        layout = parse_layout(layout_text);
    } catch (const config_error& e) {
        throw usage_error(e.what());
    }
    struct op {
        bool write;
        std::size_t t;
        u64 v;
    };
    std::vector<op> ops;
    std::size_t line_no = 0;
    for (const auto& line : lines_of(a.ops_file)) {
        ++line_no;
        const auto w = words_of(line);
        if (w.empty()) continue;
        op o{};
        if (w[0] == "read") {
            expect_args(w, 1, line_no);
            o = {false, number(w[1], line_no), 0};
        } else if (w[0] == "write") {
            expect_args(w, 2, line_no);
            o = {true, number(w[1], line_no), number(w[2], line_no)};
            if (layout.width < 64 && (o.v >> layout.width) != 0)
                throw usage_error("line " + std::to_string(line_no) + ": value wider than the register");
        } else {
            throw usage_error("line " + std::to_string(line_no) + ": unknown operation '" + w[0] + "'");
        }
        if (o.t >= layout.registers) throw usage_error("line " + std::to_string(line_no) + ": no such register");
        ops.push_back(o);
    }

    Machine m = make_machine(g, 1 + fsram_cells(config_of(g), layout));
    FsRam fs(m, layout);
    std::vector<u64> got;
    const CostCounter start = m.cost();
    for (const auto& o : ops) {
        if (o.write) fs.write(o.t, o.v);
        else got.push_back(fs.read(o.t));
    }
    json rec = record("fsram", g);
    rec["input"] = {{"registers", layout.registers}, {"width", layout.width}, {"bits", layout.bit_count},
                    {"ops", ops.size()}};
    rec["answer"] = got;
    rec["counters"] = counters_json(m.cost() - start);
    std::optional<bool> agree;
    if (g.check) {
        std::vector<bool> flat(layout.bit_count, false);
        std::vector<u64> want;
        for (const auto& o : ops) {
            if (o.write) {
                for (std::size_t j = 0; j < layout.width; ++j) flat[layout.id(o.t, j)] = (o.v >> j) & 1;
            } else {
                u64 v = 0;
                for (std::size_t j = 0; j < layout.width; ++j) v |= u64{flat[layout.id(o.t, j)]} << j;
                want.push_back(v);
            }
        }
        agree = got == want;
    }
    return finish(g, rec, agree, timer);
}

struct BenchArgs {
    std::string algo = "subsetsum";
    std::vector<u64> sizes;
    std::size_t n = 64;
    std::size_t pattern_length = 0;
    std::string baseline = "wordram";
    std::uint64_t seed = 1;
};

/// Wide and scalar cost of one bench point on k blocks.
CostCounter bench_point(const Globals& g, const BenchArgs& a, u64 size, std::size_t k) {
    std::mt19937_64 rng(a.seed + size);
    const WideConfig c{g.w, k};
    if (a.algo == "subsetsum") {
        std::vector<u64> weights(a.n);
        for (auto& x : weights) x = 1 + rng() % std::max<u64>(1, size / 2);
        Machine m = make_machine(g, SubsetSum::cells_needed(c, size), k);
        const CostCounter start = m.cost();
        subset_sum(m, weights, size);
        return m.cost() - start;
    }
    if (a.algo == "lcs") {
        std::vector<symbol> x(size), y(size);
        for (auto& s : x) s = rng() % 4;
        for (auto& s : y) s = rng() % 4;
        Machine m = make_machine(g, LcsDiagonals::cells_needed(c, size, size, 4, retention::rolling), k);
        const CostCounter start = m.cost();
        lcs_length(m, x, y, 4);
        return m.cost() - start;
    }
    const bool parallel = a.algo == "shift-and-parallel";
    if (a.algo != "shift-and" && !parallel) throw usage_error("bench: unknown algorithm '" + a.algo + "'");
    const std::size_t n = parallel ? size : a.n;
    const std::size_t len = parallel ? (a.pattern_length ? a.pattern_length : g.w / 2) : size;
    std::vector<symbol> t(n), p(len);
    for (auto& s : t) s = rng() % 4;
    for (auto& s : p) s = rng() % 4;
    const search_algo algo = parallel ? search_algo::shift_and_parallel : search_algo::shift_and;
    Machine m = make_machine(g, search_cells(c, algo, n, len, 4), k);
    return search(m, algo, t, p, 4).search;
}

/// Cells touched by the textbook algorithm.
u64 naive_ops(const Globals& g, const BenchArgs& a, u64 size) {
    if (a.algo == "subsetsum") return a.n * (size + 1);
    if (a.algo == "lcs") return size * size;
    if (a.algo == "shift-and-parallel") return size * (a.pattern_length ? a.pattern_length : g.w / 2);
    return a.n * size;
}

int run_bench(const Globals& g, const BenchArgs& a) {
    if (a.sizes.empty()) throw usage_error("bench: --sizes is required");
    if (a.baseline != "wordram" && a.baseline != "naive") throw usage_error("bench: unknown baseline");
    for (u64 size : a.sizes) {
        Timer timer;
        const CostCounter uw = bench_point(g, a, size, g.k);
        json rec = record("bench", g);
        rec["input"] = {{"algo", a.algo}, {"size", size}, {"n", a.n}, {"baseline", a.baseline}};
        rec["counters"] = counters_json(uw);
        double ratio = 0;
        if (a.baseline == "wordram") {
            const CostCounter base = g.k == 1 ? uw : bench_point(g, a, size, 1);
            rec["baseline"] = counters_json(base);
            ratio = double(base.wide()) / double(std::max<u64>(1, uw.wide()));
        } else {
            const u64 base = naive_ops(g, a, size);
            rec["baseline"] = {{"total", base}};
            ratio = double(base) / double(std::max<u64>(1, uw.total()));
        }
        rec["answer"] = {{"ratio", ratio}};
        if (a.algo == "shift-and-parallel") rec["answer"]["wide_per_char"] = double(uw.wide()) / double(size);
        finish(g, rec, std::nullopt, timer);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Run UW-RAM algorithms and report model cost counters", "uwword"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--block-bits", g.w, "Block width w")->capture_default_str();
    app.add_option("--blocks", g.k, "Blocks per wide word k")->capture_default_str();
    app.add_flag("--check", g.check, "Compare with the reference oracle");
    app.add_flag("--json,!--no-json", g.json_out, "JSON records (default) or key=value lines");
    app.add_flag("--strict", g.strict, "Fault on out-of-contract primitive inputs");

    SubsetSumArgs ss;
    auto* ss_cmd = app.add_subcommand("subsetsum", "Subset sum reachability");
    ss_cmd->add_option("--weights", ss.weights, "Comma-separated weights")->delimiter(',');
    ss_cmd->add_option("--target", ss.target, "Target sum")->required();

    KnapsackArgs ks;
    auto* ks_cmd = app.add_subcommand("knapsack", "0/1 knapsack optimum");
    ks_cmd->add_option("--weights", ks.weights, "Comma-separated weights")->delimiter(',');
    ks_cmd->add_option("--values", ks.values, "Comma-separated values")->delimiter(',');
    ks_cmd->add_option("--capacity", ks.capacity, "Capacity")->required();

    LcsArgs ls;
    auto* ls_cmd = app.add_subcommand("lcs", "Longest common subsequence");
    ls_cmd->add_option("--x", ls.x, "First string");
    ls_cmd->add_option("--y", ls.y, "Second string");
    ls_cmd->add_option("--x-file", ls.x_file, "File holding the first string");
    ls_cmd->add_option("--y-file", ls.y_file, "File holding the second string");
    ls_cmd->add_option("--sigma", ls.sigma, "Alphabet size");
    ls_cmd->add_flag("--raw-bytes", ls.raw, "Use byte values as symbols");
    ls_cmd->add_flag("--four-russians", ls.four_russians, "Block table method");
    ls_cmd->add_flag("--recover", ls.recover, "Also return one longest common subsequence");

    SearchArgs sa;
    auto* sa_cmd = app.add_subcommand("search", "Exact pattern matching");
    sa_cmd->add_option("--algo", sa.algo, "Matcher")
        ->check(CLI::IsMember({"shift-and", "shift-and-parallel", "shift-or", "shift-or-parallel", "bmh"}))
        ->capture_default_str();
    sa_cmd->add_option("--pattern", sa.pattern, "Pattern");
    sa_cmd->add_option("--pattern-file", sa.pattern_file, "File holding the pattern");
    sa_cmd->add_option("--text", sa.text, "Text");
    sa_cmd->add_option("--text-file", sa.text_file, "File holding the text");
    sa_cmd->add_option("--sigma", sa.sigma, "Alphabet size");
    sa_cmd->add_flag("--raw-bytes", sa.raw, "Use byte values as symbols");

    PqArgs pq;
    auto* pq_cmd = app.add_subcommand("pq-trace", "Replay insert/delete/min/succ lines on the priority queue");
    pq_cmd->add_option("--trace-file", pq.trace_file, "Trace file")->required();
    pq_cmd->add_option("--depth", pq.depth, "Universe 2^depth")->capture_default_str();

    DpsArgs dp;
    auto* dp_cmd = app.add_subcommand("dps-trace", "Replay update/retrieve lines on dynamic prefix sums");
    dp_cmd->add_option("--trace-file", dp.trace_file, "Trace file")->required();
    dp_cmd->add_option("--n", dp.n, "Items")->capture_default_str();
    dp_cmd->add_option("--universe", dp.universe, "Values are below this")->capture_default_str();
    dp_cmd->add_option("--op", dp.op, "Combination")->check(CLI::IsMember({"add", "max"}))->capture_default_str();
    dp_cmd->add_option("--iota", dp.iota, "Folding rounds")->capture_default_str();

    FsramArgs fa;
    auto* fa_cmd = app.add_subcommand("fsram", "Replay read/write lines on an FS-RAM layout");
    fa_cmd->add_option("--layout-file", fa.layout_file, "Layout: 'r b B' then r rows of b bit ids")->required();
    fa_cmd->add_option("--ops-file", fa.ops_file, "Operations file")->required();

    BenchArgs ba;
    auto* ba_cmd = app.add_subcommand("bench", "Cost counters against a baseline over a size sweep");
    ba_cmd->add_option("--algo", ba.algo, "Algorithm")
        ->check(CLI::IsMember({"subsetsum", "shift-and", "shift-and-parallel", "lcs"}))
        ->capture_default_str();
    ba_cmd->add_option("--sizes", ba.sizes, "Comma-separated sizes")->delimiter(',')->required();
    ba_cmd->add_option("--n", ba.n, "Items or text length")->capture_default_str();
    ba_cmd->add_option("--pattern-length", ba.pattern_length, "Pattern length for shift-and-parallel");
    ba_cmd->add_option("--baseline", ba.baseline, "wordram or naive")
        ->check(CLI::IsMember({"wordram", "naive"}))
        ->capture_default_str();
    ba_cmd->add_option("--seed", ba.seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "uwword: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*ss_cmd) return run_subsetsum(g, ss);
        if (*ks_cmd) return run_knapsack(g, ks);
        if (*ls_cmd) return run_lcs(g, ls);
        if (*sa_cmd) return run_search(g, sa);
        if (*pq_cmd) return run_pq(g, pq);
        if (*dp_cmd) return run_dps(g, dp);
        if (*fa_cmd) return run_fsram(g, fa);
        if (*ba_cmd) return run_bench(g, ba);
    } catch (const std::exception& e) {
        std::cerr << "uwword: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
