#include "tensym/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "tensym/bilinear.hpp"
#include "tensym/engine.hpp"
#include "tensym/errors.hpp"
#include "tensym/flattening.hpp"
#include "tensym/prng.hpp"
#include "tensym/segre.hpp"
#include "tensym/tensor.hpp"
#include "tensym/version.hpp"

namespace tensym {

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << "0x" << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

nlohmann::json base_report(const std::string& command) {
    return nlohmann::json{{"version", std::string(kVersion)}, {"command", command}};
}

void emit(std::ostream& out, bool json, const nlohmann::json& doc, const std::string& text) {
    if (json)
        out << doc.dump(2) << '\n';
    else
        out << text;
}

ExactMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open matrix file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    if (!doc.is_array() || doc.empty()) throw ParseError(path + ": want an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : doc) {
        if (!r.is_array()) throw ParseError(path + ": each row must be an array");
        std::vector<Rational> row;
        for (const auto& x : r) {
            if (!x.is_string()) throw ParseError(path + ": entries must be rational strings");
            row.push_back(Rational::parse(x.get<std::string>()));
        }
        rows.push_back(std::move(row));
    }
    return ExactMatrix::from_rows(rows);
}

/// Small random invertible integer matrix; entries in [-3, 3].
ExactMatrix random_invertible(std::size_t n, SplitMix64& rng) {
    for (;;) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rational(rng.next_int(-3, 3));
        if (is_invertible(m)) return m;
    }
}

struct AlgorithmSource {
    BilinearAlgorithm alg;
    std::string description;
};

AlgorithmSource resolve_algorithm(const std::string& path, const std::string& builtin,
                                  const std::vector<std::size_t>& dims) {
    if (!path.empty() && !builtin.empty())
        throw ValidationError("give either a file or --builtin, not both");
    if (!path.empty()) return {load_algorithm(path), "file " + path};
    const std::string which = builtin.empty() ? "strassen" : builtin;
    if (which == "strassen") return {strassen_algorithm(), "builtin strassen"};
    if (which == "naive") {
        std::vector<std::size_t> d = dims.empty() ? std::vector<std::size_t>{2, 2, 2} : dims;
        if (d.size() != 3) throw ValidationError("--dims needs exactly three values m,n,p");
        return {naive_algorithm(d[0], d[1], d[2]),
                "builtin naive " + std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" +
                    std::to_string(d[2])};
    }
    throw ValidationError("unknown builtin '" + which + "' (want strassen, naive or extended)");
}

std::string join_sizes(const std::vector<std::size_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(xs[i]);
    }
    return s;
}

int cmd_verify(const std::string& path, const std::string& builtin,
               const std::vector<std::size_t>& dims, bool json, std::ostream& out) {
    if (builtin == "extended") {
        const ExtendedAlgorithm ext = extended_strassen();
        const bool zero = ext.members_sum_to_zero();
        std::vector<std::size_t> ranks;
        for (const DenseTensor& m : ext.members()) {
            const std::size_t kept[1] = {0};
            ranks.push_back(flattening_rank(m, kept));
        }
        nlohmann::json doc = base_report("verify");
        doc["source"] = "builtin extended";
        doc["members"] = ext.member_count();
        doc["sum_zero"] = zero;
        doc["member_factor1_ranks"] = ranks;
        std::ostringstream text;
        text << "verify: builtin extended\n"
             << ext.member_count() << " members, sum " << (zero ? "= 0" : "!= 0") << "\n"
             << "member factor-1 flattening ranks: " << join_sizes(ranks) << "\n";
        emit(out, json, doc, text.str());
        return zero ? 0 : 1;
    }

    const AlgorithmSource src = resolve_algorithm(path, builtin, dims);
    const bool ok = verify(src.alg);
    const std::uint64_t checksum = algorithm_checksum(src.alg);
    const std::vector<std::size_t> ranks = flattening_profile(src.alg.target());
    nlohmann::json doc = base_report("verify");
    doc["source"] = src.description;
    doc["checksum"] = hex64(checksum);
    doc["terms"] = src.alg.term_count();
    doc["verified"] = ok;
    doc["flattening_ranks"] = ranks;
    std::ostringstream text;
    text << "verify: " << src.description << " (checksum " << hex64(checksum) << ")\n"
         << src.alg.term_count() << " terms, " << (ok ? "VERIFIED" : "NOT VERIFIED") << "\n"
         << "flattening ranks: " << join_sizes(ranks) << "\n";
    emit(out, json, doc, text.str());
    return ok ? 0 : 1;
}

int cmd_group(bool extended, bool json, std::ostream& out) {
    const std::vector<SegreMap> gens =
        extended ? extended_group_generators() : strassen_group_generators();
    const GroupClosure group = GroupClosure::close(gens);

    std::string gen_names;
    for (const SegreMap& g : gens) {
        if (!gen_names.empty()) gen_names += " ";
        gen_names += g.label();
    }
    const auto hist = group.order_histogram();
    const std::size_t center_size = group.center().size();
    const std::size_t ab = group.abelianization_order();

    nlohmann::json doc = base_report("group");
    doc["scope"] = extended ? "extended" : "strassen";
    doc["generators"] = gen_names;
    doc["order"] = group.order();
    nlohmann::json horders = nlohmann::json::object();
    for (const auto& [o, c] : hist) horders[std::to_string(o)] = c;
    doc["element_orders"] = horders;
    doc["center_size"] = center_size;
    doc["abelianization_order"] = ab;

    std::ostringstream text;
    text << "group: " << (extended ? "extended family symmetries" : "strassen scheme symmetries")
         << "\n"
         << "generators: " << gen_names << "\n"
         << "order: " << group.order() << "\n";
    text << "element orders:";
    for (const auto& [o, c] : hist) text << " " << o << "^" << c;
    text << "\n"
         << "center size: " << center_size << "\n"
         << "abelianization order: " << ab << "\n";

    if (extended) {
        const GroupClosure pair = GroupClosure::close({gens[0], gens[1]});
        const GroupClosure conj = GroupClosure::close({gens[2], gens[3]});
        std::size_t common = 0;
        for (const SegreMap& g : pair.elements())
            if (conj.contains(g)) ++common;
        doc["subgroup_A2x_A3x_order"] = pair.order();
        doc["subgroup_B1x_B2x_order"] = conj.order();
        doc["subgroup_intersection"] = common;
        text << "subgroup <A2x,A3x> order: " << pair.order() << "\n"
             << "subgroup <B1x,B2x> order: " << conj.order() << "\n"
             << "subgroup intersection size: " << common << "\n";
    }
    emit(out, json, doc, text.str());
    return 0;
}

int cmd_orbits(bool extended, bool json, std::ostream& out) {
    std::vector<DenseTensor> items;
    std::string what;
    std::vector<SegreMap> gens;
    if (extended) {
        gens = extended_group_generators();
        items = extended_strassen().members();
        what = "extended members";
    } else {
        gens = strassen_group_generators();
        const BilinearAlgorithm alg = strassen_algorithm();
        for (const Rank1Tensor& t : alg.terms()) items.push_back(t.expand());
        what = "strassen terms";
    }
    const GroupClosure group = GroupClosure::close(gens);
    const auto parts = orbits(group, items);

    nlohmann::json doc = base_report("orbits");
    doc["scope"] = extended ? "extended" : "strassen";
    doc["group_order"] = group.order();
    nlohmann::json jorbits = nlohmann::json::array();
    std::ostringstream text;
    text << "orbits: " << what << " under the order-" << group.order() << " group\n";
    std::vector<std::size_t> sizes;
    for (const auto& orbit : parts) sizes.push_back(orbit.size());
    text << "orbit sizes: " << join_sizes(sizes) << "\n";
    for (std::size_t q = 0; q < parts.size(); ++q) {
        nlohmann::json members = nlohmann::json::array();
        text << "orbit " << (q + 1) << ":";
        for (std::size_t idx : parts[q]) {
            members.push_back(idx + 1);
            text << " " << (idx + 1);
        }
        text << "\n";
        jorbits.push_back(members);
    }
    doc["orbits"] = jorbits;
    emit(out, json, doc, text.str());
    return 0;
}

int cmd_flatten(const std::string& path, const std::string& builtin,
                const std::vector<std::size_t>& dims, std::size_t factor, bool json,
                std::ostream& out) {
    if (factor < 1 || factor > 3) throw ValidationError("--factor must be 1, 2 or 3");
    const AlgorithmSource src = resolve_algorithm(path, builtin, dims);
    const std::size_t f = factor - 1;
    const std::vector<Subspace> lines = term_quasiprojection_profile(src.alg, f);
    const auto triples = dependent_triples(src.alg, f);
    const std::size_t kept[1] = {f};
    const std::size_t target_rank = flattening_rank(src.alg.target(), kept);
    const std::size_t preserve_dim = line_preserving_matrix_dim(lines);

    nlohmann::json doc = base_report("flatten");
    doc["source"] = src.description;
    doc["factor"] = factor;
    nlohmann::json jlines = nlohmann::json::array();
    std::ostringstream text;
    text << "flatten: " << src.description << ", factor " << factor << "\n";
    text << "term lines:\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        nlohmann::json coords = nlohmann::json::array();
        text << "  term " << (i + 1) << ": [";
        const auto row = lines[i].basis().row(0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            coords.push_back(row[j].str());
            text << (j ? ", " : "") << row[j].str();
        }
        text << "]\n";
        jlines.push_back(coords);
    }
    doc["term_lines"] = jlines;
    nlohmann::json jtriples = nlohmann::json::array();
    text << "dependent triples:";
    if (triples.empty()) text << " none";
    for (const auto& t : triples) {
        jtriples.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
        text << " {" << t[0] + 1 << "," << t[1] + 1 << "," << t[2] + 1 << "}";
    }
    text << "\n";
    doc["dependent_triples"] = jtriples;
    doc["target_rank"] = target_rank;
    doc["line_preserving_dim"] = preserve_dim;
    text << "target flattening rank: " << target_rank << "\n"
         << "line-preserving matrix space dimension: " << preserve_dim << "\n";
    emit(out, json, doc, text.str());
    return 0;
}

int cmd_transform(const std::string& input, const std::string& builtin,
                  const std::string& output, const std::string& p_path,
                  const std::string& q_path, const std::string& r_path, std::uint64_t seed,
                  bool json, std::ostream& out) {
    const AlgorithmSource src = resolve_algorithm(input, builtin, {});
    if (!verify(src.alg))
        throw ValidationError("input algorithm does not verify; refusing to transform");

    const std::size_t given =
        (p_path.empty() ? 0 : 1) + (q_path.empty() ? 0 : 1) + (r_path.empty() ? 0 : 1);
    if (given != 0 && given != 3)
        throw ValidationError("--p, --q and --r must be given together");

    ExactMatrix P, Q, R;
    std::string matrix_source;
    if (given == 3) {
        P = load_matrix_json(p_path);
        Q = load_matrix_json(q_path);
        R = load_matrix_json(r_path);
        matrix_source = "files " + p_path + ", " + q_path + ", " + r_path;
    } else {
        SplitMix64 rng(seed);
        P = random_invertible(src.alg.m(), rng);
        Q = random_invertible(src.alg.n(), rng);
        R = random_invertible(src.alg.p(), rng);
        matrix_source = "seed " + std::to_string(seed);
    }

    const SegreMap g = sandwich(P, Q, R, src.alg.m(), src.alg.n(), src.alg.p());
    const BilinearAlgorithm result = transform_algorithm(g, src.alg);
    const bool ok = verify(result);
    if (!output.empty()) save_algorithm(result, output);

    nlohmann::json doc = base_report("transform");
    doc["source"] = src.description;
    doc["source_checksum"] = hex64(algorithm_checksum(src.alg));
    doc["matrices"] = matrix_source;
    doc["terms"] = result.term_count();
    doc["verified"] = ok;
    doc["result_checksum"] = hex64(algorithm_checksum(result));
    if (!output.empty()) doc["output"] = output;

    std::ostringstream text;
    text << "transform: " << src.description << " (checksum "
         << hex64(algorithm_checksum(src.alg)) << ")\n"
         << "sandwich matrices from " << matrix_source << "\n"
         << "result: " << result.term_count() << " terms, "
         << (ok ? "VERIFIED" : "NOT VERIFIED") << "\n"
         << "result checksum: " << hex64(algorithm_checksum(result)) << "\n";
    if (!output.empty()) text << "saved: " << output << "\n";
    emit(out, json, doc, text.str());
    return ok ? 0 : 1;
}

template <typename S>
std::pair<bool, OperationCounter> multiply_and_check(std::size_t size, std::size_t cutoff,
                                                     bool parallel, std::uint64_t seed) {
    SplitMix64 rng(seed);
    RingMatrix<S> a(size, size), b(size, size);
    for (S& x : a.data()) {
        if constexpr (std::is_same_v<S, double>)
            x = 2.0 * rng.next_unit() - 1.0;
        else
            x = S(rng.next_int(-9, 9));
    }
    for (S& x : b.data()) {
        if constexpr (std::is_same_v<S, double>)
            x = 2.0 * rng.next_unit() - 1.0;
        else
            x = S(rng.next_int(-9, 9));
    }
    OperationCounter counter, oracle_counter;
    const RingMatrix<S> c = strassen_multiply(a, b, cutoff, counter, parallel);
    const RingMatrix<S> want = naive_multiply(a, b, oracle_counter);
    bool match;
    if constexpr (std::is_same_v<S, double>) {
        double max_err = 0.0, max_mag = 0.0;
        for (std::size_t k = 0; k < c.data().size(); ++k) {
            max_err = std::max(max_err, std::abs(c.data()[k] - want.data()[k]));
            max_mag = std::max(max_mag, std::abs(want.data()[k]));
        }
        match = max_err <= 1e-9 * std::max(max_mag, 1.0);
    } else {
        match = c == want;
    }
    return {match, counter};
}

int cmd_multiply(std::size_t size, std::size_t cutoff, const std::string& ring, bool parallel,
                 std::uint64_t seed, bool json, std::ostream& out) {
    if (size == 0) throw ValidationError("--size must be at least 1");
    const BenchRing r = bench_ring_from_string(ring);
    bool match = false;
    OperationCounter counter;
    switch (r) {
    case BenchRing::rational:
        std::tie(match, counter) = multiply_and_check<Rational>(size, cutoff, parallel, seed);
        break;
    case BenchRing::i64:
        std::tie(match, counter) = multiply_and_check<CheckedInt64>(size, cutoff, parallel, seed);
        break;
    case BenchRing::f64:
        std::tie(match, counter) = multiply_and_check<double>(size, cutoff, parallel, seed);
        break;
    }

    nlohmann::json doc = base_report("multiply");
    doc["size"] = size;
    doc["cutoff"] = cutoff;
    doc["ring"] = to_string(r);
    doc["seed"] = seed;
    doc["parallel"] = parallel;
    doc["mults"] = counter.mults;
    doc["adds"] = counter.adds;
    doc["match"] = match;
    std::ostringstream text;
    text << "multiply: size " << size << ", cutoff " << cutoff << ", ring " << to_string(r)
         << ", seed " << seed << (parallel ? ", parallel" : "") << "\n"
         << "mults=" << counter.mults << " adds=" << counter.adds << "\n"
         << "check vs naive: " << (match ? "OK" : "MISMATCH") << "\n";
    emit(out, json, doc, text.str());
    return match ? 0 : 1;
}

int cmd_bench(const std::vector<std::size_t>& sizes, const std::vector<std::string>& methods,
              const std::vector<std::size_t>& cutoffs, const std::string& ring,
              std::size_t trials, bool parallel, std::uint64_t seed, bool json,
              std::ostream& out) {
    BenchConfig cfg;
    cfg.sizes = sizes;
    if (!methods.empty()) cfg.methods = methods;
    if (!cutoffs.empty()) cfg.cutoffs = cutoffs;
    cfg.ring = bench_ring_from_string(ring);
    cfg.trials = trials;
    cfg.parallel = parallel;
    cfg.seed = seed;
    const BenchReport report = run_bench(cfg);
    if (json) {
        nlohmann::json doc = base_report("bench");
        doc["ring"] = to_string(cfg.ring);
        doc["trials"] = cfg.trials;
        doc["seed"] = cfg.seed;
        nlohmann::json rows = nlohmann::json::array();
        for (const BenchRow& r : report.rows)
            rows.push_back({{"size", r.size},
                            {"method", r.method},
                            {"cutoff", r.cutoff},
                            {"ring", to_string(r.ring)},
                            {"trials", r.trials},
                            {"median_ns", r.median_ns},
                            {"mults", r.mults},
                            {"adds", r.adds}});
        doc["rows"] = rows;
        nlohmann::json slopes = nlohmann::json::array();
        for (const BenchSlope& s : report.slopes)
            slopes.push_back({{"from_size", s.from_size},
                              {"to_size", s.to_size},
                              {"method", s.method},
                              {"cutoff", s.cutoff},
                              {"mult_slope", s.mult_slope},
                              {"time_slope", s.time_slope}});
        doc["slopes"] = slopes;
        out << doc.dump(2) << '\n';
    } else {
        out << bench_csv(report);
    }
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact tools for the seven-term 2x2 matrix multiplication scheme: verify "
                 "decompositions, explore their symmetry groups, generate new schemes, and run "
                 "the recursive engine.",
                 "tensym"};
    app.set_version_flag("--version", std::string(kVersion));
    bool json = false;
    std::uint64_t seed = 1;
    app.add_flag("--json", json, "emit machine-readable JSON instead of text");
    app.add_option("--seed", seed, "seed for anything randomized (default 1)");
    app.require_subcommand(0, 1);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check that a scheme sums to its target");
    std::string verify_path, verify_builtin;
    std::vector<std::size_t> verify_dims;
    verify_cmd->add_option("file", verify_path, "algorithm JSON file");
    verify_cmd->add_option("--builtin", verify_builtin, "strassen, naive or extended");
    verify_cmd->add_option("--dims", verify_dims, "m,n,p for --builtin naive")->delimiter(',');

    // group
    auto* group_cmd = app.add_subcommand("group", "close the symmetry generators and report");
    bool group_extended = false;
    group_cmd->add_flag("--extended", group_extended, "use the six-factor extended group");

    // orbits
    auto* orbits_cmd = app.add_subcommand("orbits", "orbit partition of the scheme's terms");
    bool orbits_extended = false;
    orbits_cmd->add_flag("--extended", orbits_extended, "orbits of the eight extended members");

    // flatten
    auto* flatten_cmd =
        app.add_subcommand("flatten", "per-term lines, dependent triples and flattening rank");
    std::string flatten_path, flatten_builtin;
    std::vector<std::size_t> flatten_dims;
    std::size_t flatten_factor = 1;
    flatten_cmd->add_option("file", flatten_path, "algorithm JSON file");
    flatten_cmd->add_option("--builtin", flatten_builtin, "strassen or naive");
    flatten_cmd->add_option("--dims", flatten_dims, "m,n,p for --builtin naive")->delimiter(',');
    flatten_cmd->add_option("--factor", flatten_factor, "factor to project onto, 1-3 (default 1)");

    // transform
    auto* transform_cmd =
        app.add_subcommand("transform", "apply an isotropy sandwich to produce a new scheme");
    std::string t_input, t_builtin, t_output, t_p, t_q, t_r;
    transform_cmd->add_option("file", t_input, "input algorithm JSON file");
    transform_cmd->add_option("--builtin", t_builtin, "use a builtin as input (strassen)");
    transform_cmd->add_option("--output", t_output, "where to save the transformed scheme");
    transform_cmd->add_option("--p", t_p, "JSON file with matrix P");
    transform_cmd->add_option("--q", t_q, "JSON file with matrix Q");
    transform_cmd->add_option("--r", t_r, "JSON file with matrix R");

    // multiply
    auto* multiply_cmd =
        app.add_subcommand("multiply", "run the recursive engine and check against schoolbook");
    std::size_t m_size = 8, m_cutoff = 1;
    std::string m_ring = "rational";
    bool m_parallel = false;
    multiply_cmd->add_option("--size", m_size, "matrix size N (default 8)");
    multiply_cmd->add_option("--cutoff", m_cutoff, "blocks this size multiply naively");
    multiply_cmd->add_option("--ring", m_ring, "rational, i64 or f64 (default rational)");
    multiply_cmd->add_flag("--parallel", m_parallel, "run the seven top products concurrently");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "time the engine, emit CSV");
    std::vector<std::size_t> b_sizes, b_cutoffs;
    std::vector<std::string> b_methods;
    std::string b_ring = "f64";
    std::size_t b_trials = 3;
    bool b_parallel = false;
    bench_cmd->add_option("--sizes", b_sizes, "matrix sizes")->delimiter(',')->required();
    bench_cmd->add_option("--methods", b_methods, "strassen and/or naive")->delimiter(',');
    bench_cmd->add_option("--cutoffs", b_cutoffs, "strassen cutoffs (default 64)")->delimiter(',');
    bench_cmd->add_option("--ring", b_ring, "rational, i64 or f64 (default f64)");
    bench_cmd->add_option("--trials", b_trials, "trials per cell (default 3)");
    bench_cmd->add_flag("--parallel", b_parallel, "parallel top-level products");

    std::vector<const char*> argv;
    argv.push_back("tensym");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(verify_path, verify_builtin, verify_dims, json, out);
        if (app.got_subcommand(group_cmd)) return cmd_group(group_extended, json, out);
        if (app.got_subcommand(orbits_cmd)) return cmd_orbits(orbits_extended, json, out);
        if (app.got_subcommand(flatten_cmd))
            return cmd_flatten(flatten_path, flatten_builtin, flatten_dims, flatten_factor, json,
                               out);
        if (app.got_subcommand(transform_cmd))
            return cmd_transform(t_input, t_builtin, t_output, t_p, t_q, t_r, seed, json, out);
        if (app.got_subcommand(multiply_cmd))
            return cmd_multiply(m_size, m_cutoff, m_ring, m_parallel, seed, json, out);
        if (app.got_subcommand(bench_cmd))
            return cmd_bench(b_sizes, b_methods, b_cutoffs, b_ring, b_trials, b_parallel, seed,
                             json, out);
        err << "error: no command given (try --help)\n";
        return 2;
    } catch (const ClosureCapError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace tensym
