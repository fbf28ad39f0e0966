#include "tensym/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "tensym/prng.hpp"

namespace tensym {

std::string to_string(BenchRing r) {
    switch (r) {
    case BenchRing::rational: return "rational";
    case BenchRing::i64: return "i64";
    case BenchRing::f64: return "f64";
    }
    return "f64";
}

BenchRing bench_ring_from_string(const std::string& s) {
    if (s == "rational") return BenchRing::rational;
    if (s == "i64") return BenchRing::i64;
    if (s == "f64") return BenchRing::f64;
    throw ParseError("bench: unknown ring '" + s + "' (want rational, i64 or f64)");
}

namespace {

template <typename S>
RingMatrix<S> random_matrix(std::size_t n, SplitMix64& rng) {
    RingMatrix<S> m(n, n);
    for (S& x : m.data()) {
        if constexpr (std::is_same_v<S, double>)
            x = 2.0 * rng.next_unit() - 1.0;
        else
            x = S(rng.next_int(-9, 9));
    }
    return m;
}

template <typename S>
BenchRow bench_cell(std::size_t size, const std::string& method, std::size_t cutoff,
                    const BenchConfig& cfg) {
    BenchRow row;
    row.size = size;
    row.method = method;
    row.cutoff = method == "naive" ? 0 : cutoff;
    row.ring = cfg.ring;
    row.trials = cfg.trials;

    std::vector<std::uint64_t> times;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        SplitMix64 rng(cfg.seed + 0x9e37 * t + size);
        const RingMatrix<S> a = random_matrix<S>(size, rng);
        const RingMatrix<S> b = random_matrix<S>(size, rng);
        OperationCounter counter;
        const auto start = std::chrono::steady_clock::now();
        RingMatrix<S> c = method == "naive"
                              ? naive_multiply(a, b, counter)
                              : strassen_multiply(a, b, cutoff, counter, cfg.parallel);
        const auto stop = std::chrono::steady_clock::now();
        // Fold one entry into the row so the product cannot be optimized out.
        if (c.rows() > 0 && c.at(0, 0) == c.at(0, 0)) {
            times.push_back(static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
        }
        row.mults = counter.mults;
        row.adds = counter.adds;
    }
    std::sort(times.begin(), times.end());
    row.median_ns = times.empty() ? 0 : times[times.size() / 2];
    return row;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

BenchReport run_bench(const BenchConfig& config) {
    if (config.sizes.empty()) throw ValidationError("bench: no sizes given");
    if (config.trials == 0) throw ValidationError("bench: trials must be at least 1");
    for (const std::string& m : config.methods)
        if (m != "naive" && m != "strassen")
            throw ParseError("bench: unknown method '" + m + "' (want naive or strassen)");

    BenchReport report;
    report.config = config;
    for (const std::string& method : config.methods) {
        const std::vector<std::size_t> cutoffs =
            method == "naive" ? std::vector<std::size_t>{0} : config.cutoffs;
        for (std::size_t cutoff : cutoffs) {
            if (method == "strassen" && cutoff == 0)
                throw ValidationError("bench: strassen cutoff must be at least 1");
            for (std::size_t size : config.sizes) {
                switch (config.ring) {
                case BenchRing::rational:
                    report.rows.push_back(bench_cell<Rational>(size, method, cutoff, config));
                    break;
                case BenchRing::i64:
                    report.rows.push_back(bench_cell<CheckedInt64>(size, method, cutoff, config));
                    break;
                case BenchRing::f64:
                    report.rows.push_back(bench_cell<double>(size, method, cutoff, config));
                    break;
                }
            }
            // Slopes between consecutive power-of-two sizes of this cell row.
            for (std::size_t q = report.rows.size() - config.sizes.size() + 1;
                 q < report.rows.size(); ++q) {
                const BenchRow& lo = report.rows[q - 1];
                const BenchRow& hi = report.rows[q];
                if (!is_pow2(lo.size) || !is_pow2(hi.size) || lo.size >= hi.size) continue;
                if (lo.mults == 0 || lo.median_ns == 0) continue;
                BenchSlope s;
                s.from_size = lo.size;
                s.to_size = hi.size;
                s.method = hi.method;
                s.cutoff = hi.cutoff;
                const double dsize = std::log2(static_cast<double>(hi.size) /
                                               static_cast<double>(lo.size));
                s.mult_slope = std::log2(static_cast<double>(hi.mults) /
                                         static_cast<double>(lo.mults)) /
                               dsize;
                s.time_slope = std::log2(static_cast<double>(hi.median_ns) /
                                         static_cast<double>(lo.median_ns)) /
                               dsize;
                report.slopes.push_back(s);
            }
        }
    }
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "size,method,cutoff,ring,trials,median_ns,mults,adds\n";
    for (const BenchRow& r : report.rows)
        out << r.size << ',' << r.method << ',' << r.cutoff << ',' << to_string(r.ring) << ','
            << r.trials << ',' << r.median_ns << ',' << r.mults << ',' << r.adds << '\n';
    for (const BenchSlope& s : report.slopes)
        out << "# slope " << s.method << " cutoff=" << s.cutoff << " " << s.from_size << "->"
            << s.to_size << " mults=" << s.mult_slope << " time=" << s.time_slope << '\n';
    return out.str();
}

} // namespace tensym
