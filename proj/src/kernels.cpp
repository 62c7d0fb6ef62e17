#include "cfcolor/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <vector>

namespace cfcolor {

int threads_from_env() {
    const char* raw = std::getenv("CFCOLOR_THREADS");
    if (raw == nullptr) return 1;
    try {
        int t = std::stoi(raw);
        return t < 1 ? 1 : t;
    } catch (const std::exception&) {
        return 1;
    }
}

// ---------------------------------------------------------------- sweep

namespace {

std::vector<std::uint64_t> sweep_points(std::uint64_t Nmax) {
    std::vector<std::uint64_t> Ns;
    for (std::uint64_t N = 2; N <= Nmax; N *= 2) Ns.push_back(N);
    return Ns;
}

// Merges per-N outcomes in increasing N, so the summary does not depend on
// which thread produced what.
LiminfSummary summarize(const WitnessSearch& search, const std::vector<std::uint64_t>& Ns,
                        std::vector<std::optional<WitnessRecord>>& slots) {
    LiminfSummary out;
    out.bound = search.log_bound();
    for (std::size_t k = 0; k < Ns.size(); ++k) {
        if (!slots[k]) {
            out.skipped.push_back(Ns[k]);
            continue;
        }
        const auto& rec = *slots[k];
        out.max_product_log = out.max_product_log
                                  ? Enclosure::max(*out.max_product_log, rec.product_log)
                                  : rec.product_log;
        out.records.push_back(std::move(*slots[k]));
    }
    out.holds = !out.max_product_log || out.max_product_log->certainly_le(out.bound);
    return out;
}

}  // namespace

LiminfSummary liminf_sweep_serial(const WitnessSearch& search, std::uint64_t Nmax) {
    auto Ns = sweep_points(Nmax);
    std::vector<std::optional<WitnessRecord>> slots(Ns.size());
    for (std::size_t k = 0; k < Ns.size(); ++k) {
        try {
            slots[k] = search.record(Ns[k]);
        } catch (const BelowThresholdN&) {
        }
    }
    return summarize(search, Ns, slots);
}

LiminfSummary liminf_sweep_parallel(const WitnessSearch& search, std::uint64_t Nmax, int threads) {
    auto Ns = sweep_points(Nmax);
    std::vector<std::optional<WitnessRecord>> slots(Ns.size());
    std::vector<std::exception_ptr> errors(Ns.size());
    const auto count = static_cast<std::ptrdiff_t>(Ns.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        try {
            slots[k] = search.record(Ns[k]);
        } catch (const BelowThresholdN&) {
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return summarize(search, Ns, slots);
}

// ---------------------------------------------------------------- brute force

namespace {

BruteForceResult evaluate(const Surd& alpha, const Int& p, const Int& n, bool weighted,
                          mpfr_prec_t prec = Enclosure::kDefaultPrecision) {
    Rat scale = Rat(n) * padic_abs(n, p).value();
    Surd product = scale.sign() == 0 ? Surd(0) : Surd(scale) * dist_nearest_int(Surd(Rat(n)) * alpha);
    Enclosure value = Enclosure::of(product, prec);
    if (weighted) value = value * Enclosure::log_of(n, prec);
    return {n, std::move(product), std::move(value), weighted};
}

}  // namespace

bool strictly_better(const BruteForceResult& a, const BruteForceResult& b) {
    if (!a.weighted) return a.product < b.product;
    if (a.value.certainly_lt(b.value)) return true;
    if (b.value.certainly_lt(a.value)) return false;
    // Overlap: refine before giving up.
    for (mpfr_prec_t prec = 4 * Enclosure::kDefaultPrecision; prec <= 8192; prec *= 4) {
        Enclosure va = Enclosure::of(a.product, prec) * Enclosure::log_of(a.n, prec);
        Enclosure vb = Enclosure::of(b.product, prec) * Enclosure::log_of(b.n, prec);
        if (va.certainly_lt(vb)) return true;
        if (vb.certainly_lt(va)) return false;
    }
    return false;
}

BruteForceResult brute_force_range_serial(const Surd& alpha, const Int& p, std::uint64_t lo,
                                          std::uint64_t hi, bool weighted) {
    require(lo >= 1 && lo <= hi, "empty brute-force range");
    BruteForceResult best = evaluate(alpha, p, Int(lo), weighted);
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
        BruteForceResult cand = evaluate(alpha, p, Int(n), weighted);
        if (strictly_better(cand, best)) best = std::move(cand);
    }
    return best;
}

BruteForceResult brute_force_parallel(const Surd& alpha, const Int& p, std::uint64_t lo,
                                      std::uint64_t hi, bool weighted, int threads) {
    require(lo >= 1 && lo <= hi, "empty brute-force range");
    const std::uint64_t total = hi - lo + 1;
    const std::uint64_t blocks = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(threads) * 8);
    std::vector<std::optional<BruteForceResult>> local(blocks);
    std::vector<std::exception_ptr> errors(blocks);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        std::uint64_t from = lo + total * ub / blocks;
        std::uint64_t to = lo + total * (ub + 1) / blocks - 1;
        try {
            local[b] = brute_force_range_serial(alpha, p, from, to, weighted);
        } catch (...) {
            errors[b] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    // Blocks are merged left to right so ties resolve to the smaller n.
    BruteForceResult best = std::move(*local[0]);
    for (std::uint64_t b = 1; b < blocks; ++b) {
        if (strictly_better(*local[b], best)) best = std::move(*local[b]);
    }
    return best;
}

// ---------------------------------------------------------------- cover

namespace {

void check_point(const CoverSpec& cover, const PrimitiveVector& pt, const Rat& radius, CoverCheck& acc) {
    CoverCell cell = classify(pt, cover.p, cover.k);
    PrimitiveVector centre = cell_center(cell);
    ++acc.checked;
    if (pdist(pt, centre, cover.p) > radius) ++acc.failures;
    // Centers are listed branch 1 by ell, then branch 2 by ell.
    const Int pk = ipow(cover.p, cover.k);
    bool listed = cell.branch == 1
                      ? cell.ell >= 1 && cell.ell <= pk
                      : cover.k > 0 && mpz_divisible_p(cell.ell.get_mpz_t(), cover.p.get_mpz_t()) &&
                            cell.ell <= pk;
    if (!listed) ++acc.outside;
}

}  // namespace

CoverCheck cover_check_serial(const CoverSpec& cover, std::span<const PrimitiveVector> points) {
    CoverCheck acc;
    const Rat radius = cover.radius();
    for (const auto& pt : points) check_point(cover, pt, radius, acc);
    return acc;
}

CoverCheck cover_check_parallel(const CoverSpec& cover, std::span<const PrimitiveVector> points,
                                int threads) {
    const Rat radius = cover.radius();
    std::size_t checked = 0, failures = 0, outside = 0;
    const auto count = static_cast<std::ptrdiff_t>(points.size());

#pragma omp parallel for reduction(+ : checked, failures, outside) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        CoverCheck one;
        check_point(cover, points[static_cast<std::size_t>(i)], radius, one);
        checked += one.checked;
        failures += one.failures;
        outside += one.outside;
    }
    return {checked, failures, outside};
}

}  // namespace cfcolor
