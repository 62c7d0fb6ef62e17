#include "cfcolor/lacunary.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "cfcolor/errors.hpp"

namespace cfcolor {

LacunarySeq::LacunarySeq(std::vector<Int> terms, Rat lambda)
    : terms_(std::move(terms)), lambda_(std::move(lambda)) {
    require(lambda_ > Rat(1), "lacunarity constant must exceed 1");
    require(!terms_.empty(), "lacunary sequence must be nonempty");
    require(terms_.front() >= 1, "lacunary terms must be positive");
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        require(Rat(terms_[i]) >= lambda_ * Rat(terms_[i - 1]),
                "ratio n_{k+1}/n_k below lambda at k=" + std::to_string(i));
    }
}

LacunarySeq LacunarySeq::from_generator(const std::function<Int(std::size_t)>& gen,
                                        std::size_t count, Rat lambda) {
    std::vector<Int> terms;
    terms.reserve(count);
    for (std::size_t k = 1; k <= count; ++k) terms.push_back(gen(k));
    return LacunarySeq(std::move(terms), std::move(lambda));
}

bool LacunarySeq::has_bounded_gaps() const {
    Rat cap = lambda_ * (lambda_ + Rat(1));
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        if (Rat(terms_[i]) >= cap * Rat(terms_[i - 1])) return false;
    }
    return true;
}

IntervalQ::IntervalQ(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    require(lo < hi, "empty interval");
}

LacunarySeq densify(const LacunarySeq& seq) {
    const Rat& lambda = seq.lambda();
    Rat cap = lambda * (lambda + Rat(1));
    std::vector<Int> out{seq.terms().front()};
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const Int& next = seq.terms()[i];
        while (Rat(next) >= cap * Rat(out.back())) out.push_back((lambda * Rat(out.back())).ceil());
        out.push_back(next);
    }
    return LacunarySeq(std::move(out), lambda);
}

bool ConstructionParams::valid_for(const Rat& lambda) const {
    if (K == 0 || delta.sign() <= 0 || N < 1) return false;
    long k = static_cast<long>(K);
    Rat lk = lambda.pow(k);
    Rat invN(Int(1), N);
    return Rat(k + 1) < lk
        && delta < (lambda * (lambda + Rat(1))).pow(-k)
        && delta * (Rat(1) - Rat(k + 1) / lk) > Rat(2 * k) * invN
        && delta < Rat(1) - Rat(2) * invN;
}

ConstructionParams choose_params(const Rat& lambda) {
    require(lambda > Rat(1), "lacunarity constant must exceed 1");
    ConstructionParams out;
    long k = 1;
    while (!(Rat(k + 1) < lambda.pow(k))) ++k;
    out.K = static_cast<std::size_t>(k);
    out.delta = (lambda * (lambda + Rat(1))).pow(-k) * Rat(1, 2);

    Rat slack = out.delta * (Rat(1) - Rat(k + 1) / lambda.pow(k));
    Int from_measure = (Rat(2 * k) / slack).floor() + 1;
    Int from_window = (Rat(2) / (Rat(1) - out.delta)).floor() + 1;
    out.N = std::max(from_measure, from_window);
    ensure(out.valid_for(lambda), "chosen construction parameters violate their constraints");
    return out;
}

Construction construct(const LacunarySeq& seq, const ConstructionParams& params,
                       std::size_t stages) {
    require(seq.has_bounded_gaps(), "sequence must be densified before construction");
    require(params.valid_for(seq.lambda()), "construction parameters do not fit lambda");
    const std::size_t K = params.K;
    require(seq.size() >= 1 + stages * K, "sequence too short for the requested stages");

    const Rat& delta = params.delta;
    const Rat invN(Int(1), params.N);
    const Rat lambdaK = seq.lambda().pow(static_cast<long>(K));

    Construction out;

    // Stage 0: b_1 = 0, left-aligned inside the admissible window.
    const Rat n1(seq[1]);
    IntervalQ window(invN / n1, (Rat(1) - invN) / n1);
    IntervalQ current(window.lo, window.lo + delta / n1);
    ensure(current.hi < window.hi, "initial interval does not fit its window");
    out.trace.push_back({0, 1, Int(0), {}, {window}, 0, current});

    for (std::size_t stage = 1; stage <= stages; ++stage) {
        const std::size_t t = 1 + (stage - 1) * K;
        const Rat nt(seq[t]);
        const Rat radius = invN / nt;

        StageRecord rec;
        rec.stage = stage;
        rec.start_index = t;
        rec.base = (nt * current.lo).floor();

        for (std::size_t k = t + 1; k <= t + K; ++k) {
            const Rat d(seq[k]);
            // Fractions c/d whose radius-neighborhood meets the open interval.
            Int cmin = ((current.lo - radius) * d).floor() + 1;
            Int cmax = ((current.hi + radius) * d).ceil() - 1;
            ensure(cmax - cmin < 1,
                   "more than one fraction with denominator n_" + std::to_string(k) +
                       " near the working interval");
            if (cmin <= cmax) {
                Rat centre = Rat(cmin) / d;
                rec.removals.push_back({k, cmin, IntervalQ(centre - radius, centre + radius)});
            }
        }

        std::vector<IntervalQ> cuts;
        for (const auto& r : rec.removals) cuts.push_back(r.cut);
        std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
        Rat cursor = current.lo;
        for (const auto& c : cuts) {
            Rat end = std::min(c.lo, current.hi);
            if (cursor < end) rec.components.emplace_back(cursor, end);
            cursor = std::max(cursor, c.hi);
        }
        if (cursor < current.hi) rec.components.emplace_back(cursor, current.hi);
        ensure(!rec.components.empty(), "working interval removed entirely");

        std::size_t best = 0;
        for (std::size_t i = 1; i < rec.components.size(); ++i) {
            if (rec.components[i].length() > rec.components[best].length()) best = i;
        }
        rec.chosen_component = best;
        const IntervalQ& piece = rec.components[best];

        Rat guaranteed = (delta - Rat(static_cast<long>(2 * K)) * invN) /
                         (Rat(static_cast<long>(K + 1)) * nt);
        Rat needed = delta / (lambdaK * nt);
        ensure(guaranteed > needed, "largest-piece bound does not beat the next interval length");
        ensure(piece.length() > needed,
               "largest remaining piece shorter than delta/(lambda^K n_t) at stage " +
                   std::to_string(stage));

        rec.chosen = IntervalQ(piece.lo, piece.lo + delta / Rat(seq[t + K]));
        ensure(piece.contains(rec.chosen), "chosen subinterval escapes its piece");
        current = rec.chosen;
        out.trace.push_back(std::move(rec));
    }

    out.interval = current;
    out.covered = 1 + stages * K;
    return out;
}

bool verify_avoidance(const Rat& x, const LacunarySeq& seq, std::size_t upto, const Int& N) {
    require(upto <= seq.size(), "verification range exceeds the sequence");
    require(N >= 1, "N must be positive");
    const Rat invN(Int(1), N);
    for (std::size_t k = 1; k <= upto; ++k) {
        if (dist_nearest_int(Rat(seq[k]) * x) <= invN) return false;
    }
    return true;
}

namespace {

nlohmann::json interval_json(const IntervalQ& i) {
    return nlohmann::json::array({i.lo.fraction_str(), i.hi.fraction_str()});
}

std::string interval_list(const std::vector<IntervalQ>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += v[i].lo.fraction_str() + ":" + v[i].hi.fraction_str();
    }
    return out;
}

}  // namespace

void write_trace_jsonl(std::ostream& os, const Construction& c) {
    for (const auto& rec : c.trace) {
        nlohmann::json j;
        j["stage"] = rec.stage;
        j["start_index"] = rec.start_index;
        j["base"] = rec.base.get_str();
        auto removals = nlohmann::json::array();
        for (const auto& r : rec.removals) {
            removals.push_back({{"index", r.index},
                                {"numerator", r.numerator.get_str()},
                                {"cut", interval_json(r.cut)}});
        }
        j["removals"] = removals;
        auto comps = nlohmann::json::array();
        for (const auto& comp : rec.components) comps.push_back(interval_json(comp));
        j["components"] = comps;
        j["chosen_component"] = rec.chosen_component;
        j["chosen"] = interval_json(rec.chosen);
        os << j.dump() << '\n';
    }
}

void write_trace_csv(std::ostream& os, const Construction& c) {
    os << "stage,start_index,base,removals,components,chosen_lo,chosen_hi\n";
    for (const auto& rec : c.trace) {
        std::vector<IntervalQ> cuts;
        for (const auto& r : rec.removals) cuts.push_back(r.cut);
        os << rec.stage << ',' << rec.start_index << ',' << rec.base.get_str() << ','
           << interval_list(cuts) << ',' << interval_list(rec.components) << ','
           << rec.chosen.lo.fraction_str() << ',' << rec.chosen.hi.fraction_str() << '\n';
    }
}

}  // namespace cfcolor
