#include "rotaset/dadic.hpp"

namespace rotaset {

Rat times_d(int d, const Rat& x) {
    Rat y = Rat(d) * x;
    return y - Rat(floor_rat(y));
}

CirclePoint times_d(const DadicContext& ctx, const CirclePoint& x) {
    if (x.is_exact()) {
        QuadraticNumber q = Rat(ctx.d) * x.exact();
        return reduce_mod1(q);
    }
    RatInterval s = scale(Rat(ctx.d), x.box());
    Rat shift{floor_rat(s.lo)};
    RatInterval r{s.lo - shift, s.hi - shift};
    if (r.hi > 1) r = RatInterval{Rat(0), Rat(1)};  // wrapped span: only the trivial enclosure is sound
    return CirclePoint{r};
}

DigitString shift_digits(const DigitString& s) { return s.shifted(); }

namespace {

// Certified sign of Tx - x for a coded point under the shift map: lexicographic
// comparison of the digit stream against its own shift, deepened on demand.
int displacement_sign(SampleSet& s, std::size_t idx, std::size_t cap = 1 << 14) {
    for (std::size_t depth = std::max<std::size_t>(s.depth, 8); depth <= cap; depth *= 2) {
        const DigitString& ds = s.digits_at(idx, depth);
        for (std::size_t j = 0; j + 1 < ds.size(); ++j) {
            if (ds.digits[j + 1] != ds.digits[j]) return ds.digits[j + 1] > ds.digits[j] ? 1 : -1;
        }
        if (!s.deepenable()) break;
    }
    throw DerivationError(DerivationError::Kind::ambiguous_piece,
                          "cannot certify the sign of Tx - x for sample point " + std::to_string(idx));
}

}  // namespace

DerivedPartition derive_partition(SampleSet& sample) {
    const std::size_t N = sample.size();
    if (N == 0) throw std::invalid_argument("empty sample");
    DadicContext ctx(sample.spec.d);

    // Assign each point to its covering interval I_k; d-adic enclosures make
    // this the first digit, but the containment test also covers raw boxes.
    std::vector<int> piece_of(N);
    for (std::size_t i = 0; i < N; ++i) {
        const RatInterval& box = sample.entries[i].enclosure;
        int assigned = -1;
        for (int k = 0; k < ctx.d; ++k) {
            if (box.lo >= ctx.xi(k) && box.hi <= ctx.xi(k + 1)) {
                assigned = k;
                break;
            }
        }
        if (assigned < 0)
            throw DerivationError(DerivationError::Kind::ambiguous_piece,
                                  "enclosure of sample point " + std::to_string(i) +
                                      " straddles a breakpoint; deepen the sample");
        piece_of[i] = assigned;
        if (i > 0 && piece_of[i] < piece_of[i - 1])
            throw DerivationError(DerivationError::Kind::ambiguous_piece,
                                  "piece assignment not monotone in sample order");
    }

    DerivedPartition dp;
    dp.d = ctx.d;
    dp.node_radius = Rat(1, Int(N));
    dp.theta0_radius = dp.node_radius;

    // Occupied intervals in increasing order give the coding; cumulative
    // counts give the empirical-CDF nodes.
    std::vector<std::size_t> count_by_k(ctx.d, 0);
    for (int k : piece_of) ++count_by_k[k];
    std::vector<std::size_t> piece_sizes;
    for (int k = 0; k < ctx.d; ++k) {
        if (count_by_k[k] == 0) continue;
        dp.coding.push_back(k);
        piece_sizes.push_back(count_by_k[k]);
    }
    const int ell = static_cast<int>(dp.coding.size());
    if (ell < 2)
        throw DerivationError(DerivationError::Kind::single_piece,
                              "sample occupies a single interval; a rotational set needs at least two pieces");

    dp.nodes.push_back(Rat(0));
    std::size_t cum = 0;
    for (int i = 0; i < ell - 1; ++i) {
        cum += piece_sizes[i];
        dp.nodes.push_back(Rat(Int(cum), Int(N)));
    }
    dp.nodes.push_back(Rat(1));

    // m = last piece (1-based) on which T moves every point forward; the
    // pieces must split into an increasing prefix and a decreasing suffix.
    std::vector<int> piece_sign(ell, 0);  // +1 all increasing, -1 all decreasing
    std::size_t begin = 0;
    for (int i = 0; i < ell; ++i) {
        std::size_t end = begin + piece_sizes[i];
        int sgn = 0;
        for (std::size_t idx = begin; idx < end; ++idx) {
            int s = displacement_sign(sample, idx);
            if (sgn == 0) sgn = s;
            if (s != sgn)
                throw DerivationError(DerivationError::Kind::piece_straddles_fixed_point,
                                      "piece " + std::to_string(i + 1) + " mixes displacement signs around eta");
        }
        piece_sign[i] = sgn;
        begin = end;
    }
    int m = 0;
    for (int i = 0; i < ell; ++i)
        if (piece_sign[i] > 0) m = i + 1;
    bool prefix_shape = true;
    for (int i = 0; i < ell; ++i) prefix_shape &= (piece_sign[i] > 0) == (i < m);
    if (m == 0 || m == ell || !prefix_shape)
        throw DerivationError(DerivationError::Kind::structure_violation,
                              "displacement signs do not form an increasing prefix and decreasing suffix");
    dp.m = m;
    dp.theta0_hat = Rat(1) - dp.nodes[m];
    return dp;
}

nlohmann::json derived_to_json(const DerivedPartition& dp) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& t : dp.nodes)
        nodes.push_back({{"value", format_rational(t)}, {"radius", format_rational(dp.node_radius)}});
    return {{"d", dp.d},
            {"theta0", {{"value", format_rational(dp.theta0_hat)}, {"radius", format_rational(dp.theta0_radius)}}},
            {"nodes", nodes},
            {"m", dp.m},
            {"coding", dp.coding}};
}

}  // namespace rotaset
