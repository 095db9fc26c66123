#include "qhj/born.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qhj/accumulate.hpp"
#include "qhj/rng.hpp"

namespace qhj {

void validate(const TwoStateWeights& w) {
    if (!(w.p >= 0.0) || !(w.q >= 0.0))
        throw std::invalid_argument("weights: p and q must be >= 0");
    if (std::abs(w.p + w.q - 1.0) > 1e-12)
        throw std::invalid_argument("weights: p + q must equal 1");
}

namespace {

constexpr std::int64_t kMaxN = 1'000'000;

void check_n(std::int64_t n) {
    if (n < 1 || n > kMaxN)
        throw std::invalid_argument("n_measurements must be in [1, 1e6]");
}

} // namespace

BranchDistribution branch_distribution(const TwoStateWeights& w, std::int64_t n) {
    validate(w);
    check_n(n);

    BranchDistribution d;
    d.n_measurements = n;
    d.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);

    if (w.p == 0.0) {
        d.probs[0] = 1.0;
    } else if (w.q == 0.0) {
        d.probs[static_cast<std::size_t>(n)] = 1.0;
    } else {
        const double lp = std::log(w.p), lq = std::log(w.q);
        const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
        KahanSum total;
        for (std::int64_t r = 0; r <= n; ++r) {
            const double lg = lg_n - std::lgamma(static_cast<double>(r) + 1.0) -
                              std::lgamma(static_cast<double>(n - r) + 1.0) +
                              static_cast<double>(r) * lp + static_cast<double>(n - r) * lq;
            d.probs[static_cast<std::size_t>(r)] = std::exp(lg);
            total.add(d.probs[static_cast<std::size_t>(r)]);
        }
        // The terms sum to 1 exactly in exact arithmetic; renormalizing removes
        // the correlated lgamma rounding that otherwise grows with N.
        const double scale = 1.0 / total.value();
        for (auto& pr : d.probs) pr *= scale;
    }

    KahanSum mean_acc;
    for (std::int64_t r = 0; r <= n; ++r)
        mean_acc.add(static_cast<double>(r) / static_cast<double>(n) *
                     d.probs[static_cast<std::size_t>(r)]);
    d.mean_f = mean_acc.value();

    d.central_moments[0] = 1.0;
    for (int m = 1; m <= 4; ++m) {
        KahanSum acc;
        for (std::int64_t r = 0; r <= n; ++r) {
            const double dev = static_cast<double>(r) / static_cast<double>(n) - d.mean_f;
            acc.add(std::pow(dev, m) * d.probs[static_cast<std::size_t>(r)]);
        }
        d.central_moments[static_cast<std::size_t>(m)] = acc.value();
    }
    d.var_f = d.central_moments[2];
    return d;
}

double gf_central_moment(const TwoStateWeights& w, std::int64_t n, int order) {
    validate(w);
    check_n(n);
    if (order < 1 || order > 4)
        throw std::invalid_argument("gf_central_moment: order must be in [1, 4]");

    // Terms c * p^j (p+q)^(n-j); (p d/dp) maps (c, j) -> j*(c, j) + c*(n-j)*(c', j+1).
    // After m applications at most m+1 terms survive. Substituting p+q = 1
    // leaves <r^k> = sum_j c_j p^j with exact integer-coefficient structure.
    auto raw_moment = [&](int m) -> long double {
        std::vector<long double> coeff(static_cast<std::size_t>(m) + 1, 0.0L);
        coeff[0] = 1.0L;
        for (int apply = 0; apply < m; ++apply) {
            std::vector<long double> next(coeff.size(), 0.0L);
            for (std::size_t j = 0; j < coeff.size(); ++j) {
                if (coeff[j] == 0.0L) continue;
                next[j] += coeff[j] * static_cast<long double>(j);
                if (j + 1 < next.size())
                    next[j + 1] += coeff[j] * static_cast<long double>(n - static_cast<std::int64_t>(j));
            }
            coeff = std::move(next);
        }
        long double acc = 0.0L;
        long double p_pow = 1.0L;
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            acc += coeff[j] * p_pow;
            p_pow *= static_cast<long double>(w.p);
        }
        return acc;
    };

    // Central moment of r about <r> = n p, then scaled by N^-order to give f.
    const long double np = static_cast<long double>(n) * static_cast<long double>(w.p);
    long double central = 0.0L;
    long double binom = 1.0L; // C(order, k)
    for (int k = 0; k <= order; ++k) {
        const long double raw = k == 0 ? 1.0L : raw_moment(k);
        long double shift = 1.0L;
        for (int i = 0; i < order - k; ++i) shift *= -np;
        central += binom * raw * shift;
        binom = binom * static_cast<long double>(order - k) / static_cast<long double>(k + 1);
    }
    long double scale = 1.0L;
    for (int i = 0; i < order; ++i) scale /= static_cast<long double>(n);
    return static_cast<double>(central * scale);
}

std::vector<double> enumerate_outcome_probs(const TwoStateWeights& w, int n) {
    validate(w);
    if (n < 1 || n > 20)
        throw std::invalid_argument("enumerate_outcome_probs: n must be in [1, 20]");
    std::vector<double> pow_p(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<double> pow_q(static_cast<std::size_t>(n) + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        pow_p[static_cast<std::size_t>(i)] = pow_p[static_cast<std::size_t>(i - 1)] * w.p;
        pow_q[static_cast<std::size_t>(i)] = pow_q[static_cast<std::size_t>(i - 1)] * w.q;
    }
    std::vector<KahanSum> acc(static_cast<std::size_t>(n) + 1);
    const std::uint64_t total = 1ull << n;
    for (std::uint64_t seq = 0; seq < total; ++seq) {
        const int r = std::popcount(seq);
        acc[static_cast<std::size_t>(r)].add(pow_p[static_cast<std::size_t>(r)] *
                                             pow_q[static_cast<std::size_t>(n - r)]);
    }
    std::vector<double> probs(static_cast<std::size_t>(n) + 1);
    for (std::size_t r = 0; r < probs.size(); ++r) probs[r] = acc[r].value();
    return probs;
}

BranchSimResult simulate_branching(const TwoStateWeights& w, std::int64_t n,
                                   std::int64_t n_sequences, std::uint64_t seed) {
    validate(w);
    check_n(n);
    if (n_sequences < 1000)
        throw std::invalid_argument("simulate_branching: n_sequences must be >= 1000");

    BranchSimResult out;
    out.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    std::int64_t sum_r = 0;
    std::int64_t sum_r2 = 0; // fits: r^2 <= 1e12, n_sequences <= ~1e7
    for (std::int64_t i = 0; i < n_sequences; ++i) {
        std::int64_t r = 0;
        const std::uint64_t base = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n);
        for (std::int64_t j = 0; j < n; ++j)
            if (rng::uniform01(seed, base + static_cast<std::uint64_t>(j)) < w.p) ++r;
        ++out.counts[static_cast<std::size_t>(r)];
        sum_r += r;
        sum_r2 += r * r;
    }

    const double nn = static_cast<double>(n_sequences);
    const double mean_r = static_cast<double>(sum_r) / nn;
    const double var_r = static_cast<double>(sum_r2) / nn - mean_r * mean_r;
    out.mean_f = mean_r / static_cast<double>(n);
    out.var_f = var_r / (static_cast<double>(n) * static_cast<double>(n));

    const auto exact = branch_distribution(w, n);
    double cum_exact = 0.0, cum_emp = 0.0, ks = 0.0;
    for (std::int64_t r = 0; r <= n; ++r) {
        cum_exact += exact.probs[static_cast<std::size_t>(r)];
        cum_emp += static_cast<double>(out.counts[static_cast<std::size_t>(r)]) / nn;
        ks = std::max(ks, std::abs(cum_exact - cum_emp));
    }
    out.ks = ks;
    return out;
}

} // namespace qhj
