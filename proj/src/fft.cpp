#include "qhj/fft.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace qhj::fft {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

// Twiddle table for size n: w[j] = exp(-i 2pi j / n), j in [0, n/2).
// Tables are built once per size so repeated transforms are cheap and
// bit-identical across calls.
const std::vector<cd>& twiddles(std::size_t n) {
    static std::map<std::size_t, std::vector<cd>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cd> w(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        w[j] = cd(std::cos(phase), std::sin(phase));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

void transform(std::vector<cd>& a, bool inverse_dir) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n))
        throw std::invalid_argument("fft: length must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const auto& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cd tw = w[k * stride];
                if (inverse_dir) tw = std::conj(tw);
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * tw;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }

    if (inverse_dir) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

} // namespace

void forward(std::vector<cd>& a) { transform(a, false); }
void inverse(std::vector<cd>& a) { transform(a, true); }

namespace {

void transform_2d(std::vector<cd>& a, std::size_t n, bool inverse_dir) {
    if (a.size() != n * n)
        throw std::invalid_argument("fft: 2d buffer size mismatch");
    std::vector<cd> line(n);
    // rows
    for (std::size_t r = 0; r < n; ++r) {
        std::copy(a.begin() + r * n, a.begin() + (r + 1) * n, line.begin());
        transform(line, inverse_dir);
        std::copy(line.begin(), line.end(), a.begin() + r * n);
    }
    // columns
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) line[r] = a[r * n + c];
        transform(line, inverse_dir);
        for (std::size_t r = 0; r < n; ++r) a[r * n + c] = line[r];
    }
}

} // namespace

void forward_2d(std::vector<cd>& a, std::size_t n) { transform_2d(a, n, false); }
void inverse_2d(std::vector<cd>& a, std::size_t n) { transform_2d(a, n, true); }

} // namespace qhj::fft
