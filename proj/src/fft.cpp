#include "charsum/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace charsum::fft {

void transform_pow2(std::vector<cplx>& a, int sign) {
    std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::domain_error("transform_pow2: size not a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * kTwoPi / static_cast<double>(len);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

namespace {

std::vector<cplx> convolve_pow2(std::vector<cplx> a, std::vector<cplx> b) {
    std::size_t need = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < need) n <<= 1;
    a.resize(n);
    b.resize(n);
    transform_pow2(a, +1);
    transform_pow2(b, +1);
    for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
    transform_pow2(a, -1);
    for (auto& z : a) z /= static_cast<double>(n);
    return a;
}

std::vector<cplx> bluestein(const std::vector<cplx>& x, int sign) {
    std::size_t n = x.size();
    // chirp_m = e(sign * m^2 / (2n)); reduce m^2 mod 2n first
    std::vector<cplx> chirp(n);
    std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t m = 0; m < n; ++m) {
        std::uint64_t t = (static_cast<std::uint64_t>(m) * m) % two_n;
        double ang = sign * kTwoPi * static_cast<double>(t) / static_cast<double>(two_n);
        chirp[m] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<cplx> a(n), b(2 * n - 1);
    for (std::size_t m = 0; m < n; ++m) a[m] = x[m] * chirp[m];
    for (std::size_t m = 0; m < n; ++m) {
        b[n - 1 + m] = std::conj(chirp[m]);
        b[n - 1 - m] = std::conj(chirp[m]);
    }
    std::vector<cplx> c = convolve_pow2(std::move(a), std::move(b));
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = c[n - 1 + k] * chirp[k];
    return out;
}

}  // namespace

std::vector<cplx> dft(const std::vector<cplx>& x, int sign) {
    std::size_t n = x.size();
    if (n == 0) return {};
    if (n == 1) return x;
    if ((n & (n - 1)) == 0) {
        std::vector<cplx> a = x;
        transform_pow2(a, sign);
        return a;
    }
    return bluestein(x, sign);
}

std::vector<cplx> dft_naive(const std::vector<cplx>& x, int sign) {
    std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        KahanCSum acc;
        for (std::size_t m = 0; m < n; ++m) {
            std::uint64_t t = (static_cast<std::uint64_t>(m) * k) % n;
            double ang = sign * kTwoPi * static_cast<double>(t) / static_cast<double>(n);
            acc.add(x[m] * cplx(std::cos(ang), std::sin(ang)));
        }
        out[k] = acc.value();
    }
    return out;
}

}  // namespace charsum::fft
