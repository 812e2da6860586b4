#include "wavelab/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace wavelab::spectral {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanPair {
public:
    explicit PlanPair(int n) {
        std::vector<double> real(static_cast<size_t>(n));
        std::vector<fftw_complex> cplx(static_cast<size_t>(n / 2 + 1));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        r2c_ = fftw_plan_dft_r2c_1d(n, real.data(), cplx.data(), flags);
        c2r_ = fftw_plan_dft_c2r_1d(n, cplx.data(), real.data(), flags);
        if (r2c_ == nullptr || c2r_ == nullptr) {
            throw std::runtime_error("fftw planning failed");
        }
    }
    ~PlanPair() {
        fftw_destroy_plan(r2c_);
        fftw_destroy_plan(c2r_);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;

    fftw_plan r2c() const { return r2c_; }
    fftw_plan c2r() const { return c2r_; }

private:
    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
};

const PlanPair& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<PlanPair>(n);
    return *slot;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Spectrum forward(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw std::invalid_argument("spectral::forward: need at least two samples");
    std::vector<double> in(samples.begin(), samples.end());
    Spectrum out(static_cast<size_t>(n / 2 + 1));
    fftw_execute_dft_r2c(plans_for(n).r2c(), in.data(), as_fftw(out.data()));
    return out;
}

std::vector<double> inverse(const Spectrum& coeffs, int n) {
    if (static_cast<int>(coeffs.size()) != n / 2 + 1) {
        throw std::invalid_argument("spectral::inverse: spectrum size does not match n");
    }
    // c2r destroys its input.
    Spectrum in = coeffs;
    std::vector<double> out(static_cast<size_t>(n));
    fftw_execute_dft_c2r(plans_for(n).c2r(), as_fftw(in.data()), out.data());
    const double scale = 1.0 / n;
    for (double& v : out) v *= scale;
    return out;
}

Spectrum pad(const Spectrum& coeffs, int n, int m) {
    if (m < n) throw std::invalid_argument("spectral::pad: target smaller than source");
    Spectrum out(static_cast<size_t>(m / 2 + 1), {0.0, 0.0});
    const double scale = static_cast<double>(m) / n;
    for (int j = 0; j < n / 2; ++j) out[j] = coeffs[j] * scale;
    return out;
}

Spectrum truncate(const Spectrum& coeffs, int m, int n) {
    if (m < n) throw std::invalid_argument("spectral::truncate: target larger than source");
    Spectrum out(static_cast<size_t>(n / 2 + 1), {0.0, 0.0});
    const double scale = static_cast<double>(n) / m;
    for (int j = 0; j < n / 2; ++j) out[j] = coeffs[j] * scale;
    return out;
}

}  // namespace wavelab::spectral
