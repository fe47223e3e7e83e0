#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace bohmflow::detail {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are made once per (n, sign) on aligned scratch buffers and executed on
// aligned copies so the codelet choice never depends on caller alignment.
struct PlanCache {
    std::mutex mutex;
    std::map<std::pair<int, int>, fftw_plan> plans;

    fftw_plan get(int n, int sign) {
        std::lock_guard lock(mutex);
        auto it = plans.find({n, sign});
        if (it != plans.end()) return it->second;
        auto* a = fftw_alloc_complex(static_cast<size_t>(n));
        auto* b = fftw_alloc_complex(static_cast<size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE);
        fftw_free(a);
        fftw_free(b);
        plans.emplace(std::pair{n, sign}, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [key, p] : plans) fftw_destroy_plan(p);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

struct FftwDeleter {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

std::vector<std::complex<double>> run(std::span<const std::complex<double>> in, int sign) {
    const int n = static_cast<int>(in.size());
    fftw_plan plan = cache().get(n, sign);
    std::unique_ptr<fftw_complex, FftwDeleter> src(fftw_alloc_complex(in.size()));
    std::unique_ptr<fftw_complex, FftwDeleter> dst(fftw_alloc_complex(in.size()));
    std::memcpy(src.get(), in.data(), in.size() * sizeof(fftw_complex));
    fftw_execute_dft(plan, src.get(), dst.get());
    std::vector<std::complex<double>> out(in.size());
    for (size_t i = 0; i < in.size(); ++i) out[i] = {dst.get()[i][0], dst.get()[i][1]};
    return out;
}

} // namespace

std::vector<std::complex<double>> fft_forward(std::span<const std::complex<double>> in) {
    return run(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> fft_backward(std::span<const std::complex<double>> in) {
    return run(in, FFTW_BACKWARD);
}

} // namespace bohmflow::detail
