// SPDX-License-Identifier: Apache-2.0
#include "tfa/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace tfa::fft {

namespace {

std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    // Plans are created once per (n, sign) with FFTW_UNALIGNED so the
    // new-array execute interface accepts any caller buffer.
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    std::vector<cplx> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n),
                                   reinterpret_cast<fftw_complex*>(scratch.data()),
                                   reinterpret_cast<fftw_complex*>(scratch.data()),
                                   sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p == nullptr) throw numeric_error("fft: plan creation failed");
    cache.emplace(std::make_pair(n, sign), p);
    return p;
}

}  // namespace

void transform(std::vector<cplx>& x, int sign) {
    if (x.empty()) return;
    fftw_plan p = plan_for(x.size(), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(x.data()),
                     reinterpret_cast<fftw_complex*>(x.data()));
}

}  // namespace tfa::fft
