#include "dp2c/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace dp2c::fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* buf = nullptr;
    int n = 0;
};

std::mutex g_mutex;
std::map<int, PlanPair>& cache() {
    static std::map<int, PlanPair> c;
    return c;
}

PlanPair& plans_for(int n) {
    std::lock_guard<std::mutex> lk(g_mutex);
    auto& c = cache();
    auto it = c.find(n);
    if (it != c.end()) return it->second;
    PlanPair p;
    p.n = n;
    p.buf = fftw_alloc_complex(n);
    if (!p.buf) throw std::bad_alloc();
    p.fwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return c.emplace(n, p).first->second;
}

void run(std::vector<std::complex<double>>& buf, bool forward_dir) {
    const int n = static_cast<int>(buf.size());
    auto& p = plans_for(n);
    // execute on a private buffer so concurrent callers do not collide
    fftw_complex* tmp = fftw_alloc_complex(n);
    if (!tmp) throw std::bad_alloc();
    for (int i = 0; i < n; ++i) {
        tmp[i][0] = buf[i].real();
        tmp[i][1] = buf[i].imag();
    }
    fftw_execute_dft(forward_dir ? p.fwd : p.bwd, tmp, tmp);
    for (int i = 0; i < n; ++i) buf[i] = {tmp[i][0], tmp[i][1]};
    fftw_free(tmp);
}

} // namespace

void forward(std::vector<std::complex<double>>& buf) { run(buf, true); }
void backward(std::vector<std::complex<double>>& buf) { run(buf, false); }

} // namespace dp2c::fft
