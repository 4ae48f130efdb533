#pragma once
// Thin FFTW wrapper with a per-size plan cache. Plans are created under a
// mutex (the FFTW planner is not thread safe); execution is concurrent.

#include <complex>
#include <vector>

namespace dp2c::fft {

// in-place c2c transforms on a buffer of length n, no normalization
void forward(std::vector<std::complex<double>>& buf);
void backward(std::vector<std::complex<double>>& buf);

} // namespace dp2c::fft
