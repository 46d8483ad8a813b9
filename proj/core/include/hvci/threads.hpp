#pragma once

namespace hvci {

/// Number of threads used by subsequently planned transforms.
void set_fft_threads(int n);

}  // namespace hvci
