#pragma once

namespace clusart {

// Number of OpenMP threads the kernels will use (1 without OpenMP).
int max_threads();

// Forces every parallel kernel onto a single thread when `on` is true.
// The kernels are written to produce identical results either way; this
// switch exists so golden runs never depend on the thread count.
void set_deterministic(bool on);
bool deterministic();

void set_num_threads(int n);

}  // namespace clusart
