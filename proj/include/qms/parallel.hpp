// parallel.hpp — OpenMP-backed parallel_for with a serial reference path.
// The serial path is the ground truth the parallel kernels are tested and
// benchmarked against; selection is a process-wide runtime switch.

#pragma once

#include <cstdint>
#include <functional>

namespace qms::parallel {

enum class Mode { Serial, OpenMP };

// Default mode is OpenMP when compiled with it, Serial otherwise.
Mode mode();
void set_mode(Mode m);

// Worker cap; reads LINDBLAD_LAB_THREADS on first use.
int max_threads();

// Runs body(i) for i in [0, n). Iterations must be independent.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace qms::parallel
