//! \file parallel.hpp
//! Minimal deterministic work sharing. Ranges are split into fixed contiguous
//! chunks so results never depend on the number of worker threads; reductions
//! in the solver are restricted to exact operations (max) or run serially.

#ifndef SRHD_PARALLEL_HPP_
#define SRHD_PARALLEL_HPP_

#include <functional>

namespace srhd {

// Thread count from the SRHD_THREADS environment variable, else 1.
int env_thread_count();

// Invokes body(i) for i in [begin, end), distributed over `threads` workers
// in contiguous blocks. threads <= 1 runs inline.
void parallel_for(int begin, int end, int threads,
                  const std::function<void(int)>& body);

}  // namespace srhd

#endif  // SRHD_PARALLEL_HPP_
