#pragma once

#include <cstddef>
#include <functional>

namespace retcc {

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker thread. Callers must write only to disjoint, index-addressed
// output slots; combined with ordered reductions on the caller side this
// keeps results independent of scheduling.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace retcc
