#ifndef STBC_THREADS_HPP
#define STBC_THREADS_HPP

namespace stbc {

// Worker count for parallel sections: `requested` when nonzero, otherwise
// the hardware concurrency, in both cases capped by STBC_LAB_THREADS.
unsigned resolve_threads(unsigned requested);

}  // namespace stbc

#endif
