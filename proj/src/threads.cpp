#include "stbc/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace stbc {

unsigned resolve_threads(unsigned requested) {
    unsigned n = requested;
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    if (const char* cap = std::getenv("STBC_LAB_THREADS")) {
        try {
            unsigned c = static_cast<unsigned>(std::stoul(cap));
            if (c >= 1 && c < n) n = c;
        } catch (...) {
            // unparsable cap is ignored
        }
    }
    return n;
}

}  // namespace stbc
