#include "stablelat/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace stablelat {

int effective_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("STABLELAT_THREADS")) {
        try {
            int req = std::stoi(env);
            if (req >= 1) return req;  // may exceed hw: oversubscription is allowed
        } catch (...) {
            // unparsable value: fall through to hardware default
        }
    }
    return hw;
}

}  // namespace stablelat
