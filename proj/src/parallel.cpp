// SPDX-License-Identifier: Apache-2.0
#include "smpde/parallel.hpp"

#include <cstdlib>
#include <string>

#include "smpde/error.hpp"

namespace smpde {

std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SMPDE_THREADS"); env && *env) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(env, &pos);
            if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("SMPDE_THREADS must be a positive integer, got '") + env + "'");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace smpde
