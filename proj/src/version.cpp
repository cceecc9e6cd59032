#include "weakmeas/version.hpp"

#include <cstdio>

namespace weakmeas {

const char* build_id() {
    static char id[17] = {0};
    if (id[0] == '\0')
        std::snprintf(id, sizeof(id), "%08llx",
                      fnv1a(kVersion) & 0xffffffffull);
    return id;
}

} // namespace weakmeas
