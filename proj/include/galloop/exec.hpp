// Execution mode for data-parallel kernels. Both modes produce identical
// results; the serial path is the reference.
#pragma once

namespace galloop {

enum class Exec { serial, parallel };

}  // namespace galloop
