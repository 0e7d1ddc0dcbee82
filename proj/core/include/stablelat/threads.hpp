#pragma once

namespace stablelat {

/// Worker count for replicate-parallel loops: STABLELAT_THREADS when the
/// environment variable is set and positive (oversubscription is allowed,
/// so work splitting can be exercised on any machine), hardware threads
/// otherwise. Results never depend on this value; only wall time does.
int effective_threads();

}  // namespace stablelat
