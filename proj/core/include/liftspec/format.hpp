#pragma once

#include <string>

namespace liftspec {

// 17-significant-digit decimal rendering of a double (round-trip exact),
// independent of the global locale. Every text writer in the library goes
// through this so identical values always serialize to identical bytes.
std::string format_double(double v);

}  // namespace liftspec
