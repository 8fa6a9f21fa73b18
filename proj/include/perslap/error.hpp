#pragma once

#include <stdexcept>
#include <string>

namespace perslap {

// Error taxonomy mirrors the CLI exit-code policy: input_error covers bad
// files, malformed arguments and violated input preconditions (CLI exit 2);
// domain_error covers mathematically invalid requests on well-formed input,
// e.g. asking for L_q when K_t has no q-simplices (CLI exit 1).
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace perslap
