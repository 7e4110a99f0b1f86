#pragma once

#include <stdexcept>
#include <string>

namespace aet {

// Error categories map 1:1 onto CLI exit codes (see README):
//   data_gap_error   -> 2   missing/invalid arithmetic input data
//   spec_parse_error -> 3   malformed product-spec or character string
//   domain_error     -> 4   argument outside the supported domain
struct data_gap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct spec_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace aet
