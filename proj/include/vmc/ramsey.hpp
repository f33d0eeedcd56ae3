#pragma once

namespace vmc {

struct RamseyValue {
  long long value;
  bool exact;  // false when the value is only the binomial upper bound
};

// Two-color Ramsey numbers: exact on the classical small corner, the
// binomial upper bound beyond it.  The exact flag rides along into every
// certificate built on top of one of these, so downstream checks know
// whether a size requirement was tight or padded.
RamseyValue ramsey(int n, int m);

}  // namespace vmc
