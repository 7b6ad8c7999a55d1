#pragma once
// Shared basic types: exact rationals, error codes, small helpers.

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace lensgrid {

using Rat = boost::rational<long long>;

// Mathematically correct modulus (result in [0, m)).
inline int mod(long long a, long long m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

inline std::string rat_str(const Rat& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Error codes shared by the whole artifact.  Exit-code mapping lives in the CLI:
// user/input errors exit 1, violated mathematical invariants exit 2.
enum class Err {
    E_SYNTAX,
    E_COORDS,
    E_DUPCELL,
    E_ROW,
    E_COL,
    E_PARAMS,
    E_NOT_COMMUTABLE,
    E_NO_MARK,
    E_BAD_VARIANT,
    E_NOT_DESTAB,
    E_TOOBIG,
    E_ARGS,
    E_NEEDS_SIGNS,
    E_INFEASIBLE,
    E_DECONV,
    E_NONTERMINATION,
    E_NOT_STANDARD,
};

const char* err_name(Err e);

class LensError : public std::runtime_error {
public:
    LensError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

// Raised when a paper-guaranteed identity fails (CLI exit code 2).
class MathInvariantError : public std::runtime_error {
public:
    explicit MathInvariantError(const std::string& msg)
        : std::runtime_error("math invariant violated: " + msg) {}
};

}  // namespace lensgrid
