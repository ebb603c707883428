#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace nchrr {

// Errors caused by malformed or inconsistent input data.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Everything else (contract violations, singular matrices, ...).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Ground field of a computation: arbitrary-precision rationals (p == 0)
// or the prime field F_p.
struct Field {
    long long p = 0;

    bool is_rational() const { return p == 0; }
    bool operator==(const Field&) const = default;
    std::string str() const { return p == 0 ? "q" : "fp:" + std::to_string(p); }

    static Field rationals() { return Field{0}; }
    static Field prime(long long p);
};

// Exact scalar: a canonical rational or a residue mod a prime.
// Scalars of different fields never mix; attempting to combine them throws.
class Scalar {
  public:
    Scalar() : field_{0} {}  // rational zero

    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar of_int(long long n, const Field& f);
    static Scalar of_rational(mpq_class q);  // canonicalizes
    // Accepts "n", "-n", "n/d" (rational mode) or a decimal integer (mod p).
    static Scalar parse(const std::string& s, const Field& f);

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    // For rationals only: numerator/denominator as strings.
    const mpq_class& rational() const;
    long long residue() const { return r_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Total bit size of the representation; pivot selection heuristic.
    size_t bit_length() const;

    std::string str() const;

  private:
    void check_same(const Scalar& o) const;

    Field field_;
    mpq_class q_;      // used when field_.p == 0
    long long r_ = 0;  // used when field_.p != 0, always in [0, p)
};

Scalar operator*(long long n, const Scalar& s);

}  // namespace nchrr
