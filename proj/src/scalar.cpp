#include "nchrr/scalar.hpp"

namespace nchrr {

namespace {

bool probably_prime(long long p) {
    mpz_class z(std::to_string(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

long long mod_norm(long long v, long long p) {
    long long r = v % p;
    return r < 0 ? r + p : r;
}

long long mod_mul(long long a, long long b, long long p) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
}

// Extended Euclid; requires gcd(a, p) == 1.
long long mod_inv(long long a, long long p) {
    long long t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error("not invertible mod p: " + std::to_string(a));
    return mod_norm(t, p);
}

}  // namespace

Field Field::prime(long long p) {
    if (p < 2 || !probably_prime(p)) throw InputError("modulus is not prime: " + std::to_string(p));
    return Field{p};
}

Scalar Scalar::zero(const Field& f) {
    Scalar s;
    s.field_ = f;
    return s;
}

Scalar Scalar::one(const Field& f) { return of_int(1, f); }

Scalar Scalar::of_int(long long n, const Field& f) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational())
        s.q_ = mpq_class(std::to_string(n));
    else
        s.r_ = mod_norm(n, f.p);
    return s;
}

Scalar Scalar::of_rational(mpq_class q) {
    q.canonicalize();
    Scalar s;
    s.field_ = Field::rationals();
    s.q_ = std::move(q);
    return s;
}

Scalar Scalar::parse(const std::string& s, const Field& f) {
    if (s.empty()) throw InputError("empty scalar literal");
    for (size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        bool ok = (c >= '0' && c <= '9') || (c == '-' && k == 0) || (c == '/' && f.is_rational());
        if (!ok) throw InputError("bad scalar literal: '" + s + "'");
    }
    if (f.is_rational()) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw InputError("bad rational literal: '" + s + "'");
        if (q.get_den() == 0) throw InputError("zero denominator in: '" + s + "'");
        return of_rational(std::move(q));
    }
    mpz_class z(s, 10);
    mpz_class r = z % mpz_class(std::to_string(f.p));
    Scalar out;
    out.field_ = f;
    out.r_ = mod_norm(r.get_si(), f.p);
    return out;
}

bool Scalar::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }

bool Scalar::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

const mpq_class& Scalar::rational() const {
    if (!field_.is_rational()) throw Error("residue scalar has no rational value");
    return q_;
}

void Scalar::check_same(const Scalar& o) const {
    if (field_ != o.field_)
        throw InputError("scalars of different fields mixed: " + field_.str() + " vs " + o.field_.str());
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (field_.is_rational())
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : field_.p - r_;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s = *this;
    if (field_.is_rational())
        s.q_ += o.q_;
    else
        s.r_ = mod_norm(r_ + o.r_, field_.p);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s = *this;
    if (field_.is_rational())
        s.q_ *= o.q_;
    else
        s.r_ = mod_mul(r_, o.r_, field_.p);
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero");
    Scalar s = *this;
    if (field_.is_rational())
        s.q_ = 1 / q_;
    else
        s.r_ = mod_inv(r_, field_.p);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

size_t Scalar::bit_length() const {
    if (!field_.is_rational()) return 1;
    return mpz_sizeinbase(q_.get_num().get_mpz_t(), 2) + mpz_sizeinbase(q_.get_den().get_mpz_t(), 2);
}

std::string Scalar::str() const {
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

Scalar operator*(long long n, const Scalar& s) { return Scalar::of_int(n, s.field()) * s; }

}  // namespace nchrr
