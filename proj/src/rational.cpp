#include <twistdef/rational.hpp>

#include <limits>
#include <ostream>
#include <stdexcept>

namespace twistdef {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(i128 v)
{
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(i128 v)
{
    const bool neg = v < 0;
    // Two's complement magnitude of INT128_MIN is never reached here: inputs are
    // products of two int64 values plus at most one addition.
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(mag >> 64));
    mpz_class lo(static_cast<unsigned long>(mag & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

} // namespace

Rational::Rational(std::int64_t n) : num_(n), den_(1) {}

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    set_small(n, d);
}

Rational::Rational(const mpq_class &q)
{
    assign_big(q);
}

Rational::Rational(const Rational &other)
    : num_(other.num_), den_(other.den_), big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr)
{
}

Rational &Rational::operator=(const Rational &other)
{
    if (this != &other) {
        num_ = other.num_;
        den_ = other.den_;
        big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
}

Rational Rational::parse(std::string_view text)
{
    auto digits_ok = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view body = text;
    if (!body.empty() && body.front() == '-') body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (text.front() == '-') n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

void Rational::set_small(i128 n, i128 d)
{
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    const i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (fits64(n) && fits64(d)) {
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
        big_.reset();
    } else {
        big_ = std::make_unique<mpq_class>(to_mpz(n), to_mpz(d));
        num_ = 0;
        den_ = 1;
    }
}

void Rational::assign_big(mpq_class q)
{
    big_ = std::make_unique<mpq_class>(std::move(q));
    demote_if_small();
}

void Rational::demote_if_small()
{
    if (!big_) return;
    const mpz_class &n = big_->get_num();
    const mpz_class &d = big_->get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
    }
}

mpq_class Rational::to_mpq() const
{
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

int Rational::sign() const
{
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const
{
    return big_ ? big_->get_den() == 1 : den_ == 1;
}

std::string Rational::to_string() const
{
    if (big_) {
        std::string s = big_->get_num().get_str();
        if (big_->get_den() != 1) s += "/" + big_->get_den().get_str();
        return s;
    }
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
}

Rational &Rational::operator+=(const Rational &o)
{
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            set_small(static_cast<i128>(num_) + o.num_, 1);
        } else {
            set_small(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                      static_cast<i128>(den_) * o.den_);
        }
        return *this;
    }
    assign_big(to_mpq() + o.to_mpq());
    return *this;
}

Rational &Rational::operator-=(const Rational &o)
{
    return *this += -o;
}

Rational &Rational::operator*=(const Rational &o)
{
    if (!big_ && !o.big_) {
        set_small(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign_big(to_mpq() * o.to_mpq());
    return *this;
}

Rational &Rational::operator/=(const Rational &o)
{
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    if (!big_ && !o.big_) {
        set_small(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
        return *this;
    }
    assign_big(to_mpq() / o.to_mpq());
    return *this;
}

Rational Rational::operator-() const
{
    Rational r;
    if (big_) {
        r.assign_big(-*big_);
    } else {
        r.set_small(-static_cast<i128>(num_), den_);
    }
    return r;
}

bool operator==(const Rational &a, const Rational &b)
{
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false; // canonical: a value never has both forms
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b)
{
    if (!a.big_ && !b.big_) {
        const i128 l = static_cast<i128>(a.num_) * b.den_;
        const i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.to_string();
}

} // namespace twistdef
