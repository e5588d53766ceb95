#ifndef TWISTDEF_RATIONAL_HPP
#define TWISTDEF_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace twistdef {

/// Exact rational number, always reduced with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline;
/// anything larger spills into a GMP rational. The two representations
/// are never both live and every public operation re-normalises, so
/// equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n); // NOLINT: implicit from integers is intended
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class &q);

    Rational(const Rational &other);
    Rational(Rational &&) noexcept = default;
    Rational &operator=(const Rational &other);
    Rational &operator=(Rational &&) noexcept = default;
    ~Rational() = default;

    /// Parses "p" or "p/q" (optional leading '-'); throws std::invalid_argument.
    static Rational parse(std::string_view text);

    [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
    [[nodiscard]] bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    [[nodiscard]] int sign() const;
    [[nodiscard]] bool is_integer() const;

    [[nodiscard]] mpq_class to_mpq() const;
    /// "p/q" with "/q" omitted when q == 1.
    [[nodiscard]] std::string to_string() const;

    Rational &operator+=(const Rational &o);
    Rational &operator-=(const Rational &o);
    Rational &operator*=(const Rational &o);
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational &a, const Rational &b);
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

private:
    void assign_big(mpq_class q);
    void demote_if_small();
    void set_small(__int128 n, __int128 d);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

} // namespace twistdef

#endif
