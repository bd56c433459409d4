#ifndef BALLOTGEO_HALFINT_HPP
#define BALLOTGEO_HALFINT_HPP

#include <cstdint>
#include <string>

namespace ballotgeo {

/// Exact arithmetic for quantities that are integer multiples of 1/2:
/// ballot distances, graph edge weights, disagreement totals. Stores twice
/// the value so comparisons and sums never touch floating point.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_doubled(std::int64_t d) { return HalfInt(d); }
    static constexpr HalfInt from_int(std::int64_t v) { return HalfInt(2 * v); }

    constexpr std::int64_t doubled() const { return doubled_; }
    constexpr bool is_integer() const { return doubled_ % 2 == 0; }
    constexpr double value() const { return static_cast<double>(doubled_) / 2.0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(a.doubled_ + b.doubled_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(a.doubled_ - b.doubled_); }
    HalfInt& operator+=(HalfInt o) { doubled_ += o.doubled_; return *this; }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.doubled_ == b.doubled_; }
    friend constexpr bool operator!=(HalfInt a, HalfInt b) { return a.doubled_ != b.doubled_; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.doubled_ < b.doubled_; }
    friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.doubled_ <= b.doubled_; }
    friend constexpr bool operator>(HalfInt a, HalfInt b) { return a.doubled_ > b.doubled_; }
    friend constexpr bool operator>=(HalfInt a, HalfInt b) { return a.doubled_ >= b.doubled_; }

    /// "4" for whole values, "4.5" otherwise.
    std::string str() const {
        std::string s = std::to_string(doubled_ / 2);
        if (doubled_ % 2 != 0) {
            if (doubled_ < 0 && doubled_ > -2) s = "-0";
            s += ".5";
        }
        return s;
    }

private:
    explicit constexpr HalfInt(std::int64_t d) : doubled_(d) {}
    std::int64_t doubled_ = 0;
};

} // namespace ballotgeo

#endif
