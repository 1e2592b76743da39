// colouring.hpp -- finite colourings of [N]: the extremal nested power-interval
// colouring, congruence and seeded random colourings, text-file persistence,
// and the two colour liftings used to transfer configurations between scales.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mono/common.hpp"

namespace mono::colourings {

class Colouring {
  public:
    Colouring(i64 n, u64 r, std::vector<std::uint32_t> assignment);

    i64 n() const { return n_; }
    u64 r() const { return r_; }

    // Colour of x, 1 <= x <= n.
    std::uint32_t colour(i64 x) const { return assignment_[static_cast<std::size_t>(x - 1)]; }

    const std::vector<std::uint32_t>& assignment() const { return assignment_; }

    // Elements of colour class j (1-based), ascending.
    std::vector<i64> colour_class(u64 j) const;

    std::vector<std::vector<i64>> all_classes() const;

  private:
    i64 n_;
    u64 r_;
    std::vector<std::uint32_t> assignment_;
};

// Colour j < r covers (n^{1/2^j}, n^{1/2^{j-1}}]; colour r covers the head
// interval [1, n^{1/2^{r-1}}].  Thresholds are iterated integer square roots,
// so boundaries are exact.
Colouring extremal_colouring(i64 n, u64 r);

// Colour of x is 1 + (x mod m).
Colouring congruence_colouring(i64 n, i64 modulus);

// I.i.d. uniform over [r], reproducible from the seed.
Colouring random_colouring(i64 n, u64 r, u64 seed);

// Text format: header "N r", then N lines with one colour index each.
void save_colouring(const Colouring& c, const std::string& path);
Colouring load_colouring(const std::string& path);
Colouring read_colouring(std::istream& in);
void write_colouring(const Colouring& c, std::ostream& out);

struct LiftMode {
    enum Kind { Halving, Modular } kind;
    i64 a = 1;  // Modular only
    i64 b = 1;

    static LiftMode halving() { return {Halving, 1, 1}; }
    static LiftMode modular(i64 a, i64 b) { return {Modular, a, b}; }
};

// Lift c on [N] to a colouring on [out_n].
//   halving:      odd m -> colour r+1, even m -> c(m/2);       out_n <= 2N
//   modular(a,b): a|m   -> c(b*m/a),   otherwise r + (m mod a); b*m/a <= N
// A referenced index beyond N raises usage_error naming the offending m.
// out_n = 0 selects the largest admissible domain.
Colouring lift_colouring(const Colouring& c, const LiftMode& mode, i64 out_n = 0);

}  // namespace mono::colourings
