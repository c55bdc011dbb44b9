#pragma once

#include "sspi/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sspi {

// One item of the pairwise model: the item takes value y or z, y > z after
// tie-breaking, and a fair coin decides which of the two is the sample and
// which the realization.
struct ItemPair {
    Rational y;
    Rational z;
};

struct Instance {
    std::vector<ItemPair> pairs; // item ids are 1-based positions in this list
    int k = 2;                   // rank of the uniform matroid

    int n() const { return static_cast<int>(pairs.size()); }
};

// Throws std::invalid_argument unless n >= 1, k >= 1, all values nonnegative
// and y >= z per pair (y == z is allowed; the tie order separates them).
void validate_instance(const Instance& instance);

// Input to the tie-breaking order: a value together with the identity that
// breaks ties deterministically.
struct ValueKey {
    Rational value;
    int item = 0;    // 1-based
    bool is_y = true;
};

// The strict total order over all 2n values: value descending, then item id
// ascending, then the y value above the z value. Returns true when a ranks
// strictly above b.
bool ranks_above(const ValueKey& a, const ValueKey& b);

// Sorts keys into rank order (highest first) and returns the permutation of
// input positions. Throws std::invalid_argument on a negative value.
std::vector<std::size_t> tiebreak_order(const std::vector<ValueKey>& keys);

// The 2n values sorted into w_1 > w_2 > ... > w_2n under the tie order,
// together with the pair structure and the four distinguished positions.
// Element indices are 1-based throughout, matching the model's terminology.
// k_star and k_y use the sentinel 2n+1 when n == 1 (there is no second
// z-position); j_star and j_y always exist.
class ElementTable {
public:
    explicit ElementTable(const Instance& instance);

    int n() const { return n_; }
    int two_n() const { return 2 * n_; }
    int sentinel() const { return 2 * n_ + 1; }

    const Rational& value(int element) const { return w_[element - 1]; }
    int pair_of(int element) const { return pair_of_[element - 1]; }
    bool is_y(int element) const { return is_y_[element - 1]; }

    // Inverse maps: the element holding item's y (resp. z) value.
    int y_element(int item) const { return y_element_[item - 1]; }
    int z_element(int item) const { return z_element_[item - 1]; }

    int j_star() const { return j_star_; }
    int k_star() const { return k_star_; }
    int j_y() const { return j_y_; }
    int k_y() const { return k_y_; }

private:
    int n_;
    std::vector<Rational> w_;
    std::vector<int> pair_of_;
    std::vector<bool> is_y_;
    std::vector<int> y_element_;
    std::vector<int> z_element_;
    int j_star_, k_star_, j_y_, k_y_;
};

ElementTable build_element_table(const Instance& instance);

// One of the 2^n sample/realization labelings. mask[i-1] == true means item
// i's sample is y_i (and its realization z_i); each labeling has probability
// weight exactly 2^-n.
struct Assignment {
    std::vector<bool> mask;

    static Assignment from_bits(std::uint64_t bits, int n);
};

// Per-element labels: entry j-1 is true iff element j is an S-element (its
// value was picked as the sample of its item). Exactly one of each pair's two
// elements is an S-element.
std::vector<bool> classify_assignment(const ElementTable& table, const Assignment& assignment);

// --- Instance files ------------------------------------------------------
//
// JSON document: {"k": <int>, "pairs": [[y, z], ...]} where each value is a
// nonnegative integer, a decimal string ("3.25"), or a fraction string
// ("13/4"). Schema details in the README.
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);
std::string instance_to_json(const Instance& instance);

} // namespace sspi
