#include "sspi/core.hpp"

#include "sspi/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sspi {

void validate_instance(const Instance& instance) {
    if (instance.pairs.empty()) throw std::invalid_argument("instance needs at least one pair");
    if (instance.k < 1) throw std::invalid_argument("rank k must be positive");
    for (std::size_t i = 0; i < instance.pairs.size(); ++i) {
        const ItemPair& p = instance.pairs[i];
        if (p.y < 0 || p.z < 0)
            throw std::invalid_argument("pair " + std::to_string(i + 1) + ": values must be nonnegative");
        if (p.y < p.z)
            throw std::invalid_argument("pair " + std::to_string(i + 1) + ": y must be >= z");
    }
}

bool ranks_above(const ValueKey& a, const ValueKey& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.item != b.item) return a.item < b.item;
    return a.is_y && !b.is_y;
}

std::vector<std::size_t> tiebreak_order(const std::vector<ValueKey>& keys) {
    for (const ValueKey& k : keys)
        if (k.value < 0) throw std::invalid_argument("values must be nonnegative");
    std::vector<std::size_t> order(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ranks_above(keys[a], keys[b]); });
    return order;
}

ElementTable::ElementTable(const Instance& instance) : n_(instance.n()) {
    validate_instance(instance);

    std::vector<ValueKey> keys;
    keys.reserve(2 * static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) {
        keys.push_back(ValueKey{instance.pairs[i - 1].y, i, true});
        keys.push_back(ValueKey{instance.pairs[i - 1].z, i, false});
    }
    std::vector<std::size_t> order = tiebreak_order(keys);

    w_.reserve(keys.size());
    pair_of_.reserve(keys.size());
    is_y_.reserve(keys.size());
    y_element_.assign(n_, 0);
    z_element_.assign(n_, 0);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const ValueKey& k = keys[order[rank]];
        w_.push_back(k.value);
        pair_of_.push_back(k.item);
        is_y_.push_back(k.is_y);
        (k.is_y ? y_element_ : z_element_)[k.item - 1] = static_cast<int>(rank) + 1;
    }

    j_star_ = k_star_ = sentinel();
    for (int j = 1; j <= two_n(); ++j) {
        if (is_y_[j - 1]) continue;
        if (j_star_ == sentinel()) {
            j_star_ = j;
        } else {
            k_star_ = j;
            break;
        }
    }
    j_y_ = y_element_[pair_of_[j_star_ - 1] - 1];
    k_y_ = k_star_ == sentinel() ? sentinel() : y_element_[pair_of_[k_star_ - 1] - 1];
}

ElementTable build_element_table(const Instance& instance) {
    return ElementTable(instance);
}

Assignment Assignment::from_bits(std::uint64_t bits, int n) {
    Assignment a;
    a.mask.resize(n);
    for (int i = 0; i < n; ++i) a.mask[i] = (bits >> i) & 1;
    return a;
}

std::vector<bool> classify_assignment(const ElementTable& table, const Assignment& assignment) {
    if (static_cast<int>(assignment.mask.size()) != table.n())
        throw std::invalid_argument("assignment and table sizes differ");
    std::vector<bool> is_sample(table.two_n());
    for (int j = 1; j <= table.two_n(); ++j) {
        bool y_is_sample = assignment.mask[table.pair_of(j) - 1];
        is_sample[j - 1] = table.is_y(j) == y_is_sample;
    }
    return is_sample;
}

namespace {

Rational value_from_json(const nlohmann::json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(BigInt(v.get<long long>()), 1);
        if (v.is_number_unsigned()) return Rational(BigInt(v.get<unsigned long long>()), 1);
        if (v.is_number_float()) return rational_from_double(v.get<double>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a number or a numeric string");
}

} // namespace

Instance load_instance(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance file: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance file: top level must be an object");
    if (!doc.contains("k")) throw ParseError("instance file: missing field 'k'");
    if (!doc["k"].is_number_integer()) throw ParseError("instance file: field 'k' must be an integer");
    if (!doc.contains("pairs") || !doc["pairs"].is_array())
        throw ParseError("instance file: missing array field 'pairs'");

    Instance instance;
    instance.k = doc["k"].get<int>();
    int index = 0;
    for (const auto& entry : doc["pairs"]) {
        ++index;
        const std::string where = "pairs[" + std::to_string(index) + "]";
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError(where + ": expected [y, z]");
        instance.pairs.push_back(ItemPair{value_from_json(entry[0], where + "[0]"),
                                          value_from_json(entry[1], where + "[1]")});
    }
    try {
        validate_instance(instance);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("instance file: ") + e.what());
    }
    return instance;
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    return load_instance(in);
}

std::string instance_to_json(const Instance& instance) {
    nlohmann::json doc;
    doc["k"] = instance.k;
    doc["pairs"] = nlohmann::json::array();
    for (const ItemPair& p : instance.pairs)
        doc["pairs"].push_back({to_fraction_string(p.y), to_fraction_string(p.z)});
    return doc.dump();
}

} // namespace sspi
