#include "sspi/oracle.hpp"

#include "sspi/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <thread>

namespace sspi {

namespace {

constexpr int kMaxEnumeratedItems = 62; // mask fits a uint64_t

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Element layout in rank order, reduced to what the mask loop needs.
struct PackedTable {
    int n;
    int two_n;
    std::vector<std::uint8_t> pair0; // 0-based item per element
    std::vector<std::uint8_t> y_bit;

    explicit PackedTable(const ElementTable& table)
        : n(table.n()), two_n(table.two_n()), pair0(table.two_n()), y_bit(table.two_n()) {
        for (int j = 1; j <= two_n; ++j) {
            pair0[j - 1] = static_cast<std::uint8_t>(table.pair_of(j) - 1);
            y_bit[j - 1] = table.is_y(j) ? 1 : 0;
        }
    }
};

// Resolves one assignment mask: positions (0-based, rank order) of the
// realizations and of the threshold sample. A realization at position p
// beats the threshold iff p < t_pos.
struct MaskView {
    std::array<int, 2 * kMaxEnumeratedItems> r_pos;
    int r_count = 0;
    int t_pos = 0;    // position of the k-th largest sample; two_n when n < k
    int eligible = 0; // realizations ranked above the threshold (a prefix of r_pos)

    MaskView(const PackedTable& t, std::uint64_t mask, int k) {
        int s_seen = 0;
        t_pos = t.two_n; // no threshold (n < k): everything is eligible
        for (int j = 0; j < t.two_n; ++j) {
            bool is_sample = (((mask >> t.pair0[j]) & 1) != 0) == (t.y_bit[j] != 0);
            if (is_sample) {
                if (++s_seen == k) t_pos = j;
            } else {
                r_pos[r_count++] = j;
            }
        }
        while (eligible < r_count && r_pos[eligible] < t_pos) ++eligible;
    }

    int prophet_take(int k) const { return std::min(k, r_count); }
    int gambler_take(int k) const { return std::min(k, eligible); }
};

struct CountChunk {
    std::vector<std::uint64_t> prophet;
    std::vector<std::uint64_t> gambler;

    explicit CountChunk(int two_n) : prophet(two_n, 0), gambler(two_n, 0) {}

    void add(const CountChunk& other) {
        for (std::size_t i = 0; i < prophet.size(); ++i) {
            prophet[i] += other.prophet[i];
            gambler[i] += other.gambler[i];
        }
    }
};

void count_range(const PackedTable& t, int k, std::uint64_t begin, std::uint64_t end, CountChunk& counts) {
    for (std::uint64_t mask = begin; mask < end; ++mask) {
        MaskView view(t, mask, k);
        for (int i = 0; i < view.prophet_take(k); ++i) ++counts.prophet[view.r_pos[i]];
        int take = view.gambler_take(k);
        for (int i = view.eligible - take; i < view.eligible; ++i) ++counts.gambler[view.r_pos[i]];
    }
}

} // namespace

ExactResult enumerate_pairwise(const Instance& instance, const OracleOptions& options) {
    validate_instance(instance);
    if (instance.n() > options.max_n || instance.n() > kMaxEnumeratedItems)
        throw ResourceCapError("enumeration over 2^" + std::to_string(instance.n()) +
                               " assignments exceeds the cap (max_n = " +
                               std::to_string(std::min(options.max_n, kMaxEnumeratedItems)) + ")");

    ElementTable table(instance);
    PackedTable packed(table);
    const int two_n = table.two_n();
    const std::uint64_t total = std::uint64_t{1} << instance.n();

    CountChunk counts(two_n);
    int threads = resolve_threads(options.threads);
    if (threads <= 1 || total < (std::uint64_t{1} << 17)) {
        count_range(packed, instance.k, 0, total, counts);
    } else {
        // Contiguous chunks reduced independently; counts are integers, so the
        // combined result does not depend on the partition.
        std::vector<CountChunk> partial(threads, CountChunk(two_n));
        std::vector<std::thread> workers;
        std::uint64_t per = total / threads;
        for (int w = 0; w < threads; ++w) {
            std::uint64_t begin = per * w;
            std::uint64_t end = w + 1 == threads ? total : begin + per;
            workers.emplace_back([&, w, begin, end] { count_range(packed, instance.k, begin, end, partial[w]); });
        }
        for (auto& worker : workers) worker.join();
        for (const CountChunk& chunk : partial) counts.add(chunk);
    }

    ExactResult result;
    result.prophet_accept_prob.reserve(two_n);
    result.gambler_accept_prob.reserve(two_n);
    Rational prophet_sum = 0;
    Rational gambler_sum = 0;
    for (int j = 1; j <= two_n; ++j) {
        result.prophet_accept_prob.emplace_back(BigInt(counts.prophet[j - 1]), instance.n());
        result.gambler_accept_prob.emplace_back(BigInt(counts.gambler[j - 1]), instance.n());
        prophet_sum += table.value(j) * Rational(BigInt(counts.prophet[j - 1]), 1);
        gambler_sum += table.value(j) * Rational(BigInt(counts.gambler[j - 1]), 1);
    }
    Rational weight(BigInt(1), BigInt(1) << instance.n());
    result.prophet_expectation = prophet_sum * weight;
    result.gambler_expectation = gambler_sum * weight;
    if (result.gambler_expectation > 0)
        result.ratio = result.prophet_expectation / result.gambler_expectation;
    else
        result.ratio_unbounded = result.prophet_expectation > 0;
    return result;
}

namespace {

std::uint64_t mask_bits(const Assignment& assignment) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < assignment.mask.size(); ++i)
        if (assignment.mask[i]) bits |= std::uint64_t{1} << i;
    return bits;
}

} // namespace

GamblerGain adversarial_gambler_gain(const ElementTable& table, const Assignment& assignment, int k) {
    if (k < 1) throw std::invalid_argument("rank k must be positive");
    if (static_cast<int>(assignment.mask.size()) != table.n())
        throw std::invalid_argument("assignment and table sizes differ");
    if (table.n() > kMaxEnumeratedItems)
        throw ResourceCapError("assignments over " + std::to_string(kMaxEnumeratedItems) +
                               " items are not representable");
    PackedTable packed(table);
    MaskView view(packed, mask_bits(assignment), k);
    GamblerGain out;
    out.gain = 0;
    int take = view.gambler_take(k);
    for (int i = view.eligible - take; i < view.eligible; ++i) {
        int element = view.r_pos[i] + 1;
        out.accepted_elements.push_back(element);
        out.gain += table.value(element);
    }
    std::sort(out.accepted_elements.begin(), out.accepted_elements.end());
    return out;
}

bool worst_order_check(const ElementTable& table, const Assignment& assignment, int k) {
    if (table.n() > 8) throw ResourceCapError("worst_order_check enumerates n! orders; n must be <= 8");
    if (k < 1) throw std::invalid_argument("rank k must be positive");

    // Scaled integer weights keep the n! loop exact without rational sums.
    BigInt scale = 1;
    for (int j = 1; j <= table.two_n(); ++j)
        scale = boost::multiprecision::lcm(scale, BigInt(denominator(table.value(j))));
    std::vector<BigInt> weight(table.two_n());
    for (int j = 1; j <= table.two_n(); ++j)
        weight[j - 1] = BigInt(numerator(table.value(j)) * (scale / denominator(table.value(j))));

    PackedTable packed(table);
    MaskView view(packed, mask_bits(assignment), k);

    // realization position of each item under this assignment
    std::vector<int> r_of_item(table.n());
    for (int i = 1; i <= table.n(); ++i)
        r_of_item[i - 1] = (assignment.mask[i - 1] ? table.z_element(i) : table.y_element(i)) - 1;

    GamblerGain adversarial = adversarial_gambler_gain(table, assignment, k);
    BigInt adversarial_scaled = 0;
    for (int element : adversarial.accepted_elements) adversarial_scaled += weight[element - 1];

    std::vector<int> order(table.n());
    std::iota(order.begin(), order.end(), 0);
    std::optional<BigInt> min_gain;
    do {
        BigInt gain = 0;
        int accepted = 0;
        for (int item0 : order) {
            if (accepted >= k) break;
            int pos = r_of_item[item0];
            if (pos < view.t_pos) {
                gain += weight[pos];
                ++accepted;
            }
        }
        if (!min_gain || gain < *min_gain) min_gain = gain;
    } while (std::next_permutation(order.begin(), order.end()));

    return min_gain.has_value() && *min_gain == adversarial_scaled;
}

Rational competitive_margin(const Instance& instance, const OracleOptions& options) {
    ExactResult result = enumerate_pairwise(instance, options);
    return 2 * result.gambler_expectation - result.prophet_expectation;
}

} // namespace sspi
