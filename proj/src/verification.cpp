#include "sspi/verification.hpp"

#include "sspi/rng.hpp"

#include <algorithm>
#include <utility>

namespace sspi {

Instance random_instance(int n, int k, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    std::vector<std::uint64_t> values;
    values.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < 2 * n; ++i) {
        if (!values.empty() && rng.next_below(8) == 0) {
            // repeat an earlier value: ties must be routine, not exceptional
            values.push_back(values[rng.next_below(values.size())]);
        } else {
            values.push_back(rng.next_below(1000001));
        }
    }
    for (std::size_t i = values.size() - 1; i > 0; --i)
        std::swap(values[i], values[rng.next_below(i + 1)]);

    Instance instance;
    instance.k = k;
    for (int i = 0; i < n; ++i) {
        std::uint64_t a = values[2 * i], b = values[2 * i + 1];
        instance.pairs.push_back(ItemPair{Rational(BigInt(std::max(a, b)), 1),
                                          Rational(BigInt(std::min(a, b)), 1)});
    }
    return instance;
}

InstanceVerification verify_instance(const Instance& instance, const OracleOptions& options) {
    InstanceVerification out;
    out.exact = enumerate_pairwise(instance, options);
    out.margin = 2 * out.exact.gambler_expectation - out.exact.prophet_expectation;
    out.margin_nonnegative = out.margin >= 0;

    ElementTable table(instance);
    const bool tables_apply = instance.k == 2 && instance.n() >= 2;
    if (tables_apply) out.config = configuration_of(table);

    for (int j = 1; j <= table.two_n(); ++j) {
        ElementComparison cmp;
        cmp.element = j;
        cmp.oracle_prophet = out.exact.prophet_accept_prob[j - 1];
        cmp.oracle_gambler = out.exact.gambler_accept_prob[j - 1];
        if (tables_apply) {
            cmp.table_prophet = prophet_prob(j, *out.config);
            cmp.prophet_equal = cmp.oracle_prophet == *cmp.table_prophet;
            if (j < out.config->k_star) {
                cmp.table_gambler = gambler_prob_lb(j, *out.config);
                cmp.gambler_bounded = cmp.oracle_gambler >= *cmp.table_gambler;
            }
        }
        out.prophet_table_equal = out.prophet_table_equal && cmp.prophet_equal;
        out.gambler_table_bounded = out.gambler_table_bounded && cmp.gambler_bounded;
        out.elements.push_back(std::move(cmp));
    }
    return out;
}

} // namespace sspi
