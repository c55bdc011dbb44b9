#include "sspi/tables.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

namespace sspi {

void validate_configuration(const Configuration& c) {
    if (c.two_n < 4 || c.two_n % 2 != 0)
        throw std::invalid_argument("configuration: two_n must be even and >= 4");
    auto in_range = [&](int v) { return v >= 1 && v <= c.two_n; };
    if (!in_range(c.j_star) || !in_range(c.k_star) || !in_range(c.j_y) || !in_range(c.k_y))
        throw std::invalid_argument("configuration: positions must lie in 1..two_n");
    if (!(c.j_y < c.j_star && c.j_star < c.k_star))
        throw std::invalid_argument("configuration: need j_y < j_star < k_star");
    if (!(c.k_y < c.k_star))
        throw std::invalid_argument("configuration: need k_y < k_star");
    if (c.k_y == c.j_y || c.k_y == c.j_star)
        throw std::invalid_argument("configuration: the four positions must be distinct");
}

Configuration configuration_of(const ElementTable& table) {
    if (table.n() < 2)
        throw std::invalid_argument("a configuration needs n >= 2 (k* must exist)");
    Configuration c{table.two_n(), table.j_star(), table.k_star(), table.j_y(), table.k_y()};
    validate_configuration(c);
    return c;
}

Dyadic prophet_prob(int j, const Configuration& c) {
    if (j < 1 || j > c.two_n) throw std::domain_error("element out of range");
    if (j < c.j_star) return Dyadic(j, j);
    if (j == c.j_star) return Dyadic(j - 1, j - 1);
    if (j < c.k_star) return Dyadic(1, j - 2);
    if (j == c.k_star) return Dyadic(1, j - 3);
    return Dyadic::zero();
}

Dyadic gambler_prob_lb(int j, const Configuration& c) {
    if (j < 1 || j >= c.k_star)
        throw std::domain_error("gambler bound is defined for 1 <= j < k* only (got j = " +
                                std::to_string(j) + ", k* = " + std::to_string(c.k_star) + ")");
    const bool kstar_next = c.k_star == c.j_star + 1;
    if (j <= c.j_star - 2) return Dyadic(3 * j - 1, j + 2);
    if (j == c.j_star - 1) {
        if (kstar_next) return Dyadic(4 * j, j + 2);
        if (c.j_y == j) return Dyadic(4 * j - 2, j + 2);
        return Dyadic(4 * j - 3, j + 2);
    }
    if (j == c.j_star) return kstar_next ? Dyadic(4, j + 1) : Dyadic(3, j + 1);
    // j* < j < k*
    if (j == c.k_star - 1) return Dyadic(1, j - 2);
    return Dyadic(3, j);
}

Dyadic prophet_mass(const Configuration& c) {
    Dyadic sum = Dyadic::zero();
    for (int j = 1; j <= c.two_n; ++j) sum += prophet_prob(j, c);
    return sum;
}

std::vector<Configuration> enumerate_configs(int two_n) {
    if (two_n < 4 || two_n % 2 != 0)
        throw std::invalid_argument("two_n must be even and >= 4");
    std::vector<Configuration> configs;
    for (int j_star = 2; j_star < two_n; ++j_star)
        for (int k_star = j_star + 1; k_star <= two_n; ++k_star)
            for (int j_y = 1; j_y < j_star; ++j_y)
                for (int k_y = 1; k_y < k_star; ++k_y) {
                    if (k_y == j_y || k_y == j_star) continue;
                    configs.push_back(Configuration{two_n, j_star, k_star, j_y, k_y});
                }
    return configs;
}

PrefixCheck check_prefix_inequality(const Configuration& c) {
    PrefixCheck out;
    Dyadic gambler_sum = Dyadic::zero();
    Dyadic prophet_sum = Dyadic::zero();
    for (int i = 1; i <= c.k_star; ++i) {
        prophet_sum += prophet_prob(i, c);
        if (i < c.k_star) gambler_sum += gambler_prob_lb(i, c);
        if (2 * gambler_sum < prophet_sum) {
            out.pass = false;
            out.first_violation = i;
            return out;
        }
    }
    return out;
}

bool BlockChecks::all() const {
    return termwise_all && (!tail_pair.has_value() || *tail_pair) && star_block;
}

BlockChecks check_block_inequalities(const Configuration& c) {
    BlockChecks report;

    for (int j = 1; j < c.k_star; ++j) {
        if (j == c.j_star) continue; // covered by the star block
        bool ok = 2 * gambler_prob_lb(j, c) >= prophet_prob(j, c);
        report.termwise.emplace_back(j, ok);
        report.termwise_all = report.termwise_all && ok;
    }

    if (c.k_star > c.j_star + 1) {
        Dyadic lhs = 2 * gambler_prob_lb(c.k_star - 1, c);
        Dyadic rhs = prophet_prob(c.k_star, c) + prophet_prob(c.k_star - 1, c);
        report.tail_pair = lhs >= rhs;
        report.tail_pair_equality = lhs == rhs;
    }

    {
        Dyadic lhs = 2 * (gambler_prob_lb(c.j_star - 1, c) + gambler_prob_lb(c.j_star, c));
        Dyadic rhs = prophet_prob(c.j_star - 1, c) + prophet_prob(c.j_star, c);
        report.star_block_absorbs_tail = c.k_star == c.j_star + 1;
        if (report.star_block_absorbs_tail) rhs += prophet_prob(c.k_star, c);
        report.star_block = lhs >= rhs;
        report.star_block_equality = lhs == rhs;
    }

    return report;
}

namespace {

void sweep_range(const std::vector<Configuration>& configs, std::size_t begin, std::size_t end,
                 ConfigSweep& out) {
    const Dyadic two(2, 0);
    for (std::size_t i = begin; i < end; ++i) {
        const Configuration& c = configs[i];
        ++out.configurations_checked;
        if (!check_prefix_inequality(c).pass) {
            ++out.prefix_violations;
            if (out.violating.size() < 16) out.violating.push_back(c);
        }
        BlockChecks blocks = check_block_inequalities(c);
        if (!blocks.all()) {
            ++out.block_violations;
            if (out.violating.size() < 16) out.violating.push_back(c);
        }
        if (blocks.tail_pair.has_value()) {
            ++out.tail_pair_checked;
            if (blocks.tail_pair_equality) ++out.tail_pair_equalities;
        }
        if (blocks.star_block_absorbs_tail) {
            ++out.star_absorbing_checked;
            if (blocks.star_block_equality) ++out.star_absorbing_equalities;
        }
        if (prophet_mass(c) != two) {
            ++out.mass_violations;
            if (out.violating.size() < 16) out.violating.push_back(c);
        }
    }
}

void merge(ConfigSweep& into, const ConfigSweep& part) {
    into.configurations_checked += part.configurations_checked;
    into.prefix_violations += part.prefix_violations;
    into.block_violations += part.block_violations;
    into.mass_violations += part.mass_violations;
    into.tail_pair_checked += part.tail_pair_checked;
    into.tail_pair_equalities += part.tail_pair_equalities;
    into.star_absorbing_checked += part.star_absorbing_checked;
    into.star_absorbing_equalities += part.star_absorbing_equalities;
    for (const Configuration& c : part.violating)
        if (into.violating.size() < 16) into.violating.push_back(c);
}

} // namespace

ConfigSweep check_all_configs(int max_two_n, int threads) {
    if (max_two_n < 4 || max_two_n % 2 != 0)
        throw std::invalid_argument("max_two_n must be even and >= 4");
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }

    ConfigSweep total;
    for (int two_n = 4; two_n <= max_two_n; two_n += 2) {
        std::vector<Configuration> configs = enumerate_configs(two_n);
        if (threads <= 1 || configs.size() < 4096) {
            sweep_range(configs, 0, configs.size(), total);
            continue;
        }
        std::vector<ConfigSweep> partial(threads);
        std::vector<std::thread> workers;
        std::size_t per = configs.size() / threads;
        for (int w = 0; w < threads; ++w) {
            std::size_t begin = per * w;
            std::size_t end = w + 1 == threads ? configs.size() : begin + per;
            workers.emplace_back([&, w, begin, end] { sweep_range(configs, begin, end, partial[w]); });
        }
        for (auto& worker : workers) worker.join();
        for (const ConfigSweep& part : partial) merge(total, part);
    }
    return total;
}

} // namespace sspi
