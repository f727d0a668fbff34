#include "fixtures.hpp"

namespace mgt {

mg::Q random_q(std::mt19937_64& g, int num_range, int den_max)
{
    std::uniform_int_distribution<int> num(-num_range, num_range), den(1, den_max);
    mg::Q q(num(g), den(g));
    q.canonicalize();
    return q;
}

mg::Series random_series(std::mt19937_64& g, int max_terms, bool allow_zero)
{
    std::uniform_int_distribution<int> nt(allow_zero ? 0 : 1, max_terms);
    mg::Series s;
    int n = nt(g);
    for (int i = 0; i < n; ++i) s += mg::Series::T(random_q(g, 12, 4)) * mg::Series(random_q(g, 9, 3));
    if (!allow_zero && s.is_zero()) s = mg::Series::T(random_q(g, 12, 4));
    return s;
}

Scenario::Scenario(const std::string& name, std::uint64_t seed) : model(mg::load_shipped_model(name))
{
    auto g = rng(seed);
    inst = std::make_unique<mg::AInfInstance>(model, mg::sample_assignment(model, g));
}

} // namespace mgt
