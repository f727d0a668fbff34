#pragma once

#include "mirrorglue/ainf.hpp"

#include <memory>
#include <random>

namespace mgt {

// fixed seeds so failures reproduce
inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

mg::Series random_series(std::mt19937_64& g, int max_terms = 8, bool allow_zero = true);
mg::Q random_q(std::mt19937_64& g, int num_range = 20, int den_max = 6);

// model + sampled instance kept together (AInfInstance holds a pointer to its model)
struct Scenario {
    mg::Model model;
    std::unique_ptr<mg::AInfInstance> inst;
    Scenario(const std::string& name, std::uint64_t seed);
};

} // namespace mgt
