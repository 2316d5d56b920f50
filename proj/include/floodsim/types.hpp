#ifndef FLOODSIM_TYPES_HPP
#define FLOODSIM_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace floodsim {

using NodeId = std::uint32_t;
using ObjectId = std::uint32_t;
using QueryId = std::uint64_t;

// Raised for infeasible parameters (degree bounds, replication, bad ids).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace floodsim

#endif  // FLOODSIM_TYPES_HPP
