#ifndef KINEX_AGENT_HPP
#define KINEX_AGENT_HPP

#include <cstdint>

namespace kinex {

// One market participant. Goods are unit-quantized, money is divisible,
// and perceived_price is the agent's private notion of what a unit of
// goods is worth. Invariants held by the dynamics: goods >= 0, money >= 0,
// perceived_price > 0.
struct Agent {
  std::int64_t goods = 0;
  double money = 0.0;
  double perceived_price = 0.0;
};

// Wealth values an agent's goods at its own perceived price.
inline double agent_wealth(const Agent& a) {
  return a.money + a.perceived_price * static_cast<double>(a.goods);
}

}  // namespace kinex

#endif  // KINEX_AGENT_HPP
