#pragma once

#include <cstddef>
#include <vector>

namespace lucent::detail {

struct SccResult {
  std::vector<std::size_t> component;  // node index -> component id
  std::size_t count = 0;
};

/// Iterative Tarjan over a dense adjacency list. Component ids are assigned
/// in the order components complete, which is deterministic for a fixed
/// adjacency list.
inline SccResult strongly_connected_components(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  SccResult result;
  result.component.assign(n, none);

  std::vector<std::size_t> index(n, none), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;

  struct Frame {
    std::size_t node;
    std::size_t child;
  };
  std::vector<Frame> call;

  for (std::size_t start = 0; start < n; ++start) {
    if (index[start] != none) continue;
    call.push_back({start, 0});
    index[start] = low[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < adj[f.node].size()) {
        std::size_t w = adj[f.node][f.child++];
        if (index[w] == none) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
      } else {
        std::size_t v = f.node;
        if (low[v] == index[v]) {
          std::size_t comp = result.count++;
          while (true) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            result.component[w] = comp;
            if (w == v) break;
          }
        }
        call.pop_back();
        if (!call.empty()) {
          std::size_t parent = call.back().node;
          low[parent] = std::min(low[parent], low[v]);
        }
      }
    }
  }
  return result;
}

}  // namespace lucent::detail
