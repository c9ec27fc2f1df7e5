#include "slst/layer_graph.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

namespace slst {

namespace {

struct GArc {
  int tail;
  int head;
  Cost cost;
  Delay delay;
  int edge_id;
};

// Arc expansion honoring directedness. Arcs entering the root are dropped:
// the construction never creates them and an arborescence cannot use them.
std::vector<GArc> expand_arcs(const Instance& inst, std::span<const Delay> delays) {
  std::vector<GArc> arcs;
  arcs.reserve(inst.edges.size() * (inst.directed ? 1 : 2));
  for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i) {
    const Edge& e = inst.edges[i];
    Delay d = delays.empty() ? e.delay : delays[i];
    if (d < 0) throw Error(ErrorKind::NonPositiveWeight, "negative construction delay");
    if (e.head != inst.root) arcs.push_back({e.tail, e.head, e.cost, d, i});
    if (!inst.directed && e.tail != inst.root) arcs.push_back({e.head, e.tail, e.cost, d, i});
  }
  return arcs;
}

// Vertices reachable from the root along delay-0 arcs only. Exactly these
// need a layer-0 copy.
std::vector<char> zero_closure(const Instance& inst, const std::vector<GArc>& arcs) {
  std::vector<char> in_z(inst.vertex_count, 0);
  std::vector<std::vector<int>> zadj(inst.vertex_count);
  bool any = false;
  for (const GArc& a : arcs)
    if (a.delay == 0) {
      zadj[a.tail].push_back(a.head);
      any = true;
    }
  if (!any) return in_z;
  std::vector<int> stack{inst.root};
  std::vector<char> vis(inst.vertex_count, 0);
  vis[inst.root] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : zadj[u])
      if (!vis[v]) {
        vis[v] = 1;
        in_z[v] = 1;
        stack.push_back(v);
      }
  }
  in_z[inst.root] = 0;
  return in_z;
}

}  // namespace

int LayeredGraph::find_copy(int vertex, Delay layer) const {
  if (vertex < 0 || vertex >= static_cast<int>(copy_index_.size())) return -1;
  const auto& slots = copy_index_[vertex];
  auto it = std::lower_bound(slots.begin(), slots.end(), std::make_pair(layer, -1));
  if (it != slots.end() && it->first == layer) return it->second;
  return -1;
}

int LayeredGraph::find_sink(int terminal) const {
  for (auto [t, idx] : terminal_sinks)
    if (t == terminal) return idx;
  return -1;
}

std::vector<int> LayeredGraph::steiner_terminals() const {
  std::vector<int> out{root};
  for (auto [t, idx] : terminal_sinks) out.push_back(idx);
  return out;
}

LayeredGraph build_layered(const Instance& inst, Delay bound, const LayerOptions& opts) {
  return build_layered(inst, bound, std::span<const Delay>{}, opts);
}

LayeredGraph build_layered(const Instance& inst, Delay bound, std::span<const Delay> delays,
                           const LayerOptions& opts) {
  if (bound < 1) throw Error(ErrorKind::BoundTooSmall, "layer bound must be >= 1");
  if (!delays.empty() && delays.size() != inst.edges.size())
    throw Error(ErrorKind::InvalidInstance, "delay override size mismatch");

  const int n = inst.vertex_count;
  const int r = inst.root;
  auto arcs_g = expand_arcs(inst, delays);
  auto in_z = zero_closure(inst, arcs_g);

  std::vector<int> non_root_terms;
  for (int t : inst.terminals)
    if (t != r) non_root_terms.push_back(t);
  const int t_minus_1 = static_cast<int>(non_root_terms.size());

  // Index layout: root, then (n-1)*bound copies, then sinks, then the
  // materialized layer-0 copies.
  std::vector<int> slot(n, -1);
  {
    int c = 0;
    for (int v = 0; v < n; ++v)
      if (v != r) slot[v] = c++;
  }
  std::vector<int> zslot(n, -1);
  std::int64_t z_count = 0;
  for (int v = 0; v < n; ++v)
    if (in_z[v]) zslot[v] = static_cast<int>(z_count++);
  // budget check in wide arithmetic before any index math can overflow
  const __int128 wide_total = 1 + static_cast<__int128>(n - 1) * bound + t_minus_1 + z_count;
  if (wide_total > opts.vertex_budget) {
    std::int64_t shown = wide_total > std::numeric_limits<std::int64_t>::max()
                             ? std::numeric_limits<std::int64_t>::max()
                             : static_cast<std::int64_t>(wide_total);
    throw Error(ErrorKind::CapExceeded, "layered graph needs " + std::to_string(shown) +
                                            " vertices, budget is " + std::to_string(opts.vertex_budget));
  }
  const std::int64_t copies_base = 1;
  const std::int64_t sinks_base = copies_base + static_cast<std::int64_t>(n - 1) * bound;
  const std::int64_t zero_base = sinks_base + t_minus_1;
  const std::int64_t total_vertices = zero_base + z_count;

  // Arc count estimate before materializing anything.
  std::int64_t est = static_cast<std::int64_t>(t_minus_1) * bound;
  for (int t : non_root_terms)
    if (in_z[t]) ++est;
  for (const GArc& a : arcs_g) {
    if (a.tail == r) {
      if (a.delay <= bound) ++est;
    } else if (bound - a.delay >= 0) {
      est += bound - a.delay + (in_z[a.tail] ? 1 : 0);
    }
  }
  if (est > opts.arc_budget)
    throw Error(ErrorKind::CapExceeded, "layered graph needs " + std::to_string(est) +
                                            " arcs, budget is " + std::to_string(opts.arc_budget));

  auto copy_at = [&](int v, Delay i) -> int {
    assert(v != r);
    if (i == 0) {
      assert(zslot[v] >= 0);
      return static_cast<int>(zero_base + zslot[v]);
    }
    return static_cast<int>(copies_base + static_cast<std::int64_t>(slot[v]) * bound + (i - 1));
  };

  LayeredGraph h;
  h.layer_bound = bound;
  h.root = 0;
  h.vertices.resize(static_cast<std::size_t>(total_vertices));
  h.vertices[0] = {LayerVertex::Kind::Root, r, 0};
  for (int v = 0; v < n; ++v) {
    if (v == r) continue;
    for (Delay i = 1; i <= bound; ++i)
      h.vertices[static_cast<std::size_t>(copy_at(v, i))] = {LayerVertex::Kind::Copy, v, i};
    if (in_z[v]) h.vertices[static_cast<std::size_t>(copy_at(v, 0))] = {LayerVertex::Kind::Copy, v, 0};
  }
  for (int s = 0; s < t_minus_1; ++s)
    h.vertices[static_cast<std::size_t>(sinks_base + s)] = {LayerVertex::Kind::Sink, non_root_terms[s], 0};

  h.arcs.reserve(static_cast<std::size_t>(est));
  for (const GArc& a : arcs_g) {
    if (a.tail == r) {
      if (a.delay <= bound)
        h.arcs.push_back({h.root, copy_at(a.head, a.delay), a.cost, a.edge_id});
      continue;
    }
    Delay lo = in_z[a.tail] ? 0 : 1;
    for (Delay i = lo; i + a.delay <= bound; ++i) {
      if (i == 0 && a.delay == 0 && !in_z[a.head]) continue;  // closure guarantees this never fires
      h.arcs.push_back({copy_at(a.tail, i), copy_at(a.head, a.delay + i), a.cost, a.edge_id});
    }
  }
  for (int s = 0; s < t_minus_1; ++s) {
    int term = non_root_terms[s];
    int sink = static_cast<int>(sinks_base + s);
    for (Delay i = 1; i <= bound; ++i) h.arcs.push_back({copy_at(term, i), sink, 0, -1});
    if (in_z[term]) h.arcs.push_back({copy_at(term, 0), sink, 0, -1});
    h.terminal_sinks.push_back({term, sink});
  }

  h.full_vertex_count = total_vertices;
  h.full_arc_count = static_cast<std::int64_t>(h.arcs.size());
  assert(h.full_arc_count == est);

  if (opts.prune_unreachable) {
    // Drop copies the root cannot reach; root and sinks always stay so that
    // infeasibility shows up as an unreachable sink, not a missing vertex.
    std::vector<std::vector<int>> out_heads(h.vertices.size());
    for (const LayeredArc& a : h.arcs) out_heads[a.tail].push_back(a.head);
    std::vector<char> reach(h.vertices.size(), 0);
    std::vector<int> stack{h.root};
    reach[h.root] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : out_heads[u])
        if (!reach[v]) {
          reach[v] = 1;
          stack.push_back(v);
        }
    }
    std::vector<int> remap(h.vertices.size(), -1);
    std::vector<LayerVertex> kept;
    kept.reserve(h.vertices.size());
    for (std::size_t i = 0; i < h.vertices.size(); ++i) {
      bool keep = reach[i] || h.vertices[i].kind != LayerVertex::Kind::Copy;
      if (keep) {
        remap[i] = static_cast<int>(kept.size());
        kept.push_back(h.vertices[i]);
      }
    }
    std::vector<LayeredArc> kept_arcs;
    kept_arcs.reserve(h.arcs.size());
    for (const LayeredArc& a : h.arcs)
      if (remap[a.tail] >= 0 && remap[a.head] >= 0)
        kept_arcs.push_back({remap[a.tail], remap[a.head], a.cost, a.origin});
    h.vertices = std::move(kept);
    h.arcs = std::move(kept_arcs);
    h.root = 0;
    for (auto& [t, idx] : h.terminal_sinks) idx = remap[idx];
    h.pruned = true;
  }

  h.copy_index_.assign(n, {});
  for (int i = 0; i < h.num_vertices(); ++i) {
    const LayerVertex& lv = h.vertices[i];
    if (lv.kind == LayerVertex::Kind::Copy) h.copy_index_[lv.original].push_back({lv.layer, i});
  }
  for (auto& slots : h.copy_index_) std::sort(slots.begin(), slots.end());
  return h;
}

std::vector<int> project_tree(const LayeredGraph& h, std::span<const int> arc_ids, const Instance& inst) {
  std::set<int> edges;
  for (int id : arc_ids) {
    if (id < 0 || id >= static_cast<int>(h.arcs.size()))
      throw Error(ErrorKind::ForeignArc, "arc id " + std::to_string(id) + " not in the layered graph");
    int origin = h.arcs[static_cast<std::size_t>(id)].origin;
    if (origin < 0) continue;  // terminal connector
    if (origin >= static_cast<int>(inst.edges.size()))
      throw Error(ErrorKind::ForeignArc, "arc origin " + std::to_string(origin) + " not in instance");
    edges.insert(origin);
  }
  return {edges.begin(), edges.end()};
}

std::vector<int> embed_tree(const Instance& inst, const SteinerTree& tree, const LayeredGraph& h,
                            std::span<const Delay> delays) {
  // Accumulated construction delay per tree vertex.
  std::vector<Delay> delay_to(inst.vertex_count, -1);
  std::vector<std::vector<std::pair<int, int>>> children(inst.vertex_count);
  for (auto [u, v] : tree.edges) {
    EdgeAttrs at = lookup_edge(inst, u, v);
    Delay d = delays.empty() ? at.delay : delays[static_cast<std::size_t>(at.edge_id)];
    children[u].push_back({v, static_cast<int>(d)});
  }
  delay_to[tree.root] = 0;
  std::vector<int> stack{tree.root};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, d] : children[u]) {
      delay_to[v] = delay_to[u] + d;
      if (delay_to[v] > h.layer_bound)
        throw Error(ErrorKind::DelayExceeded, "vertex " + std::to_string(v) + " at delay " +
                                                  std::to_string(delay_to[v]) + " > bound " +
                                                  std::to_string(h.layer_bound));
      stack.push_back(v);
    }
  }

  std::unordered_map<std::uint64_t, int> arc_at;
  arc_at.reserve(h.arcs.size() * 2);
  for (int i = 0; i < static_cast<int>(h.arcs.size()); ++i) {
    const LayeredArc& a = h.arcs[static_cast<std::size_t>(i)];
    std::uint64_t key = (static_cast<std::uint64_t>(a.tail) << 32) | static_cast<std::uint32_t>(a.head);
    arc_at.emplace(key, i);  // first arc wins; duplicates are cost ties by construction
  }
  auto arc_between = [&](int tail, int head) -> int {
    auto it = arc_at.find((static_cast<std::uint64_t>(tail) << 32) | static_cast<std::uint32_t>(head));
    if (it == arc_at.end())
      throw Error(ErrorKind::ForeignArc, "expected arc " + std::to_string(tail) + "->" +
                                             std::to_string(head) + " missing from the layered graph");
    return it->second;
  };
  auto vertex_at = [&](int v) -> int {
    if (v == inst.root) return h.root;
    int idx = h.find_copy(v, delay_to[v]);
    if (idx < 0)
      throw Error(ErrorKind::ForeignArc, "no copy of vertex " + std::to_string(v) + " at layer " +
                                             std::to_string(delay_to[v]));
    return idx;
  };

  std::vector<int> out;
  for (auto [u, v] : tree.edges) out.push_back(arc_between(vertex_at(u), vertex_at(v)));
  for (auto [t, sink] : h.terminal_sinks) {
    if (delay_to[t] < 0)
      throw Error(ErrorKind::MissingTerminal, "terminal " + std::to_string(t) + " not in tree", {t});
    out.push_back(arc_between(vertex_at(t), sink));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> topological_order(const LayeredGraph& h) {
  std::vector<int> indeg(h.vertices.size(), 0);
  std::vector<std::vector<int>> out_heads(h.vertices.size());
  for (const LayeredArc& a : h.arcs) {
    ++indeg[a.head];
    out_heads[a.tail].push_back(a.head);
  }
  std::vector<int> order;
  order.reserve(h.vertices.size());
  for (int i = 0; i < h.num_vertices(); ++i)
    if (indeg[i] == 0) order.push_back(i);
  for (std::size_t at = 0; at < order.size(); ++at)
    for (int v : out_heads[static_cast<std::size_t>(order[at])])
      if (--indeg[v] == 0) order.push_back(v);
  if (order.size() != h.vertices.size()) return std::nullopt;
  return order;
}

Cost arcs_cost(const LayeredGraph& h, std::span<const int> arc_ids) {
  Cost c = 0;
  for (int id : arc_ids) c += h.arcs.at(static_cast<std::size_t>(id)).cost;
  return c;
}

std::string layered_to_dot(const LayeredGraph& h) {
  std::ostringstream os;
  os << "digraph H {\n  rankdir=LR;\n";
  for (int i = 0; i < h.num_vertices(); ++i) {
    const LayerVertex& lv = h.vertices[static_cast<std::size_t>(i)];
    os << "  n" << i << " [label=\"";
    switch (lv.kind) {
      case LayerVertex::Kind::Root: os << "r"; break;
      case LayerVertex::Kind::Copy: os << "v" << lv.original << "^" << lv.layer; break;
      case LayerVertex::Kind::Sink: os << "T" << lv.original; break;
    }
    os << "\"";
    if (lv.kind == LayerVertex::Kind::Sink) os << " shape=doublecircle";
    if (lv.kind == LayerVertex::Kind::Root) os << " shape=box";
    os << "];\n";
  }
  for (const LayeredArc& a : h.arcs) {
    os << "  n" << a.tail << " -> n" << a.head << " [label=\"" << a.cost << "\"";
    if (a.origin < 0) os << " style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace slst
