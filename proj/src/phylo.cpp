#include "tropca/phylo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <set>

namespace tropca {

PhyloTree::PhyloTree(std::vector<PhyloNode> nodes, int root,
                     bool missing_lengths)
    : nodes_(std::move(nodes)), root_(root), missing_lengths_(missing_lengths) {
  if (root_ < 0 || root_ >= static_cast<int>(nodes_.size()))
    throw std::invalid_argument("PhyloTree: bad root index");
  leaf_count_ = 0;
  std::set<std::string> labels;
  for (const PhyloNode& n : nodes_) {
    if (n.children.empty()) {
      ++leaf_count_;
      if (n.label.empty())
        throw std::invalid_argument("PhyloTree: unlabeled leaf");
      if (!labels.insert(n.label).second)
        throw std::invalid_argument("PhyloTree: duplicate leaf label " + n.label);
    }
  }
}

std::vector<int> PhyloTree::leaves() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(nodes_.size()); ++i)
    if (nodes_[static_cast<size_t>(i)].children.empty()) out.push_back(i);
  return out;
}

std::vector<std::string> PhyloTree::sorted_leaf_labels() const {
  std::vector<std::string> out;
  for (int i : leaves()) out.push_back(node(i).label);
  std::sort(out.begin(), out.end());
  return out;
}

double PhyloTree::depth(int i) const {
  double d = 0.0;
  while (i != root_) {
    d += node(i).length;
    i = node(i).parent;
  }
  return d;
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  PhyloTree parse() {
    skip_space();
    const int root = parse_subtree(-1);
    skip_space();
    expect(';');
    skip_space();
    if (pos_ != text_.size())
      throw NewickError(pos_, "trailing characters after ';'");
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      const PhyloNode& n = nodes_[static_cast<size_t>(i)];
      if (n.children.size() == 1)
        throw NewickError(0, "unary internal vertex");
    }
    return PhyloTree(std::move(nodes_), root, missing_);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw NewickError(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '-' || c == '|' || c == '#';
  }

  std::string parse_label() {
    const size_t start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  double parse_length() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr == begin)
      throw NewickError(pos_, "bad branch length");
    pos_ += static_cast<size_t>(ptr - begin);
    return v;
  }

  int parse_subtree(int parent) {
    skip_space();
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<size_t>(id)].parent = parent;

    if (peek() == '(') {
      expect('(');
      while (true) {
        const int child = parse_subtree(id);
        nodes_[static_cast<size_t>(id)].children.push_back(child);
        skip_space();
        if (peek() == ',') {
          expect(',');
          continue;
        }
        break;
      }
      expect(')');
      skip_space();
      nodes_[static_cast<size_t>(id)].label = parse_label();  // optional
    } else {
      const std::string label = parse_label();
      if (label.empty()) throw NewickError(pos_, "expected leaf label");
      nodes_[static_cast<size_t>(id)].label = label;
    }

    skip_space();
    if (peek() == ':') {
      expect(':');
      nodes_[static_cast<size_t>(id)].length = parse_length();
    } else if (parent >= 0) {
      missing_ = true;  // default 0, flagged
    }
    return id;
  }

  std::string_view text_;
  size_t pos_ = 0;
  std::vector<PhyloNode> nodes_;
  bool missing_ = false;
};

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void emit_node(const PhyloTree& t, int id, std::string& out) {
  const PhyloNode& n = t.node(id);
  if (n.children.empty()) {
    out += n.label;
  } else {
    out += '(';
    for (size_t c = 0; c < n.children.size(); ++c) {
      if (c > 0) out += ',';
      emit_node(t, n.children[c], out);
    }
    out += ')';
    out += n.label;
  }
  if (id != t.root()) {
    out += ':';
    out += format_double(n.length);
  }
}

}  // namespace

PhyloTree parse_newick(std::string_view text) {
  return NewickParser(text).parse();
}

std::string emit_newick(const PhyloTree& t) {
  std::string out;
  emit_node(t, t.root(), out);
  out += ';';
  return out;
}

PairIndexer::PairIndexer(int m) : m_(m) {
  if (m < 2) throw std::invalid_argument("PairIndexer: need m >= 2");
}

int PairIndexer::leaves_for_dimension(int e) {
  const int m = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * e)) / 2.0 + 0.5);
  if (m < 2 || m * (m - 1) / 2 != e)
    throw std::invalid_argument("dimension is not a binomial C(m,2)");
  return m;
}

int PairIndexer::index(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= m_ || j >= m_)
    throw std::invalid_argument("PairIndexer: bad pair");
  if (i > j) std::swap(i, j);
  return i * (2 * m_ - i - 1) / 2 + (j - i - 1);
}

std::pair<int, int> PairIndexer::pair(int idx) const {
  int i = 0;
  while (idx >= m_ - i - 1) {
    idx -= m_ - i - 1;
    ++i;
  }
  return {i, i + 1 + idx};
}

UltraPoint cophenetic_vector(const PhyloTree& t) {
  if (t.leaf_count() < 2)
    throw std::invalid_argument("cophenetic_vector: need >= 2 leaves");
  const std::vector<std::string> order = t.sorted_leaf_labels();
  const int m = static_cast<int>(order.size());
  const PairIndexer pairs(m);
  std::map<std::string, int> pos;
  for (int i = 0; i < m; ++i) pos[order[static_cast<size_t>(i)]] = i;

  std::vector<double> depth(t.nodes().size(), 0.0);
  std::vector<int> post;
  {
    std::vector<int> stack = {t.root()};
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      post.push_back(id);
      for (int c : t.node(id).children) {
        depth[static_cast<size_t>(c)] =
            depth[static_cast<size_t>(id)] + t.node(c).length;
        stack.push_back(c);
      }
    }
    std::reverse(post.begin(), post.end());  // children before parents
  }
  std::vector<double> leaf_depth(static_cast<size_t>(m), 0.0);
  for (int id : post) {
    const PhyloNode& n = t.node(id);
    if (n.children.empty())
      leaf_depth[static_cast<size_t>(pos.at(n.label))] = depth[static_cast<size_t>(id)];
  }

  std::vector<double> vec(static_cast<size_t>(pairs.dim()), 0.0);
  // leaves below each node, merged child by child; cross pairs meet here
  std::vector<std::vector<int>> below(t.nodes().size());
  for (int id : post) {
    const PhyloNode& n = t.node(id);
    if (n.children.empty()) {
      below[static_cast<size_t>(id)] = {pos.at(n.label)};
      continue;
    }
    std::vector<int> acc;
    for (int c : n.children) {
      for (int a : acc) {
        for (int b : below[static_cast<size_t>(c)]) {
          const double d = leaf_depth[static_cast<size_t>(a)] +
                           leaf_depth[static_cast<size_t>(b)] -
                           2.0 * depth[static_cast<size_t>(id)];
          vec[static_cast<size_t>(pairs.index(a, b))] = d;
        }
      }
      acc.insert(acc.end(), below[static_cast<size_t>(c)].begin(),
                 below[static_cast<size_t>(c)].end());
    }
    below[static_cast<size_t>(id)] = std::move(acc);
  }

  UltraPoint u{TropPoint(std::move(vec)), order, false};
  u.ultrametric = is_ultrametric(u.point);
  return u;
}

bool is_ultrametric(std::span<const double> x, double tol) {
  const int m = PairIndexer::leaves_for_dimension(static_cast<int>(x.size()));
  const PairIndexer pairs(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        double a = x[static_cast<size_t>(pairs.index(i, j))];
        double b = x[static_cast<size_t>(pairs.index(i, k))];
        double c = x[static_cast<size_t>(pairs.index(j, k))];
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (c - b > tol) return false;
      }
    }
  }
  return true;
}

bool is_ultrametric(const TropPoint& x, double tol) {
  return is_ultrametric(std::span<const double>(x.coords()), tol);
}

PhyloTree ultrametric_to_tree(std::span<const double> x,
                              std::span<const std::string> leaf_order,
                              double tol) {
  const int m = static_cast<int>(leaf_order.size());
  if (static_cast<int>(x.size()) != m * (m - 1) / 2)
    throw std::invalid_argument("ultrametric_to_tree: wrong dimension");
  if (!is_ultrametric(x, tol))
    throw std::invalid_argument("ultrametric_to_tree: input is not ultrametric");
  for (double v : x)
    if (v <= 0.0)
      throw std::invalid_argument("ultrametric_to_tree: entries must be positive");

  const PairIndexer pairs(m);
  std::vector<PhyloNode> nodes(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) nodes[static_cast<size_t>(i)].label = leaf_order[static_cast<size_t>(i)];

  struct Cluster {
    int node;
    double height;
    int min_leaf;  // index into leaf_order; labels are sorted upstream of us
  };
  std::vector<Cluster> live;
  for (int i = 0; i < m; ++i) live.push_back({i, 0.0, i});
  // complete-linkage table over live clusters
  std::vector<std::vector<double>> dist(static_cast<size_t>(m),
                                        std::vector<double>(static_cast<size_t>(m), 0.0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      dist[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          dist[static_cast<size_t>(j)][static_cast<size_t>(i)] =
              x[static_cast<size_t>(pairs.index(i, j))];

  std::vector<int> ids(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) ids[static_cast<size_t>(i)] = i;  // row of dist

  while (live.size() > 1) {
    // smallest merge distance; near-ties pick the smallest labels
    int bi = -1, bj = -1;
    double best = 0.0;
    for (int i = 0; i < static_cast<int>(live.size()); ++i) {
      for (int j = i + 1; j < static_cast<int>(live.size()); ++j) {
        const double d = dist[static_cast<size_t>(ids[static_cast<size_t>(i)])]
                             [static_cast<size_t>(ids[static_cast<size_t>(j)])];
        if (bi < 0 || d < best - tol) {
          bi = i;
          bj = j;
          best = d;
        } else if (d <= best + tol) {
          auto key = [&](int a, int b) {
            return std::pair(std::min(live[static_cast<size_t>(a)].min_leaf,
                                      live[static_cast<size_t>(b)].min_leaf),
                             std::max(live[static_cast<size_t>(a)].min_leaf,
                                      live[static_cast<size_t>(b)].min_leaf));
          };
          if (key(i, j) < key(bi, bj)) {
            bi = i;
            bj = j;
            best = std::min(best, d);
          }
        }
      }
    }
    const double h = best / 2.0;
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    for (int c : {live[static_cast<size_t>(bi)].node, live[static_cast<size_t>(bj)].node}) {
      nodes[static_cast<size_t>(id)].children.push_back(c);
      nodes[static_cast<size_t>(c)].parent = id;
    }
    const double ha = live[static_cast<size_t>(bi)].height;
    const double hb = live[static_cast<size_t>(bj)].height;
    nodes[static_cast<size_t>(live[static_cast<size_t>(bi)].node)].length = std::max(0.0, h - ha);
    nodes[static_cast<size_t>(live[static_cast<size_t>(bj)].node)].length = std::max(0.0, h - hb);

    const int ra = ids[static_cast<size_t>(bi)];
    const int rb = ids[static_cast<size_t>(bj)];
    for (size_t k = 0; k < live.size(); ++k) {
      const int rk = ids[k];
      dist[static_cast<size_t>(ra)][static_cast<size_t>(rk)] =
          dist[static_cast<size_t>(rk)][static_cast<size_t>(ra)] =
              std::max(dist[static_cast<size_t>(ra)][static_cast<size_t>(rk)],
                       dist[static_cast<size_t>(rb)][static_cast<size_t>(rk)]);
    }
    live[static_cast<size_t>(bi)] = {
        id, h,
        std::min(live[static_cast<size_t>(bi)].min_leaf, live[static_cast<size_t>(bj)].min_leaf)};
    // ra keeps serving as the merged cluster's row
    live.erase(live.begin() + bj);
    ids.erase(ids.begin() + bj);
  }

  // children were appended before their parents; reverse into root-first
  // order so depth propagation in cophenetic_vector stays a single pass
  const int root = live[0].node;
  std::vector<int> order;
  order.reserve(nodes.size());
  std::vector<int> stack = {root};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    for (int c : nodes[static_cast<size_t>(id)].children) stack.push_back(c);
  }
  std::vector<int> remap(nodes.size(), -1);
  for (int newid = 0; newid < static_cast<int>(order.size()); ++newid)
    remap[static_cast<size_t>(order[static_cast<size_t>(newid)])] = newid;
  std::vector<PhyloNode> reordered(nodes.size());
  for (size_t old = 0; old < nodes.size(); ++old) {
    PhyloNode n = nodes[old];
    if (n.parent >= 0) n.parent = remap[static_cast<size_t>(n.parent)];
    for (int& c : n.children) c = remap[static_cast<size_t>(c)];
    reordered[static_cast<size_t>(remap[old])] = std::move(n);
  }
  return PhyloTree(std::move(reordered), remap[static_cast<size_t>(root)], false);
}

PhyloTree ultrametric_to_tree(const UltraPoint& u, double tol) {
  return ultrametric_to_tree(u.point.coords(), u.leaf_order, tol);
}

namespace {

struct CanonPart {
  std::string text;
  std::string min_leaf;
};

CanonPart canon_node(const PhyloTree& t, int id) {
  const PhyloNode& n = t.node(id);
  if (n.children.empty()) return {n.label, n.label};
  std::vector<CanonPart> parts;
  for (int c : n.children) parts.push_back(canon_node(t, c));
  std::sort(parts.begin(), parts.end(),
            [](const CanonPart& a, const CanonPart& b) {
              return a.min_leaf < b.min_leaf;
            });
  std::string text = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) text += ',';
    text += parts[i].text;
  }
  text += ')';
  return {std::move(text), parts[0].min_leaf};
}

}  // namespace

TopologySignature topology_signature(const PhyloTree& t) {
  return {canon_node(t, t.root()).text + ";"};
}

bool has_cherry(const PhyloTree& t, const std::string& a, const std::string& b) {
  const size_t n = t.nodes().size();
  std::vector<int> post;
  {
    std::vector<int> stack = {t.root()};
    while (!stack.empty()) {
      const int id = stack.back();
      stack.pop_back();
      post.push_back(id);
      for (int c : t.node(id).children) stack.push_back(c);
    }
    std::reverse(post.begin(), post.end());
  }
  std::vector<std::set<std::string>> below(n);
  for (int id : post) {
    const PhyloNode& nd = t.node(id);
    if (nd.children.empty()) {
      below[static_cast<size_t>(id)] = {nd.label};
      continue;
    }
    for (int c : nd.children)
      below[static_cast<size_t>(id)].insert(below[static_cast<size_t>(c)].begin(),
                                            below[static_cast<size_t>(c)].end());
    if (below[static_cast<size_t>(id)].size() == 2 &&
        below[static_cast<size_t>(id)].count(a) && below[static_cast<size_t>(id)].count(b))
      return true;
  }
  return false;
}

std::vector<std::pair<TopologySignature, int>> topology_tally(
    std::span<const PhyloTree> trees) {
  std::map<TopologySignature, int> counts;
  for (const PhyloTree& t : trees) counts[topology_signature(t)] += 1;
  std::vector<std::pair<TopologySignature, int>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

std::vector<std::pair<TopologySignature, int>> topology_tally(
    std::span<const UltraPoint> points) {
  if (points.empty()) throw std::invalid_argument("topology_tally: empty input");
  std::vector<PhyloTree> trees;
  trees.reserve(points.size());
  for (const UltraPoint& u : points) {
    if (u.leaf_order != points[0].leaf_order)
      throw std::invalid_argument("topology_tally: mixed leaf sets");
    // topologies are shift-invariant; lift nonpositive representatives
    double lo = u.point[0];
    for (int i = 1; i < u.point.dim(); ++i) lo = std::min(lo, u.point[i]);
    const TropPoint lifted = lo <= 0.0 ? u.point.shifted(1.0 - lo) : u.point;
    trees.push_back(ultrametric_to_tree(lifted.coords(), u.leaf_order));
  }
  return topology_tally(trees);
}

}  // namespace tropca
