#include "dendro/complex.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace dendro {

bool natural_less(const std::string& x, const std::string& y) {
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (std::isdigit(static_cast<unsigned char>(x[i])) &&
        std::isdigit(static_cast<unsigned char>(y[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < x.size() && std::isdigit(static_cast<unsigned char>(x[i2]))) ++i2;
      while (j2 < y.size() && std::isdigit(static_cast<unsigned char>(y[j2]))) ++j2;
      unsigned long a = std::stoul(x.substr(i, i2 - i));
      unsigned long b = std::stoul(y.substr(j, j2 - j));
      if (a != b) return a < b;
      if (i2 - i != j2 - j) return i2 - i < j2 - j;
      i = i2;
      j = j2;
    } else {
      if (x[i] != y[j]) return x[i] < y[j];
      ++i;
      ++j;
    }
  }
  return x.size() - i < y.size() - j;
}

AmbientPtr Ambient::make(std::string description, std::vector<Tree> maximal) {
  if (maximal.empty()) throw std::invalid_argument("ambient needs a maximal tree");
  std::shared_ptr<Ambient> a(new Ambient);
  a->description_ = std::move(description);
  std::set<std::string> names;
  for (const auto& t : maximal)
    for (const auto& n : t.names()) names.insert(n);
  a->edges_.assign(names.begin(), names.end());
  std::sort(a->edges_.begin(), a->edges_.end(), natural_less);
  if (a->edges_.size() > static_cast<std::size_t>(kMaxMaskEdges))
    throw std::length_error("ambient has more than 64 edges");
  for (int i = 0; i < int(a->edges_.size()); ++i) a->index_[a->edges_[i]] = i;

  for (const auto& t : maximal) {
    if (t.edge_count() > 24) throw std::length_error("maximal tree too large");
    const EdgeMask full = t.full_mask();
    for (EdgeMask m = 1; m <= full; ++m) {
      auto sub = t.subtree(m);
      if (!sub) continue;
      EdgeMask g = a->global_mask(t, m);
      auto it = a->cells_.find(g);
      if (it != a->cells_.end()) {
        if (!(it->second.tree == *sub))
          throw std::invalid_argument("maximal trees disagree on the cell " +
                                      a->cell_string(g));
        continue;
      }
      a->cells_.emplace(g, Cell{std::move(*sub), {}});
    }
  }
  for (auto& [m, c] : a->cells_) {
    a->order_.push_back(m);
    if (c.tree.is_eta()) continue;
    for (const auto& f : faces(c.tree)) c.faces.push_back(a->global_mask(c.tree, f.mask));
  }
  std::sort(a->order_.begin(), a->order_.end(),
            [&](EdgeMask x, EdgeMask y) { return a->cell_less(x, y); });
  a->maximal_ = std::move(maximal);
  return a;
}

AmbientPtr Ambient::representable(const Tree& t) {
  return make("representable " + canonical_form(t), {t});
}

EdgeMask Ambient::full_mask() const {
  return edges_.size() == 64 ? ~EdgeMask{0} : (bit(int(edges_.size())) - 1);
}

EdgeMask Ambient::global_mask(const Tree& t, EdgeMask local) const {
  EdgeMask g = 0;
  for (EdgeId e = 0; e < t.edge_count(); ++e)
    if (has(local, e)) g |= bit(index_.at(t.name(e)));
  return g;
}

int Ambient::edge_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw std::out_of_range("unknown edge '" + name + "'");
  return it->second;
}

EdgeMask Ambient::mask_of(const std::vector<std::string>& names) const {
  EdgeMask m = 0;
  for (const auto& n : names) m |= bit(edge_index(n));
  return m;
}

std::vector<std::string> Ambient::names_of(EdgeMask m) const {
  std::vector<std::string> out;
  for (int i = 0; i < int(edges_.size()); ++i)
    if (has(m, i)) out.push_back(edges_[i]);
  return out;
}

const Ambient::Cell& Ambient::cell(EdgeMask m) const {
  auto it = cells_.find(m);
  if (it == cells_.end())
    throw std::out_of_range("not a cell of the ambient: " + cell_string(m));
  return it->second;
}

std::vector<EdgeMask> Ambient::subcells(EdgeMask m) const {
  const Tree& t = tree(m);
  std::vector<EdgeMask> out;
  for (EdgeMask local = 1; local <= t.full_mask(); ++local)
    if (t.subtree(local)) out.push_back(global_mask(t, local));
  return out;
}

FaceDescriptor Ambient::face_descriptor(EdgeMask m, EdgeMask face) const {
  const Cell& c = cell(m);
  for (std::size_t i = 0; i < c.faces.size(); ++i)
    if (c.faces[i] == face) return faces(c.tree)[i];
  throw std::invalid_argument(cell_string(face) + " is not a face of " + cell_string(m));
}

std::string Ambient::cell_string(EdgeMask m) const {
  std::string s = "(";
  bool first = true;
  for (const auto& n : names_of(m)) {
    if (!first) s += ",";
    s += n;
    first = false;
  }
  return s + ")";
}

bool Ambient::cell_less(EdgeMask x, EdgeMask y) const {
  int px = std::popcount(x), py = std::popcount(y);
  if (px != py) return px < py;
  // Lexicographic on the ascending index lists.
  while (x != y) {
    int ix = std::countr_zero(x), iy = std::countr_zero(y);
    if (ix != iy) return ix < iy;
    x &= x - 1;
    y &= y - 1;
  }
  return false;
}

// ---------------------------------------------------------------------------

Subcomplex::Subcomplex(AmbientPtr ambient) : ambient_(std::move(ambient)) {
  if (!ambient_) throw std::invalid_argument("null ambient");
}

Subcomplex Subcomplex::full(AmbientPtr ambient) {
  Subcomplex s(ambient);
  s.cells_.insert(ambient->cells().begin(), ambient->cells().end());
  return s;
}

Subcomplex Subcomplex::closure(AmbientPtr ambient, const std::vector<EdgeMask>& generators) {
  Subcomplex s(std::move(ambient));
  for (EdgeMask g : generators) s.add(g);
  return s;
}

Subcomplex Subcomplex::closure(AmbientPtr ambient,
                               const std::vector<std::vector<std::string>>& generators) {
  std::vector<EdgeMask> masks;
  for (const auto& g : generators) masks.push_back(ambient->mask_of(g));
  return closure(std::move(ambient), masks);
}

Subcomplex Subcomplex::from_cells(AmbientPtr ambient, std::set<EdgeMask> cells) {
  Subcomplex s(std::move(ambient));
  for (EdgeMask m : cells) s.ambient_->cell(m);
  s.cells_ = std::move(cells);
  return s;
}

Subcomplex Subcomplex::horn(AmbientPtr ambient, EdgeMask cell, EdgeMask omitted) {
  const auto& fs = ambient->faces_of(cell);
  if (std::find(fs.begin(), fs.end(), omitted) == fs.end())
    throw std::invalid_argument(ambient->cell_string(omitted) + " is not a face of " +
                                ambient->cell_string(cell));
  Subcomplex s(ambient);
  for (EdgeMask f : fs)
    if (f != omitted) s.add(f);
  return s;
}

void Subcomplex::add(EdgeMask m) {
  if (contains(m)) return;
  std::vector<EdgeMask> stack{m};
  ambient_->cell(m);
  cells_.insert(m);
  while (!stack.empty()) {
    EdgeMask c = stack.back();
    stack.pop_back();
    for (EdgeMask f : ambient_->faces_of(c))
      if (cells_.insert(f).second) stack.push_back(f);
  }
}

bool Subcomplex::is_face_closed() const {
  for (EdgeMask c : cells_)
    for (EdgeMask f : ambient_->faces_of(c))
      if (!contains(f)) return false;
  return true;
}

bool Subcomplex::subset_of(const Subcomplex& other) const {
  check_same(other);
  return std::includes(other.cells_.begin(), other.cells_.end(), cells_.begin(),
                       cells_.end());
}

std::vector<EdgeMask> Subcomplex::maximal_cells() const {
  std::vector<EdgeMask> out;
  for (EdgeMask c : cells_) {
    bool maximal = true;
    for (EdgeMask d : cells_)
      if (d != c && (c & ~d) == 0) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [&](EdgeMask x, EdgeMask y) { return ambient_->cell_less(x, y); });
  return out;
}

bool Subcomplex::operator==(const Subcomplex& other) const {
  return ambient_ == other.ambient_ && cells_ == other.cells_;
}

void Subcomplex::check_same(const Subcomplex& other) const {
  if (ambient_ != other.ambient_)
    throw std::invalid_argument("subcomplexes of different ambients");
}

Subcomplex operator|(const Subcomplex& a, const Subcomplex& b) {
  a.check_same(b);
  Subcomplex s = a;
  s.cells_.insert(b.cells_.begin(), b.cells_.end());
  return s;
}

Subcomplex operator&(const Subcomplex& a, const Subcomplex& b) {
  a.check_same(b);
  Subcomplex s(a.ambient_);
  std::set_intersection(a.cells_.begin(), a.cells_.end(), b.cells_.begin(), b.cells_.end(),
                        std::inserter(s.cells_, s.cells_.end()));
  return s;
}

}  // namespace dendro
