#include "hochlab/exactalg/free_complex.hpp"

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {
const std::vector<std::string> kNoLabels;
const std::vector<int> kNoBlocks;
}  // namespace

FreeComplex::FreeComplex(Ring ring, int min_degree, int max_degree)
    : ring_(ring), min_(min_degree), max_(max_degree) {
  if (min_degree > max_degree) throw PreconditionError("FreeComplex: empty window");
}

void FreeComplex::set_basis(int k, std::vector<std::string> labels, std::vector<int> blocks) {
  if (!in_window(k)) throw PreconditionError("FreeComplex::set_basis: degree outside window");
  if (!blocks.empty() && blocks.size() != labels.size())
    throw PreconditionError("FreeComplex::set_basis: block tags do not match labels");
  Degree deg;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!deg.index.emplace(labels[i], i).second)
      throw PreconditionError("FreeComplex::set_basis: duplicate label " + labels[i]);
  deg.labels = std::move(labels);
  deg.blocks = std::move(blocks);
  degrees_[k] = std::move(deg);
}

const FreeComplex::Degree* FreeComplex::find(int k) const {
  auto it = degrees_.find(k);
  return it == degrees_.end() ? nullptr : &it->second;
}

std::size_t FreeComplex::rank(int k) const {
  const Degree* d = find(k);
  return d ? d->labels.size() : 0;
}

const std::vector<std::string>& FreeComplex::labels(int k) const {
  const Degree* d = find(k);
  return d ? d->labels : kNoLabels;
}

const std::vector<int>& FreeComplex::blocks(int k) const {
  const Degree* d = find(k);
  return d ? d->blocks : kNoBlocks;
}

bool FreeComplex::has_blocks() const {
  for (int k = min_; k <= max_; ++k) {
    const Degree* d = find(k);
    if (d && !d->labels.empty() && d->blocks.empty()) return false;
  }
  return true;
}

std::optional<std::size_t> FreeComplex::index_of(int k, const std::string& label) const {
  const Degree* d = find(k);
  if (!d) return std::nullopt;
  auto it = d->index.find(label);
  if (it == d->index.end()) return std::nullopt;
  return it->second;
}

void FreeComplex::set_differential(int k, SparseMatrix d) {
  if (k <= min_ || k > max_) throw PreconditionError("FreeComplex::set_differential: degree outside window");
  if (d.rows() != rank(k - 1) || d.cols() != rank(k))
    throw PreconditionError("FreeComplex::set_differential: shape mismatch in degree " + std::to_string(k));
  if (d.ring() != ring_) throw PreconditionError("FreeComplex::set_differential: ring mismatch");
  d_[k] = std::move(d);
}

SparseMatrix FreeComplex::differential(int k) const {
  auto it = d_.find(k);
  if (it != d_.end()) return it->second;
  return SparseMatrix(rank(k - 1), rank(k), ring_);
}

const SparseMatrix* FreeComplex::stored_differential(int k) const {
  auto it = d_.find(k);
  return it == d_.end() ? nullptr : &it->second;
}

std::size_t FreeComplex::total_rank() const {
  std::size_t n = 0;
  for (const auto& [k, d] : degrees_) n += d.labels.size();
  return n;
}

std::size_t FreeComplex::nonzeros() const {
  std::size_t n = 0;
  for (const auto& [k, d] : d_) n += d.nonzeros();
  return n;
}

void FreeComplex::validate() const {
  for (const auto& [k, d] : d_) {
    if (d.rows() != rank(k - 1) || d.cols() != rank(k))
      throw InvariantError("FreeComplex: shape mismatch in degree " + std::to_string(k));
  }
  for (int k = min_ + 2; k <= max_; ++k) {
    const SparseMatrix* a = stored_differential(k - 1);
    const SparseMatrix* b = stored_differential(k);
    if (!a || !b) continue;
    if (!((*a) * (*b)).is_zero())
      throw InvariantError("FreeComplex: d^2 != 0 from degree " + std::to_string(k));
  }
}

FreeComplex FreeComplex::direct_sum(const FreeComplex& other) const {
  if (ring_ != other.ring_) throw PreconditionError("direct_sum: ring mismatch");
  FreeComplex s(ring_, std::min(min_, other.min_), std::max(max_, other.max_));
  const bool tagged = has_blocks() && other.has_blocks();
  for (int k = s.min_; k <= s.max_; ++k) {
    std::vector<std::string> names;
    std::vector<int> tags;
    for (const auto& l : labels(k)) names.push_back("0:" + l);
    for (const auto& l : other.labels(k)) names.push_back("1:" + l);
    if (tagged) {
      tags = blocks(k);
      const auto& t2 = other.blocks(k);
      tags.insert(tags.end(), t2.begin(), t2.end());
    }
    s.set_basis(k, std::move(names), std::move(tags));
  }
  for (int k = s.min_ + 1; k <= s.max_; ++k) {
    SparseMatrix d(s.rank(k - 1), s.rank(k), ring_);
    const std::size_t r0 = rank(k - 1), c0 = rank(k);
    if (const SparseMatrix* a = stored_differential(k))
      for (std::size_t i = 0; i < a->rows(); ++i)
        for (const auto& [j, v] : a->row(i)) d.set(i, j, v);
    if (const SparseMatrix* b = other.stored_differential(k))
      for (std::size_t i = 0; i < b->rows(); ++i)
        for (const auto& [j, v] : b->row(i)) d.set(r0 + i, c0 + j, v);
    s.set_differential(k, std::move(d));
  }
  return s;
}

}  // namespace hochlab
