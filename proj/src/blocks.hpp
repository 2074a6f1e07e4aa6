#pragma once
// Finite (degree, grading value) blocks of a graded algebra and the
// matrices of linear maps between them.

#include "algebra.hpp"
#include "courant.hpp"
#include "linalg.hpp"

#include <functional>
#include <map>

namespace ca {

// the spec's grading installed on a table; A defaults to the identity
Grading make_grading(const CourantSpec& s, const TablePtr& t);

struct Block {
    int degree = 0;
    std::vector<int> value;
    std::vector<Key> keys;          // generator order, then weight
    std::map<Key, int> index;
    int dim() const { return int(keys.size()); }
};

// throws std::runtime_error when the grading does not pin the weight down
Block make_block(const TablePtr& t, const Grading& g, int degree, const std::vector<int>& value);

// coordinates of a (block-homogeneous) element; throws on foreign keys
SVec coords(const Block& b, const Element& e);
Element from_coords(const TablePtr& t, const Block& b, const SVec& v);

using LinMap = std::function<Element(const Element&)>;
// columns of f restricted to src, expressed in dst
std::vector<SVec> matrix(const LinMap& f, const TablePtr& t, const Block& src, const Block& dst);

// all grading values with |v|_inf <= radius
std::vector<std::vector<int>> value_window(int rank, int radius);

} // namespace ca
