#ifndef KGRAPH_ALL_HPP_
#define KGRAPH_ALL_HPP_

#include "degree.hpp"
#include "error.hpp"
#include "groupoid.hpp"
#include "io.hpp"
#include "kgraph.hpp"
#include "pi1.hpp"
#include "skeleton.hpp"
#include "smith.hpp"
#include "word.hpp"

#endif  // KGRAPH_ALL_HPP_
