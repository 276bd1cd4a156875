#pragma once

#include <functional>
#include <vector>

#include "qaoakit/graph.hpp"

namespace qaoakit {

/// Streams one canonical representative per isomorphism class of connected
/// graphs on n vertices, sorted by certificate. Labeled-mask generation with
/// certificate deduplication for n <= 7; one-vertex canonical augmentation on
/// top of the (n-1)-vertex classes for larger n.
void enumerate_connected(int n, const std::function<void(const Graph&)>& sink,
                         unsigned threads = 1);
std::vector<Graph> enumerate_connected(int n, unsigned threads = 1);

/// Connected d-regular graphs on n vertices, one canonical representative per
/// class, sorted by certificate. Throws on parity violation (odd n*d).
void enumerate_regular(int n, int d, const std::function<void(const Graph&)>& sink,
                       unsigned threads = 1);
std::vector<Graph> enumerate_regular(int n, int d, unsigned threads = 1);

}  // namespace qaoakit
