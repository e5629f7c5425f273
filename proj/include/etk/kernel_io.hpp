#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "etk/wl_kernel.hpp"

namespace etk {

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

struct GramHeader {
  int size = 0;
  std::string dataset;
  std::string kernel;
  std::map<std::string, std::string> extra;  // e.g. height, gamma
};

// Text layout:
//   # etk-gram N=<N> dataset=<name> kernel=<mode> [key=value ...]
//   N lines of N space-separated decimals
void write_gram(std::ostream& out, const GramHeader& header, const KernelMatrix& matrix);
KernelMatrix read_gram(std::istream& in, GramHeader* header = nullptr);

// One line per graph: "<graph index> <class> height:label:count ...".
void write_feature_vectors(std::ostream& out, std::span<const FeatureVector> features,
                           std::span<const int> classes);

}  // namespace etk
