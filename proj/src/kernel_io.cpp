#include "etk/kernel_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "etk/errors.hpp"

namespace etk {

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc() ? std::string(buffer, end) : std::string("nan");
}

void write_gram(std::ostream& out, const GramHeader& header, const KernelMatrix& matrix) {
  out << "# etk-gram N=" << matrix.size() << " dataset=" << header.dataset << " kernel=" << header.kernel;
  for (const auto& [key, value] : header.extra) out << ' ' << key << '=' << value;
  out << '\n';
  for (int i = 0; i < matrix.size(); ++i) {
    for (int j = 0; j < matrix.size(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(matrix(i, j));
    }
    out << '\n';
  }
}

KernelMatrix read_gram(std::istream& in, GramHeader* header) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("<gram>", 1, "empty file");
  std::istringstream head(line);
  std::string hash, tag;
  head >> hash >> tag;
  if (hash != "#" || tag != "etk-gram") throw ParseError("<gram>", 1, "missing '# etk-gram' header");
  GramHeader h;
  std::string field;
  while (head >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError("<gram>", 1, "bad header field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "N") {
      h.size = std::stoi(value);
    } else if (key == "dataset") {
      h.dataset = value;
    } else if (key == "kernel") {
      h.kernel = value;
    } else {
      h.extra[key] = value;
    }
  }
  KernelMatrix matrix(h.size);
  for (int i = 0; i < h.size; ++i) {
    if (!std::getline(in, line)) throw ParseError("<gram>", i + 2, "missing row");
    std::istringstream row(line);
    for (int j = 0; j < h.size; ++j) {
      std::string token;
      if (!(row >> token)) throw ParseError("<gram>", i + 2, "short row");
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("<gram>", i + 2, "bad number '" + token + "'");
      }
      matrix(i, j) = value;
    }
  }
  if (header != nullptr) *header = std::move(h);
  return matrix;
}

void write_feature_vectors(std::ostream& out, std::span<const FeatureVector> features,
                           std::span<const int> classes) {
  for (std::size_t g = 0; g < features.size(); ++g) {
    out << g << ' ' << (g < classes.size() ? classes[g] : 0);
    const FeatureVector& fv = features[g];
    for (std::size_t h = 0; h < fv.by_height.size(); ++h) {
      for (const auto& [label, count] : fv.by_height[h]) out << ' ' << h << ':' << label << ':' << count;
    }
    out << '\n';
  }
}

}  // namespace etk
