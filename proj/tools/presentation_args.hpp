#pragma once

#include <CLI11.hpp>

#include "blab/presentation.hpp"
#include "report.hpp"

namespace blab::cli {

// Either a presentation file or the flags to build one.
struct PresentationArgs {
  std::string file;
  bool empty = false;
  int m = 2;
  int max_rank = 3;
  std::string variant = "maximal";
  int n = 61;
  double theta = kDefaultTheta;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t K = 0;
  std::int64_t r1 = 0;

  void attach(CLI::App* sub);
  Presentation load(const GlobalOptions& g) const;
};

}  // namespace blab::cli
