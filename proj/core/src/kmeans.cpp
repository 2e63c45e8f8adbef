// Copyright 2026 The Bibliotext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

#include "bibliotext/csv.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/topics.hpp"
#include "bibliotext/utf8.hpp"

namespace bibliotext {

namespace {

constexpr int kMaxLloydIterations = 300;
constexpr double kRelativeTolerance = 1e-6;

double SquaredDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return sum;
}

std::size_t PickIndex(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

// k-means++: first center uniform, the rest drawn proportional to the squared
// distance to the nearest chosen center.
std::vector<std::vector<double>> SeedCenters(
    const std::vector<std::vector<double>>& points, int k, std::mt19937_64& rng) {
  std::vector<std::vector<double>> centers;
  centers.push_back(points[PickIndex(rng, points.size())]);
  std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      nearest[i] = std::min(nearest[i], SquaredDistance(points[i], centers.back()));
      total += nearest[i];
    }
    std::size_t chosen = points.size() - 1;
    if (total > 0.0) {
      const double u = UniformUnit(rng) * total;
      double running = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        running += nearest[i];
        if (running > u) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = PickIndex(rng, points.size());
    }
    centers.push_back(points[chosen]);
  }
  return centers;
}

std::optional<double> ParseDouble(std::string_view text) {
  text = utf8::Trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::vector<int> ClusterEmbeddings(const std::vector<std::vector<double>>& vectors,
                                   int k, std::uint64_t seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "k must be >= 1");
  if (vectors.size() < static_cast<std::size_t>(k)) {
    throw Error(ErrorCode::kTooFewDocs,
                std::to_string(vectors.size()) + " documents for k=" +
                    std::to_string(k));
  }
  const std::size_t dim = vectors.front().size();
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector " + std::to_string(i) + " has dimension " +
                      std::to_string(vectors[i].size()) + ", expected " +
                      std::to_string(dim));
    }
  }

  std::mt19937_64 rng(seed);
  auto centers = SeedCenters(vectors, k, rng);
  std::vector<int> labels(vectors.size(), 0);
  std::vector<double> distance(vectors.size(), 0.0);
  std::vector<bool> reseeded(k, false);
  double previous = std::numeric_limits<double>::infinity();

  for (int it = 0; it < kMaxLloydIterations; ++it) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      int best = 0;
      double best_d = SquaredDistance(vectors[i], centers[0]);
      for (int c = 1; c < k; ++c) {
        const double d = SquaredDistance(vectors[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[i] = best;
      distance[i] = best_d;
      inertia += best_d;
    }

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      ++counts[labels[i]];
      for (std::size_t j = 0; j < dim; ++j) sums[labels[i]][j] += vectors[i][j];
    }
    bool moved_empty = false;
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        for (std::size_t j = 0; j < dim; ++j) {
          centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }
      } else if (!reseeded[c]) {
        // Move an empty cluster onto the point farthest from its center.
        std::size_t far = 0;
        for (std::size_t i = 1; i < vectors.size(); ++i) {
          if (distance[i] > distance[far]) far = i;
        }
        centers[c] = vectors[far];
        distance[far] = 0.0;
        reseeded[c] = true;
        moved_empty = true;
      }
    }

    if (!moved_empty) {
      if (inertia == 0.0) break;
      if (std::isfinite(previous) &&
          std::abs(previous - inertia) / previous < kRelativeTolerance) {
        break;
      }
    }
    previous = inertia;
  }
  return labels;
}

std::vector<std::vector<double>> ParseEmbeddingsCsv(std::string_view text,
                                                    std::size_t rows) {
  if (text.starts_with(utf8::kBom)) text.remove_prefix(utf8::kBom.size());
  const auto parsed = csv::Parse(text, ',', true);
  if (parsed.empty() || parsed[0].fields.empty() ||
      utf8::Trim(parsed[0].fields[0]) != "row_index") {
    throw Error(ErrorCode::kMissingHeader,
                "embeddings header must start with row_index");
  }
  const auto& header = parsed[0].fields;
  const std::size_t dim = header.size() - 1;
  if (dim == 0) throw Error(ErrorCode::kMissingHeader, "no vector columns");
  for (std::size_t j = 0; j < dim; ++j) {
    if (utf8::Trim(header[j + 1]) != "v" + std::to_string(j)) {
      throw Error(ErrorCode::kMissingHeader,
                  "expected column v" + std::to_string(j));
    }
  }

  std::vector<std::vector<double>> vectors(rows);
  std::vector<bool> seen(rows, false);
  for (std::size_t r = 1; r < parsed.size(); ++r) {
    const auto& fields = parsed[r].fields;
    if (fields.size() != dim + 1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "line " + std::to_string(parsed[r].line) + " has " +
                      std::to_string(fields.size() - 1) + " values, expected " +
                      std::to_string(dim));
    }
    const auto index = ParseDouble(fields[0]);
    if (!index || *index < 0 || *index != std::floor(*index) ||
        *index >= static_cast<double>(rows)) {
      throw Error(ErrorCode::kInvalidParams,
                  "bad row_index on line " + std::to_string(parsed[r].line));
    }
    const auto row = static_cast<std::size_t>(*index);
    if (seen[row]) {
      throw Error(ErrorCode::kInvalidParams,
                  "duplicate row_index " + std::to_string(row));
    }
    seen[row] = true;
    vectors[row].reserve(dim);
    for (std::size_t j = 1; j <= dim; ++j) {
      const auto value = ParseDouble(fields[j]);
      if (!value) {
        throw Error(ErrorCode::kInvalidParams,
                    "non-numeric value on line " + std::to_string(parsed[r].line));
      }
      vectors[row].push_back(*value);
    }
  }
  for (std::size_t row = 0; row < rows; ++row) {
    if (!seen[row]) {
      throw Error(ErrorCode::kMissingEmbedding,
                  "no embedding for row " + std::to_string(row));
    }
  }
  return vectors;
}

}  // namespace bibliotext
