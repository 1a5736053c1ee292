#include "coolctl/reference_data.hpp"

namespace coolctl::reference {
namespace {

struct Row {
  int temperature_c, duration_min, humidity_pct, speed;
};

constexpr Row kTable1[] = {
    {39, 20, 85, 5}, {39, 40, 85, 5}, {39, 60, 85, 5}, {38, 20, 85, 5}, {38, 40, 85, 5},
    {38, 60, 85, 5}, {36, 20, 85, 5}, {36, 40, 85, 5}, {36, 60, 85, 4}, {34, 20, 85, 5},
    {34, 40, 85, 4}, {34, 60, 85, 3}, {29, 20, 85, 4}, {29, 40, 85, 3}, {29, 60, 85, 2},
    {28, 20, 85, 4}, {28, 40, 85, 3}, {28, 60, 85, 2}, {27, 20, 85, 4}, {27, 40, 85, 3},
    {27, 60, 85, 2}, {26, 20, 85, 4}, {26, 40, 85, 3}, {26, 60, 85, 2}, {25, 20, 85, 4},
    {25, 40, 85, 3}, {25, 60, 85, 2}, {23, 20, 85, 4}, {23, 40, 85, 1}, {23, 60, 85, 0},
    {22, 20, 85, 3}, {22, 40, 85, 1}, {22, 60, 85, 0}, {21, 20, 85, 3}, {21, 40, 85, 1},
    {21, 60, 85, 0}, {20, 20, 85, 2}, {20, 40, 85, 1}, {20, 60, 85, 0}, {19, 20, 85, 2},
    {19, 40, 85, 1}, {19, 60, 85, 0}, {18, 20, 85, 2}, {18, 40, 85, 1}, {18, 60, 85, 0},
    {17, 20, 85, 1}, {17, 40, 85, 1}, {17, 60, 85, 0},
};

constexpr Row kTable2[] = {{30, 20, 85, 4}, {30, 40, 85, 3}, {30, 60, 85, 2}};

template <std::size_t N>
std::vector<TrainingPair> to_pairs(const Row (&rows)[N]) {
  std::vector<TrainingPair> out;
  out.reserve(N);
  for (const auto& r : rows) {
    out.push_back({{r.temperature_c, r.duration_min, r.humidity_pct}, SpeedClass(r.speed)});
  }
  return out;
}

// The published figure prints 22 rows; its 8th row is a duplicate all-zero-bit
// temperature row and is not part of the 7-bit layout.
constexpr std::array<std::array<std::int32_t, kSpeedClasses>, kInputBits> kReference = {{
    {1, 2, 0, 0, 0, -3},
    {1, 0, 0, 0, 0, 5},
    {1, 0, -2, 0, 0, 7},
    {-7, -8, 2, 2, 2, -9},
    {7, 8, 8, 6, 4, -9},
    {-7, -8, -8, -6, -4, 9},
    {-7, -8, -8, -8, -8, -9},
    {-7, -8, -8, -8, -8, -9},
    {-7, -8, -8, -8, -8, -9},
    {7, -6, 8, -2, 6, 3},
    {7, 6, 2, 4, -4, 1},
    {7, -6, 8, -2, 6, 3},
    {7, 6, 2, 4, -4, 1},
    {-7, -8, -8, -8, -8, -9},
    {7, 8, 8, 8, 8, 9},
    {-7, -8, -8, -8, -8, -9},
    {7, 8, 8, 8, 8, 9},
    {-7, -8, -8, -8, -8, -9},
    {7, 8, 8, 8, 8, 9},
    {-7, -8, -8, -8, -8, -9},
    {7, 8, 8, 8, 8, 9},
}};

constexpr AnchorRow kAnchors[] = {
    {"temperature-bit-1", 0, {1, 2, 0, 0, 0, -3}},
    {"temperature-bit-7", 6, {-7, -8, -8, -8, -8, -9}},
    {"duration-bit-3", 9, {7, -6, 8, -2, 6, 3}},
    {"duration-bit-4", 10, {7, 6, 2, 4, -4, 1}},
    {"humidity-bit-1", 14, {7, 8, 8, 8, 8, 9}},
    {"humidity-bit-2", 15, {-7, -8, -8, -8, -8, -9}},
};

constexpr Transcript kTranscripts[] = {
    {{28, 60, 85},
     {0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 1, 0, 1},
     {57, 32, 60, 44, 42, 33},
     2},
    {{40, 10, 85},
     {0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1},
     {14, 14, 20, 24, 18, 28},
     5},
    {{17, 40, 85},
     {1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1},
     {50, 54, 44, 46, 28, 26},
     1},
};

}  // namespace

std::span<const TrainingPair> table1() {
  static const std::vector<TrainingPair> pairs = to_pairs(kTable1);
  return pairs;
}

std::span<const TrainingPair> table2() {
  static const std::vector<TrainingPair> pairs = to_pairs(kTable2);
  return pairs;
}

const WeightMatrix& reference_matrix() {
  static const WeightMatrix w = WeightMatrix::from_array(kReference);
  return w;
}

std::span<const AnchorRow> anchor_rows() { return kAnchors; }
std::span<const Transcript> transcripts() { return kTranscripts; }

}  // namespace coolctl::reference
