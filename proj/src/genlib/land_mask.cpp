// Coarse land mask: hand-traced continent and major-island outlines
// (lon, lat in degrees) rasterised to a 1 degree grid. Antarctica is
// excluded; inland seas are cut out as holes.
#include <array>
#include <bitset>
#include <cmath>
#include <vector>

#include "eosb/genlib.hpp"

namespace eosb {
namespace {

using Polygon = std::vector<std::array<double, 2>>;

const std::vector<Polygon>& land_polygons() {
  static const std::vector<Polygon> polys = {
      // North America
      {{-168, 66}, {-162, 70}, {-156, 71.3}, {-140, 69.6}, {-128, 70}, {-115, 68.5}, {-95, 68},
       {-85, 69.5}, {-82, 66.5}, {-88, 64}, {-93, 61}, {-94.5, 58.7}, {-92, 57}, {-82.5, 55},
       {-79.5, 51.5}, {-77, 56}, {-78, 62.5}, {-73, 62}, {-69, 59}, {-64.5, 60.3}, {-61, 56},
       {-56, 52}, {-60, 50}, {-66, 50}, {-70, 47}, {-65, 44.5}, {-60, 46}, {-53, 47}, {-66, 45},
       {-70, 43.5}, {-70, 41.5}, {-74, 40.5}, {-76, 38}, {-75.5, 35.5}, {-77.5, 34.5}, {-81, 31.5},
       {-80, 27}, {-80.5, 25.2}, {-82, 26.5}, {-82.8, 28}, {-84, 30}, {-89, 30.2}, {-94, 29.6},
       {-97.2, 27.5}, {-97.5, 25}, {-97.8, 22}, {-96, 19}, {-94.5, 18.2}, {-91, 18.8}, {-90.5, 21},
       {-87, 21.5}, {-88, 16}, {-84, 15.8}, {-83.5, 11}, {-79.5, 9}, {-77.5, 8.5}, {-78, 7},
       {-80, 7.5}, {-83, 8.5}, {-86, 11.5}, {-87.5, 13}, {-92, 14.5}, {-94.5, 16}, {-98, 16},
       {-105.5, 20}, {-105.5, 23}, {-109, 26}, {-112.5, 29.5}, {-114.7, 31.5}, {-114, 30},
       {-112, 28}, {-110, 24}, {-110, 23}, {-112, 25}, {-114.5, 28}, {-116, 30.5}, {-117, 32.6},
       {-118.5, 34}, {-120.6, 34.6}, {-122.5, 37.5}, {-124, 40.5}, {-124.3, 43}, {-124, 46.3},
       {-124.7, 48.4}, {-123, 49}, {-127.5, 50.5}, {-130, 54.5}, {-133, 57.5}, {-137, 59},
       {-141, 60}, {-146, 61}, {-150, 59.5}, {-153, 58}, {-158, 56.5}, {-162, 55}, {-164.5, 54.5},
       {-158, 58.5}, {-162, 60}, {-165, 62.5}, {-164.5, 64.5}},
      // South America
      {{-77.5, 8.5}, {-75.5, 10.8}, {-71.5, 12.4}, {-68, 10.6}, {-62, 10.7}, {-60, 8.5}, {-57, 6},
       {-52, 5}, {-50, 1.8}, {-48.5, -1}, {-44, -2.5}, {-40, -3}, {-35.2, -5.5}, {-35, -9},
       {-37, -12}, {-39, -17.5}, {-40.5, -22}, {-44, -23}, {-48.5, -26}, {-48.7, -28.5},
       {-51, -31}, {-53.5, -34}, {-57.5, -35}, {-57, -38}, {-62, -39}, {-65, -41}, {-64, -43},
       {-67.5, -46}, {-66, -48}, {-69, -51.5}, {-68.5, -53}, {-67, -55}, {-70, -55},
       {-74.5, -52.5}, {-75.5, -48}, {-74, -43.5}, {-73.5, -38}, {-71.5, -32}, {-71.4, -28},
       {-70.3, -18.5}, {-75.5, -15}, {-78, -10}, {-81, -6}, {-80, -2}, {-80.5, 0}, {-79, 2},
       {-77.5, 4}, {-77.3, 7.5}},
      // Eurasia
      {{-9.5, 43}, {-9, 38.7}, {-8.8, 37}, {-6, 36.2}, {-2, 36.7}, {0, 38.7}, {0.5, 40.5},
       {3.2, 42}, {3.2, 43.3}, {6, 43.1}, {8.5, 44.3}, {10.5, 43.5}, {12.5, 41.5}, {15.7, 40},
       {15.8, 38}, {16.6, 38.5}, {17, 39.5}, {18.5, 40.2}, {16, 41.5}, {13.5, 43.6}, {12.3, 45.3},
       {13.7, 45.6}, {15, 45}, {19.5, 42}, {19.5, 40}, {21, 38.5}, {22.5, 36.5}, {24, 38},
       {22.5, 40.5}, {24.5, 40.8}, {26.5, 40.8}, {26.2, 39.5}, {26.5, 38.3}, {27.3, 37},
       {28.5, 36.7}, {30.5, 36.4}, {32.5, 36.1}, {36, 36.8}, {35.9, 35}, {35, 33}, {34.3, 31.3},
       {34.5, 29.5}, {35, 28}, {37, 25}, {39, 21.5}, {41, 17}, {43, 13}, {45, 12.8}, {48.5, 14},
       {52, 16}, {55, 17.5}, {57.5, 19}, {59.8, 22.5}, {58.5, 23.6}, {56.3, 24.8}, {56.3, 26.2},
       {54.5, 24.2}, {51.5, 24.5}, {51.5, 26}, {50, 26.7}, {48.5, 28.5}, {48, 30}, {50, 30.2},
       {51.5, 27.8}, {54.5, 26.7}, {57, 25.8}, {61.5, 25.2}, {66.5, 25.4}, {67.5, 24},
       {70.5, 21}, {72.8, 21}, {73, 19}, {74, 15}, {75.5, 11.5}, {77.5, 8}, {79, 9.5},
       {80.3, 13}, {80.2, 15.5}, {82.3, 17}, {85.5, 19.8}, {87, 21.5}, {89, 21.8}, {91.5, 22.5},
       {92.5, 20.5}, {94.5, 17}, {94.5, 16}, {97.5, 16.5}, {98.5, 13}, {98.5, 10}, {98.3, 8},
       {100, 6.5}, {100.3, 4}, {101.5, 2.8}, {103.5, 1.3}, {104.2, 1.5}, {103.5, 4}, {102.5, 6},
       {101, 6.9}, {100, 9}, {99.5, 10.5}, {100, 13.5}, {101, 12.7}, {102.5, 12}, {103, 11},
       {104.8, 8.6}, {106.5, 9.5}, {109, 11.5}, {109.3, 13.5}, {108.5, 16}, {106.5, 18},
       {106, 20}, {107.8, 21.6}, {109.8, 21.5}, {110.5, 20.3}, {111.5, 21.5}, {113.5, 22.2},
       {116.5, 22.9}, {119.5, 25.5}, {120.5, 27.9}, {122, 30}, {121.8, 31.7}, {120.5, 33.5},
       {119, 35}, {120.5, 36.5}, {122.5, 37.4}, {119, 37.5}, {117.8, 38.5}, {118, 39.2},
       {121.5, 40.9}, {121.2, 39.3}, {122.2, 39.3}, {124.3, 39.8}, {125.3, 37.7}, {126.5, 34.4},
       {129.3, 35.2}, {129.5, 37}, {128.5, 38.5}, {127.5, 39.8}, {129.7, 41}, {130.6, 42.6},
       {133, 42.8}, {135.5, 43.9}, {138.5, 47}, {140.5, 50}, {141.4, 53}, {137.5, 54},
       {135.2, 54.7}, {139, 57.5}, {143, 59.3}, {148, 59.4}, {152, 59}, {155, 59.3},
       {156.8, 61.5}, {160, 61.7}, {156.5, 57.5}, {156, 51}, {158.5, 53}, {162, 56.2},
       {163.5, 59.9}, {170, 60}, {172, 61}, {179, 62.5}, {180, 65}, {180, 68.8}, {170, 70},
       {160, 69.7}, {152, 70.9}, {140, 72.5}, {130, 71}, {128, 72.8}, {113, 73.7}, {110, 76.5},
       {104, 77.7}, {98, 76}, {88, 75.2}, {80.5, 73.5}, {80, 72.3}, {75, 72.8}, {72.5, 68.5},
       {69, 68.8}, {66.5, 70.8}, {68.5, 72.5}, {66, 69.5}, {60, 69.8}, {58, 68.5}, {54, 68.3},
       {45, 67.7}, {44, 66.2}, {40.5, 66.5}, {40, 64.5}, {36.5, 64.7}, {35, 66.6}, {41, 67},
       {40, 68.5}, {33, 69.4}, {28, 71}, {24, 71}, {18, 70}, {15, 68.5}, {12.5, 66},
       {10.5, 64.5}, {7, 62.5}, {5, 61}, {5.5, 58.5}, {7, 58}, {8.2, 58.1}, {10.5, 59.5},
       {11, 58.8}, {12, 57.8}, {12.5, 56}, {14.2, 55.4}, {16, 56.2}, {16.5, 57.5}, {18.8, 60},
       {17.5, 61}, {17.5, 62.5}, {21.5, 64.8}, {25.3, 65.2}, {22.5, 63.2}, {21.3, 61}, {23, 59.9},
       {28, 60.5}, {29.9, 59.9}, {28, 59.5}, {23.5, 59.2}, {23.5, 57.5}, {21, 57}, {21, 56},
       {19.6, 54.5}, {18.5, 54.8}, {14, 54}, {10.9, 54}, {8.6, 54.3}, {8.5, 57.1}, {8.5, 55.5},
       {8.5, 53.8}, {7, 53.4}, {4.6, 52.8}, {3.3, 51.4}, {1.5, 50.8}, {-1.5, 49.7}, {-4.5, 48.6},
       {-2.2, 47.2}, {-1.2, 46}, {-1.5, 43.4}, {-4, 43.5}, {-8, 43.7}},
      // Africa
      {{-17, 21}, {-16.5, 24}, {-14.5, 26.2}, {-13, 27.8}, {-9.8, 30}, {-9.5, 32.5}, {-6.8, 34},
       {-5.9, 35.8}, {-2, 35.1}, {1, 36.5}, {5, 36.8}, {10.2, 37.2}, {11, 35.5}, {10, 34},
       {11.5, 33.2}, {15, 32.3}, {19.5, 30.3}, {20, 31.5}, {22, 32.9}, {25, 31.9}, {29, 30.9},
       {32.3, 31.2}, {34.3, 31.3}, {34.9, 29.5}, {35.5, 24}, {37.2, 21}, {38.5, 18},
       {39.7, 15.5}, {41.5, 13.5}, {43.3, 12}, {44.5, 10.4}, {51, 11.8}, {51, 10.5}, {49, 6},
       {47.5, 4}, {44, -0.5}, {41.5, -2}, {40, -4}, {39.2, -7}, {39.5, -10}, {40.5, -12},
       {40.5, -15.5}, {36.5, -19}, {35, -22}, {35.5, -24}, {32.9, -26}, {32.5, -28.5},
       {30.5, -31}, {27.5, -33.5}, {25, -34}, {22, -34.3}, {20, -34.8}, {18.3, -34}, {17.8, -31},
       {16.4, -28.6}, {14.6, -22.5}, {11.8, -17.3}, {12.3, -13.5}, {13.8, -10.8}, {13, -8.5},
       {12.2, -6}, {11.8, -3.5}, {9.5, -0.8}, {9.7, 3}, {8.5, 4.5}, {5.8, 4.2}, {4.5, 6.3},
       {1.5, 6.2}, {-2, 4.8}, {-7.5, 4.4}, {-11.5, 6.9}, {-13.2, 8.8}, {-15, 11}, {-16.8, 12.5},
       {-17.5, 14.7}, {-16.5, 16.5}, {-16.2, 19}},
      // Australia
      {{113.5, -22}, {114, -26.5}, {115, -30}, {115, -34}, {118, -35}, {123.5, -33.9},
       {126, -32.3}, {131, -31.5}, {135.5, -34.8}, {138, -35.5}, {140, -38}, {144, -38.3},
       {146.5, -39}, {150, -37.5}, {151.3, -33.7}, {153.1, -30.5}, {153.5, -28}, {153, -25},
       {150.8, -22.5}, {149, -20.8}, {146.2, -18.5}, {145.4, -15}, {144, -14.3}, {143.5, -12.5},
       {142.5, -10.8}, {141.5, -13.5}, {141.6, -17}, {140, -17.7}, {137.8, -16}, {135.5, -15},
       {136.7, -12.2}, {132.5, -11.3}, {130.2, -12.5}, {129.5, -14.9}, {127, -13.8}, {125, -15},
       {122.2, -17.2}, {121, -19.5}, {117, -20.6}},
      // Tasmania
      {{144.6, -40.7}, {148.3, -40.9}, {148, -43.2}, {146.2, -43.6}},
      // Greenland
      {{-73, 78.2}, {-60, 82}, {-40, 83.5}, {-22, 82.5}, {-18, 79}, {-20, 75}, {-22, 70.5},
       {-30, 68.2}, {-40, 65}, {-43, 60}, {-48, 61}, {-51, 64}, {-54, 67}, {-55, 70.5},
       {-58, 75.5}, {-68, 76.5}},
      // Baffin Island
      {{-80, 62.5}, {-64, 62.5}, {-61.5, 66.5}, {-68, 70.5}, {-78, 72.7}, {-90, 73.5}, {-85, 70},
       {-81.5, 69}},
      // Great Britain
      {{-5.7, 50}, {1.5, 51}, {1.7, 52.7}, {0, 53.5}, {-1.5, 55}, {-2, 56}, {-1.8, 57.6},
       {-3.5, 58.6}, {-5, 58.6}, {-6.2, 57.5}, {-5.6, 56}, {-4.8, 55}, {-3, 54.8}, {-3.4, 53.4},
       {-4.7, 52.8}, {-5.2, 51.7}, {-3, 51.4}},
      // Ireland
      {{-6, 52.2}, {-6, 54}, {-7.3, 55.3}, {-8.6, 54.6}, {-10, 53.5}, {-9.8, 51.8}, {-8, 51.6}},
      // Iceland
      {{-22.5, 64}, {-24, 65.5}, {-22, 66.4}, {-16, 66.5}, {-13.6, 65}, {-18, 63.4}},
      // Japan
      {{130, 31.3}, {131.5, 31.5}, {132, 33.8}, {135, 33.5}, {136.9, 34.3}, {139.9, 35},
       {141, 36.5}, {141.9, 39.5}, {141.4, 41.4}, {143.3, 42}, {145.5, 43.3}, {142, 45.4},
       {140, 43.2}, {140.1, 41.5}, {139.8, 40}, {138.5, 37.5}, {136.8, 37.2}, {135.5, 35.6},
       {132.5, 35.4}, {130.9, 34}, {129.7, 33.2}},
      // Sakhalin
      {{142, 46}, {143.5, 49}, {143, 54}, {142.2, 54.3}, {142, 51}},
      // Taiwan
      {{120.1, 23}, {121.5, 25.3}, {122, 25}, {121, 22}},
      // Sri Lanka
      {{79.8, 6}, {80.1, 9.8}, {81.9, 7.5}, {81.3, 6.2}},
      // Madagascar
      {{44, -25}, {47, -25}, {50.4, -15.5}, {49.3, -12}, {48, -13.5}, {44.3, -16.5}, {43.5, -21.5}},
      // Sumatra
      {{95.3, 5.6}, {97.5, 5.2}, {100.3, 2.2}, {104, -1}, {106, -3.2}, {105.8, -5.8}, {104.5, -5.9},
       {101, -2.5}, {98.7, 1.7}},
      // Java
      {{105.2, -6.8}, {106, -6}, {110.5, -6.8}, {114.5, -7.7}, {114.4, -8.7}, {110, -8.2},
       {106.5, -7.4}},
      // Borneo
      {{109, 1.5}, {110, 1.7}, {111.5, 2.8}, {113, 3.2}, {115.5, 5.3}, {117, 7}, {119.2, 5.3},
       {118, 4.3}, {117.6, 1}, {119, 1}, {116.5, -1.8}, {116, -3.9}, {114.5, -4}, {111.5, -3},
       {110.2, -2.9}, {109, -0.5}},
      // Sulawesi
      {{119.5, -5.5}, {119.4, -1}, {121, 1.2}, {125, 1.5}, {123, -0.9}, {121.2, -1.3}, {123, -4.5},
       {122, -5.5}, {121, -2.8}, {120.5, -5.5}},
      // New Guinea
      {{131, -1.2}, {134, -0.9}, {137, -1.5}, {141, -2.6}, {145.8, -4.5}, {147.5, -6}, {148, -8},
       {150.3, -10.5}, {147, -10.1}, {144, -7.8}, {141, -9.1}, {138, -8.3}, {137.8, -5}, {133, -4},
       {132, -2.8}},
      // Luzon
      {{120, 14.5}, {120.5, 18.5}, {122.3, 18.5}, {122, 16}, {124, 13.5}, {123, 13}, {121.5, 13.8}},
      // Mindanao
      {{122, 7}, {123.5, 8.6}, {125.5, 9.8}, {126.6, 7.2}, {125.5, 5.6}, {124, 6.5}},
      // New Zealand
      {{172.7, -34.4}, {174.5, -36.8}, {178.5, -37.7}, {177, -39.5}, {175, -41.5}, {174.5, -40},
       {173.8, -39}, {174.6, -37}},
      {{172.7, -40.5}, {174, -41.5}, {173.5, -43}, {171.3, -44.5}, {169, -46.6}, {166.5, -46},
       {168, -44}, {170.5, -43}},
      // Cuba
      {{-85, 21.8}, {-82, 23.2}, {-77.2, 22.2}, {-74.2, 20.2}, {-77.7, 19.8}, {-80.5, 21.8}},
      // Hispaniola
      {{-74.4, 18.4}, {-72.8, 19.9}, {-69, 19.8}, {-68.3, 18.5}, {-71.4, 17.6}},
  };
  return polys;
}

const std::vector<Polygon>& water_holes() {
  static const std::vector<Polygon> holes = {
      // Black Sea
      {{28, 41.5}, {28, 44.5}, {30, 46}, {33, 45.5}, {36, 45.2}, {38.5, 47}, {39.5, 47},
       {37.5, 44.8}, {41.5, 41.5}, {38, 41}, {33, 42}, {29, 41.2}},
      // Caspian Sea
      {{47, 45}, {50, 46.8}, {53, 46.8}, {53, 45}, {51, 44.5}, {52.5, 41.8}, {54, 40.5},
       {53, 37.5}, {50, 37}, {49, 38.3}, {49.5, 40.2}, {48, 42}, {47.5, 43.5}},
  };
  return holes;
}

bool inside(const Polygon& poly, double lon, double lat) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = poly[i][0], yi = poly[i][1], xj = poly[j][0], yj = poly[j][1];
    if ((yi > lat) != (yj > lat) && lon < (xj - xi) * (lat - yi) / (yj - yi) + xi) in = !in;
  }
  return in;
}

using Raster = std::bitset<180 * 360>;

Raster rasterise() {
  Raster r;
  for (int i = 0; i < 180; ++i) {
    for (int j = 0; j < 360; ++j) {
      const double lat = -90.0 + i + 0.5, lon = -180.0 + j + 0.5;
      bool land = false;
      for (const Polygon& p : land_polygons()) {
        if (inside(p, lon, lat)) {
          land = true;
          break;
        }
      }
      if (land) {
        for (const Polygon& h : water_holes()) {
          if (inside(h, lon, lat)) {
            land = false;
            break;
          }
        }
      }
      r[static_cast<std::size_t>(i * 360 + j)] = land;
    }
  }
  return r;
}

}  // namespace

bool on_land(double lat_deg, double lon_deg) {
  static const Raster raster = rasterise();
  if (!(lat_deg >= -90.0 && lat_deg <= 90.0) || !std::isfinite(lon_deg)) return false;
  int i = static_cast<int>(std::floor(lat_deg + 90.0));
  if (i >= 180) i = 179;
  double lon = std::fmod(lon_deg + 180.0, 360.0);
  if (lon < 0) lon += 360.0;
  int j = static_cast<int>(std::floor(lon));
  if (j >= 360) j = 359;
  return raster[static_cast<std::size_t>(i * 360 + j)];
}

}  // namespace eosb
