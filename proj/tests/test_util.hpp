#pragma once

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "coremark/error.hpp"
#include "coremark/image.hpp"

#define EXPECT_CODE(stmt, ec)                                   \
  do {                                                          \
    try {                                                       \
      stmt;                                                     \
      ADD_FAILURE() << "expected " << coremark::to_string(ec);  \
    } catch (const coremark::Error& e) {                        \
      EXPECT_EQ(e.code(), ec) << e.what();                      \
    }                                                           \
  } while (0)

namespace testutil {

// Rows of '#' (black) and '.' (white).
inline coremark::BinaryImage art(const std::vector<std::string>& rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h ? static_cast<int>(rows[0].size()) : 0;
  coremark::BinaryImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.at(x, y) = rows[y][x] == '#' ? coremark::kBlack : coremark::kWhite;
    }
  }
  return img;
}

inline void fill(coremark::BinaryImage& img, int x, int y, int w, int h,
                 coremark::Pixel v = coremark::kBlack) {
  for (int yy = y; yy < y + h; ++yy) {
    for (int xx = x; xx < x + w; ++xx) img.at(xx, yy) = v;
  }
}

}  // namespace testutil
